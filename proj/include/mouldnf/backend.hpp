#ifndef MOULDNF_BACKEND_HPP
#define MOULDNF_BACKEND_HPP

#include <string>

#include "mouldnf/alphabet.hpp"
#include "mouldnf/observable.hpp"

namespace mouldnf {

/// Lie bracket on exponential modes, together with the X0 action and the
/// analytic norm. Every backend here is determined by a structure
/// constant c(a, b): [e_a, e_b] = c(a, b) e_{a+b}.
class BracketBackend {
public:
  virtual ~BracketBackend() = default;

  virtual std::string name() const = 0;
  virtual double structure_constant(const Mode& a, const Mode& b) const = 0;

  /// Bilinear extension of the mode rule; the result is pruned at 1e-16 of its max.
  Observable bracket(const Observable& f, const Observable& g) const;

  /// Eigenvalue of ad_X0 on the k-slice: i<k, omega>, exactly zero on the resonance lattice.
  Complex ad_x0_eigen(const IntVec& k, const Frequency& freq) const;
  /// [X0, g].
  Observable ad_x0(const Observable& g, const Frequency& freq) const;

  double norm_rho(const Observable& g, double rho) const { return mouldnf::norm_rho(g, rho); }
};

/// Classical structure constant s(a, b) = k.m' - m.k' of
/// {F, G} = d_xi F d_x G - d_x F d_xi G.
double poisson_constant(const Mode& a, const Mode& b);

}  // namespace mouldnf

#endif  // MOULDNF_BACKEND_HPP
