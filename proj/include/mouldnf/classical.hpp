#ifndef MOULDNF_CLASSICAL_HPP
#define MOULDNF_CLASSICAL_HPP

#include <vector>

#include "mouldnf/backend.hpp"

namespace mouldnf {

class ClassicalBackend final : public BracketBackend {
public:
  std::string name() const override { return "classical"; }
  double structure_constant(const Mode& a, const Mode& b) const override { return poisson_constant(a, b); }
};

Observable poisson_bracket(const Observable& f, const Observable& g);

/// One lambda-class of the decomposition B = sum_lambda B_lambda.
struct HomogeneousPart {
  IntVec representative;  // smallest k of the class
  Complex lambda;         // i<k, omega>; exactly 0 for the resonant class
  Observable part;
};

/// Groups the k-slices of B by the class of k modulo the resonance lattice.
/// Parts are ordered by representative; their sum is B.
std::vector<HomogeneousPart> homogeneous_parts(const Observable& b, const Frequency& freq);

/// eps_r = sum over r-tuples of classes of prod ||B_lambda_i||_rho e^{eta beta_tau(lambda)}.
double epsilon_r(const Observable& b, std::size_t r, double eta, double tau, double rho, const Frequency& freq);

}  // namespace mouldnf

#endif  // MOULDNF_CLASSICAL_HPP
