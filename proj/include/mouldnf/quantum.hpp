#ifndef MOULDNF_QUANTUM_HPP
#define MOULDNF_QUANTUM_HPP

#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <json.hpp>

#include "mouldnf/backend.hpp"
#include "mouldnf/classical.hpp"

namespace mouldnf {

/// Symbol of (1/(i hbar)) [Op F, Op G] on exponential modes:
/// (2/hbar) sin(hbar s / 2) with s the classical structure constant.
double moyal_constant(const Mode& a, const Mode& b, double hbar);

class QuantumBackend final : public BracketBackend {
public:
  explicit QuantumBackend(double hbar);
  double hbar() const { return hbar_; }
  std::string name() const override;
  double structure_constant(const Mode& a, const Mode& b) const override { return moyal_constant(a, b, hbar_); }

private:
  double hbar_;
};

Observable moyal_bracket(const Observable& f, const Observable& g, double hbar);

/// Weyl quantization on L^2(T^d) restricted to span{e^{inx} : |n|_inf <= cutoff}.
///
/// Mode (k, m) sends e^{inx} to e^{-i hbar m.(n + k/2)} e^{i(n+k)x}: the
/// midpoint kernel e^{-i xi (x-y)/hbar} evaluates the xi-dependence of the
/// symbol at xi = -hbar (n + k/2). Under this rule Op(omega.xi) is
/// diag(-hbar omega.n) and (1/(i hbar))[Op F, Op G] = Op(moyal_bracket(F, G)).
class WeylMatrix {
public:
  WeylMatrix(std::size_t d, int cutoff, double hbar);

  std::size_t dim() const { return d_; }
  int cutoff() const { return cutoff_; }
  double hbar() const { return hbar_; }
  std::size_t basis_size() const { return size_; }

  /// Flat index of n (|n|_inf <= cutoff), or -1 outside the box.
  long index(const IntVec& n) const;
  IntVec basis_vector(std::size_t i) const;

  Eigen::SparseMatrix<Complex>& sparse() { return mat_; }
  const Eigen::SparseMatrix<Complex>& sparse() const { return mat_; }
  Eigen::MatrixXcd dense() const { return Eigen::MatrixXcd(mat_); }

  double spectral_norm() const;
  double hermiticity_defect() const;

  nlohmann::json to_json() const;

private:
  std::size_t d_;
  int cutoff_;
  double hbar_;
  std::size_t size_;
  Eigen::SparseMatrix<Complex> mat_;
};

/// max |U^* U - I| for U = exp(Op(Y) / (i hbar)); zero up to rounding when Op(Y) is Hermitian.
double unitarity_defect(const WeylMatrix& y);

/// Throws std::invalid_argument when cutoff < max |k|_inf + 1 (the support
/// would escape the basis box).
WeylMatrix weyl_matrix(const Observable& f, int cutoff, double hbar);

struct MoyalReport {
  double max_deviation = 0.0;
  double scale = 0.0;           // max |entry| of the commutator side
  std::size_t columns_compared = 0;
};

/// Compares Op(moyal_bracket(F, G)) with (1/(i hbar))[Op F, Op G] on
/// the columns e^{inx} with |n|_inf <= cutoff - shift(F) - shift(G), where
/// both products stay inside the basis box.
MoyalReport validate_moyal(const Observable& f, const Observable& g, int cutoff, double hbar);

/// Quantization commutes with the lambda-decomposition; same partition as
/// the classical homogeneous_parts.
std::vector<HomogeneousPart> homogeneous_parts_q(const Observable& b, const Frequency& freq);

}  // namespace mouldnf

#endif  // MOULDNF_QUANTUM_HPP
