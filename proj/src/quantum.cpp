#include "mouldnf/quantum.hpp"

#include <cmath>
#include <charconv>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

namespace mouldnf {

double moyal_constant(const Mode& a, const Mode& b, double hbar) {
  double s = poisson_constant(a, b);
  if (s == 0.0) return 0.0;
  return 2.0 * std::sin(0.5 * hbar * s) / hbar;
}

QuantumBackend::QuantumBackend(double hbar) : hbar_(hbar) {
  if (!(hbar > 0.0)) throw std::invalid_argument("hbar must be positive");
}

std::string QuantumBackend::name() const {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, hbar_);
  return "quantum(" + std::string(buf, res.ptr) + ")";
}

Observable moyal_bracket(const Observable& f, const Observable& g, double hbar) {
  return QuantumBackend(hbar).bracket(f, g);
}

WeylMatrix::WeylMatrix(std::size_t d, int cutoff, double hbar) : d_(d), cutoff_(cutoff), hbar_(hbar) {
  if (d == 0) throw std::invalid_argument("WeylMatrix: dimension must be positive");
  if (cutoff < 0) throw std::invalid_argument("WeylMatrix: cutoff must be nonnegative");
  size_ = 1;
  for (std::size_t j = 0; j < d; ++j) size_ *= static_cast<std::size_t>(2 * cutoff + 1);
  mat_.resize(static_cast<long>(size_), static_cast<long>(size_));
}

long WeylMatrix::index(const IntVec& n) const {
  long idx = 0;
  for (std::size_t j = 0; j < d_; ++j) {
    if (std::abs(n[j]) > cutoff_) return -1;
    idx = idx * (2 * cutoff_ + 1) + (n[j] + cutoff_);
  }
  return idx;
}

IntVec WeylMatrix::basis_vector(std::size_t i) const {
  IntVec n(d_);
  for (std::size_t j = d_; j-- > 0;) {
    n[j] = static_cast<int>(i % static_cast<std::size_t>(2 * cutoff_ + 1)) - cutoff_;
    i /= static_cast<std::size_t>(2 * cutoff_ + 1);
  }
  return n;
}

double WeylMatrix::spectral_norm() const {
  Eigen::MatrixXcd a = dense();
  Eigen::MatrixXcd h = a.adjoint() * a;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  double top = es.eigenvalues().maxCoeff();
  return std::sqrt(std::max(top, 0.0));
}

double WeylMatrix::hermiticity_defect() const {
  Eigen::MatrixXcd a = dense();
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

double unitarity_defect(const WeylMatrix& y) {
  Eigen::MatrixXcd a = y.dense() * Complex(0.0, -1.0 / y.hbar());
  Eigen::MatrixXcd u = a.exp();
  Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(u.rows(), u.cols());
  return (u.adjoint() * u - id).cwiseAbs().maxCoeff();
}

nlohmann::json WeylMatrix::to_json() const {
  Eigen::MatrixXcd a = dense();
  nlohmann::json rows = nlohmann::json::array();
  for (long i = 0; i < a.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (long j = 0; j < a.cols(); ++j) row.push_back({a(i, j).real(), a(i, j).imag()});
    rows.push_back(row);
  }
  return {{"d", d_}, {"cutoff", cutoff_}, {"hbar", hbar_}, {"entries", rows}};
}

namespace {

WeylMatrix build_weyl(const Observable& f, int cutoff, double hbar) {
  if (!(hbar > 0.0)) throw std::invalid_argument("hbar must be positive");
  WeylMatrix w(f.dim(), cutoff, hbar);
  std::vector<Eigen::Triplet<Complex>> trips;
  IntVec target(f.dim());
  for (std::size_t col = 0; col < w.basis_size(); ++col) {
    IntVec n = w.basis_vector(col);
    for (const auto& [mode, b] : f.coeffs()) {
      double phase = 0.0;
      for (std::size_t j = 0; j < f.dim(); ++j) {
        target[j] = n[j] + mode.k[j];
        phase += mode.m[j] * (n[j] + 0.5 * mode.k[j]);
      }
      long row = w.index(target);
      if (row < 0) continue;
      trips.emplace_back(row, static_cast<long>(col), b * std::polar(1.0, -hbar * phase));
    }
  }
  w.sparse().setFromTriplets(trips.begin(), trips.end());
  return w;
}

}  // namespace

WeylMatrix weyl_matrix(const Observable& f, int cutoff, double hbar) {
  if (cutoff < f.max_k_inf() + 1)
    throw std::invalid_argument("weyl_matrix: cutoff " + std::to_string(cutoff) +
                                " too small for support with |k|_inf = " + std::to_string(f.max_k_inf()));
  return build_weyl(f, cutoff, hbar);
}

MoyalReport validate_moyal(const Observable& f, const Observable& g, int cutoff, double hbar) {
  int shift = f.max_k_inf() + g.max_k_inf();
  if (cutoff - shift < 0) throw std::invalid_argument("validate_moyal: cutoff leaves no interior columns");
  Observable mb = moyal_bracket(f, g, hbar);
  WeylMatrix wf = weyl_matrix(f, cutoff, hbar);
  WeylMatrix wg = weyl_matrix(g, cutoff, hbar);
  // The bracket may reach beyond the box; only interior columns are compared.
  WeylMatrix wb = build_weyl(mb, cutoff, hbar);
  Eigen::MatrixXcd comm = (wf.dense() * wg.dense() - wg.dense() * wf.dense()) / Complex(0.0, hbar);
  Eigen::MatrixXcd sym = wb.dense();

  MoyalReport rep;
  for (std::size_t col = 0; col < wf.basis_size(); ++col) {
    IntVec n = wf.basis_vector(col);
    int ninf = 0;
    for (int v : n) ninf = std::max(ninf, std::abs(v));
    if (ninf > cutoff - shift) continue;
    ++rep.columns_compared;
    for (long row = 0; row < comm.rows(); ++row) {
      rep.max_deviation = std::max(rep.max_deviation, std::abs(comm(row, col) - sym(row, col)));
      rep.scale = std::max(rep.scale, std::abs(comm(row, col)));
    }
  }
  return rep;
}

std::vector<HomogeneousPart> homogeneous_parts_q(const Observable& b, const Frequency& freq) {
  return homogeneous_parts(b, freq);
}

}  // namespace mouldnf
