#ifndef MOULDNF_OBSERVABLE_HPP
#define MOULDNF_OBSERVABLE_HPP

#include <cstddef>
#include <map>
#include <vector>

#include <json.hpp>

#include "mouldnf/alphabet.hpp"
#include "mouldnf/scalar.hpp"

namespace mouldnf {

/// Fourier mode e^{i(k.x + m.xi)} on T*T^d.
struct Mode {
  IntVec k;
  IntVec m;

  friend auto operator<=>(const Mode&, const Mode&) = default;
  friend bool operator==(const Mode&, const Mode&) = default;
};

struct ModeHash {
  std::size_t operator()(const Mode& md) const;
};

/// Sparse trigonometric function sum_{k,m} b_{k,m} e^{i(k.x + m.xi)}.
///
/// The same representation serves as a classical observable and as a
/// Weyl symbol. Coefficients are kept in a sorted map so iteration order,
/// and hence every accumulation built on it, is deterministic.
class Observable {
public:
  using Map = std::map<Mode, Complex>;

  explicit Observable(std::size_t d = 0) : d_(d) {}

  static Observable single(IntVec k, IntVec m, Complex b);

  std::size_t dim() const { return d_; }
  const Map& coeffs() const { return coeffs_; }
  std::size_t size() const { return coeffs_.size(); }
  bool empty() const { return coeffs_.empty(); }

  Complex coeff(const IntVec& k, const IntVec& m) const;
  /// Adds b to the coefficient of (k, m); an entry that becomes exactly zero is erased.
  void add(const Mode& mode, Complex b);
  void add(const IntVec& k, const IntVec& m, Complex b) { add(Mode{k, m}, b); }

  Observable& operator+=(const Observable& o);
  Observable& operator-=(const Observable& o);
  Observable& operator*=(Complex c);
  friend Observable operator+(Observable a, const Observable& b) { return a += b; }
  friend Observable operator-(Observable a, const Observable& b) { return a -= b; }
  friend Observable operator*(Complex c, Observable a) { return a *= c; }

  /// Drops coefficients with |b| <= rel * max |b|.
  void prune(double rel = 1e-16);
  double max_abs() const;

  /// Optional reality flag: b(-k,-m) = conj b(k,m) is claimed.
  bool real_flag() const { return real_; }
  void set_real_flag(bool r) { real_ = r; }
  /// Largest |b(-k,-m) - conj b(k,m)|.
  double reality_defect() const;

  /// Modes with the given x-frequency k.
  Observable slice(const IntVec& k) const;
  /// Distinct k in the support, sorted.
  std::vector<IntVec> k_support() const;
  int max_k_inf() const;

  Complex evaluate(const std::vector<double>& x, const std::vector<double>& xi) const;

  void check_dimension(const Observable& o) const;

private:
  std::size_t d_;
  Map coeffs_;
  bool real_ = false;
};

/// sum |b_{k,m}| e^{rho(|m|_1 + 2|k|_1)}.
double norm_rho(const Observable& g, double rho);

/// Largest |coefficient difference| over the union of supports.
double max_coeff_diff(const Observable& a, const Observable& b);

/// {"d": int, "real": bool, "coeffs": [{"k": [...], "m": [...], "re": x, "im": y}, ...]}
nlohmann::json to_json(const Observable& g);
Observable observable_from_json(const nlohmann::json& j);

}  // namespace mouldnf

#endif  // MOULDNF_OBSERVABLE_HPP
