#ifndef MOULDNF_LIEALG_HPP
#define MOULDNF_LIEALG_HPP

#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "mouldnf/backend.hpp"
#include "mouldnf/mould.hpp"
#include "mouldnf/observable.hpp"

namespace mouldnf {

/// Analyticity radii rho > rho' > 0 with bracket constant gamma and X0 loss chi.
struct ScaleParams {
  double rho = 1.0;
  double rho_prime = 0.5;
  double gamma = 1.0;
  std::function<double(double)> chi = [](double delta) { return 1.0 / (std::exp(1.0) * delta); };

  static ScaleParams standard(double rho, double rho_prime);

  void validate() const;
  double delta() const { return rho - rho_prime; }
  double rho_mid() const { return 0.5 * (rho + rho_prime); }
};

/// Raised when gamma ||Y||_{rho''} / (rho - rho'')^2 >= 1, outside the
/// convergence domain of the exponential series.
class OutOfDomainError : public std::domain_error {
public:
  OutOfDomainError(const std::string& what, double ratio) : std::domain_error(what), ratio_(ratio) {}
  double ratio() const { return ratio_; }

private:
  double ratio_;
};

/// B split into its k-slices; letters are the distinct k of the support.
struct LetterDecomposition {
  std::vector<Letter> letters;
  std::vector<Observable> slices;
  std::size_t dim = 0;

  const Observable& slice(const Letter& l) const;
};

LetterDecomposition decompose(const Observable& b);

/// [B_{l_r}, [B_{l_{r-1}}, ... [B_{l_2}, B_{l_1}] ...]]; zero for the empty word.
Observable comould(const Word& w, const LetterDecomposition& b, const BracketBackend& backend);

/// sum over words of length 1..max_r of (1/r) M(w) B_[w], split by length:
/// entry r-1 holds the length-r part.
std::vector<Observable> contract_by_length(const Mould& m, const Observable& b, std::size_t max_r,
                                           const BracketBackend& backend);
Observable contract(const Mould& m, const Observable& b, std::size_t max_r, const BracketBackend& backend);

/// c X0 + obs.
struct ExtendedElement {
  Complex x0 = 0.0;
  Observable obs;
};

ExtendedElement ad(const Observable& y, const ExtendedElement& x, const Frequency& freq, const BracketBackend& backend);

struct ExpAdResult {
  ExtendedElement value;
  double tail_bound = 0.0;  // truncation tail at rho' (infinite when q >= 1)
  double ratio = 0.0;       // q = gamma ||Y||_rho / (rho - rho')^2
};

/// sum_{d=0}^{order} (1/d!) ad_Y^d X with the truncation tail bound
/// (|c| delta^2 / chi(delta) + ||X||_rho) q^{order+1} / (1 - q).
ExpAdResult apply_exp_ad(const Observable& y, const ExtendedElement& x, std::size_t order, const ScaleParams& params,
                         const Frequency& freq, const BracketBackend& backend);

struct NormalizeOptions {
  std::size_t min_order = 0;         // 0: max(2N, 12)
  std::size_t max_order = 200;
  double tail_fraction = 1e-3;       // stop once tail <= fraction * ||E_N||_{rho'}
  std::size_t degree_cap = 0;        // 0: keep every degree (exact regrouping)
  // From iteration N+2 on, coefficients of degree > N+1 with
  // |b| e^{rho'(|m|+2|k|)} below prune_fraction * ||degree N+1 part||_{rho'}
  // are dropped; 0 disables.
  double prune_fraction = 1e-9;
  bool check_domain = true;
};

struct NormalFormResult {
  std::size_t N = 0;
  Observable Z;
  Observable Y;
  Observable E;
  std::vector<Observable> Z_by_length;
  std::vector<Observable> Y_by_length;
  std::map<std::string, double> norms;
  double x0_residual = 0.0;            // ||[X0, Z_N]||_{rho'}
  double cancellation_residual = 0.0;  // ||degree <= N part - Z_N||_{rho'}
  double tail_bound = 0.0;
  double ratio = 0.0;
  double pruned_mass = 0.0;  // sum of dropped |b| e^{rho'(|m|+2|k|)}
  std::size_t order = 0;
  std::size_t degree_cap = 0;
  std::string backend;
};

/// Z_N = F.B_[.], Y_N = G.B_[.] over words of length <= N, and
/// E_N = e^{ad_{Y_N}}(X0 + B) - X0 - Z_N. The Lie series is accumulated
/// by polynomial degree in B (a comould of length r has degree r); the
/// degree <= N part equals Z_N and E_N is the degree >= N+1 part.
NormalFormResult normalize(const Observable& b, std::size_t N, const ScaleParams& params, const Frequency& freq,
                           const BracketBackend& backend, const NormalizeOptions& opts = {});

/// Same with the moulds F and G supplied (e.g. exact values rounded to double).
NormalFormResult normalize(const Observable& b, std::size_t N, const Mould& F, const Mould& G,
                           const ScaleParams& params, const Frequency& freq, const BracketBackend& backend,
                           const NormalizeOptions& opts = {});

}  // namespace mouldnf

#endif  // MOULDNF_LIEALG_HPP
