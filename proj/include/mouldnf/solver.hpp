#ifndef MOULDNF_SOLVER_HPP
#define MOULDNF_SOLVER_HPP

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <mutex>
#include <random>
#include <unordered_map>
#include <vector>

#include "mouldnf/alphabet.hpp"
#include "mouldnf/mould.hpp"

namespace mouldnf {

template <class T>
struct MouldValues {
  T F;
  T S;
  T N;
};

/// Solves the mould equation nabla e^G = I x e^G - e^G x F with
/// [e^{-G} x nabla1 e^G]_0 = A by induction on word length.
///
/// The gauge A must be resonant and alternal; it defaults to zero.
template <class T>
class MouldSolver {
public:
  explicit MouldSolver(Frequency freq, BasicMould<T> gauge = BasicMould<T>::zero())
      : state_(std::make_shared<State>(std::move(freq), std::move(gauge))) {}

  const Frequency& frequency() const { return state_->freq; }

  MouldValues<T> solve(const Word& w) const {
    State& st = *state_;
    {
      std::lock_guard<std::mutex> lock(st.mutex);
      auto it = st.memo.find(w);
      if (it != st.memo.end()) return it->second;
    }
    MouldValues<T> v = compute(w);
    std::lock_guard<std::mutex> lock(st.mutex);
    return st.memo.emplace(w, std::move(v)).first->second;
  }

  T g_of(const Word& w) const { return G()(w); }

  BasicMould<T> F() const {
    auto self = *this;
    return BasicMould<T>([self](const Word& w) { return self.solve(w).F; });
  }
  BasicMould<T> S() const {
    auto self = *this;
    return BasicMould<T>([self](const Word& w) { return self.solve(w).S; });
  }
  BasicMould<T> N() const {
    auto self = *this;
    return BasicMould<T>([self](const Word& w) { return self.solve(w).N; });
  }
  /// G = log S. Each call returns a fresh mould (with its own memo) over
  /// the shared S values; keep the result when evaluating many words.
  BasicMould<T> G() const { return mlog(S()); }
  const BasicMould<T>& gauge() const { return state_->gauge; }

private:
  struct State {
    State(Frequency f, BasicMould<T> a) : freq(std::move(f)), gauge(std::move(a)) {}
    Frequency freq;
    BasicMould<T> gauge;
    std::mutex mutex;
    std::unordered_map<Word, MouldValues<T>, WordHash> memo;
  };

  MouldValues<T> compute(const Word& w) const {
    using Tr = ScalarTraits<T>;
    const std::size_t r = w.size();
    if (r == 0) return {Tr::zero(), Tr::one(), Tr::zero()};
    for (const auto& l : w.letters()) state_->freq.check_dimension(l.k);

    T sum_sf = Tr::zero();
    T sum_sn = Tr::zero();
    for (std::size_t i = 1; i < r; ++i) {
      MouldValues<T> a = solve(w.prefix(i));
      if (Tr::is_zero(a.S)) continue;
      MouldValues<T> b = solve(w.suffix_from(i));
      sum_sf += a.S * b.F;
      sum_sn += a.S * b.N;
    }
    T s_tail = solve(w.tail()).S;
    T rr = Tr::ratio(static_cast<long long>(r), 1);

    if (is_resonant(w, state_->freq)) {
      T a = state_->gauge(w);
      return {s_tail - sum_sf, (a + sum_sn) / rr, a};
    }
    T sig = state_->freq.template letter_value<T>(w.mode_sum(state_->freq.dim()));
    T s = (s_tail - sum_sf) / sig;
    return {Tr::zero(), s, rr * s - sum_sn};
  }

  std::shared_ptr<State> state_;
};

// ---------------------------------------------------------------------------

struct EquationReport {
  std::size_t words_checked = 0;
  double max_abs_residual = 0.0;
  double max_relative_residual = 0.0;
  bool residual_exactly_zero = true;
  double max_abs_nabla_f = 0.0;
  bool nabla_f_exactly_zero = true;
  double max_abs_gauge = 0.0;
  double max_relative_gauge = 0.0;
  bool gauge_exactly_zero = true;

  bool passed(double rel_tol = 1e-9) const {
    return max_relative_residual <= rel_tol && max_relative_gauge <= rel_tol && nabla_f_exactly_zero;
  }
};

/// Evaluates the residual nabla S - I x S + S x F, nabla F, and the gauge
/// condition [S^{-1} x nabla1 S]_0 - A on every nonempty word of length at
/// most max_r over `alphabet`. Relative residuals divide by the sum of the
/// magnitudes of the individual terms.
template <class T>
EquationReport verify_equation(const MouldSolver<T>& sol, std::size_t max_r, const std::vector<Letter>& alphabet) {
  using Tr = ScalarTraits<T>;
  const Frequency& freq = sol.frequency();
  EquationReport rep;
  BasicMould<T> S = sol.S();
  BasicMould<T> F = sol.F();
  BasicMould<T> Sinv = mexp(-sol.G());
  BasicMould<T> A = sol.gauge();

  for (const Word& w : words_up_to(alphabet, max_r)) {
    ++rep.words_checked;
    const std::size_t r = w.size();
    T sig = sigma_value<T>(w, freq);

    T nabla_s = sig * S(w);
    T s_tail = S(w.tail());
    T res = nabla_s - s_tail;
    double scale = Tr::magnitude(nabla_s) + Tr::magnitude(s_tail);
    for (std::size_t i = 0; i <= r; ++i) {
      T term = S(w.prefix(i)) * F(w.suffix_from(i));
      res += term;
      scale += Tr::magnitude(term);
    }
    double abs_res = Tr::magnitude(res);
    rep.residual_exactly_zero = rep.residual_exactly_zero && Tr::is_zero(res);
    rep.max_abs_residual = std::max(rep.max_abs_residual, abs_res);
    if (scale > 0.0) rep.max_relative_residual = std::max(rep.max_relative_residual, abs_res / scale);

    T nf = sig * F(w);
    rep.nabla_f_exactly_zero = rep.nabla_f_exactly_zero && Tr::is_zero(nf);
    rep.max_abs_nabla_f = std::max(rep.max_abs_nabla_f, Tr::magnitude(nf));

    if (is_resonant(w, freq)) {
      T g = Tr::zero() - A(w);
      double gscale = Tr::magnitude(A(w));
      for (std::size_t i = 0; i < r; ++i) {
        Word b = w.suffix_from(i);
        T term = Sinv(w.prefix(i)) * Tr::ratio(static_cast<long long>(b.size()), 1) * S(b);
        g += term;
        gscale += Tr::magnitude(term);
      }
      double abs_g = Tr::magnitude(g);
      rep.gauge_exactly_zero = rep.gauge_exactly_zero && Tr::is_zero(g);
      rep.max_abs_gauge = std::max(rep.max_abs_gauge, abs_g);
      if (gscale > 0.0) rep.max_relative_gauge = std::max(rep.max_relative_gauge, abs_g / gscale);
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------

/// Empirical growth constants: F_r = sup |F| / ((tau/(e eta_r))^{(r-1)tau} e^{eta_r beta}),
/// G_r the same with exponent r*tau, over words of length r. These are
/// observed suprema over the enumerated words, not certified constants.
struct GrowthFit {
  std::size_t r = 0;
  double F_r = 0.0;
  double G_r = 0.0;
  double eta = 0.0;
  double tau = 1.0;
  std::size_t words = 0;
  bool exhaustive = true;
};

struct GrowthFitOptions {
  std::size_t max_words_per_length = 20000;
  std::uint64_t seed = 1;
};

/// log of the monomial bound (tau/(e eta))^{p tau} e^{eta beta}.
inline double log_growth_envelope(double power, double tau, double eta, double beta_value) {
  return power * tau * std::log(tau / (std::exp(1.0) * eta)) + eta * beta_value;
}

/// Words of length r over `alphabet`: all of them when there are at most
/// `cap`, otherwise `cap` uniform samples drawn with `rng`.
std::vector<Word> enumerate_or_sample(const std::vector<Letter>& alphabet, std::size_t r, std::size_t cap,
                                      std::mt19937_64& rng, bool* exhaustive);

std::vector<GrowthFit> fit_growth_constants(const MouldSolver<Complex>& sol, const std::vector<Letter>& alphabet,
                                            std::size_t max_r, double tau, const std::function<double(std::size_t)>& eta,
                                            const GrowthFitOptions& opts = {});

}  // namespace mouldnf

#endif  // MOULDNF_SOLVER_HPP
