#ifndef MOULDNF_MOULD_HPP
#define MOULDNF_MOULD_HPP

#include <algorithm>
#include <cstddef>
#include <functional>
#include <limits>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mouldnf/alphabet.hpp"
#include "mouldnf/scalar.hpp"

namespace mouldnf {

/// A mould: a total function Word -> scalar, evaluated lazily and memoized.
///
/// Copies share the memo table. Evaluation is deterministic, so concurrent
/// callers may both compute a missing entry; whichever insert wins stores a
/// bit-identical value. Words longer than `support_hint` evaluate to zero
/// without consulting the evaluator.
template <class T>
class BasicMould {
public:
  using Scalar = T;
  using Evaluator = std::function<T(const Word&)>;

  BasicMould() : BasicMould([](const Word&) { return ScalarTraits<T>::zero(); }) {}

  explicit BasicMould(Evaluator fn, std::optional<std::size_t> support_hint = std::nullopt)
      : impl_(std::make_shared<Impl>(std::move(fn), support_hint)) {}

  T operator()(const Word& w) const {
    const Impl& im = *impl_;
    if (im.support && w.size() > *im.support) return ScalarTraits<T>::zero();
    {
      std::lock_guard<std::mutex> lock(im.mutex);
      auto it = im.memo.find(w);
      if (it != im.memo.end()) return it->second;
    }
    T value = im.fn(w);
    std::lock_guard<std::mutex> lock(im.mutex);
    return im.memo.emplace(w, std::move(value)).first->second;
  }

  std::optional<std::size_t> support_hint() const { return impl_->support; }

  static BasicMould zero() { return BasicMould(); }

  /// 1 on the empty word, 0 elsewhere.
  static BasicMould unit() {
    return BasicMould([](const Word& w) { return w.empty() ? ScalarTraits<T>::one() : ScalarTraits<T>::zero(); });
  }

  /// I: 1 on one-letter words, 0 elsewhere.
  static BasicMould identity() {
    return BasicMould([](const Word& w) { return w.size() == 1 ? ScalarTraits<T>::one() : ScalarTraits<T>::zero(); });
  }

  /// Values read from `table`; words absent from it evaluate to zero.
  static BasicMould table(std::unordered_map<Word, T, WordHash> values) {
    auto shared = std::make_shared<const std::unordered_map<Word, T, WordHash>>(std::move(values));
    return BasicMould([shared](const Word& w) {
      auto it = shared->find(w);
      return it == shared->end() ? ScalarTraits<T>::zero() : it->second;
    });
  }

private:
  struct Impl {
    Impl(Evaluator f, std::optional<std::size_t> s) : fn(std::move(f)), support(s) {}
    Evaluator fn;
    std::optional<std::size_t> support;
    mutable std::mutex mutex;
    mutable std::unordered_map<Word, T, WordHash> memo;
  };
  std::shared_ptr<const Impl> impl_;
};

using Mould = BasicMould<Complex>;
using ExactMould = BasicMould<GaussianRational>;

// ---------------------------------------------------------------------------
// Linear structure

template <class T>
BasicMould<T> operator+(const BasicMould<T>& a, const BasicMould<T>& b) {
  return BasicMould<T>([a, b](const Word& w) { return a(w) + b(w); });
}

template <class T>
BasicMould<T> operator-(const BasicMould<T>& a, const BasicMould<T>& b) {
  return BasicMould<T>([a, b](const Word& w) { return a(w) - b(w); });
}

template <class T>
BasicMould<T> operator-(const BasicMould<T>& a) {
  return BasicMould<T>([a](const Word& w) { return ScalarTraits<T>::zero() - a(w); });
}

template <class T>
BasicMould<T> scale(const BasicMould<T>& a, T c) {
  return BasicMould<T>([a, c](const Word& w) { return c * a(w); });
}

/// Words of length > n are set to zero.
template <class T>
BasicMould<T> truncate(const BasicMould<T>& a, std::size_t n) {
  return BasicMould<T>([a](const Word& w) { return a(w); }, n);
}

// ---------------------------------------------------------------------------
// Algebra

/// (M x N)(w) = sum over the r+1 splittings w = a b of M(a) N(b).
template <class T>
BasicMould<T> times(const BasicMould<T>& m, const BasicMould<T>& n) {
  return BasicMould<T>([m, n](const Word& w) {
    T acc = ScalarTraits<T>::zero();
    for (std::size_t i = 0; i <= w.size(); ++i) acc += m(w.prefix(i)) * n(w.suffix_from(i));
    return acc;
  });
}

template <class T>
BasicMould<T> commutator(const BasicMould<T>& m, const BasicMould<T>& n) {
  return times(m, n) - times(n, m);
}

/// Sigma(w) in the scalar type, exactly zero on resonant words.
template <class T>
T sigma_value(const Word& w, const Frequency& freq) {
  IntVec s = w.mode_sum(freq.dim());
  if (freq.in_resonance_lattice(s)) return ScalarTraits<T>::zero();
  return freq.letter_value<T>(s);
}

template <class T>
BasicMould<T> nabla(const BasicMould<T>& m, const Frequency& freq) {
  return BasicMould<T>([m, freq](const Word& w) {
    T s = sigma_value<T>(w, freq);
    if (ScalarTraits<T>::is_zero(s)) return ScalarTraits<T>::zero();
    return s * m(w);
  });
}

template <class T>
BasicMould<T> nabla1(const BasicMould<T>& m) {
  return BasicMould<T>([m](const Word& w) {
    if (w.empty()) return ScalarTraits<T>::zero();
    return ScalarTraits<T>::ratio(static_cast<long long>(w.size()), 1) * m(w);
  });
}

template <class T>
BasicMould<T> resonant_part(const BasicMould<T>& m, const Frequency& freq) {
  return BasicMould<T>([m, freq](const Word& w) {
    return is_resonant(w, freq) ? m(w) : ScalarTraits<T>::zero();
  });
}

namespace detail {

/// parts[k] = sum over decompositions of w into k nonempty consecutive
/// factors a^1 ... a^k of m(a^1)...m(a^k), for k = 0..r.
template <class T>
std::vector<T> composition_sums(const BasicMould<T>& m, const Word& w) {
  const std::size_t r = w.size();
  // table[k][j]: decompositions of w[0, j) into k parts
  std::vector<std::vector<T>> table(r + 1, std::vector<T>(r + 1, ScalarTraits<T>::zero()));
  table[0][0] = ScalarTraits<T>::one();
  std::vector<std::vector<T>> factor(r + 1, std::vector<T>(r + 1, ScalarTraits<T>::zero()));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j <= r; ++j) factor[i][j] = m(w.slice(i, j));
  for (std::size_t k = 1; k <= r; ++k)
    for (std::size_t j = k; j <= r; ++j) {
      T acc = ScalarTraits<T>::zero();
      for (std::size_t i = k - 1; i < j; ++i) {
        if (ScalarTraits<T>::is_zero(table[k - 1][i])) continue;
        acc += table[k - 1][i] * factor[i][j];
      }
      table[k][j] = acc;
    }
  std::vector<T> out(r + 1);
  for (std::size_t k = 0; k <= r; ++k) out[k] = table[k][r];
  return out;
}

inline long long factorial(std::size_t k) {
  if (k > 20) throw std::overflow_error("factorial overflow");
  long long f = 1;
  for (std::size_t i = 2; i <= k; ++i) f *= static_cast<long long>(i);
  return f;
}

}  // namespace detail

/// Mould exponential e^G = sum_k G^{xk}/k!; requires G(empty) = 0, so the
/// series terminates at k = r on a word of length r.
template <class T>
BasicMould<T> mexp(const BasicMould<T>& g, std::size_t max_r = std::numeric_limits<std::size_t>::max()) {
  if (!ScalarTraits<T>::is_zero(g(Word{}))) throw std::invalid_argument("mexp: G(empty) must vanish");
  return BasicMould<T>(
      [g](const Word& w) {
        auto parts = detail::composition_sums(g, w);
        T acc = ScalarTraits<T>::zero();
        for (std::size_t k = 0; k < parts.size(); ++k)
          acc += ScalarTraits<T>::ratio(1, detail::factorial(k)) * parts[k];
        return acc;
      },
      max_r);
}

/// Mould logarithm; requires S(empty) = 1.
template <class T>
BasicMould<T> mlog(const BasicMould<T>& s, std::size_t max_r = std::numeric_limits<std::size_t>::max()) {
  if (!(s(Word{}) == ScalarTraits<T>::one())) throw std::invalid_argument("mlog: S(empty) must equal 1");
  return BasicMould<T>(
      [s](const Word& w) {
        if (w.empty()) return ScalarTraits<T>::zero();
        auto parts = detail::composition_sums(s, w);
        T acc = ScalarTraits<T>::zero();
        for (std::size_t k = 1; k < parts.size(); ++k) {
          long long sign = (k % 2 == 1) ? 1 : -1;
          acc += ScalarTraits<T>::ratio(sign, static_cast<long long>(k)) * parts[k];
        }
        return acc;
      },
      max_r);
}

// ---------------------------------------------------------------------------
// Alternality

struct AlternalViolation {
  Word a;
  Word b;
  double abs_sum = 0.0;
  double scale = 0.0;
};

struct AlternalityReport {
  bool precondition_ok = true;  // M(empty) == 0
  std::size_t pairs_checked = 0;
  double max_relative = 0.0;
  std::vector<AlternalViolation> violations;

  bool passed() const { return precondition_ok && violations.empty(); }
};

namespace detail {

/// Calls visit(lam) for every interleaving of a and b (with multiplicity).
void for_each_shuffle(const Word& a, const Word& b, const std::function<void(const Word&)>& visit);

}  // namespace detail

/// Shuffle relations sum_lam sh(a,b;lam) M(lam) = 0 for all nonempty a, b
/// over `alphabet` with r(a)+r(b) <= max_r. In floating point a relation is
/// violated when |sum| > tol * max(sum |M(lam)|, max |M| over words of
/// length <= r(a)+r(b)); exact scalars require zero.
template <class T>
AlternalityReport check_alternal(const BasicMould<T>& m, std::size_t max_r, const std::vector<Letter>& alphabet,
                                 double tol = 1e-10) {
  AlternalityReport report;
  report.precondition_ok = ScalarTraits<T>::is_zero(m(Word{}));
  // Floor for the relative test: cancellations among values that are
  // themselves rounding residue would otherwise read as violations.
  double level = 0.0;
  for (std::size_t total = 1; total <= max_r; ++total) {
    for (const auto& w : words_of_length(alphabet, total)) level = std::max(level, ScalarTraits<T>::magnitude(m(w)));
    if (total == 1) continue;
    for (std::size_t ra = 1; ra < total; ++ra) {
      auto as = words_of_length(alphabet, ra);
      auto bs = words_of_length(alphabet, total - ra);
      for (const auto& a : as)
        for (const auto& b : bs) {
          T sum = ScalarTraits<T>::zero();
          double scale = 0.0;
          detail::for_each_shuffle(a, b, [&](const Word& lam) {
            T v = m(lam);
            scale += ScalarTraits<T>::magnitude(v);
            sum += v;
          });
          ++report.pairs_checked;
          double abs_sum = ScalarTraits<T>::magnitude(sum);
          bool bad;
          if constexpr (ScalarTraits<T>::exact) {
            bad = !ScalarTraits<T>::is_zero(sum);
          } else {
            bad = abs_sum > tol * std::max(scale, level);
          }
          double denom = std::max(scale, level);
          if (denom > 0.0) report.max_relative = std::max(report.max_relative, abs_sum / denom);
          if (bad) report.violations.push_back({a, b, abs_sum, scale});
        }
    }
  }
  return report;
}

}  // namespace mouldnf

#endif  // MOULDNF_MOULD_HPP
