#include "mouldnf/backend.hpp"

#include <algorithm>
#include <unordered_map>

namespace mouldnf {

double poisson_constant(const Mode& a, const Mode& b) {
  long long s = 0;
  for (std::size_t j = 0; j < a.k.size(); ++j)
    s += static_cast<long long>(a.k[j]) * b.m[j] - static_cast<long long>(a.m[j]) * b.k[j];
  return static_cast<double>(s);
}

Observable BracketBackend::bracket(const Observable& f, const Observable& g) const {
  f.check_dimension(g);
  const std::size_t d = f.dim();
  // Accumulate in a hash map, then move into the ordered result. Sums per
  // target mode are formed in the fixed (f, g) iteration order.
  std::unordered_map<Mode, Complex, ModeHash> acc;
  acc.reserve(f.size() * g.size());
  Mode target{IntVec(d), IntVec(d)};
  for (const auto& [a, fa] : f.coeffs()) {
    for (const auto& [b, gb] : g.coeffs()) {
      double c = structure_constant(a, b);
      if (c == 0.0) continue;
      for (std::size_t j = 0; j < d; ++j) {
        target.k[j] = a.k[j] + b.k[j];
        target.m[j] = a.m[j] + b.m[j];
      }
      acc[target] += c * fa * gb;
    }
  }
  std::vector<std::pair<Mode, Complex>> sorted(acc.begin(), acc.end());
  std::sort(sorted.begin(), sorted.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  Observable out(d);
  for (auto& [mode, v] : sorted) out.add(mode, v);
  out.prune();
  out.set_real_flag(f.real_flag() && g.real_flag());
  return out;
}

Complex BracketBackend::ad_x0_eigen(const IntVec& k, const Frequency& freq) const {
  if (freq.in_resonance_lattice(k)) return {};
  return freq.letter_value<Complex>(k);
}

Observable BracketBackend::ad_x0(const Observable& g, const Frequency& freq) const {
  if (g.dim() != freq.dim()) throw std::invalid_argument("observable and frequency dimension mismatch");
  Observable out(g.dim());
  for (const auto& [mode, b] : g.coeffs()) out.add(mode, ad_x0_eigen(mode.k, freq) * b);
  out.set_real_flag(g.real_flag());
  return out;
}

}  // namespace mouldnf
