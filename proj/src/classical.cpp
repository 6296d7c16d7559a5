#include "mouldnf/classical.hpp"

#include <cmath>
#include <functional>

namespace mouldnf {

Observable poisson_bracket(const Observable& f, const Observable& g) { return ClassicalBackend{}.bracket(f, g); }

std::vector<HomogeneousPart> homogeneous_parts(const Observable& b, const Frequency& freq) {
  if (b.dim() != freq.dim()) throw std::invalid_argument("observable and frequency dimension mismatch");
  std::vector<HomogeneousPart> parts;
  for (const IntVec& k : b.k_support()) {
    HomogeneousPart* home = nullptr;
    for (auto& p : parts) {
      IntVec diff = add(k, negate(p.representative));
      if (freq.in_resonance_lattice(diff)) {
        home = &p;
        break;
      }
    }
    if (!home) {
      Complex lam = freq.in_resonance_lattice(k) ? Complex{} : freq.letter_value<Complex>(k);
      parts.push_back({k, lam, Observable(b.dim())});
      home = &parts.back();
    }
    home->part += b.slice(k);
  }
  for (auto& p : parts) p.part.set_real_flag(false);
  return parts;
}

double epsilon_r(const Observable& b, std::size_t r, double eta, double tau, double rho, const Frequency& freq) {
  if (r == 0) throw std::invalid_argument("epsilon_r: r must be >= 1");
  auto parts = homogeneous_parts(b, freq);
  if (parts.empty()) return 0.0;
  std::vector<Letter> letters;
  std::vector<double> norms;
  for (const auto& p : parts) {
    letters.push_back(Letter{p.representative});
    norms.push_back(norm_rho(p.part, rho));
  }
  double total = 0.0;
  std::vector<std::size_t> idx(r, 0);
  std::vector<Letter> w(r);
  while (true) {
    double prod = 1.0;
    for (std::size_t i = 0; i < r; ++i) {
      prod *= norms[idx[i]];
      w[i] = letters[idx[i]];
    }
    total += prod * std::exp(eta * beta(Word(w), tau, freq));
    std::size_t pos = r;
    while (pos > 0) {
      --pos;
      if (++idx[pos] < letters.size()) break;
      idx[pos] = 0;
      if (pos == 0) return total;
    }
  }
}

}  // namespace mouldnf
