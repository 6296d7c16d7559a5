#include "mouldnf/solver.hpp"

#include <algorithm>
#include <cmath>

namespace mouldnf {

std::vector<Word> enumerate_or_sample(const std::vector<Letter>& alphabet, std::size_t r, std::size_t cap,
                                      std::mt19937_64& rng, bool* exhaustive) {
  double count = std::pow(static_cast<double>(alphabet.size()), static_cast<double>(r));
  if (alphabet.empty() || count <= static_cast<double>(cap)) {
    if (exhaustive) *exhaustive = true;
    return words_of_length(alphabet, r);
  }
  if (exhaustive) *exhaustive = false;
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  std::vector<Word> out;
  out.reserve(cap);
  for (std::size_t s = 0; s < cap; ++s) {
    std::vector<Letter> letters(r);
    for (auto& l : letters) l = alphabet[pick(rng)];
    out.emplace_back(std::move(letters));
  }
  return out;
}

std::vector<GrowthFit> fit_growth_constants(const MouldSolver<Complex>& sol, const std::vector<Letter>& alphabet,
                                            std::size_t max_r, double tau, const std::function<double(std::size_t)>& eta,
                                            const GrowthFitOptions& opts) {
  std::mt19937_64 rng(opts.seed);
  Mould F = sol.F();
  Mould G = sol.G();
  std::vector<GrowthFit> fits;
  for (std::size_t r = 1; r <= max_r; ++r) {
    GrowthFit fit;
    fit.r = r;
    fit.tau = tau;
    fit.eta = eta(r);
    auto words = enumerate_or_sample(alphabet, r, opts.max_words_per_length, rng, &fit.exhaustive);
    fit.words = words.size();
    double best_f = -std::numeric_limits<double>::infinity();
    double best_g = -std::numeric_limits<double>::infinity();
    for (const Word& w : words) {
      double b = beta(w, tau, sol.frequency());
      double f = std::abs(F(w));
      double g = std::abs(G(w));
      if (f > 0.0)
        best_f = std::max(best_f, std::log(f) - log_growth_envelope(static_cast<double>(r - 1), tau, fit.eta, b));
      if (g > 0.0)
        best_g = std::max(best_g, std::log(g) - log_growth_envelope(static_cast<double>(r), tau, fit.eta, b));
    }
    fit.F_r = std::exp(best_f);
    fit.G_r = std::exp(best_g);
    fits.push_back(fit);
  }
  return fits;
}

}  // namespace mouldnf
