#include "mouldnf/liealg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mouldnf/solver.hpp"

namespace mouldnf {

ScaleParams ScaleParams::standard(double rho, double rho_prime) {
  ScaleParams p;
  p.rho = rho;
  p.rho_prime = rho_prime;
  p.validate();
  return p;
}

void ScaleParams::validate() const {
  if (!(rho_prime > 0.0) || !(rho_prime < rho)) throw std::invalid_argument("scale parameters need 0 < rho' < rho");
  if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
  if (!chi) throw std::invalid_argument("chi must be set");
}

const Observable& LetterDecomposition::slice(const Letter& l) const {
  auto it = std::lower_bound(letters.begin(), letters.end(), l);
  if (it == letters.end() || !(*it == l)) throw std::invalid_argument("letter not in the decomposition");
  return slices[static_cast<std::size_t>(it - letters.begin())];
}

LetterDecomposition decompose(const Observable& b) {
  LetterDecomposition dec;
  dec.dim = b.dim();
  for (const IntVec& k : b.k_support()) {
    dec.letters.push_back(Letter{k});
    dec.slices.push_back(b.slice(k));
  }
  return dec;
}

Observable comould(const Word& w, const LetterDecomposition& b, const BracketBackend& backend) {
  Observable acc(b.dim);
  if (w.empty()) return acc;
  acc = b.slice(w[0]);
  for (std::size_t i = 1; i < w.size(); ++i) acc = backend.bracket(b.slice(w[i]), acc);
  return acc;
}

namespace {

/// Depth-first enumeration of words in lexicographic letter order; the
/// comould of each word is built from the comould of its prefix.
void contract_dfs(const Mould& m, const LetterDecomposition& dec, const BracketBackend& backend, std::size_t max_r,
                  std::vector<Letter>& word, const Observable& prefix_comould, std::vector<Observable>& out) {
  for (std::size_t li = 0; li < dec.letters.size(); ++li) {
    word.push_back(dec.letters[li]);
    Observable c = word.size() == 1 ? dec.slices[li] : backend.bracket(dec.slices[li], prefix_comould);
    if (!c.empty()) {
      const std::size_t r = word.size();
      Complex v = m(Word(word));
      if (v != Complex{}) {
        Observable term = c;
        term *= v / static_cast<double>(r);
        out[r - 1] += term;
      }
      if (r < max_r) contract_dfs(m, dec, backend, max_r, word, c, out);
    }
    word.pop_back();
  }
}

}  // namespace

std::vector<Observable> contract_by_length(const Mould& m, const Observable& b, std::size_t max_r,
                                           const BracketBackend& backend) {
  std::vector<Observable> out(max_r, Observable(b.dim()));
  if (max_r == 0 || b.empty()) return out;
  LetterDecomposition dec = decompose(b);
  std::vector<Letter> word;
  contract_dfs(m, dec, backend, max_r, word, Observable(b.dim()), out);
  for (auto& o : out) o.prune();
  return out;
}

Observable contract(const Mould& m, const Observable& b, std::size_t max_r, const BracketBackend& backend) {
  Observable total(b.dim());
  for (const auto& part : contract_by_length(m, b, max_r, backend)) total += part;
  total.prune();
  return total;
}

ExtendedElement ad(const Observable& y, const ExtendedElement& x, const Frequency& freq,
                   const BracketBackend& backend) {
  ExtendedElement out;
  out.obs = backend.bracket(y, x.obs);
  if (x.x0 != Complex{}) {
    Observable t = backend.ad_x0(y, freq);
    t *= -x.x0;
    out.obs += t;
  }
  out.obs.prune();
  return out;
}

ExpAdResult apply_exp_ad(const Observable& y, const ExtendedElement& x, std::size_t order, const ScaleParams& params,
                         const Frequency& freq, const BracketBackend& backend) {
  params.validate();
  ExpAdResult res;
  res.value = x;
  ExtendedElement term = x;
  for (std::size_t d = 1; d <= order; ++d) {
    term = ad(y, term, freq, backend);
    term.obs *= Complex(1.0 / static_cast<double>(d));
    term.x0 = 0.0;
    res.value.obs += term.obs;
    if (term.obs.empty()) break;
  }
  res.value.obs.prune();

  const double delta = params.delta();
  double q = params.gamma * norm_rho(y, params.rho) / (delta * delta);
  res.ratio = q;
  double lead = norm_rho(x.obs, params.rho) + std::abs(x.x0) * delta * delta / params.chi(delta);
  if (q >= 1.0)
    res.tail_bound = std::numeric_limits<double>::infinity();
  else
    res.tail_bound = lead * std::pow(q, static_cast<double>(order + 1)) / (1.0 - q);
  return res;
}

namespace {

using Graded = std::map<std::size_t, Observable>;

void add_graded(Graded& g, std::size_t deg, const Observable& o, std::size_t cap, std::size_t dim) {
  if (o.empty() || (cap && deg > cap)) return;
  auto it = g.find(deg);
  if (it == g.end()) it = g.emplace(deg, Observable(dim)).first;
  it->second += o;
}

double prune_weighted(Observable& o, double rho, double floor) {
  double dropped = 0.0;
  Observable kept(o.dim());
  for (const auto& [mode, b] : o.coeffs()) {
    double w = std::abs(b) * std::exp(rho * (l1_norm(mode.m) + 2.0 * l1_norm(mode.k)));
    if (w < floor)
      dropped += w;
    else
      kept.add(mode, b);
  }
  o = std::move(kept);
  return dropped;
}

}  // namespace

NormalFormResult normalize(const Observable& b, std::size_t N, const ScaleParams& params, const Frequency& freq,
                           const BracketBackend& backend, const NormalizeOptions& opts) {
  MouldSolver<Complex> solver(freq);
  return normalize(b, N, solver.F(), solver.G(), params, freq, backend, opts);
}

NormalFormResult normalize(const Observable& b, std::size_t N, const Mould& F, const Mould& G,
                           const ScaleParams& params, const Frequency& freq, const BracketBackend& backend,
                           const NormalizeOptions& opts) {
  if (N < 1) throw std::invalid_argument("normalize: N must be >= 1");
  params.validate();
  if (b.dim() != freq.dim()) throw std::invalid_argument("perturbation and frequency dimension mismatch");
  const std::size_t dim = b.dim();

  NormalFormResult res;
  res.N = N;
  res.backend = backend.name();
  res.degree_cap = opts.degree_cap;

  res.Z_by_length = contract_by_length(F, b, N, backend);
  res.Y_by_length = contract_by_length(G, b, N, backend);
  res.Z = Observable(dim);
  res.Y = Observable(dim);
  for (const auto& z : res.Z_by_length) res.Z += z;
  for (const auto& y : res.Y_by_length) res.Y += y;
  res.Z.prune();
  res.Y.prune();

  const double delta = params.delta();
  const double rho_mid = params.rho_mid();
  const double normB = norm_rho(b, params.rho);
  double q = 4.0 * params.gamma * norm_rho(res.Y, rho_mid) / (delta * delta);
  res.ratio = q;
  if (opts.check_domain && q >= 1.0)
    throw OutOfDomainError("normalize: exponential series out of domain, 4 gamma ||Y_N|| / (rho - rho')^2 = " +
                               std::to_string(q),
                           q);
  const double lead = delta * delta / (4.0 * params.chi(0.5 * delta)) + normB;

  // term_d = (1/d!) ad_Y^d (X0 + B), graded by degree. ad_Y X0 = -[X0, Y].
  const std::size_t cap = opts.degree_cap;
  Graded total;
  Graded term;
  add_graded(term, 1, b, cap, dim);
  add_graded(total, 1, b, cap, dim);
  bool x0_pending = true;

  const std::size_t min_order = opts.min_order ? opts.min_order : std::max<std::size_t>(2 * N, 12);
  std::size_t d = 0;
  double e_norm = 0.0;
  while (true) {
    ++d;
    Graded next;
    if (x0_pending) {
      for (std::size_t r = 1; r <= N; ++r) {
        Observable t = backend.ad_x0(res.Y_by_length[r - 1], freq);
        t *= Complex(-1.0);
        add_graded(next, r, t, cap, dim);
      }
      x0_pending = false;
    }
    for (const auto& [deg, t] : term)
      for (std::size_t r = 1; r <= N; ++r) {
        const Observable& yr = res.Y_by_length[r - 1];
        if (yr.empty()) continue;
        add_graded(next, deg + r, backend.bracket(yr, t), cap, dim);
      }
    double floor = 0.0;
    if (opts.prune_fraction > 0.0 && d >= N + 2 && total.count(N + 1))
      floor = opts.prune_fraction * norm_rho(total.at(N + 1), params.rho_prime);
    for (auto it = next.begin(); it != next.end();) {
      Observable& t = it->second;
      t *= Complex(1.0 / static_cast<double>(d));
      t.prune();
      if (floor > 0.0 && it->first > N + 1) res.pruned_mass += prune_weighted(t, params.rho_prime, floor);
      if (t.empty()) {
        it = next.erase(it);
        continue;
      }
      add_graded(total, it->first, t, cap, dim);
      ++it;
    }
    term = std::move(next);

    e_norm = 0.0;
    for (const auto& [deg, t] : total)
      if (deg > N) e_norm += norm_rho(t, params.rho_prime);
    double tail = lead * std::pow(q, static_cast<double>(d + 1)) / (1.0 - q);
    bool exhausted = term.empty() && res.pruned_mass == 0.0;
    if (exhausted) tail = 0.0;
    res.order = d;
    res.tail_bound = q < 1.0 ? tail : std::numeric_limits<double>::infinity();
    if (exhausted) break;
    if (d >= min_order && res.tail_bound <= opts.tail_fraction * e_norm) break;
    if (d >= opts.max_order) break;
  }

  res.E = Observable(dim);
  Observable low(dim);
  for (auto& [deg, t] : total) {
    if (deg > N)
      res.E += t;
    else
      low += t;
  }
  res.E.prune();
  low -= res.Z;
  res.cancellation_residual = norm_rho(low, params.rho_prime);
  res.x0_residual = norm_rho(backend.ad_x0(res.Z, freq), params.rho_prime);

  res.norms["B_rho"] = normB;
  res.norms["Z_rho_prime"] = norm_rho(res.Z, params.rho_prime);
  res.norms["Y_rho_prime"] = norm_rho(res.Y, params.rho_prime);
  res.norms["E_rho_prime"] = norm_rho(res.E, params.rho_prime);
  res.norms["Y_rho_mid"] = norm_rho(res.Y, rho_mid);
  return res;
}

}  // namespace mouldnf
