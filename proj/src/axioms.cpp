#include "mouldnf/axioms.hpp"

#include <cmath>
#include <limits>

#include "mouldnf/classical.hpp"
#include "mouldnf/quantum.hpp"

namespace mouldnf {

namespace {

const double kE = std::exp(1.0);

struct Radii {
  double rho, rho_prime, rho_mid;
};

Radii sample_radii(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Radii r;
  r.rho = 0.2 + 1.8 * u(rng);
  r.rho_prime = r.rho * (0.05 + 0.9 * u(rng));
  r.rho_mid = r.rho_prime + (r.rho - r.rho_prime) * (0.05 + 0.95 * u(rng));
  return r;
}

std::size_t sample_dim(std::mt19937_64& rng, const SamplerOptions& opts) {
  return std::uniform_int_distribution<std::size_t>(1, opts.max_dim)(rng);
}

}  // namespace

void SuiteReport::record(const BoundReport& r) {
  ++samples;
  if (!r.holds) ++violations;
  double ratio = r.rhs > 0.0 ? r.lhs / r.rhs : (r.lhs > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
  if (samples == 1 || ratio > worst_ratio) {
    worst_ratio = ratio;
    worst = r;
  }
}

nlohmann::json to_json(const SuiteReport& s) {
  return {{"name", s.name},         {"samples", s.samples}, {"violations", s.violations},
          {"worst_ratio", s.worst_ratio}, {"passed", s.passed()}, {"worst", to_json(s.worst)}};
}

Observable sample_observable(std::mt19937_64& rng, std::size_t d, const SamplerOptions& opts) {
  std::uniform_int_distribution<int> comp(-opts.range, opts.range);
  std::uniform_int_distribution<std::size_t> count(1, opts.max_modes);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  Observable o(d);
  std::size_t n = count(rng);
  while (o.size() < n) {
    IntVec k(d), m(d);
    for (auto& v : k) v = comp(rng);
    for (auto& v : m) v = comp(rng);
    o.add(k, m, Complex(coef(rng), coef(rng)));
  }
  return o;
}

SuiteReport check_bracket_axiom(const BracketBackend& backend, std::size_t samples, std::uint64_t seed,
                                const SamplerOptions& opts) {
  std::mt19937_64 rng(seed);
  SuiteReport rep;
  rep.name = "bracket_axiom[" + backend.name() + "]";
  for (std::size_t i = 0; i < samples; ++i) {
    std::size_t d = sample_dim(rng, opts);
    Radii r = sample_radii(rng);
    Observable f = sample_observable(rng, d, opts);
    Observable g = sample_observable(rng, d, opts);
    double lhs = norm_rho(backend.bracket(f, g), r.rho_prime);
    double rhs = norm_rho(f, r.rho) * norm_rho(g, r.rho_mid) /
                 (kE * kE * (r.rho - r.rho_prime) * (r.rho_mid - r.rho_prime));
    rep.record(BoundReport::make(rep.name, lhs, rhs, {{"rho", r.rho}, {"rho_prime", r.rho_prime}, {"rho_mid", r.rho_mid}}));
  }
  return rep;
}

SuiteReport check_x0_axiom(const BracketBackend& backend, std::size_t samples, std::uint64_t seed,
                           const SamplerOptions& opts) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> w(-2.0, 2.0);
  SuiteReport rep;
  rep.name = "x0_axiom[" + backend.name() + "]";
  ScaleParams chi_source;
  for (std::size_t i = 0; i < samples; ++i) {
    std::size_t d = sample_dim(rng, opts);
    Radii r = sample_radii(rng);
    std::vector<double> omega(d);
    for (auto& v : omega) v = w(rng);
    Frequency freq(omega);
    Observable g = sample_observable(rng, d, opts);
    double lhs = norm_rho(backend.ad_x0(g, freq), r.rho_prime);
    double rhs = norm_rho(g, r.rho) * chi_source.chi(r.rho - r.rho_prime);
    rep.record(BoundReport::make(rep.name, lhs, rhs, {{"rho", r.rho}, {"rho_prime", r.rho_prime}}));
  }
  return rep;
}

SuiteReport check_iterated_bracket(const BracketBackend& backend, std::size_t max_depth, std::size_t samples,
                                   std::uint64_t seed, const SamplerOptions& opts) {
  std::mt19937_64 rng(seed);
  SuiteReport rep;
  rep.name = "iterated_bracket[" + backend.name() + "]";
  std::uniform_int_distribution<std::size_t> depth_dist(1, max_depth);
  SamplerOptions small = opts;
  small.max_modes = std::min<std::size_t>(opts.max_modes, 2);
  for (std::size_t i = 0; i < samples; ++i) {
    std::size_t d = sample_dim(rng, small);
    std::size_t depth = depth_dist(rng);
    Radii r = sample_radii(rng);
    Observable acc = sample_observable(rng, d, small);
    double prod = norm_rho(acc, r.rho);
    double fact = 1.0;
    for (std::size_t j = 1; j <= depth; ++j) {
      Observable x = sample_observable(rng, d, small);
      prod *= norm_rho(x, r.rho);
      acc = backend.bracket(x, acc);
      fact *= static_cast<double>(j);
    }
    double delta = r.rho - r.rho_prime;
    double lhs = norm_rho(acc, r.rho_prime) / fact;
    double rhs = std::pow(1.0 / (delta * delta), static_cast<double>(depth)) * prod;
    rep.record(BoundReport::make(rep.name, lhs, rhs,
                                 {{"rho", r.rho}, {"rho_prime", r.rho_prime}, {"depth", static_cast<double>(depth)}}));
  }
  return rep;
}

SuiteReport check_nested_defect(double hbar, std::size_t depth, std::size_t samples, std::uint64_t seed,
                                const SamplerOptions& opts) {
  if (depth < 2) throw std::invalid_argument("check_nested_defect: depth must be >= 2");
  std::mt19937_64 rng(seed);
  SuiteReport rep;
  rep.name = "nested_defect[depth=" + std::to_string(depth) + "]";
  QuantumBackend qu(hbar);
  ClassicalBackend cl;
  for (std::size_t i = 0; i < samples; ++i) {
    std::size_t d = sample_dim(rng, opts);
    Radii r = sample_radii(rng);
    Observable q = sample_observable(rng, d, opts);
    Observable c = q;
    double prod = norm_rho(q, r.rho);
    for (std::size_t j = 2; j <= depth; ++j) {
      Observable b = sample_observable(rng, d, opts);
      prod *= norm_rho(b, r.rho);
      q = qu.bracket(b, q);
      c = cl.bracket(b, c);
    }
    double delta = r.rho - r.rho_prime;
    double lhs = norm_rho(q - c, r.rho_prime);
    double n = static_cast<double>(depth);
    double rhs = hbar * hbar / 6.0 * std::pow((n + 2.0) / (kE * delta), n + 2.0) * prod;
    rep.record(BoundReport::make(rep.name, lhs, rhs, {{"rho", r.rho}, {"rho_prime", r.rho_prime}, {"hbar", hbar}}));
  }
  return rep;
}

SuiteReport check_operator_norm(double hbar, double rho, int cutoff, std::size_t samples, std::uint64_t seed,
                                const SamplerOptions& opts) {
  std::mt19937_64 rng(seed);
  SuiteReport rep;
  rep.name = "operator_norm";
  SamplerOptions o = opts;
  o.range = std::min(opts.range, cutoff - 1);
  for (std::size_t i = 0; i < samples; ++i) {
    std::size_t d = sample_dim(rng, o);
    Observable b = sample_observable(rng, d, o);
    double lhs = weyl_matrix(b, cutoff, hbar).spectral_norm();
    rep.record(BoundReport::make(rep.name, lhs, norm_rho(b, rho), {{"rho", rho}, {"hbar", hbar}}));
  }
  return rep;
}

SuiteReport check_moyal_validity(double hbar, int cutoff, double tol, std::size_t samples, std::uint64_t seed,
                                 const SamplerOptions& opts) {
  std::mt19937_64 rng(seed);
  SuiteReport rep;
  rep.name = "moyal_validity[hbar=" + std::to_string(hbar) + "]";
  for (std::size_t i = 0; i < samples; ++i) {
    std::size_t d = sample_dim(rng, opts);
    Observable f = sample_observable(rng, d, opts);
    Observable g = sample_observable(rng, d, opts);
    MoyalReport m = validate_moyal(f, g, cutoff, hbar);
    rep.record(BoundReport::make(rep.name, m.max_deviation, tol,
                                 {{"hbar", hbar}, {"columns", static_cast<double>(m.columns_compared)}}));
  }
  return rep;
}

BoundReport check_series_tail(const Observable& b, std::size_t N, const ScaleParams& params, const Frequency& freq,
                              const BracketBackend& backend, const GrowthData& growth, bool* condition_holds) {
  if (growth.fits.size() < N) throw std::invalid_argument("check_series_tail: growth data must reach N");
  const double half = 0.5 * params.delta();
  std::vector<double> tau(N, growth.tau), eps(N);
  for (std::size_t r = 1; r <= N; ++r) eps[r - 1] = epsilon_r(b, r, growth.eta[r - 1], growth.tau, params.rho, freq);
  double e = E_N(N, half, params.gamma, tau, growth.eta, growth.G(), eps);
  double threshold = 0.5 * params.delta() * params.delta() / (4.0 * params.gamma);
  if (condition_holds) *condition_holds = e <= threshold;

  NormalFormResult nf = normalize(b, N, params, freq, backend);
  ExpAdResult trunc = apply_exp_ad(nf.Y, ExtendedElement{1.0, b}, N, params, freq, backend);
  Observable diff = nf.Z + nf.E - trunc.value.obs;
  diff.prune();
  double lhs = norm_rho(diff, params.rho_prime);
  double csg = c_sg(N, params.rho, params.rho_prime, params.gamma, params.chi, norm_rho(b, params.rho));
  return BoundReport::make("series_tail", lhs, csg * std::pow(e, static_cast<double>(N + 1)),
                           {{"N", static_cast<double>(N)}, {"E", e}, {"threshold", threshold}, {"C_sg", csg}});
}

}  // namespace mouldnf
