#include "mouldnf/estimates.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "mouldnf/classical.hpp"
#include "mouldnf/quantum.hpp"

namespace mouldnf {

namespace {

const double kE = std::exp(1.0);

// log((r-1)!/r) + (r-1) log(gamma/delta^2)
double log_lie_prefactor(std::size_t r, double delta, double gamma) {
  double rr = static_cast<double>(r);
  return std::lgamma(rr) - std::log(rr) + (rr - 1.0) * std::log(gamma / (delta * delta));
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0)) throw std::invalid_argument(std::string(what) + " must be positive");
}

}  // namespace

BoundReport BoundReport::make(std::string name, double lhs, double rhs, std::map<std::string, double> inputs) {
  BoundReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.holds = lhs <= rhs * (1.0 + 1e-12);
  r.inputs = std::move(inputs);
  return r;
}

nlohmann::json to_json(const BoundReport& r) {
  nlohmann::json inputs = nlohmann::json::object();
  for (const auto& [k, v] : r.inputs) inputs[k] = v;
  return {{"name", r.name}, {"lhs", r.lhs}, {"rhs", r.rhs}, {"holds", r.holds}, {"inputs", inputs}};
}

std::string to_json_line(const BoundReport& r) { return to_json(r).dump(); }

BoundReport magic_inequality(double x, double tau, double eta) {
  require_positive(x, "x");
  require_positive(tau, "tau");
  require_positive(eta, "eta");
  double rhs = std::pow(tau / (kE * eta), tau) * std::exp(eta * std::pow(x, 1.0 / tau));
  return BoundReport::make("magic_inequality", x, rhs, {{"x", x}, {"tau", tau}, {"eta", eta}});
}

ConjugacyPrefactors corconj_bounds(std::size_t r, double tau, double eta, double F_r, double G_r) {
  if (r == 0) throw std::invalid_argument("corconj_bounds: r must be >= 1");
  require_positive(tau, "tau");
  require_positive(eta, "eta");
  double base = tau / (kE * eta);
  double rr = static_cast<double>(r);
  return {F_r * std::pow(base, (rr - 1.0) * tau), G_r * std::pow(base, rr * tau)};
}

double E_N(std::size_t N, double delta, double gamma, const std::vector<double>& tau, const std::vector<double>& eta,
           const std::vector<double>& G, const std::vector<double>& eps) {
  if (tau.size() < N || eta.size() < N || G.size() < N || eps.size() < N)
    throw std::invalid_argument("E_N: input lists shorter than N");
  require_positive(delta, "delta");
  double total = 0.0;
  for (std::size_t r = 1; r <= N; ++r) {
    double t = tau[r - 1], e = eta[r - 1];
    if (G[r - 1] == 0.0 || eps[r - 1] == 0.0) continue;
    double lg = log_lie_prefactor(r, delta, gamma) + t * static_cast<double>(r) * std::log(t / (kE * e));
    total += std::exp(lg) * G[r - 1] * eps[r - 1];
  }
  return total;
}

double c_sg(std::size_t N, double rho, double rho_prime, double gamma, const std::function<double(double)>& chi,
            double normB) {
  double delta = rho - rho_prime;
  require_positive(delta, "rho - rho'");
  double lead = delta * delta / (4.0 * chi(0.5 * delta)) + normB;
  return 2.0 * lead * std::pow(4.0 * gamma / (delta * delta), static_cast<double>(N + 1));
}

EpsStarD eps_star_and_D(std::size_t N, double rho, double rho_prime, double gamma, double tau, double eta_inf_1N,
                        double eta_inf_NN2, double normB, const std::function<double(double)>& chi) {
  if (N == 0) throw std::invalid_argument("eps_star_and_D: N must be >= 1");
  double delta = rho - rho_prime;
  require_positive(delta, "rho - rho'");
  require_positive(eta_inf_1N, "eta_inf_1N");
  const double n = static_cast<double>(N);
  double log_bracket = log_lie_prefactor(N, delta, gamma) + n * std::log(std::pow(2.0, n) * tau / (kE * eta_inf_1N));
  EpsStarD out;
  out.eps_star = delta * delta / (32.0 * gamma) * std::exp(-log_bracket);
  out.D = c_sg(N, rho, rho_prime, gamma, chi, normB) * std::exp((n + 1.0) * (std::log(4.0) + log_bracket));
  if (N >= 2) {
    require_positive(eta_inf_NN2, "eta_inf_NN2");
    const std::size_t n2 = N * N;
    const double nn = static_cast<double>(n2);
    double lg = n * std::log(n) + log_lie_prefactor(n2, delta, gamma) +
                nn * std::log(std::pow(2.0, nn) * tau / (kE * eta_inf_NN2));
    out.D += std::exp(lg);
  }
  return out;
}

double gamma_sum(std::size_t lo, std::size_t hi, double delta, double gamma, double tau, const std::vector<double>& eta,
                 const std::vector<double>& G) {
  if (hi > eta.size() || hi > G.size()) throw std::invalid_argument("gamma_sum: lists shorter than the upper index");
  double total = 0.0;
  for (std::size_t r = std::max<std::size_t>(lo, 1); r <= hi; ++r) {
    if (G[r - 1] == 0.0) continue;
    double lg = log_lie_prefactor(r, delta, gamma) + tau * static_cast<double>(r) * std::log(tau / (kE * eta[r - 1]));
    total += std::exp(lg) * G[r - 1];
  }
  return total;
}

DespConstants desp_constants(std::size_t N, const ScaleParams& params, double tau, const std::vector<double>& eta,
                             const std::vector<double>& G) {
  if (N == 0) throw std::invalid_argument("desp_constants: N must be >= 1");
  params.validate();
  const double delta = params.delta();
  DespConstants c;
  c.Gamma_N = gamma_sum(1, N, delta, params.gamma, tau, eta, G);
  c.Gamma_N2N = gamma_sum(N + 1, N * N, delta, params.gamma, tau, eta, G);
  c.C_sg_prime = c_sg(N, params.rho, params.rho_prime, params.gamma, params.chi, 1.0);
  const double n = static_cast<double>(N);
  c.D = c.C_sg_prime * std::pow(c.Gamma_N, n + 1.0) + 2.0 * std::pow(n, n) * c.Gamma_N2N;
  c.eps = c.Gamma_N > 0.0 ? std::min(1.0, delta / (8.0 * params.gamma * c.Gamma_N)) : 1.0;
  return c;
}

std::vector<double> default_etas(double rho, double alpha, double tau, std::size_t count) {
  require_positive(alpha, "alpha");
  std::vector<double> eta(count);
  double base = rho * std::pow(alpha, 1.0 / tau);
  for (std::size_t r = 1; r <= count; ++r) eta[r - 1] = base * std::ldexp(1.0, -static_cast<int>(r));
  return eta;
}

double semiclassical_constant(std::size_t N, double F_N, double tau, double alpha, double rho, double rho_prime) {
  require_positive(alpha, "alpha");
  const double n = static_cast<double>(N);
  double a = std::pow(2.0, n) * tau / (kE * rho * std::pow(alpha, 1.0 / tau));
  double b = (n + 2.0) / (kE * (rho - rho_prime));
  return F_N / (6.0 * n) * std::pow(a, (n - 1.0) * tau) * std::pow(b, n + 2.0);
}

// ---------------------------------------------------------------------------

std::vector<double> GrowthData::F() const {
  std::vector<double> out;
  for (const auto& f : fits) out.push_back(f.F_r);
  return out;
}

std::vector<double> GrowthData::G() const {
  std::vector<double> out;
  for (const auto& f : fits) out.push_back(f.G_r);
  return out;
}

GrowthData growth_data(const Observable& b, const Frequency& freq, double rho, double tau, double alpha,
                       std::size_t max_r, const GrowthFitOptions& opts) {
  GrowthData g;
  g.tau = tau;
  g.alpha = alpha;
  g.eta = default_etas(rho, alpha, tau, max_r);
  std::vector<Letter> alphabet;
  for (const auto& k : b.k_support()) alphabet.push_back(Letter{k});
  if (alphabet.empty()) {
    g.fits.resize(max_r);
    for (std::size_t r = 1; r <= max_r; ++r) {
      g.fits[r - 1].r = r;
      g.fits[r - 1].eta = g.eta[r - 1];
      g.fits[r - 1].tau = tau;
    }
    return g;
  }
  MouldSolver<Complex> sol(freq);
  auto eta = g.eta;
  g.fits = fit_growth_constants(
      sol, alphabet, max_r, tau, [eta](std::size_t r) { return eta[r - 1]; }, opts);
  return g;
}

RemainderCheck verify_remainder_bound(const NormalFormResult& result, const Observable& b, const ScaleParams& params,
                                      const GrowthData& growth) {
  const std::size_t N = result.N;
  if (growth.fits.size() < N * N) throw std::invalid_argument("verify_remainder_bound: growth data must reach N^2");
  RemainderCheck out;
  out.constants = desp_constants(N, params, growth.tau, growth.eta, growth.G());
  double normB = norm_rho(b, params.rho);
  out.in_regime = normB <= out.constants.eps;
  double lhs = norm_rho(result.E, params.rho_prime);
  double rhs = out.constants.D * std::pow(normB, static_cast<double>(N + 1));
  out.bound = BoundReport::make("remainder_bound", lhs, rhs,
                                {{"N", static_cast<double>(N)},
                                 {"normB", normB},
                                 {"D", out.constants.D},
                                 {"eps", out.constants.eps},
                                 {"Gamma_N", out.constants.Gamma_N},
                                 {"Gamma_N2N", out.constants.Gamma_N2N},
                                 {"in_regime", out.in_regime ? 1.0 : 0.0}});
  return out;
}

SemiclassicalReport verify_semiclassical(const Observable& b, std::size_t N, const ScaleParams& params,
                                         const Frequency& freq, const std::vector<double>& hbars, double F_N,
                                         double tau, double alpha) {
  if (N == 0) throw std::invalid_argument("verify_semiclassical: N must be >= 1");
  params.validate();
  SemiclassicalReport rep;
  rep.N = N;
  rep.normB = norm_rho(b, params.rho);
  rep.C_N = semiclassical_constant(N, F_N, tau, alpha, params.rho, params.rho_prime);
  MouldSolver<Complex> sol(freq);
  Mould F = sol.F();
  ClassicalBackend cl;
  Observable zc = contract_by_length(F, b, N, cl)[N - 1];
  std::vector<double> hs, gs;
  for (double h : hbars) {
    QuantumBackend qu(h);
    Observable zq = contract_by_length(F, b, N, qu)[N - 1];
    SemiclassicalPoint p;
    p.hbar = h;
    Observable diff = zq - zc;
    p.g = norm_rho(diff, params.rho_prime);
    p.bound = BoundReport::make("semiclassical_gap", p.g, h * h * rep.C_N * std::pow(rep.normB, static_cast<double>(N)),
                                {{"N", static_cast<double>(N)}, {"hbar", h}, {"C_N", rep.C_N}, {"normB", rep.normB}});
    if (p.g != 0.0) rep.all_zero = false;
    if (p.g > 0.0) {
      hs.push_back(h);
      gs.push_back(p.g);
    }
    rep.points.push_back(p);
  }
  if (hs.size() >= 2) rep.slope = loglog_slope(hs, gs);
  return rep;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("loglog_slope: need >= 2 matching points");
  double mx = 0.0, my = 0.0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  if (sxx == 0.0) throw std::invalid_argument("loglog_slope: x values coincide");
  return sxy / sxx;
}

}  // namespace mouldnf
