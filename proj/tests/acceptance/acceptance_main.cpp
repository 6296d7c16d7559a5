// Acceptance checks: one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "mouldnf/axioms.hpp"
#include "mouldnf/classical.hpp"
#include "mouldnf/estimates.hpp"
#include "mouldnf/liealg.hpp"
#include "mouldnf/quantum.hpp"
#include "mouldnf/solver.hpp"

using namespace mouldnf;

namespace {

const double kPhi = (1.0 + std::sqrt(5.0)) / 2.0;

// Pinned tolerances.
const double kFloatResidualTol = 1e-9;
const double kAlternalTol = 1e-10;
const double kSlopeTolRemainder = 0.2;
const double kSlopeTolSemiclassical = 0.1;
const double kMoyalTol = 1e-10;
const double kToyNorm = 0.01;
const double kRho = 1.0;
const double kRhoPrime = 0.5;

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& title, double limit_seconds, const std::function<Outcome()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out.pass = false;
    out.detail = std::string("exception: ") + e.what();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::ostringstream os;
  os.precision(4);
  os << out.detail << "; " << secs << " s";
  if (limit_seconds > 0.0 && secs >= limit_seconds) {
    out.pass = false;
    os << " (limit " << limit_seconds << " s)";
  }
  if (!out.pass) ++failures;
  std::printf("%s criterion %d: %s [%s]\n", out.pass ? "PASS" : "FAIL", id, title.c_str(), os.str().c_str());
  std::fflush(stdout);
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

Observable toy_b(double norm) {
  Observable b(2);
  b.add({1, 0}, {0, 1}, Complex(0.6, 0.2));
  b.add({-1, 0}, {1, 0}, Complex(-0.4, 0.3));
  b.add({0, 1}, {1, 1}, Complex(0.2, -0.5));
  b.add({-1, -1}, {0, 1}, Complex(0.3, 0.3));
  return (norm / norm_rho(b, kRho)) * b;
}

const std::vector<double> kEpsilons{1e-1, std::pow(10.0, -1.5), 1e-2};
const std::vector<double> kHbars{1e-1, std::pow(10.0, -1.5), 1e-2};

Frequency golden() { return Frequency({1.0, kPhi}); }

}  // namespace

int main() {
  report(1, "mould-equation residual", 10.0, [] {
    Frequency rat = Frequency::rational({1, 2}, {{2, -1}});
    std::vector<Letter> ex{{{1, 0}}, {{-1, 0}}, {{2, -1}}};
    auto er = verify_equation(MouldSolver<GaussianRational>(rat), 4, ex);
    std::vector<Letter> fl{{{1, 0}}, {{0, 1}}, {{-1, -1}}};
    auto fr = verify_equation(MouldSolver<Complex>(golden()), 5, fl);
    Outcome o;
    o.pass = er.residual_exactly_zero && er.gauge_exactly_zero && er.nabla_f_exactly_zero &&
             fr.max_relative_residual <= kFloatResidualTol && fr.max_relative_gauge <= kFloatResidualTol &&
             fr.nabla_f_exactly_zero;
    o.detail = "exact: " + std::to_string(er.words_checked) + " words, residual " +
               (er.residual_exactly_zero ? "0" : "nonzero") + "; float: " + std::to_string(fr.words_checked) +
               " words, max relative " + fmt(fr.max_relative_residual);
    return o;
  });

  report(2, "alternality of F and G", 10.0, [] {
    std::vector<Letter> fl{{{1, 0}}, {{0, 1}}, {{-1, -1}}};
    MouldSolver<Complex> sol(golden());
    auto f = check_alternal(sol.F(), 4, fl, kAlternalTol);
    auto g = check_alternal(sol.G(), 4, fl, kAlternalTol);
    Frequency rat = Frequency::rational({1, 2}, {{2, -1}});
    std::vector<Letter> ex{{{1, 0}}, {{-1, 0}}, {{2, -1}}};
    MouldSolver<GaussianRational> esol(rat);
    auto fe = check_alternal(esol.F(), 4, ex);
    auto ge = check_alternal(esol.G(), 4, ex);
    Outcome o;
    o.pass = f.passed() && g.passed() && fe.passed() && ge.passed();
    o.detail = std::to_string(f.pairs_checked) + " pairs; float max relative F " + fmt(f.max_relative) + ", G " +
               fmt(g.max_relative) + "; exact violations " + std::to_string(fe.violations.size() + ge.violations.size());
    return o;
  });

  report(3, "closed-form fixtures", 0.0, [] {
    using Q = GaussianRational;
    Frequency rat = Frequency::rational({1, 2}, {{2, -1}});
    MouldSolver<Q> sol(rat);
    Q lam(Rational(0), Rational(1));
    auto r0 = sol.solve(Word{{2, -1}});
    auto r1 = sol.solve(Word{{1, 0}});
    auto r2 = sol.solve(Word{{1, 0}, {-1, 0}});
    bool ok = r0.F == Q(1) && r0.S == Q(0) && r0.N == Q(0);
    ok = ok && r1.F == Q(0) && r1.S == Q(1) / lam && r1.N == Q(1) / lam;
    ok = ok && r2.F == Q(-1) / lam && r2.S == Q(-1) / (Q(2) * lam * lam) && sol.g_of(Word{{1, 0}, {-1, 0}}) == Q(0);
    return Outcome{ok, "F0=1, S0=N0=0, F^l=0, S^l=N^l=1/l, F^{l,-l}=-1/l, S^{l,-l}=-1/(2l^2), G^{l,-l}=0 exactly"};
  });

  report(4, "normal form commutes with X0", 0.0, [] {
    ClassicalBackend cl;
    Frequency gold = golden();
    ScaleParams p = ScaleParams::standard(kRho, kRhoPrime);
    Observable b = toy_b(kToyNorm);
    Outcome o;
    std::string d;
    for (std::size_t n = 1; n <= 3; ++n) {
      auto r = normalize(b, n, p, gold, cl);
      bool lattice = true;
      for (const auto& [mode, v] : r.Z.coeffs()) lattice = lattice && gold.in_resonance_lattice(mode.k);
      bool ok = lattice && r.x0_residual == 0.0 && (n == 1 || !r.Z.empty());
      o.pass = o.pass && ok;
      d += "N=" + std::to_string(n) + ": " + std::to_string(r.Z.size()) + " modes, [X0,Z] " + fmt(r.x0_residual) + "; ";
    }
    o.detail = d.substr(0, d.size() - 2);
    return o;
  });

  report(5, "remainder order and explicit bound", 120.0, [] {
    ClassicalBackend cl;
    Frequency gold = golden();
    ScaleParams p = ScaleParams::standard(kRho, kRhoPrime);
    double alpha = diophantine_alpha(gold, 1.0, 40);
    Observable base = toy_b(kToyNorm);
    GrowthData growth = growth_data(base, gold, kRho, 1.0, alpha, 9);
    Outcome o;
    std::string d;
    for (std::size_t n = 1; n <= 3; ++n) {
      std::vector<double> eps, en;
      bool bounds = true, regime = true;
      double worst = 0.0;
      for (double e : kEpsilons) {
        Observable b = e * base;
        auto r = normalize(b, n, p, gold, cl);
        eps.push_back(e);
        en.push_back(r.norms.at("E_rho_prime"));
        auto check = verify_remainder_bound(r, b, p, growth);
        bounds = bounds && check.bound.holds;
        regime = regime && check.in_regime;
        worst = std::max(worst, check.bound.lhs / check.bound.rhs);
      }
      double slope = loglog_slope(eps, en);
      bool ok = std::abs(slope - static_cast<double>(n + 1)) <= kSlopeTolRemainder && bounds;
      o.pass = o.pass && ok;
      d += "N=" + std::to_string(n) + " slope " + fmt(slope) + (bounds ? " bound ok" : " bound violated") +
           " (max ||E||/(D||B||^{N+1}) " + fmt(worst) + ")" +
           (regime ? "" : " (outside eps regime)") + "; ";
    }
    o.detail = d.substr(0, d.size() - 2);
    return o;
  });

  report(6, "Moyal bracket matches the Weyl commutator", 30.0, [] {
    SamplerOptions s;
    s.max_dim = 2;
    s.max_modes = 1;
    std::size_t pairs = 0, bad = 0;
    double worst = 0.0;
    std::uint64_t seed = 600;
    for (double h : {0.5, 0.1}) {
      auto rep = check_moyal_validity(h, 12, kMoyalTol, 20, seed++, s);
      pairs += rep.samples;
      bad += rep.violations;
      worst = std::max(worst, rep.worst.lhs);
    }
    return Outcome{bad == 0 && pairs == 40, std::to_string(pairs) + " pairs, max deviation " + fmt(worst)};
  });

  report(7, "semiclassical gap", 120.0, [] {
    Frequency gold = golden();
    ScaleParams p = ScaleParams::standard(kRho, kRhoPrime);
    double alpha = diophantine_alpha(gold, 1.0, 40);
    Observable b = toy_b(kToyNorm);
    GrowthData growth = growth_data(b, gold, kRho, 1.0, alpha, 3);
    Outcome o;
    auto one = verify_semiclassical(b, 1, p, gold, kHbars, growth.fits[0].F_r, 1.0, alpha);
    o.pass = one.all_zero;
    std::string d = std::string("N=1 ") + (one.all_zero ? "g=0" : "g nonzero") + "; ";
    for (std::size_t n = 2; n <= 3; ++n) {
      auto r = verify_semiclassical(b, n, p, gold, kHbars, growth.fits[n - 1].F_r, 1.0, alpha);
      bool bounds = true;
      double worst = 0.0;
      for (const auto& pt : r.points) {
        bounds = bounds && pt.bound.holds && pt.g > 0.0;
        worst = std::max(worst, pt.bound.lhs / pt.bound.rhs);
      }
      bool ok = r.slope && std::abs(*r.slope - 2.0) <= kSlopeTolSemiclassical && bounds;
      o.pass = o.pass && ok;
      d += "N=" + std::to_string(n) + " slope " + (r.slope ? fmt(*r.slope) : std::string("n/a")) +
           (bounds ? " bound ok" : " bound violated") + " (max g/(hbar^2 C_N ||B||^N) " + fmt(worst) + "); ";
    }
    o.detail = d.substr(0, d.size() - 2);
    return o;
  });

  report(8, "Banach-scale axioms", 30.0, [] {
    ClassicalBackend cl;
    QuantumBackend q1(0.5), q2(0.1);
    SamplerOptions s;
    s.max_dim = 2;
    std::vector<SuiteReport> suites{
        check_bracket_axiom(cl, 500, 801, s),        check_x0_axiom(cl, 500, 802, s),
        check_bracket_axiom(q1, 250, 803, s),        check_bracket_axiom(q2, 250, 804, s),
        check_x0_axiom(q1, 500, 805, s),             check_iterated_bracket(cl, 4, 500, 806, s),
        check_iterated_bracket(q1, 4, 500, 807, s),
    };
    bool ok = true;
    std::string d;
    for (const auto& r : suites) {
      ok = ok && r.passed();
      d += r.name + " " + std::to_string(r.violations) + "/" + std::to_string(r.samples) + "; ";
    }
    return Outcome{ok, d.substr(0, d.size() - 2)};
  });

  report(9, "nested Moyal-Poisson defect", 0.0, [] {
    SamplerOptions s;
    s.max_dim = 2;
    s.max_modes = 3;
    bool ok = true;
    std::string d;
    std::uint64_t seed = 900;
    for (std::size_t depth : {2u, 3u}) {
      auto r = check_nested_defect(0.1, depth, 100, seed++, s);
      ok = ok && r.passed();
      d += "depth " + std::to_string(depth) + ": " + std::to_string(r.violations) + "/" + std::to_string(r.samples) +
           " violations, worst ratio " + fmt(r.worst_ratio) + "; ";
    }
    return Outcome{ok, d.substr(0, d.size() - 2)};
  });

  report(10, "operator norm dominated by the analytic norm", 0.0, [] {
    SamplerOptions s;
    s.max_dim = 2;
    s.range = 3;
    auto r = check_operator_norm(0.1, 0.1, 6, 50, 1000, s);
    return Outcome{r.passed(), std::to_string(r.violations) + "/" + std::to_string(r.samples) +
                                   " violations, worst ratio " + fmt(r.worst_ratio)};
  });

  return failures == 0 ? 0 : 1;
}
