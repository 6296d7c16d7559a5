#ifndef MOULDNF_ESTIMATES_HPP
#define MOULDNF_ESTIMATES_HPP

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mouldnf/liealg.hpp"
#include "mouldnf/solver.hpp"

namespace mouldnf {

/// lhs <= rhs checked with a 1e-12 relative slack.
struct BoundReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = true;
  std::map<std::string, double> inputs;

  static BoundReport make(std::string name, double lhs, double rhs, std::map<std::string, double> inputs = {});
};

nlohmann::json to_json(const BoundReport& r);
/// One compact JSON object per line.
std::string to_json_line(const BoundReport& r);

/// x < (tau/(e eta))^tau e^{eta x^{1/tau}}; equality at x = (tau/eta)^tau.
BoundReport magic_inequality(double x, double tau, double eta);

struct ConjugacyPrefactors {
  double F = 0.0;  // F_r (tau/(e eta))^{(r-1) tau}
  double G = 0.0;  // G_r (tau/(e eta))^{r tau}
};
ConjugacyPrefactors corconj_bounds(std::size_t r, double tau, double eta, double F_r, double G_r);

/// sum_{r=1}^N ((r-1)!/r) (gamma/delta^2)^{r-1} G_r (tau_r/(e eta_r))^{tau_r r} eps_r.
/// Lists are indexed by r-1.
double E_N(std::size_t N, double delta, double gamma, const std::vector<double>& tau, const std::vector<double>& eta,
           const std::vector<double>& G, const std::vector<double>& eps);

/// 2 (delta^2/(4 chi(delta/2)) + ||B||_rho) (4 gamma/delta^2)^{N+1}.
double c_sg(std::size_t N, double rho, double rho_prime, double gamma, const std::function<double(double)>& chi,
            double normB);

struct EpsStarD {
  double eps_star = 0.0;
  double D = 0.0;
};

/// The smallness threshold eps* and remainder constant D, with tau_r = tau.
EpsStarD eps_star_and_D(std::size_t N, double rho, double rho_prime, double gamma, double tau, double eta_inf_1N,
                        double eta_inf_NN2, double normB,
                        const std::function<double(double)>& chi = ScaleParams{}.chi);

/// Gamma_{hi,lo} = sum_{r=lo}^{hi} ((r-1)!/r) (gamma/delta^2)^{r-1} G_r (tau/(e eta_r))^{tau r}.
double gamma_sum(std::size_t lo, std::size_t hi, double delta, double gamma, double tau, const std::vector<double>& eta,
                 const std::vector<double>& G);

/// Constants for the torus applications: D = C^{sg'} Gamma_N^{N+1} + 2 N^N Gamma_{N^2,N},
/// eps = min(1, delta / (8 gamma Gamma_N)). C^{sg'} is c_sg with ||B|| replaced by 1.
struct DespConstants {
  double Gamma_N = 0.0;
  double Gamma_N2N = 0.0;
  double C_sg_prime = 0.0;
  double D = 0.0;
  double eps = 0.0;
};
DespConstants desp_constants(std::size_t N, const ScaleParams& params, double tau, const std::vector<double>& eta,
                             const std::vector<double>& G);

/// eta_r = rho alpha^{1/tau} 2^{-r}, r = 1..count (index r-1).
std::vector<double> default_etas(double rho, double alpha, double tau, std::size_t count);

/// C_N = F_N/(6N) (2^N tau/(e rho alpha^{1/tau}))^{(N-1) tau} ((N+2)/(e (rho - rho')))^{N+2}.
double semiclassical_constant(std::size_t N, double F_N, double tau, double alpha, double rho, double rho_prime);

// ---------------------------------------------------------------------------

/// Inputs shared by the verification drivers: Diophantine data and the
/// empirical growth constants of the mould fitted on B's alphabet.
struct GrowthData {
  double tau = 1.0;
  double alpha = 0.0;
  std::vector<double> eta;  // eta_r, index r-1
  std::vector<GrowthFit> fits;

  std::vector<double> F() const;
  std::vector<double> G() const;
};

/// Fits F_r, G_r for r = 1..max_r over the letters of B with eta_r = default_etas.
GrowthData growth_data(const Observable& b, const Frequency& freq, double rho, double tau, double alpha,
                       std::size_t max_r, const GrowthFitOptions& opts = {});

struct RemainderCheck {
  BoundReport bound;             // ||E_N||_{rho'} <= D ||B||_rho^{N+1}
  bool in_regime = false;        // ||B||_rho <= eps
  DespConstants constants;
};

/// Requires growth data up to r = N^2.
RemainderCheck verify_remainder_bound(const NormalFormResult& result, const Observable& b, const ScaleParams& params,
                                      const GrowthData& growth);

struct SemiclassicalPoint {
  double hbar = 0.0;
  double g = 0.0;
  BoundReport bound;  // g <= hbar^2 C_N ||B||^N
};

struct SemiclassicalReport {
  std::size_t N = 0;
  double C_N = 0.0;
  double normB = 0.0;
  std::vector<SemiclassicalPoint> points;
  std::optional<double> slope;  // least squares in log-log; needs >= 2 positive g values
  bool all_zero = true;
};

/// g(hbar) = || length-N part of F.B_[.] with Moyal brackets - the same with Poisson brackets ||_{rho'}.
SemiclassicalReport verify_semiclassical(const Observable& b, std::size_t N, const ScaleParams& params,
                                         const Frequency& freq, const std::vector<double>& hbars, double F_N,
                                         double tau, double alpha);

/// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace mouldnf

#endif  // MOULDNF_ESTIMATES_HPP
