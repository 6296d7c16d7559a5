#ifndef MOULDNF_AXIOMS_HPP
#define MOULDNF_AXIOMS_HPP

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>

#include <json.hpp>

#include "mouldnf/backend.hpp"
#include "mouldnf/estimates.hpp"

namespace mouldnf {

/// Outcome of a sampled inequality suite.
struct SuiteReport {
  std::string name;
  std::size_t samples = 0;
  std::size_t violations = 0;
  double worst_ratio = 0.0;  // max lhs / rhs over the samples
  BoundReport worst;         // the sample attaining worst_ratio

  bool passed() const { return samples > 0 && violations == 0; }
  void record(const BoundReport& r);
};

nlohmann::json to_json(const SuiteReport& s);

struct SamplerOptions {
  std::size_t max_dim = 2;
  std::size_t max_modes = 4;
  int range = 3;  // |k|_inf, |m|_inf
};

/// Random sparse observable with 1..max_modes modes in dimension `d`.
Observable sample_observable(std::mt19937_64& rng, std::size_t d, const SamplerOptions& opts);

/// ||[F,G]||_{rho'} <= ||F||_rho ||G||_{rho''} / (e^2 (rho - rho')(rho'' - rho')), 0 < rho' < rho'' <= rho.
SuiteReport check_bracket_axiom(const BracketBackend& backend, std::size_t samples, std::uint64_t seed,
                                const SamplerOptions& opts = {});

/// ||[X0, G]||_{rho'} <= ||G||_rho chi(rho - rho'); omega drawn with |omega_j| <= 2.
SuiteReport check_x0_axiom(const BracketBackend& backend, std::size_t samples, std::uint64_t seed,
                           const SamplerOptions& opts = {});

/// (1/d!) ||[X_d, ... [X_1, Y]...]||_{rho'} <= (gamma/(rho - rho')^2)^d prod ||X_i||_rho ||Y||_rho, depth 1..max_depth.
SuiteReport check_iterated_bracket(const BracketBackend& backend, std::size_t max_depth, std::size_t samples,
                                   std::uint64_t seed, const SamplerOptions& opts = {});

/// Nested Moyal minus nested Poisson bracket of `depth` observables against
/// (hbar^2/6) ((depth+2)/(e (rho - rho')))^{depth+2} prod ||B_k||_rho.
SuiteReport check_nested_defect(double hbar, std::size_t depth, std::size_t samples, std::uint64_t seed,
                                const SamplerOptions& opts = {});

/// Spectral norm of the Weyl matrix against ||B||_rho.
SuiteReport check_operator_norm(double hbar, double rho, int cutoff, std::size_t samples, std::uint64_t seed,
                                const SamplerOptions& opts = {});

/// validate_moyal deviation against tol.
SuiteReport check_moyal_validity(double hbar, int cutoff, double tol, std::size_t samples, std::uint64_t seed,
                                 const SamplerOptions& opts = {});

/// ||e^{ad_Y}X - e^{ad_Y}_N X||_{rho'} <= C^sg_{N+1} E^{N+1} with E = E_{N,delta/2},
/// checked on the normal form of B when the smallness condition holds.
BoundReport check_series_tail(const Observable& b, std::size_t N, const ScaleParams& params, const Frequency& freq,
                              const BracketBackend& backend, const GrowthData& growth, bool* condition_holds);

}  // namespace mouldnf

#endif  // MOULDNF_AXIOMS_HPP
