#ifndef MOULDNF_CLI_CONFIG_HPP
#define MOULDNF_CLI_CONFIG_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "mouldnf/alphabet.hpp"
#include "mouldnf/observable.hpp"

namespace mouldnf::cli {

/// Invalid configuration or command line; maps to exit code 2.
class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct Tolerances {
  double residual = 1e-9;       // relative mould-equation residual
  double alternal = 1e-10;      // relative shuffle-relation defect
  double moyal = 1e-10;         // Moyal rule against matrix commutators
  double tail_fraction = 1e-3;  // exponential truncation stop rule
  double table = 1e-9;          // relative deviation from a stored mould table
};

/// A run configuration. Every key is optional except freq.omega; see
/// README.md for the defaults.
struct RunConfig {
  std::filesystem::path base_dir;

  std::vector<double> omega;
  std::optional<std::vector<Rational>> omega_exact;  // set when all entries are integers or "p/q"
  double tau = 1.0;
  std::vector<IntVec> resonance_basis;
  int K = 40;
  std::optional<double> alpha;

  double rho = 1.0;
  double rho_prime = 0.5;
  std::size_t N = 2;
  std::string backend = "classical";
  double hbar = 0.1;
  std::vector<double> hbar_list;
  Observable B;
  std::optional<std::size_t> exponential_order;
  Tolerances tol;
  std::uint64_t seed = 1;

  std::optional<std::size_t> max_length;        // dump-moulds / verify word length, default N
  std::optional<std::vector<Letter>> alphabet;  // default: the k-support of B
  std::size_t samples = 100;                    // per sampled suite
  std::optional<std::filesystem::path> mould_table;
  int weyl_cutoff = 3;

  Frequency frequency(bool exact) const;
  std::vector<Letter> letters() const;
  std::size_t word_length() const { return max_length.value_or(N); }
  /// hbar_list when given, otherwise {hbar}.
  std::vector<double> hbars() const;
  /// The Diophantine constant: freq.alpha when given, otherwise computed on |k|_1 <= K.
  double diophantine_constant() const;
};

RunConfig parse_config(const nlohmann::json& j, const std::filesystem::path& base_dir);
RunConfig load_config(const std::filesystem::path& path);

}  // namespace mouldnf::cli

#endif  // MOULDNF_CLI_CONFIG_HPP
