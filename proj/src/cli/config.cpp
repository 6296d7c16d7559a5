#include "mouldnf/cli/config.hpp"

#include <fstream>
#include <set>

namespace mouldnf::cli {

namespace {

using nlohmann::json;

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw UsageError(where + " must be a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key())) throw UsageError("unknown key '" + it.key() + "' in " + where);
}

template <class T>
T get(const json& j, const std::string& key, const std::string& where) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw UsageError("bad value for '" + key + "' in " + where + ": " + e.what());
  }
}

double positive(double v, const std::string& name) {
  if (!(v > 0.0)) throw UsageError(name + " must be positive");
  return v;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError("invalid JSON in " + path.string() + ": " + e.what());
  }
}

void parse_freq(const json& f, RunConfig& c) {
  reject_unknown(f, {"omega", "tau", "resonance_basis", "K", "alpha"}, "freq");
  if (!f.contains("omega") || !f.at("omega").is_array() || f.at("omega").empty())
    throw UsageError("freq.omega must be a nonempty array");
  std::vector<Rational> exact;
  bool all_exact = true;
  for (const auto& v : f.at("omega")) {
    if (v.is_number_integer()) {
      exact.emplace_back(v.get<long long>());
      c.omega.push_back(v.get<double>());
    } else if (v.is_number()) {
      all_exact = false;
      c.omega.push_back(v.get<double>());
    } else if (v.is_string()) {
      Rational q;
      try {
        q = parse_rational(v.get<std::string>());
      } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("freq.omega: ") + e.what());
      }
      exact.push_back(q);
      c.omega.push_back(static_cast<double>(q));
    } else {
      throw UsageError("freq.omega entries must be numbers or \"p/q\" strings");
    }
  }
  if (all_exact) c.omega_exact = std::move(exact);
  if (f.contains("tau")) c.tau = get<double>(f, "tau", "freq");
  if (c.tau < 1.0) throw UsageError("freq.tau must be >= 1");
  if (f.contains("resonance_basis")) c.resonance_basis = get<std::vector<IntVec>>(f, "resonance_basis", "freq");
  for (const auto& k : c.resonance_basis)
    if (k.size() != c.omega.size()) throw UsageError("resonance basis vector has the wrong dimension");
  if (f.contains("K")) c.K = get<int>(f, "K", "freq");
  if (c.K < 1) throw UsageError("freq.K must be >= 1");
  if (f.contains("alpha") && !f.at("alpha").is_null()) c.alpha = positive(get<double>(f, "alpha", "freq"), "freq.alpha");
}

void parse_tolerances(const json& t, Tolerances& tol) {
  reject_unknown(t, {"residual", "alternal", "moyal", "tail_fraction", "table"}, "tolerances");
  if (t.contains("residual")) tol.residual = positive(get<double>(t, "residual", "tolerances"), "tolerances.residual");
  if (t.contains("alternal")) tol.alternal = positive(get<double>(t, "alternal", "tolerances"), "tolerances.alternal");
  if (t.contains("moyal")) tol.moyal = positive(get<double>(t, "moyal", "tolerances"), "tolerances.moyal");
  if (t.contains("tail_fraction"))
    tol.tail_fraction = positive(get<double>(t, "tail_fraction", "tolerances"), "tolerances.tail_fraction");
  if (t.contains("table")) tol.table = positive(get<double>(t, "table", "tolerances"), "tolerances.table");
}

}  // namespace

RunConfig parse_config(const json& j, const std::filesystem::path& base_dir) {
  reject_unknown(j,
                 {"freq", "scale", "N", "backend", "hbar", "hbar_list", "B", "exponential_order", "tolerances", "seed",
                  "max_length", "alphabet", "samples", "mould_table", "weyl_cutoff"},
                 "config");
  RunConfig c;
  c.base_dir = base_dir;
  if (!j.contains("freq")) throw UsageError("config needs 'freq'");
  parse_freq(j.at("freq"), c);
  const std::size_t d = c.omega.size();

  if (j.contains("scale")) {
    const json& s = j.at("scale");
    reject_unknown(s, {"rho", "rho_prime"}, "scale");
    if (s.contains("rho")) c.rho = get<double>(s, "rho", "scale");
    if (s.contains("rho_prime")) c.rho_prime = get<double>(s, "rho_prime", "scale");
  }
  if (!(c.rho > c.rho_prime && c.rho_prime > 0.0)) throw UsageError("scale needs rho > rho_prime > 0");

  if (j.contains("N")) c.N = get<std::size_t>(j, "N", "config");
  if (c.N < 1) throw UsageError("N must be >= 1");
  if (j.contains("backend")) c.backend = get<std::string>(j, "backend", "config");
  if (c.backend != "classical" && c.backend != "quantum")
    throw UsageError("backend must be \"classical\" or \"quantum\"");
  if (j.contains("hbar")) c.hbar = positive(get<double>(j, "hbar", "config"), "hbar");
  if (j.contains("hbar_list")) {
    c.hbar_list = get<std::vector<double>>(j, "hbar_list", "config");
    for (double h : c.hbar_list) positive(h, "hbar_list entry");
  }

  c.B = Observable(d);
  if (j.contains("B")) {
    json bj = j.at("B");
    if (bj.is_string()) bj = read_json_file(base_dir / bj.get<std::string>());
    try {
      c.B = observable_from_json(bj);
    } catch (const std::exception& e) {
      throw UsageError(std::string("B: ") + e.what());
    }
    if (c.B.dim() != d) throw UsageError("B has dimension " + std::to_string(c.B.dim()) + ", omega has " +
                                         std::to_string(d));
  }

  if (j.contains("exponential_order")) c.exponential_order = get<std::size_t>(j, "exponential_order", "config");
  if (j.contains("tolerances")) parse_tolerances(j.at("tolerances"), c.tol);
  if (j.contains("seed")) c.seed = get<std::uint64_t>(j, "seed", "config");
  if (j.contains("max_length")) c.max_length = get<std::size_t>(j, "max_length", "config");
  if (j.contains("alphabet")) {
    std::vector<Letter> letters;
    for (const auto& k : get<std::vector<IntVec>>(j, "alphabet", "config")) {
      if (k.size() != d) throw UsageError("alphabet letter has the wrong dimension");
      letters.push_back(Letter{k});
    }
    c.alphabet = std::move(letters);
  }
  if (j.contains("samples")) c.samples = get<std::size_t>(j, "samples", "config");
  if (c.samples < 1) throw UsageError("samples must be >= 1");
  if (j.contains("mould_table")) c.mould_table = base_dir / get<std::string>(j, "mould_table", "config");
  if (j.contains("weyl_cutoff")) c.weyl_cutoff = get<int>(j, "weyl_cutoff", "config");
  if (c.weyl_cutoff < 1) throw UsageError("weyl_cutoff must be >= 1");

  try {
    c.frequency(false);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("freq: ") + e.what());
  }
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  json j = read_json_file(path);
  std::filesystem::path base = path.parent_path();
  if (base.empty()) base = ".";
  return parse_config(j, base);
}

Frequency RunConfig::frequency(bool exact) const {
  if (exact) {
    if (!omega_exact) throw UsageError("--exact needs omega given as integers or \"p/q\" strings");
    return Frequency::rational(*omega_exact, resonance_basis, alpha, tau);
  }
  return Frequency(omega, resonance_basis, alpha, tau);
}

std::vector<Letter> RunConfig::letters() const {
  if (alphabet) return *alphabet;
  std::vector<Letter> out;
  for (const auto& k : B.k_support()) out.push_back(Letter{k});
  return out;
}

std::vector<double> RunConfig::hbars() const { return hbar_list.empty() ? std::vector<double>{hbar} : hbar_list; }

double RunConfig::diophantine_constant() const {
  if (alpha) return *alpha;
  return diophantine_alpha(frequency(false), tau, K);
}

}  // namespace mouldnf::cli
