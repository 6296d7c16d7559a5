#include "mouldnf/cli/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <memory>

#include <json.hpp>

#include "mouldnf/axioms.hpp"
#include "mouldnf/classical.hpp"
#include "mouldnf/estimates.hpp"
#include "mouldnf/liealg.hpp"
#include "mouldnf/mould_io.hpp"
#include "mouldnf/quantum.hpp"
#include "mouldnf/solver.hpp"

namespace mouldnf::cli {

using nlohmann::json;

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

std::string csv_record(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    const std::string& f = fields[i];
    if (f.find_first_of(",\"\r\n") == std::string::npos) {
      out += f;
      continue;
    }
    out += '"';
    for (char c : f) {
      if (c == '"') out += '"';
      out += c;
    }
    out += '"';
  }
  return out + "\r\n";
}

namespace {

// Remainder-bound growth fits run to N^2; beyond this the fit dominates the run.
constexpr std::size_t kMaxRemainderN = 3;

std::unique_ptr<BracketBackend> make_backend(const std::string& name, double hbar) {
  if (name == "quantum") return std::make_unique<QuantumBackend>(hbar);
  return std::make_unique<ClassicalBackend>();
}

void check_word_budget(std::size_t letters, std::size_t max_r, std::size_t max_words) {
  double total = 0.0, layer = 1.0;
  for (std::size_t r = 1; r <= max_r; ++r) {
    layer *= static_cast<double>(letters);
    total += layer;
  }
  if (total > static_cast<double>(max_words))
    throw UsageError("word count " + format_double(total) + " exceeds --max-words " + std::to_string(max_words));
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path.string());
  out << content;
}

json omega_json(const RunConfig& c, bool exact) {
  json out = json::array();
  if (exact)
    for (const auto& q : *c.omega_exact) out.push_back(to_string(q));
  else
    for (double w : c.omega) out.push_back(w);
  return out;
}

json letters_json(const std::vector<Letter>& letters) {
  json out = json::array();
  for (const auto& l : letters) out.push_back(l.k);
  return out;
}

json norms_json(const std::map<std::string, double>& norms) {
  json out = json::object();
  for (const auto& [k, v] : norms) out[k] = v;
  return out;
}

GrowthFitOptions fit_options(const RunConfig& c, const RunOptions& o) {
  GrowthFitOptions g;
  g.max_words_per_length = std::min<std::size_t>(g.max_words_per_length, o.max_words);
  g.seed = c.seed;
  return g;
}

struct Check {
  json line;
  bool ok = true;
};

Check bound_line(const BoundReport& r, bool applies = true) {
  json j = to_json(r);
  j["kind"] = "bound";
  j["applies"] = applies;
  return {j, r.holds || !applies};
}

Check suite_line(const SuiteReport& s) {
  json j = to_json(s);
  j["kind"] = "suite";
  return {j, s.passed()};
}

NormalFormResult run_normalize(const RunConfig& c, const RunOptions& o, const Frequency& freq,
                               const BracketBackend& backend) {
  ScaleParams p = ScaleParams::standard(c.rho, c.rho_prime);
  NormalizeOptions no;
  no.tail_fraction = c.tol.tail_fraction;
  if (c.exponential_order) {
    no.min_order = *c.exponential_order;
    no.max_order = std::max(no.max_order, *c.exponential_order);
  }
  if (!o.exact) return normalize(c.B, c.N, p, freq, backend, no);
  MouldSolver<GaussianRational> es(freq);
  ExactMould ef = es.F(), eg = es.G();
  Mould f([ef](const Word& w) { return ef(w).to_complex(); });
  Mould g([eg](const Word& w) { return eg(w).to_complex(); });
  return normalize(c.B, c.N, f, g, p, freq, backend, no);
}

}  // namespace

int cmd_normalize(const RunConfig& c, const RunOptions& o, std::ostream& log) {
  Frequency freq = c.frequency(o.exact);
  check_word_budget(c.B.k_support().size(), c.N, o.max_words);
  auto backend = make_backend(c.backend, c.hbar);
  ScaleParams p = ScaleParams::standard(c.rho, c.rho_prime);

  json report = {{"N", c.N},
                 {"backend", backend->name()},
                 {"exact", o.exact},
                 {"omega", omega_json(c, o.exact)},
                 {"rho", c.rho},
                 {"rho_prime", c.rho_prime}};
  NormalFormResult r;
  try {
    r = run_normalize(c, o, freq, *backend);
  } catch (const OutOfDomainError& e) {
    report["error"] = "out_of_domain";
    report["message"] = e.what();
    report["ratio"] = e.ratio();
    write_file(o.out_dir / "normalize.json", report.dump(2) + "\n");
    log << "out of domain: ratio " << format_double(e.ratio()) << "\n";
    return kBoundViolation;
  }

  const double normB = norm_rho(c.B, c.rho);
  const double normZ = r.norms.at("Z_rho_prime");
  std::vector<Check> checks;
  checks.push_back(bound_line(BoundReport::make("exponential_ratio", r.ratio, 1.0)));
  checks.push_back(bound_line(BoundReport::make("exponential_tail", r.tail_bound,
                                                c.tol.tail_fraction * r.norms.at("E_rho_prime"),
                                                {{"order", static_cast<double>(r.order)}})));
  checks.push_back(bound_line(BoundReport::make("x0_residual", r.x0_residual, c.tol.residual * normZ)));
  checks.push_back(
      bound_line(BoundReport::make("cancellation_residual", r.cancellation_residual, c.tol.residual * normB)));

  json remainder = nullptr;
  if (c.N <= kMaxRemainderN) {
    Frequency ff = c.frequency(false);
    GrowthData growth = growth_data(c.B, ff, c.rho, c.tau, c.diophantine_constant(), c.N * c.N, fit_options(c, o));
    RemainderCheck rc = verify_remainder_bound(r, c.B, p, growth);
    checks.push_back(bound_line(rc.bound, rc.in_regime));
    remainder = {{"in_regime", rc.in_regime},
                 {"D", rc.constants.D},
                 {"eps", rc.constants.eps},
                 {"Gamma_N", rc.constants.Gamma_N}};
  }

  if (auto* q = dynamic_cast<QuantumBackend*>(backend.get())) {
    WeylMatrix wz = weyl_matrix(r.Z, c.weyl_cutoff, q->hbar());
    WeylMatrix wy = weyl_matrix(r.Y, c.weyl_cutoff, q->hbar());
    report["quantum"] = {{"hbar", q->hbar()},
                         {"cutoff", c.weyl_cutoff},
                         {"hermiticity_Z", wz.hermiticity_defect()},
                         {"hermiticity_Y", wy.hermiticity_defect()},
                         {"unitarity_exp_Y", unitarity_defect(wy)},
                         {"B_real", c.B.real_flag()}};
    checks.push_back(bound_line(BoundReport::make("operator_norm_Z", wz.spectral_norm(), normZ)));
    checks.push_back(
        bound_line(BoundReport::make("operator_norm_Y", wy.spectral_norm(), r.norms.at("Y_rho_prime"))));
  }

  bool ok = true;
  json bounds = json::array();
  for (const auto& ch : checks) {
    bounds.push_back(ch.line);
    ok = ok && ch.ok;
  }
  json z_len = json::array(), y_len = json::array();
  for (const auto& z : r.Z_by_length) z_len.push_back(norm_rho(z, c.rho_prime));
  for (const auto& y : r.Y_by_length) y_len.push_back(norm_rho(y, c.rho));
  report["Z"] = to_json(r.Z);
  report["Y"] = to_json(r.Y);
  report["E_modes"] = r.E.size();
  report["Z_by_length_rho_prime"] = z_len;
  report["Y_by_length_rho"] = y_len;
  report["norms"] = norms_json(r.norms);
  report["residuals"] = {{"x0", r.x0_residual}, {"cancellation", r.cancellation_residual}};
  report["exponential"] = {
      {"order", r.order}, {"tail_bound", r.tail_bound}, {"ratio", r.ratio}, {"pruned_mass", r.pruned_mass}};
  report["remainder"] = remainder;
  report["bounds"] = bounds;
  report["ok"] = ok;
  write_file(o.out_dir / "normalize.json", report.dump(2) + "\n");

  std::string csv = csv_record({"N", "backend", "exact", "norm_B_rho", "norm_Z_rho_prime", "norm_Y_rho_prime",
                                "norm_E_rho_prime", "x0_residual", "cancellation_residual", "order", "tail_bound",
                                "ratio", "pruned_mass", "ok"});
  csv += csv_record({std::to_string(c.N), backend->name(), o.exact ? "true" : "false", format_double(normB),
                     format_double(normZ), format_double(r.norms.at("Y_rho_prime")),
                     format_double(r.norms.at("E_rho_prime")), format_double(r.x0_residual),
                     format_double(r.cancellation_residual), std::to_string(r.order), format_double(r.tail_bound),
                     format_double(r.ratio), format_double(r.pruned_mass), ok ? "true" : "false"});
  write_file(o.out_dir / "normalize.csv", csv);
  log << "normalize: N=" << c.N << " ||E||=" << format_double(r.norms.at("E_rho_prime")) << (ok ? " ok" : " bound violated")
      << "\n";
  return ok ? kOk : kBoundViolation;
}

int cmd_dump_moulds(const RunConfig& c, const RunOptions& o, std::ostream& log) {
  Frequency freq = c.frequency(o.exact);
  std::vector<Letter> letters = c.letters();
  const std::size_t r = c.word_length();
  check_word_budget(letters.size(), r, o.max_words);
  std::vector<Word> words = letters.empty() ? std::vector<Word>{} : words_up_to(letters, r);

  json out = {{"omega", omega_json(c, o.exact)},
              {"exact", o.exact},
              {"alphabet", letters_json(letters)},
              {"max_length", r},
              {"words", words.size()}};
  if (o.exact) {
    MouldSolver<GaussianRational> sol(freq);
    out["F"] = dump_mould_table(sol.F(), words);
    out["S"] = dump_mould_table(sol.S(), words);
    out["N"] = dump_mould_table(sol.N(), words);
    out["G"] = dump_mould_table(sol.G(), words);
  } else {
    MouldSolver<Complex> sol(freq);
    out["F"] = dump_mould_table(sol.F(), words);
    out["S"] = dump_mould_table(sol.S(), words);
    out["N"] = dump_mould_table(sol.N(), words);
    out["G"] = dump_mould_table(sol.G(), words);
  }
  write_file(o.out_dir / "moulds.json", out.dump(2) + "\n");
  log << "dump-moulds: " << words.size() << " words\n";
  return kOk;
}

namespace {

/// Compares every table in a dumped file against freshly solved moulds.
std::vector<Check> mould_table_checks(const RunConfig& c, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open mould table " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError("invalid mould table " + path.string() + ": " + e.what());
  }
  const bool exact = j.value("exact", false);
  std::vector<Check> out;
  for (const char* name : {"F", "S", "N", "G"}) {
    if (!j.contains(name)) continue;
    const json& table = j.at(name);
    std::vector<Word> words;
    for (auto it = table.begin(); it != table.end(); ++it) words.push_back(Word::parse(it.key()));
    std::string check = std::string("mould_table_") + name;
    if (exact) {
      MouldSolver<GaussianRational> sol(c.frequency(true));
      ExactMould fresh = *name == 'F' ? sol.F() : *name == 'S' ? sol.S() : *name == 'N' ? sol.N() : sol.G();
      ExactMould stored = load_exact_mould_table(table);
      double mismatches = 0.0;
      for (const auto& w : words)
        if (!(stored(w) == fresh(w))) mismatches += 1.0;
      out.push_back(bound_line(BoundReport::make(check, mismatches, 0.0, {{"words", double(words.size())}})));
    } else {
      MouldSolver<Complex> sol(c.frequency(false));
      Mould fresh = *name == 'F' ? sol.F() : *name == 'S' ? sol.S() : *name == 'N' ? sol.N() : sol.G();
      Mould stored = load_mould_table(table);
      double worst = 0.0, scale = 0.0;
      for (const auto& w : words) {
        worst = std::max(worst, std::abs(stored(w) - fresh(w)));
        scale = std::max(scale, std::abs(fresh(w)));
      }
      out.push_back(
          bound_line(BoundReport::make(check, worst, c.tol.table * scale, {{"words", double(words.size())}})));
    }
  }
  if (out.empty()) throw UsageError("mould table " + path.string() + " has no F, S, N or G entries");
  return out;
}

}  // namespace

int cmd_verify(const RunConfig& c, const RunOptions& o, std::ostream& out) {
  Frequency freq = c.frequency(false);
  std::vector<Letter> letters = c.letters();
  const std::size_t len = c.word_length();
  check_word_budget(letters.size(), len, o.max_words);
  ScaleParams p = ScaleParams::standard(c.rho, c.rho_prime);
  std::vector<Check> checks;

  if (!letters.empty()) {
    MouldSolver<Complex> sol(freq);
    EquationReport eq = verify_equation(sol, len, letters);
    std::map<std::string, double> in{{"words", double(eq.words_checked)}};
    checks.push_back(bound_line(BoundReport::make("mould_equation_residual", eq.max_relative_residual,
                                                  c.tol.residual, in)));
    checks.push_back(bound_line(BoundReport::make("mould_gauge", eq.max_relative_gauge, c.tol.residual, in)));
    checks.push_back(bound_line(BoundReport::make("nabla_F", eq.nabla_f_exactly_zero ? 0.0 : eq.max_abs_nabla_f, 0.0, in)));
    auto af = check_alternal(sol.F(), len, letters, c.tol.alternal);
    auto ag = check_alternal(sol.G(), len, letters, c.tol.alternal);
    checks.push_back(bound_line(BoundReport::make("alternality_F", af.passed() ? af.max_relative : 1.0, c.tol.alternal,
                                                  {{"pairs", double(af.pairs_checked)}})));
    checks.push_back(bound_line(BoundReport::make("alternality_G", ag.passed() ? ag.max_relative : 1.0, c.tol.alternal,
                                                  {{"pairs", double(ag.pairs_checked)}})));
    if (o.exact) {
      MouldSolver<GaussianRational> es(c.frequency(true));
      EquationReport ee = verify_equation(es, len, letters);
      bool zero = ee.residual_exactly_zero && ee.gauge_exactly_zero && ee.nabla_f_exactly_zero;
      checks.push_back(bound_line(BoundReport::make("mould_equation_exact", zero ? 0.0 : 1.0, 0.0,
                                                    {{"words", double(ee.words_checked)}})));
      auto ef = check_alternal(es.F(), len, letters);
      auto eg = check_alternal(es.G(), len, letters);
      checks.push_back(bound_line(BoundReport::make(
          "alternality_exact", double(ef.violations.size() + eg.violations.size()) + (ef.precondition_ok ? 0 : 1) +
                                   (eg.precondition_ok ? 0 : 1), 0.0)));
    }
  }

  std::uint64_t seed = c.seed;
  ClassicalBackend cl;
  checks.push_back(suite_line(check_bracket_axiom(cl, c.samples, seed++)));
  checks.push_back(suite_line(check_x0_axiom(cl, c.samples, seed++)));
  checks.push_back(suite_line(check_iterated_bracket(cl, 4, c.samples, seed++)));
  for (double h : c.hbars()) {
    QuantumBackend q(h);
    checks.push_back(suite_line(check_bracket_axiom(q, c.samples, seed++)));
    checks.push_back(suite_line(check_x0_axiom(q, c.samples, seed++)));
    checks.push_back(suite_line(check_iterated_bracket(q, 4, c.samples, seed++)));
    for (std::size_t depth = 2; depth <= 3; ++depth)
      checks.push_back(suite_line(check_nested_defect(h, depth, c.samples, seed++)));
    checks.push_back(suite_line(check_operator_norm(h, c.rho, c.weyl_cutoff, c.samples, seed++)));
    SamplerOptions one;
    one.max_modes = 1;
    one.range = 2;
    checks.push_back(suite_line(
        check_moyal_validity(h, std::max(c.weyl_cutoff, 6), c.tol.moyal, std::min<std::size_t>(c.samples, 10), seed++, one)));
  }

  if (!c.B.empty()) {
    check_word_budget(c.B.k_support().size(), c.N, o.max_words);
    auto backend = make_backend(c.backend, c.hbar);
    NormalFormResult r;
    bool in_domain = true;
    try {
      r = run_normalize(c, RunOptions{o.out_dir, false, o.max_words}, freq, *backend);
    } catch (const OutOfDomainError& e) {
      in_domain = false;
      checks.push_back(bound_line(BoundReport::make("exponential_ratio", e.ratio(), 1.0)));
    }
    if (in_domain) {
      checks.push_back(bound_line(BoundReport::make("x0_residual", r.x0_residual,
                                                    c.tol.residual * r.norms.at("Z_rho_prime"))));
      checks.push_back(bound_line(BoundReport::make("cancellation_residual", r.cancellation_residual,
                                                    c.tol.residual * norm_rho(c.B, c.rho))));
      double alpha = c.diophantine_constant();
      std::size_t fit_r = c.N <= kMaxRemainderN ? c.N * c.N : c.N;
      GrowthData growth = growth_data(c.B, freq, c.rho, c.tau, alpha, fit_r, fit_options(c, o));
      if (c.N <= kMaxRemainderN) {
        RemainderCheck rc = verify_remainder_bound(r, c.B, p, growth);
        checks.push_back(bound_line(rc.bound, rc.in_regime));
      }
      bool cond = false;
      BoundReport tail = check_series_tail(c.B, c.N, p, freq, *backend, growth, &cond);
      checks.push_back(bound_line(tail, cond));

      if (!c.hbar_list.empty()) {
        SemiclassicalReport sc =
            verify_semiclassical(c.B, c.N, p, freq, c.hbar_list, growth.fits[c.N - 1].F_r, c.tau, alpha);
        for (const auto& pt : sc.points) checks.push_back(bound_line(pt.bound));
        json slope = {{"kind", "report"},
                      {"name", "semiclassical_slope"},
                      {"N", sc.N},
                      {"C_N", sc.C_N},
                      {"slope", sc.slope ? json(*sc.slope) : json(nullptr)},
                      {"all_zero", sc.all_zero},
                      {"holds", true}};
        checks.push_back({slope, true});
      }
    }
  }

  if (c.mould_table)
    for (auto& ch : mould_table_checks(c, *c.mould_table)) checks.push_back(std::move(ch));

  bool ok = true;
  std::string lines;
  for (const auto& ch : checks) {
    lines += ch.line.dump() + "\n";
    ok = ok && ch.ok;
  }
  out << lines;
  write_file(o.out_dir / "verify.jsonl", lines);
  return ok ? kOk : kBoundViolation;
}

int cmd_semiclassical(const RunConfig& c, const RunOptions& o, std::ostream& log) {
  Frequency freq = c.frequency(false);
  check_word_budget(c.B.k_support().size(), c.N, o.max_words);
  ScaleParams p = ScaleParams::standard(c.rho, c.rho_prime);
  double alpha = c.diophantine_constant();
  GrowthData growth = growth_data(c.B, freq, c.rho, c.tau, alpha, c.N, fit_options(c, o));
  SemiclassicalReport sc = verify_semiclassical(c.B, c.N, p, freq, c.hbars(), growth.fits[c.N - 1].F_r, c.tau, alpha);

  bool ok = true;
  std::string csv = csv_record({"hbar", "g", "bound", "holds"});
  json points = json::array();
  for (const auto& pt : sc.points) {
    ok = ok && pt.bound.holds;
    csv += csv_record({format_double(pt.hbar), format_double(pt.g), format_double(pt.bound.rhs),
                       pt.bound.holds ? "true" : "false"});
    points.push_back({{"hbar", pt.hbar}, {"g", pt.g}, {"bound", to_json(pt.bound)}});
  }
  json report = {{"N", sc.N},
                 {"C_N", sc.C_N},
                 {"norm_B_rho", sc.normB},
                 {"alpha", alpha},
                 {"slope", sc.slope ? json(*sc.slope) : json(nullptr)},
                 {"all_zero", sc.all_zero},
                 {"points", points},
                 {"ok", ok}};
  write_file(o.out_dir / "semiclassical.csv", csv);
  write_file(o.out_dir / "semiclassical.json", report.dump(2) + "\n");
  log << "semiclassical: N=" << sc.N << " slope " << (sc.slope ? format_double(*sc.slope) : std::string("n/a"))
      << (sc.all_zero ? " (g = 0)" : "") << "\n";
  return ok ? kOk : kBoundViolation;
}

}  // namespace mouldnf::cli
