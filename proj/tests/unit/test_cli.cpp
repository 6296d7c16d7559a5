#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "mouldnf/cli/commands.hpp"
#include "mouldnf/cli/config.hpp"

using namespace mouldnf;
using namespace mouldnf::cli;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const fs::path kSource = MOULDNF_SOURCE_DIR;
const fs::path kScratch = fs::path(MOULDNF_BINARY_DIR) / "cli_scratch";

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

RunOptions options(const std::string& sub, bool exact = false) {
  RunOptions o;
  o.out_dir = kScratch / sub;
  fs::remove_all(o.out_dir);
  o.exact = exact;
  return o;
}

RunConfig config(const std::string& name) { return load_config(kSource / "configs" / name); }

int quiet(int (*cmd)(const RunConfig&, const RunOptions&, std::ostream&), const RunConfig& c, const RunOptions& o) {
  std::ostringstream sink;
  return cmd(c, o, sink);
}

/// Structural equality with numbers compared to |a - b| <= rel |b| + 1e-18.
void expect_close(const json& a, const json& b, double rel, const std::string& path = "") {
  INFO("at " << path);
  if (b.is_number() && a.is_number()) {
    double x = a.get<double>(), y = b.get<double>();
    CHECK(std::abs(x - y) <= rel * std::abs(y) + 1e-18);
    return;
  }
  REQUIRE(a.type() == b.type());
  if (a.is_object()) {
    REQUIRE(a.size() == b.size());
    for (auto it = b.begin(); it != b.end(); ++it) {
      REQUIRE(a.contains(it.key()));
      expect_close(a.at(it.key()), it.value(), rel, path + "/" + it.key());
    }
  } else if (a.is_array()) {
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) expect_close(a[i], b[i], rel, path + "/" + std::to_string(i));
  } else {
    CHECK(a == b);
  }
}

}  // namespace

TEST_CASE("csv records follow RFC 4180 quoting with CRLF") {
  CHECK(csv_record({"a", "b"}) == "a,b\r\n");
  CHECK(csv_record({"x,y", "say \"hi\"", "line\nbreak"}) == "\"x,y\",\"say \"\"hi\"\"\",\"line\nbreak\"\r\n");
  CHECK(csv_record({}) == "\r\n");
  CHECK(format_double(0.1) == "0.1");
}

TEST_CASE("config rejects unknown keys and bad values") {
  const fs::path base = kScratch;
  json good = {{"freq", {{"omega", {1.0, 1.618033988749895}}}}};
  CHECK_NOTHROW(parse_config(good, base));
  json extra = good;
  extra["colour"] = "blue";
  CHECK_THROWS_AS(parse_config(extra, base), UsageError);
  json nested = good;
  nested["freq"]["omgea"] = 1;
  CHECK_THROWS_AS(parse_config(nested, base), UsageError);
  json scale = good;
  scale["scale"] = {{"rho", 0.5}, {"rho_prime", 0.5}};
  CHECK_THROWS_AS(parse_config(scale, base), UsageError);
  json backend = good;
  backend["backend"] = "hybrid";
  CHECK_THROWS_AS(parse_config(backend, base), UsageError);
  json dim = good;
  dim["B"] = {{"d", 3}, {"coeffs", json::array()}};
  CHECK_THROWS_AS(parse_config(dim, base), UsageError);
  CHECK_THROWS_AS(parse_config(json{{"N", 2}}, base), UsageError);
}

TEST_CASE("config defaults and rational omega") {
  RunConfig c = parse_config(json{{"freq", {{"omega", {"1", "1/2"}}, {"resonance_basis", {{1, -2}}}}}}, kScratch);
  CHECK(c.N == 2);
  CHECK(c.backend == "classical");
  CHECK(c.rho == 1.0);
  CHECK(c.rho_prime == 0.5);
  CHECK(c.B.empty());
  REQUIRE(c.omega_exact);
  CHECK(c.omega[1] == 0.5);
  CHECK(c.frequency(true).has_exact_omega());

  RunConfig f = config("golden_ratio_toy.json");
  CHECK_FALSE(f.omega_exact);
  CHECK_THROWS_AS(f.frequency(true), UsageError);
  CHECK(f.B.size() == 8);
  CHECK(f.hbars().size() == 3);
}

TEST_CASE("word budget is enforced") {
  RunConfig c = config("golden_ratio_toy.json");
  RunOptions o = options("budget");
  o.max_words = 10;
  CHECK_THROWS_AS(quiet(cmd_normalize, c, o), UsageError);
  CHECK_THROWS_AS(quiet(cmd_dump_moulds, c, o), UsageError);
}

TEST_CASE("normalize with B = 0 reports zeros") {
  RunConfig c = config("zero_B.json");
  RunOptions o = options("zero");
  CHECK(quiet(cmd_normalize, c, o) == kOk);
  json r = json::parse(slurp(o.out_dir / "normalize.json"));
  CHECK(r["Z"]["coeffs"].empty());
  CHECK(r["Y"]["coeffs"].empty());
  CHECK(r["E_modes"] == 0);
  for (auto& [k, v] : r["norms"].items()) CHECK(v.get<double>() == 0.0);
  CHECK(r["ok"] == true);
  std::string csv = slurp(o.out_dir / "normalize.csv");
  CHECK(csv.find("\r\n") != std::string::npos);
}

TEST_CASE("exact normalize matches the golden file bit for bit") {
  RunConfig c = config("rational_resonant.json");
  RunOptions o = options("rational_exact", true);
  CHECK(quiet(cmd_normalize, c, o) == kOk);
  CHECK(slurp(o.out_dir / "normalize.json") == slurp(kSource / "tests/golden/rational_normalize_exact.json"));
}

TEST_CASE("float normalize matches the golden file to 1e-9") {
  RunConfig c = config("golden_ratio_toy.json");
  RunOptions o = options("golden_float");
  CHECK(quiet(cmd_normalize, c, o) == kOk);
  json got = json::parse(slurp(o.out_dir / "normalize.json"));
  json want = json::parse(slurp(kSource / "tests/golden/golden_ratio_normalize.json"));
  expect_close(got, want, 1e-9);
  CHECK(got["remainder"]["in_regime"] == true);
  for (const auto& b : got["bounds"]) CHECK(b["holds"] == true);
}

TEST_CASE("reports are byte-identical across runs") {
  RunConfig c = config("golden_ratio_toy.json");
  RunOptions a = options("det_a"), b = options("det_b");
  quiet(cmd_normalize, c, a);
  quiet(cmd_normalize, c, b);
  CHECK(slurp(a.out_dir / "normalize.json") == slurp(b.out_dir / "normalize.json"));
  CHECK(slurp(a.out_dir / "normalize.csv") == slurp(b.out_dir / "normalize.csv"));
  std::ostringstream x, y;
  cmd_verify(c, a, x);
  cmd_verify(c, b, y);
  CHECK(x.str() == y.str());
}

TEST_CASE("quantum normalize carries Hermiticity and unitarity diagnostics") {
  RunConfig c = config("golden_ratio_quantum.json");
  RunOptions o = options("quantum");
  CHECK(quiet(cmd_normalize, c, o) == kOk);
  json r = json::parse(slurp(o.out_dir / "normalize.json"));
  REQUIRE(r.contains("quantum"));
  CHECK(r["quantum"]["hbar"] == 0.1);
  CHECK(r["quantum"]["hermiticity_Z"].get<double>() < 1e-12);
  CHECK(r["quantum"]["hermiticity_Y"].get<double>() < 1e-12);
  CHECK(r["quantum"]["unitarity_exp_Y"].get<double>() < 1e-10);
  CHECK(r["backend"] == "quantum(0.1)");
}

TEST_CASE("dump-moulds") {
  SUBCASE("exact tables hold the closed-form values and match the golden file") {
    RunConfig c = config("rational_resonant.json");
    RunOptions o = options("dump_exact", true);
    CHECK(quiet(cmd_dump_moulds, c, o) == kOk);
    std::string text = slurp(o.out_dir / "moulds.json");
    CHECK(text == slurp(kSource / "tests/golden/rational_moulds_exact.json"));
    json t = json::parse(text);
    // lambda = i<(1,0), (1,2)> = i
    CHECK(t["F"]["2,-1"] == json({"1", "0"}));
    CHECK(t["S"]["1,0"] == json({"0", "-1"}));
    CHECK(t["F"]["1,0;-1,0"] == json({"0", "1"}));
    CHECK(t["S"]["1,0;-1,0"] == json({"1/2", "0"}));
    CHECK(t["G"]["1,0;-1,0"] == json({"0", "0"}));
  }
  SUBCASE("float tables match the golden file") {
    RunConfig c = config("golden_ratio_toy.json");
    RunOptions o = options("dump_float");
    CHECK(quiet(cmd_dump_moulds, c, o) == kOk);
    expect_close(json::parse(slurp(o.out_dir / "moulds.json")),
                 json::parse(slurp(kSource / "tests/golden/golden_ratio_moulds.json")), 1e-9);
  }
  SUBCASE("empty alphabet gives the header only") {
    RunConfig c = parse_config(json{{"freq", {{"omega", {1.0, 1.618033988749895}}}}, {"alphabet", json::array()}},
                               kScratch);
    RunOptions o = options("dump_empty");
    CHECK(quiet(cmd_dump_moulds, c, o) == kOk);
    json t = json::parse(slurp(o.out_dir / "moulds.json"));
    CHECK(t["words"] == 0);
    CHECK(t["F"].empty());
    CHECK(t["G"].empty());
    CHECK(t["alphabet"].empty());
  }
}

TEST_CASE("verify passes on the bundled configs") {
  for (const char* name : {"golden_ratio_toy.json", "rational_resonant.json", "zero_B.json"}) {
    INFO(std::string(name));
    RunConfig c = config(name);
    RunOptions o = options(std::string("verify_") + name);
    std::ostringstream out;
    CHECK(cmd_verify(c, o, out) == kOk);
    std::istringstream lines(out.str());
    std::string line;
    std::size_t n = 0;
    while (std::getline(lines, line)) {
      json j = json::parse(line);
      CHECK(j.contains("name"));
      ++n;
    }
    CHECK(n >= 10);
    CHECK(slurp(o.out_dir / "verify.jsonl") == out.str());
  }
  RunConfig rx = config("rational_resonant.json");
  std::ostringstream out;
  CHECK(cmd_verify(rx, options("verify_exact", true), out) == kOk);
  CHECK(out.str().find("mould_equation_exact") != std::string::npos);
}

TEST_CASE("verify reports the semiclassical slope") {
  RunConfig c = config("golden_ratio_toy.json");
  std::ostringstream out;
  cmd_verify(c, options("verify_slope"), out);
  auto pos = out.str().find("\"name\":\"semiclassical_slope\"");
  REQUIRE(pos != std::string::npos);
  auto start = out.str().rfind('\n', pos) + 1;
  json j = json::parse(out.str().substr(start, out.str().find('\n', pos) - start));
  CHECK(std::abs(j["slope"].get<double>() - 2.0) <= 0.1);
}

TEST_CASE("verify fails on a corrupted mould table") {
  RunConfig c = config("golden_ratio_toy.json");
  RunOptions dump = options("corrupt");
  quiet(cmd_dump_moulds, c, dump);
  json table = json::parse(slurp(dump.out_dir / "moulds.json"));

  c.mould_table = dump.out_dir / "moulds.json";
  std::ostringstream clean;
  CHECK(cmd_verify(c, options("corrupt_clean"), clean) == kOk);

  auto it = table["S"].begin();
  double re = (*it)[0].get<double>();
  (*it)[0] = re + 1e-3 * (std::abs(re) + 1.0);
  std::ofstream(dump.out_dir / "moulds_bad.json") << table.dump();
  c.mould_table = dump.out_dir / "moulds_bad.json";
  std::ostringstream out;
  CHECK(cmd_verify(c, options("corrupt_run"), out) == kBoundViolation);
  CHECK(out.str().find("\"holds\":false,\"inputs\":{\"words\"") != std::string::npos);

  RunConfig rx = config("rational_resonant.json");
  RunOptions edump = options("corrupt_exact", true);
  quiet(cmd_dump_moulds, rx, edump);
  json et = json::parse(slurp(edump.out_dir / "moulds.json"));
  et["F"]["2,-1"] = json({"2", "0"});
  std::ofstream(edump.out_dir / "moulds_bad.json") << et.dump();
  rx.mould_table = edump.out_dir / "moulds_bad.json";
  std::ostringstream eout;
  CHECK(cmd_verify(rx, options("corrupt_exact_run"), eout) == kBoundViolation);
}

TEST_CASE("semiclassical sweeps") {
  SUBCASE("toy sweep has slope 2") {
    RunConfig c = config("golden_ratio_toy.json");
    RunOptions o = options("semi");
    CHECK(quiet(cmd_semiclassical, c, o) == kOk);
    json r = json::parse(slurp(o.out_dir / "semiclassical.json"));
    CHECK(std::abs(r["slope"].get<double>() - 2.0) <= 0.1);
    std::string csv = slurp(o.out_dir / "semiclassical.csv");
    CHECK(csv.rfind("hbar,g,bound,holds\r\n", 0) == 0);
  }
  SUBCASE("N = 1 gives zeros") {
    RunConfig c = config("golden_ratio_toy.json");
    c.N = 1;
    RunOptions o = options("semi_n1");
    CHECK(quiet(cmd_semiclassical, c, o) == kOk);
    json r = json::parse(slurp(o.out_dir / "semiclassical.json"));
    CHECK(r["all_zero"] == true);
    CHECK(r["slope"].is_null());
    for (const auto& p : r["points"]) CHECK(p["g"] == 0.0);
  }
  SUBCASE("a single hbar gives values and no fit") {
    RunConfig c = config("golden_ratio_toy.json");
    c.hbar_list = {0.1};
    RunOptions o = options("semi_single");
    CHECK(quiet(cmd_semiclassical, c, o) == kOk);
    json r = json::parse(slurp(o.out_dir / "semiclassical.json"));
    CHECK(r["slope"].is_null());
    CHECK(r["points"].size() == 1);
    CHECK(r["points"][0]["g"].get<double>() > 0.0);
  }
}
