#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "mouldnf/cli/commands.hpp"
#include "mouldnf/cli/config.hpp"
#include "mouldnf/liealg.hpp"

using namespace mouldnf::cli;

int main(int argc, char** argv) {
  CLI::App app{"Mould normal forms of X0 + B with classical or quantum brackets"};
  app.require_subcommand(1);

  std::string config_path;
  RunOptions opts;
  std::string out_dir = ".";
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON run configuration")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "Output directory")->capture_default_str();
    sub->add_flag("--exact", opts.exact, "Exact Gaussian-rational moulds (rational omega)");
    sub->add_option("--max-words", opts.max_words, "Cap on enumerated words")->capture_default_str()->check(
        CLI::PositiveNumber);
  };
  auto* normalize = app.add_subcommand("normalize", "Compute Z_N, Y_N, E_N and bound reports");
  auto* dump = app.add_subcommand("dump-moulds", "Write F, S, N, G tables over the alphabet");
  auto* verify = app.add_subcommand("verify", "Run the invariant and bound suite");
  auto* semi = app.add_subcommand("semiclassical", "Quantum-classical gap of Z_N against hbar");
  for (auto* sub : {normalize, dump, verify, semi}) add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kUsageError;
  }
  opts.out_dir = out_dir;

  try {
    RunConfig config = load_config(config_path);
    if (opts.exact) config.frequency(true);
    if (*normalize) return cmd_normalize(config, opts, std::cerr);
    if (*dump) return cmd_dump_moulds(config, opts, std::cerr);
    if (*verify) return cmd_verify(config, opts, std::cout);
    return cmd_semiclassical(config, opts, std::cerr);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const mouldnf::OutOfDomainError& e) {
    std::cerr << "out of domain: " << e.what() << " (ratio " << format_double(e.ratio()) << ")\n";
    return kBoundViolation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBoundViolation;
  }
}
