// Command-line driver for the mehlerkit shared library.  Talks to the engine
// exclusively through the C API; flags are packed into the JSON config the
// library expects.

#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nlohmann/json.hpp"

#include "mehlerkit/mehlerkit.h"

namespace {

using Json = nlohmann::ordered_json;

struct CommonFlags {
  std::string family = "all";
  std::string shifts;
  int order = -1;  // -1 = family default; library validates real values
  std::string variant = "all";
  std::string format = "text";
  std::uint64_t seed = 1;
  std::uint64_t budget_terms = 0;
  double budget_seconds = 0.0;
  unsigned nodes = 64;
  double tolerance = 0.0;
  double roundtrip_tolerance = 0.0;
  unsigned workers = 0;
};

std::optional<std::vector<long>> parse_shifts(const std::string& text) {
  std::vector<long> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t next = text.find(',', pos);
    if (next == std::string::npos) next = text.size();
    try {
      out.push_back(std::stol(text.substr(pos, next - pos)));
    } catch (...) {
      return std::nullopt;
    }
    pos = next + 1;
  }
  return out;
}

int run_command(const std::string& command, const CommonFlags& flags,
                bool order_given, bool tolerance_given) {
  Json config;
  config["command"] = command;
  if (command == "verify") config["family"] = flags.family;
  if (!flags.shifts.empty()) {
    auto parsed = parse_shifts(flags.shifts);
    if (!parsed) {
      std::fprintf(stderr, "error: --shifts expects a comma-separated integer list\n");
      return 2;
    }
    config["shifts"] = *parsed;
  }
  if (order_given) config["order"] = flags.order;
  if (command == "verify") config["variant"] = flags.variant;
  config["seed"] = flags.seed;
  if (flags.budget_terms > 0) config["budget_terms"] = flags.budget_terms;
  if (flags.budget_seconds > 0) config["budget_seconds"] = flags.budget_seconds;
  if (command == "bargmann-check") config["nodes"] = flags.nodes;
  if (tolerance_given) config["tolerance"] = flags.tolerance;
  if (flags.roundtrip_tolerance > 0)
    config["roundtrip_tolerance"] = flags.roundtrip_tolerance;
  config["workers"] = flags.workers;

  mehlerkit_result* result = nullptr;
  const mehlerkit_status status = mehlerkit_run(config.dump().c_str(), &result);

  if (status == MEHLERKIT_ERR_CONFIG || status == MEHLERKIT_ERR_INTERNAL) {
    std::fprintf(stderr, "error (%s): %s\n", mehlerkit_status_name(status),
                 mehlerkit_last_error());
    return status == MEHLERKIT_ERR_CONFIG ? 2 : 3;
  }

  if (flags.format == "json")
    std::fputs(mehlerkit_result_json(result), stdout);
  else
    std::fputs(mehlerkit_result_text(result), stdout);
  std::fputc('\n', stdout);

  const bool passed = mehlerkit_result_passed(result) != 0;
  mehlerkit_result_free(result);

  if (status == MEHLERKIT_ERR_BUDGET) {
    std::fprintf(stderr, "budget exceeded; report is partial\n");
    return 1;
  }
  return passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string("mehlerkit ") + mehlerkit_version() +
               " - Mehler-type Hermite identity verifier"};
  app.require_subcommand(1);

  CommonFlags flags;

  auto add_common = [&](CLI::App* cmd, bool with_family) {
    if (with_family)
      cmd->add_option("--family", flags.family,
                      "mehler|carlitz-bilinear|carlitz-trilinear|srivastava|gcmf|"
                      "theorem|cayley|all");
    cmd->add_option("--shifts", flags.shifts, "comma-separated shifts, e.g. 1,1,1");
    cmd->add_option("--order", flags.order, "truncation order N");
    cmd->add_option("--seed", flags.seed, "seed for randomized matrix families");
    cmd->add_option("--budget-terms", flags.budget_terms, "max stored series terms");
    cmd->add_option("--budget-seconds", flags.budget_seconds, "wall-clock budget");
    cmd->add_option("--format", flags.format, "text|json")
        ->check(CLI::IsMember({"text", "json"}));
    cmd->add_option("--workers", flags.workers, "worker threads (0 = all cores)");
    cmd->add_option("--tolerance", flags.tolerance, "numeric tolerance");
  };

  CLI::App* verify = app.add_subcommand("verify", "check identities exactly");
  add_common(verify, true);
  verify->add_option("--variant", flags.variant, "variant name or 'all'");

  CLI::App* bench = app.add_subcommand(
      "bench", "naive triple sum vs closed-form evaluation");
  add_common(bench, false);

  CLI::App* bargmann = app.add_subcommand(
      "bargmann-check", "quadrature checks of the Bargmann-transform facts");
  add_common(bargmann, false);
  bargmann->add_option("--nodes", flags.nodes, "quadrature nodes per axis");
  bargmann->add_option("--roundtrip-tolerance", flags.roundtrip_tolerance,
                       "tolerance for the truncation-dominated inverse check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  std::string command = "verify";
  bool order_given = false, tolerance_given = false;
  CLI::App* active = verify;
  if (bench->parsed()) {
    command = "bench";
    active = bench;
  } else if (bargmann->parsed()) {
    command = "bargmann-check";
    active = bargmann;
  }
  order_given = active->count("--order") > 0;
  tolerance_given = active->count("--tolerance") > 0;

  return run_command(command, flags, order_given, tolerance_given);
}
