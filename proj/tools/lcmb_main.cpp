// lcmb: lower bounds on the lcm of finite arithmetic progressions.
//
//   lcmb bounds    --u0 1 --r 2 --n 4
//   lcmb scan      --u0 1 --r 2 --n-from 1 --n-to 100 --workers 4
//   lcmb sharpness --r 2 --n-from 2 --n-to 20
//   lcmb asympt    --u0 1 --r 3 --n-from 500 --n-to 5000 --step 500
//   lcmb compare   --u0 1 --r 2 --n 1000
//   lcmb verify    [--quick]
//
// Exit codes: 0 success, 1 property/validity failure, 2 usage error.

#include <csignal>
#include <iostream>
#include <map>

#include "CLI11.hpp"

#include "lcmb/cli.hpp"

namespace {

extern "C" void on_sigint(int) { lcmb::cli::request_stop(); }

}  // namespace

int main(int argc, char** argv) {
  using namespace lcmb;
  using namespace lcmb::cli;

  CLI::App app{"Exact lcm of arithmetic progressions and its lower bounds"};
  app.require_subcommand(1);

  RunConfig config;
  std::string variant_name_arg;
  std::string format_arg;
  u64 n_arg = 0, n_from = 0, n_to = 0;

  const std::map<std::string, std::string> descriptions{
      {"bounds", "Evaluate every bound variant for one (u0, r, n) and check it against L_n"},
      {"scan", "CSV of log L_n and log bounds over an n-range"},
      {"sharpness", "Large-u0 sharpness experiment for prime r"},
      {"asympt", "Von Mangoldt sums, main terms and Stirling bound over an n-range"},
      {"compare", "Printed vs corrected binomial form, and new bound vs Tan-Hong"},
      {"verify", "Run every property grid; exit 0 iff all pass"},
  };

  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, text] : descriptions) {
    CLI::App* sub = app.add_subcommand(name, text);
    subs[name] = sub;
    if (name != "verify") {
      sub->add_option("--u0", config.u0, "first term u0")->capture_default_str();
      sub->add_option("--r", config.r, "common difference r")->capture_default_str();
      sub->add_option("--n", n_arg, "single n");
      sub->add_option("--n-from", n_from, "first n of a range");
      sub->add_option("--n-to", n_to, "last n of a range (inclusive)");
      sub->add_option("--step", config.step, "range stride")->capture_default_str();
      sub->add_option("--variant", variant_name_arg,
                      "multi_prime|single_r|binomial_printed|binomial_corrected|tan_hong_optimized");
      sub->add_option("--workers", config.workers, "parallel row workers")->capture_default_str();
    }
    sub->add_option("--format", format_arg, "csv|json|table");
    sub->add_option("--out", config.out_path, "write output to PATH");
    sub->add_option("--sieve-cap", config.sieve_cap, "largest u_n the Mangoldt sieve may cover")
        ->capture_default_str();
    sub->add_flag("--quick", config.quick, "smaller grids (verify)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  for (const auto& [name, sub] : subs) {
    if (!sub->parsed()) continue;
    config.subcommand = name;
    if (name == "verify") continue;
    if (sub->count("--n")) config.n = n_arg;
    if (sub->count("--n-from")) config.n_from = n_from;
    if (sub->count("--n-to")) config.n_to = n_to;
  }
  if (!variant_name_arg.empty()) {
    config.variant = parse_variant(variant_name_arg);
    if (!config.variant) {
      std::cerr << "error: unknown variant '" << variant_name_arg << "'\n";
      return kExitUsage;
    }
  }
  if (!format_arg.empty()) {
    config.format = parse_format(format_arg);
    if (!config.format) {
      std::cerr << "error: unknown format '" << format_arg << "'\n";
      return kExitUsage;
    }
  }

  std::signal(SIGINT, on_sigint);
  return run_command(config, std::cout, std::cerr);
}
