// Command-line front end: celldim <sweep|dimension|scale-check|composite>.

#include <algorithm>
#include <cstdint>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "celldim/experiments.hpp"
#include "celldim/output.hpp"
#include "celldim/scenario.hpp"

namespace {

constexpr int kConfigError = 1;
constexpr int kNumericalFailure = 2;

struct Options {
  std::string scenario;
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> workers;
  std::string format = "csv";
  bool strict = false;
};

celldim::OutputFormat parse_format(std::string const& f) {
  if (f == "json") return celldim::OutputFormat::json;
  if (f == "both") return celldim::OutputFormat::both;
  return celldim::OutputFormat::csv;
}

void report(std::vector<std::filesystem::path> const& files) {
  for (auto const& f : files) std::cout << "wrote " << f.string() << '\n';
}

int run(celldim::Experiment experiment, Options const& opt) {
  using namespace celldim;
  Scenario sc = load_scenario(opt.scenario, opt.seed, opt.workers);
  // The subcommand decides; a conflicting "experiment" key is a config error.
  if (sc.experiment_declared && sc.experiment != experiment) {
    throw ConfigError(std::string("scenario declares experiment '") + to_string(sc.experiment) +
                      "' but '" + to_string(experiment) + "' was requested");
  }
  sc.experiment = experiment;
  std::filesystem::path const dir = opt.out.value_or(sc.output_dir);
  RunInfo const info{to_string(experiment), opt.scenario, sc.seed};
  OutputFormat const format = parse_format(opt.format);

  bool clean = true;
  switch (experiment) {
    case Experiment::sweep: {
      SweepResult const res = run_sweep(sc);
      clean = res.all_converged();
      report(emit(res, info, dir, format));
      break;
    }
    case Experiment::dimension: {
      auto const rows = dimension_bandwidth(sc);
      for (auto const& r : rows) {
        clean = clean && r.converged;
        if (r.non_monotone) {
          std::cerr << "warning: r_bar(W) not monotone for variant " << r.variant << " at rho_bar "
                    << r.rho_bar_bps / 1e3 << " kbit/s; used an exhaustive scan\n";
        }
      }
      report(emit(rows, sc.dimension, info, dir, format));
      break;
    }
    case Experiment::scale_check: {
      ScaleCheckResult const res = run_scale_check(sc);
      for (auto const& r : res.rows) clean = clean && r.converged;
      report(emit(res, info, dir, format));
      break;
    }
    case Experiment::composite: {
      CompositeRun const res = run_composite(sc);
      for (auto const& w : res.result.warnings) std::cerr << "warning: " << w << '\n';
      for (auto const& z : res.result.zones) {
        for (auto const& p : z.curve) clean = clean && p.converged;
      }
      report(emit(res, info, dir, format));
      break;
    }
  }
  if (!clean) {
    std::cerr << (opt.strict ? "error" : "warning") << ": some solves did not converge\n";
    if (opt.strict) return kNumericalFailure;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mean-cell load, throughput and bandwidth dimensioning for cellular networks"};
  app.require_subcommand(1);

  Options opt;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  std::string out;

  struct Command {
    char const* name;
    char const* help;
    celldim::Experiment experiment;
  };
  Command const commands[] = {
      {"sweep", "Mean-cell curve over a traffic grid", celldim::Experiment::sweep},
      {"dimension", "Minimal bandwidth meeting a throughput target", celldim::Experiment::dimension},
      {"scale-check", "Verify the dilation invariance of per-cell metrics", celldim::Experiment::scale_check},
      {"composite", "Zone-by-zone runs of a piecewise homogeneous country", celldim::Experiment::composite},
  };
  std::vector<std::pair<CLI::App*, celldim::Experiment>> subs;
  for (Command const& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("--scenario", opt.scenario, "Scenario JSON file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out, "Output directory");
    sub->add_option("--seed", seed, "Global seed (overrides the scenario)");
    sub->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--format", opt.format, "Output format")
        ->check(CLI::IsMember({"csv", "json", "both"}))
        ->capture_default_str();
    sub->add_flag("--strict", opt.strict, "Exit with status 2 if any solve did not converge");
    subs.emplace_back(sub, c.experiment);
  }

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    int const code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  auto const chosen = std::find_if(subs.begin(), subs.end(), [](auto const& s) { return s.first->parsed(); });
  CLI::App const& sub = *chosen->first;
  if (sub.count("--out")) opt.out = out;
  if (sub.count("--seed")) opt.seed = seed;
  if (sub.count("--workers")) opt.workers = workers;

  try {
    return run(chosen->second, opt);
  } catch (celldim::ConfigError const& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (std::invalid_argument const& e) {
    // Model validation rejects parameters that came from the scenario.
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (std::exception const& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumericalFailure;
  }
}
