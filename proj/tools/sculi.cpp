// sculi: simulate, attack and sweep laser-assisted horizontal attacks.
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "sculi/experiment.hpp"
#include "sculi/report.hpp"
#include "sculi/trace_io.hpp"
#include "sculi/version.hpp"

namespace fs = std::filesystem;
using namespace sculi;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitAcceptance = 3;

class AcceptanceFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string config;
  std::string scenario;
  std::string out;
  std::optional<std::uint64_t> seed;
  bool static_only = false;
  std::optional<bool> allow_inversion;
};

std::string default_out() {
  const char* env = std::getenv("SCULI_OUT");
  return env && *env ? env : "out";
}

void add_out(CLI::App* cmd, Common& c) {
  cmd->add_option("--out", c.out, "Output root (default: $SCULI_OUT or ./out)");
}

void add_attack_flags(CLI::App* cmd, Common& c) {
  cmd->add_flag("--static-only", c.static_only, "Use the quiescent-window static compression");
  cmd->add_option("--allow-inversion", c.allow_inversion, "Also rank inverted candidates (true/false)");
}

void add_scenario_flags(CLI::App* cmd, Common& c, bool need_config = true) {
  auto* opt = cmd->add_option("--config", c.config, "Scenario config (INI)");
  if (need_config) opt->required();
  cmd->add_option("--scenario", c.scenario, "Only this scenario");
  cmd->add_option("--seed", c.seed, "Override the base noise seed");
}

void apply_overrides(bench::Scenario& s, const Common& c) {
  if (c.seed) s.seed = *c.seed;
  if (c.static_only) s.attack.mode = attack::Mode::StaticOnly;
  if (c.allow_inversion) s.attack.allow_inversion = *c.allow_inversion;
}

std::vector<bench::Scenario> selected(const Common& c) {
  const auto cfg = bench::load_config(c.config);
  std::vector<bench::Scenario> out;
  if (c.scenario.empty()) {
    out = cfg.scenarios;
  } else {
    out.push_back(cfg.find(c.scenario));
  }
  for (auto& s : out) apply_overrides(s, c);
  return out;
}

bench::Scenario single(const Common& c) {
  auto all = selected(c);
  if (all.size() != 1) {
    throw bench::ConfigError({"config has " + std::to_string(all.size()) + " scenarios; choose one with --scenario"});
  }
  return all.front();
}

void print_row(const bench::RunResult& r) {
  std::cout << std::left << std::setw(14) << r.scenario << " seed " << std::setw(6) << r.seed << " delta "
            << std::fixed << std::setprecision(2) << r.delta_best << " % (slot " << r.best_slot
            << (r.best_inverted ? ", inverted" : "") << ")  dc_offset " << std::setprecision(4) << r.dc_offset
            << "  -> " << r.dir.string() << '\n';
}

int cmd_simulate(const Common& c) {
  for (const auto& s : selected(c)) {
    for (const auto& r : bench::run_scenario(s, c.out)) print_row(r);
  }
  return 0;
}

struct AttackArgs {
  std::string trace;
  std::string csv;
  std::size_t cycle_offset = 0;
  std::size_t quiescent_window = attack::kDefaultQuiescentWindow;
};

int cmd_attack(const Common& c, const AttackArgs& a, bool out_given) {
  const auto trace = io::read_trace(a.trace);
  attack::AttackOptions opt;
  opt.mode = c.static_only ? attack::Mode::StaticOnly : attack::Mode::Dynamic;
  opt.quiescent_window = a.quiescent_window;
  if (c.allow_inversion) opt.allow_inversion = *c.allow_inversion;
  opt.framing.cycle_offset = a.cycle_offset;
  const auto report = attack::run_attack(trace, opt);

  const fs::path dir = out_given ? fs::path(c.out) : fs::path(a.trace).parent_path();
  if (!dir.empty()) fs::create_directories(dir);
  const fs::path path = dir / "report.json";
  bench::write_file(path, report::to_json(report));
  if (!a.csv.empty()) bench::write_file(a.csv, report::to_csv(report));
  if (report.best) {
    std::cout << "best slot " << report.best->slot << (report.best->inverted ? " (inverted)" : "") << ", delta "
              << std::fixed << std::setprecision(2) << *report.best->correctness_pct << " %\n";
  } else {
    std::cout << "no ground truth in the sidecar; candidates written unscored\n";
  }
  std::cout << "report: " << path.string() << '\n';
  return 0;
}

int cmd_sweep(const Common& c) {
  bench::SweepResult sweep;
  for (const auto& s : selected(c)) {
    for (auto& r : bench::run_scenario(s, c.out)) {
      print_row(r);
      sweep.rows.push_back(std::move(r));
    }
  }
  fs::create_directories(c.out);
  bench::write_file(fs::path(c.out) / "sweep.csv", bench::sweep_csv(sweep));
  bench::write_file(fs::path(c.out) / "summary.csv", bench::summary_csv(sweep));
  std::cout << "\nscenario        runs  delta mean +- std   dc_offset\n";
  for (const auto& s : sweep.summary()) {
    std::cout << std::left << std::setw(14) << s.scenario << std::right << std::setw(6) << s.runs << "  "
              << std::fixed << std::setprecision(2) << std::setw(6) << s.delta_mean << " +- " << std::setw(5)
              << s.delta_std << "   " << std::setprecision(4) << s.dc_offset_mean << '\n';
  }
  std::cout << "wrote " << (fs::path(c.out) / "sweep.csv").string() << '\n';
  return 0;
}

struct CalibrateArgs {
  bench::CalibrationOptions opt;
  std::string write;
};

int cmd_calibrate(const Common& c, const CalibrateArgs& a) {
  const auto s = single(c);
  bench::CalibrationResult r;
  try {
    r = bench::calibrate(s, a.opt);
  } catch (const bench::CalibrationError& e) {
    throw AcceptanceFailure(e.what());
  }
  std::cout << "sigma_noise     mean delta (" << a.opt.n_seeds << " seeds)\n";
  for (const auto& pt : r.explored) {
    std::cout << std::fixed << std::setprecision(6) << std::setw(12) << pt.sigma_noise << "    " << std::setprecision(3)
              << pt.mean_delta << '\n';
  }
  std::cout << "calibrated sigma_noise = " << std::setprecision(6) << r.scenario.params.sigma_noise
            << " (mean delta " << std::setprecision(3) << r.mean_delta << ")\n";
  if (!a.write.empty()) {
    bench::write_file(a.write, bench::canonical_text(r.scenario));
    std::cout << "wrote " << a.write << '\n';
  }
  return 0;
}

int cmd_report(const std::string& path) {
  fs::path p = path;
  if (fs::is_directory(p)) p /= "report.json";
  const std::string text = bench::read_file(p);
  report::pretty_print(std::cout, text);
  return 0;
}

int cmd_rerun(const std::string& manifest, const Common& c) {
  const auto r = bench::rerun(manifest, c.out);
  std::cout << (r.identical ? "identical: " : "DIFFERENT: ") << r.report.string() << '\n';
  if (!r.identical) throw AcceptanceFailure("re-run report differs from the original");
  return 0;
}

struct DaysArgs {
  std::size_t days = 3;
  std::optional<std::uint64_t> first_seed;
  std::optional<double> max_spread;
};

int cmd_days(const Common& c, const DaysArgs& a) {
  const auto s = single(c);
  const auto deltas = bench::day_variation(s, a.days, a.first_seed.value_or(s.seed));
  for (std::size_t d = 0; d < deltas.size(); ++d) {
    std::cout << "day " << d + 1 << "  delta " << std::fixed << std::setprecision(2) << deltas[d] << " %\n";
  }
  const double w = bench::spread(deltas);
  std::cout << "spread " << std::setprecision(2) << w << " points\n";
  if (a.max_spread && w > *a.max_spread) {
    throw AcceptanceFailure("spread exceeds " + std::to_string(*a.max_spread) + " points");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Laser-assisted horizontal side-channel attack simulator"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  Common common;
  common.out = default_out();

  auto* sim = app.add_subcommand("simulate", "Run scenarios: trace, report and manifest per seed");
  add_scenario_flags(sim, common);
  add_out(sim, common);
  add_attack_flags(sim, common);

  AttackArgs attack_args;
  auto* atk = app.add_subcommand("attack", "Attack a trace file and write report.json");
  atk->add_option("trace", attack_args.trace, "Trace file (.sctr)")->required()->check(CLI::ExistingFile);
  auto* atk_out = atk->add_option("--out", common.out, "Report directory (default: next to the trace)");
  atk->add_option("--csv", attack_args.csv, "Also write the per-slot CSV here");
  atk->add_option("--cycle-offset", attack_args.cycle_offset, "Whole cycles to skip before the first window");
  atk->add_option("--quiescent-window", attack_args.quiescent_window, "Samples averaged in static-only mode");
  add_attack_flags(atk, common);

  auto* sweep = app.add_subcommand("sweep", "Run every scenario and write sweep.csv / summary.csv");
  add_scenario_flags(sweep, common);
  add_out(sweep, common);
  add_attack_flags(sweep, common);

  CalibrateArgs cal_args;
  auto* cal = app.add_subcommand("calibrate", "Fit sigma_noise so the mean best delta hits a target range");
  add_scenario_flags(cal, common);
  add_attack_flags(cal, common);
  cal->add_option("--lo", cal_args.opt.target_lo, "Lower end of the target range (%)");
  cal->add_option("--hi", cal_args.opt.target_hi, "Upper end of the target range (%)");
  cal->add_option("--sigma-max", cal_args.opt.sigma_max, "Upper sigma_noise bound");
  cal->add_option("--seeds", cal_args.opt.n_seeds, "Seeds per evaluation");
  cal->add_option("--write", cal_args.write, "Write the calibrated scenario here");

  std::string report_path;
  auto* rep = app.add_subcommand("report", "Pretty-print a report.json (or a run directory)");
  rep->add_option("path", report_path, "report.json or run directory")->required()->check(CLI::ExistingPath);

  std::string manifest_path;
  auto* rer = app.add_subcommand("rerun", "Replay a manifest and check the report is byte-identical");
  rer->add_option("manifest", manifest_path, "manifest.json")->required()->check(CLI::ExistingFile);
  add_out(rer, common);

  DaysArgs days_args;
  auto* days = app.add_subcommand("days", "Best delta over consecutive fresh seeds and its spread");
  add_scenario_flags(days, common);
  add_attack_flags(days, common);
  days->add_option("--days", days_args.days, "Number of runs");
  days->add_option("--first-seed", days_args.first_seed, "Seed of the first run (default: scenario seed)");
  days->add_option("--max-spread", days_args.max_spread, "Fail with exit code 3 above this spread");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*sim) return cmd_simulate(common);
    if (*atk) return cmd_attack(common, attack_args, atk_out->count() > 0);
    if (*sweep) return cmd_sweep(common);
    if (*cal) return cmd_calibrate(common, cal_args);
    if (*rep) return cmd_report(report_path);
    if (*rer) return cmd_rerun(manifest_path, common);
    if (*days) return cmd_days(common, days_args);
  } catch (const bench::ConfigError& e) {
    std::cerr << "config error:\n" << e.what() << '\n';
    return kExitConfig;
  } catch (const AcceptanceFailure& e) {
    std::cerr << "acceptance failure: " << e.what() << '\n';
    return kExitAcceptance;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
