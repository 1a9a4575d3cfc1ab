#include "sculi/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "sculi/floorplan.hpp"
#include "sculi/report.hpp"
#include "sculi/trace_io.hpp"
#include "sculi/version.hpp"

namespace sculi::bench {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

constexpr const char* kTraceFile = "trace.sctr";
constexpr const char* kReportFile = "report.json";
constexpr const char* kManifestFile = "manifest.json";

leakage::Trace synthesize(const PreparedScenario& p, const leakage::LaserSpec& laser, std::uint64_t seed) {
  auto t = leakage::synthesize_trace(p.sim.log, p.scenario.params, laser, leakage::default_floorplan(), seed);
  t.meta.scenario_id = p.scenario.name;
  t.meta.scalar_hex = p.scalar.to_hex();
  return t;
}

std::string format_number(double v) {
  std::ostringstream os;
  os << std::setprecision(std::numeric_limits<double>::max_digits10) << v;
  return os.str();
}

}  // namespace

PreparedScenario prepare(const Scenario& s) {
  PreparedScenario p;
  p.scenario = s;
  p.scalar = s.resolve_scalar();
  const auto& c = curve::b233();
  p.sim = accel::simulate_kp(p.scalar, s.resolve_base_point(), c, accel::build_schedule());
  return p;
}

Evaluation evaluate(const PreparedScenario& p, std::uint64_t seed) {
  Evaluation e;
  e.trace = synthesize(p, p.scenario.laser, seed);
  e.report = attack::run_attack(e.trace, p.scenario.attack);
  if (p.scenario.laser.enabled) {
    leakage::LaserSpec off = p.scenario.laser;
    off.enabled = false;
    e.dc_offset = leakage::dc_offset(e.trace, synthesize(p, off, seed));
  }
  return e;
}

double best_delta(const PreparedScenario& p, std::uint64_t seed) {
  const auto t = synthesize(p, p.scenario.laser, seed);
  return *attack::run_attack(t, p.scenario.attack).best->correctness_pct;
}

RunResult run_once(const PreparedScenario& p, std::uint64_t seed, const fs::path& out_root) {
  const Evaluation e = evaluate(p, seed);
  RunResult r;
  r.scenario = p.scenario.name;
  r.seed = seed;
  r.laser = p.scenario.laser;
  r.dc_offset = e.dc_offset;
  r.delta_best = *e.report.best->correctness_pct;
  r.best_slot = e.report.best->slot;
  r.best_inverted = e.report.best->inverted;
  r.dir = out_root / p.scenario.name / std::to_string(seed);

  fs::create_directories(r.dir);
  io::write_trace(r.dir / kTraceFile, e.trace);
  write_file(r.dir / kReportFile, report::to_json(e.report));

  Scenario pinned = p.scenario;
  pinned.seed = seed;
  pinned.repeat = 1;
  Manifest m{"sculi", std::string(kVersion), config_hash(pinned), canonical_text(pinned), pinned.name, seed};
  write_file(r.dir / kManifestFile, manifest_json(m));
  return r;
}

std::vector<RunResult> run_scenario(const Scenario& s, const fs::path& out_root) {
  const PreparedScenario p = prepare(s);
  std::vector<RunResult> rows;
  for (std::size_t i = 0; i < s.repeat; ++i) rows.push_back(run_once(p, s.seed_for(i), out_root));
  return rows;
}

std::vector<ScenarioSummary> SweepResult::summary() const {
  std::vector<ScenarioSummary> out;
  for (const auto& row : rows) {
    auto it = std::find_if(out.begin(), out.end(), [&](const auto& s) { return s.scenario == row.scenario; });
    if (it == out.end()) {
      out.push_back({row.scenario, 0, row.laser.enabled ? row.laser.power_pct : 0.0,
                     row.laser.enabled ? row.laser.fwhm_diameter_um : 0.0});
      it = std::prev(out.end());
    }
    ++it->runs;
    it->dc_offset_mean += row.dc_offset;
    it->delta_mean += row.delta_best;
    it->delta_std += row.delta_best * row.delta_best;
  }
  for (auto& s : out) {
    const double n = static_cast<double>(s.runs);
    s.dc_offset_mean /= n;
    s.delta_mean /= n;
    s.delta_std = std::sqrt(std::max(0.0, s.delta_std / n - s.delta_mean * s.delta_mean));
  }
  return out;
}

SweepResult run_sweep(const Config& cfg, const fs::path& out_root) {
  SweepResult r;
  for (const auto& s : cfg.scenarios) {
    auto rows = run_scenario(s, out_root);
    r.rows.insert(r.rows.end(), rows.begin(), rows.end());
  }
  return r;
}

std::string sweep_csv(const SweepResult& r) {
  std::string out = "scenario,power_pct,diameter_um,dc_offset,delta_best\n";
  for (const auto& row : r.rows) {
    const bool on = row.laser.enabled;
    out += row.scenario + ',' + format_number(on ? row.laser.power_pct : 0.0) + ',' +
           format_number(on ? row.laser.fwhm_diameter_um : 0.0) + ',' + format_number(row.dc_offset) + ',' +
           format_number(row.delta_best) + '\n';
  }
  return out;
}

std::string summary_csv(const SweepResult& r) {
  std::string out = "scenario,runs,power_pct,diameter_um,dc_offset_mean,delta_mean,delta_std\n";
  for (const auto& s : r.summary()) {
    out += s.scenario + ',' + std::to_string(s.runs) + ',' + format_number(s.power_pct) + ',' +
           format_number(s.diameter_um) + ',' + format_number(s.dc_offset_mean) + ',' + format_number(s.delta_mean) +
           ',' + format_number(s.delta_std) + '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------

CalibrationError::CalibrationError(const std::string& what, std::vector<CalibrationPoint> explored)
    : std::runtime_error([&] {
        std::string msg = what + "\nexplored (sigma_noise -> mean delta):";
        for (const auto& pt : explored) msg += "\n  " + format_number(pt.sigma_noise) + " -> " + format_number(pt.mean_delta);
        return msg;
      }()),
      explored_(std::move(explored)) {}

double mean_best_delta(const PreparedScenario& p, std::size_t n_seeds) {
  if (n_seeds == 0) throw std::invalid_argument("need at least one seed");
  double sum = 0.0;
  for (std::size_t i = 0; i < n_seeds; ++i) sum += best_delta(p, p.scenario.seed_for(i));
  return sum / static_cast<double>(n_seeds);
}

CalibrationResult calibrate(const Scenario& s, const CalibrationOptions& opt) {
  if (!(opt.target_lo < opt.target_hi)) throw std::invalid_argument("calibration target must satisfy lo < hi");
  if (!(opt.sigma_max > 0.0)) throw std::invalid_argument("sigma_max must be positive");

  PreparedScenario p = prepare(s);
  std::vector<CalibrationPoint> explored;
  auto probe = [&](double sigma) {
    p.scenario.params.sigma_noise = sigma;
    explored.push_back({sigma, mean_best_delta(p, opt.n_seeds)});
    return explored.back().mean_delta;
  };
  const double centre = 0.5 * (opt.target_lo + opt.target_hi);
  const double band = std::min(0.5, 0.25 * (opt.target_hi - opt.target_lo));
  auto in_range = [&](double d) { return d >= opt.target_lo && d <= opt.target_hi; };

  double lo = 0.0;
  double hi = opt.sigma_max;
  if (probe(lo) < opt.target_lo) throw CalibrationError("noise-free delta is already below the target", explored);
  if (probe(hi) > opt.target_hi) throw CalibrationError("sigma_max does not push delta below the target", explored);
  while (explored.size() < opt.max_evaluations) {
    const double mid = 0.5 * (lo + hi);
    const double d = probe(mid);
    if (std::abs(d - centre) <= band) break;
    (d > centre ? lo : hi) = mid;
  }

  const CalibrationPoint* best = nullptr;
  for (const auto& pt : explored) {
    if (in_range(pt.mean_delta) && (!best || std::abs(pt.mean_delta - centre) < std::abs(best->mean_delta - centre))) {
      best = &pt;
    }
  }
  if (!best) throw CalibrationError("no explored sigma_noise reached the target range", explored);

  CalibrationResult r;
  r.scenario = s;
  r.scenario.params.sigma_noise = best->sigma_noise;
  r.mean_delta = best->mean_delta;
  r.explored = std::move(explored);
  return r;
}

std::vector<double> day_variation(const Scenario& s, std::size_t n_days, std::uint64_t first_seed) {
  const PreparedScenario p = prepare(s);
  std::vector<double> out;
  for (std::size_t d = 0; d < n_days; ++d) out.push_back(best_delta(p, first_seed + d));
  return out;
}

double spread(std::span<const double> deltas) {
  if (deltas.size() < 2) return 0.0;
  const auto [lo, hi] = std::minmax_element(deltas.begin(), deltas.end());
  return *hi - *lo;
}

// ---------------------------------------------------------------------------

std::string manifest_json(const Manifest& m) {
  const json j{{"toolkit", m.toolkit},   {"version", m.version}, {"config_hash", m.config_hash},
               {"config", m.config},     {"scenario", m.scenario}, {"seed", m.seed},
               {"artifacts", {{"trace", kTraceFile}, {"sidecar", io::sidecar_path(kTraceFile).string()},
                              {"report", kReportFile}}}};
  return j.dump(2) + "\n";
}

Manifest parse_manifest(const std::string& text) {
  Manifest m;
  try {
    const auto j = json::parse(text);
    m.toolkit = j.at("toolkit").get<std::string>();
    m.version = j.at("version").get<std::string>();
    m.config_hash = j.at("config_hash").get<std::string>();
    m.config = j.at("config").get<std::string>();
    m.scenario = j.at("scenario").get<std::string>();
    m.seed = j.at("seed").get<std::uint64_t>();
  } catch (const json::exception& e) {
    throw ConfigError({std::string("manifest: ") + e.what()});
  }
  const Config cfg = parse_config(m.config);
  const Scenario& s = cfg.find(m.scenario);
  if (config_hash(s) != m.config_hash) {
    throw ConfigError({"manifest: config_hash does not match the recorded config (" + m.config_hash + " vs " +
                       config_hash(s) + ")"});
  }
  return m;
}

RerunResult rerun(const fs::path& manifest_path, const fs::path& out_root) {
  const Manifest m = parse_manifest(read_file(manifest_path));
  const std::string original = read_file(manifest_path.parent_path() / kReportFile);
  const Scenario s = parse_config(m.config).find(m.scenario);
  const RunResult r = run_once(prepare(s), m.seed, out_root);
  RerunResult out;
  out.report = r.dir / kReportFile;
  out.identical = read_file(out.report) == original;
  return out;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + p.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const fs::path& p, const std::string& content) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + p.string() + " for writing");
  out << content;
  if (!out) throw std::runtime_error("write to " + p.string() + " failed");
}

}  // namespace sculi::bench
