#include "sculi/report.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace sculi::report {

using json = nlohmann::json;

std::string to_json(const attack::AttackReport& r) {
  json slots = json::array();
  for (std::size_t s = 0; s < r.candidates.size(); ++s) {
    json row{{"slot", r.candidates[s].slot}, {"bits_hex", r.candidates[s].bits_hex()}};
    if (r.scored()) {
      row["delta_raw"] = r.delta_raw[s];
      row["delta_inverted"] = r.delta_inverted[s];
    }
    slots.push_back(std::move(row));
  }
  json j{{"mode", std::string(attack::mode_name(r.options.mode))},
         {"allow_inversion", r.options.allow_inversion},
         {"cycles_per_bit", r.options.framing.cycles_per_bit},
         {"cycle_offset", r.options.framing.cycle_offset},
         {"n_bits", r.candidates.empty() ? 0 : r.candidates.front().bits.size()},
         {"slots", std::move(slots)},
         {"scenario",
          {{"id", r.meta.scenario_id},
           {"seed", r.meta.seed},
           {"laser",
            {{"enabled", r.meta.laser.enabled},
             {"power_pct", r.meta.laser.power_pct},
             {"diameter_um", r.meta.laser.fwhm_diameter_um},
             {"center_x_um", r.meta.laser.center_x_um},
             {"center_y_um", r.meta.laser.center_y_um}}}}}};
  if (r.options.mode == attack::Mode::StaticOnly) j["quiescent_window"] = r.options.quiescent_window;
  if (r.meta.scalar_hex) j["scenario"]["scalar_hex"] = *r.meta.scalar_hex;
  if (r.best) {
    j["best"] = {{"slot", r.best->slot},
                 {"inverted", r.best->inverted},
                 {"delta", *r.best->correctness_pct},
                 {"delta_rounded", std::lround(*r.best->correctness_pct)},
                 {"bits_hex", r.best->bits_hex()}};
  } else {
    j["best"] = nullptr;
  }
  return j.dump(2) + "\n";
}

std::string to_csv(const attack::AttackReport& r) {
  std::ostringstream os;
  os << "slot,delta_raw,delta_inverted\n";
  os << std::setprecision(17);
  for (std::size_t s = 0; s < r.candidates.size(); ++s) {
    os << r.candidates[s].slot << ',';
    if (r.scored()) os << r.delta_raw[s] << ',' << r.delta_inverted[s];
    else os << ',';
    os << '\n';
  }
  return os.str();
}

void pretty_print(std::ostream& os, const std::string& report_json) {
  const auto j = json::parse(report_json);
  const auto& sc = j.at("scenario");
  os << "scenario   " << sc.at("id").get<std::string>() << "  (seed " << sc.at("seed").get<std::uint64_t>() << ")\n";
  const auto& laser = sc.at("laser");
  if (laser.at("enabled").get<bool>()) {
    os << "laser      " << laser.at("power_pct").get<double>() << " %, d = " << laser.at("diameter_um").get<double>()
       << " um at (" << laser.at("center_x_um").get<double>() << ", " << laser.at("center_y_um").get<double>()
       << ")\n";
  } else {
    os << "laser      off\n";
  }
  os << "mode       " << j.at("mode").get<std::string>() << ", " << j.at("n_bits").get<std::size_t>() << " bits x "
     << j.at("cycles_per_bit").get<std::size_t>() << " slots\n";
  if (j.at("best").is_null()) {
    os << "no ground truth: candidates unscored\n";
    return;
  }
  const auto& best = j.at("best");
  os << "best       slot " << best.at("slot").get<std::size_t>() << (best.at("inverted").get<bool>() ? " (inverted)" : "")
     << ", delta = " << std::fixed << std::setprecision(2) << best.at("delta").get<double>() << " %\n\n";
  os << "slot  delta_raw  delta_inv\n";
  for (const auto& row : j.at("slots")) {
    os << std::setw(4) << row.at("slot").get<std::size_t>() << "  " << std::setw(9)
       << row.at("delta_raw").get<double>() << "  " << std::setw(9) << row.at("delta_inverted").get<double>() << '\n';
  }
}

}  // namespace sculi::report
