#include "sculi/trace_io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include <json.hpp>

namespace sculi::io {

namespace {

using json = nlohmann::json;

template <class T>
void put_le(std::ostream& os, T value) {
  std::array<char, sizeof(T)> buf;
  std::memcpy(buf.data(), &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(buf.begin(), buf.end());
  os.write(buf.data(), buf.size());
}

template <class T>
T get_le(std::istream& is, const char* what) {
  std::array<char, sizeof(T)> buf;
  if (!is.read(buf.data(), buf.size())) throw FormatError(std::string("truncated trace header at ") + what);
  if constexpr (std::endian::native == std::endian::big) std::reverse(buf.begin(), buf.end());
  T value;
  std::memcpy(&value, buf.data(), sizeof(T));
  return value;
}

json laser_to_json(const leakage::LaserSpec& l) {
  return json{{"enabled", l.enabled},
              {"power_pct", l.power_pct},
              {"diameter_um", l.fwhm_diameter_um},
              {"center_x_um", l.center_x_um},
              {"center_y_um", l.center_y_um}};
}

leakage::LaserSpec laser_from_json(const json& j) {
  leakage::LaserSpec l;
  l.enabled = j.at("enabled").get<bool>();
  l.power_pct = j.at("power_pct").get<double>();
  l.fwhm_diameter_um = j.at("diameter_um").get<double>();
  l.center_x_um = j.at("center_x_um").get<double>();
  l.center_y_um = j.at("center_y_um").get<double>();
  return l;
}

}  // namespace

std::filesystem::path sidecar_path(const std::filesystem::path& trace_path) {
  auto p = trace_path;
  p.replace_extension(".meta.json");
  return p;
}

void write_trace_binary(std::ostream& os, const leakage::Trace& t) {
  os.write(kTraceMagic, 4);
  put_le<std::uint32_t>(os, kTraceVersion);
  put_le<double>(os, t.sample_rate);
  put_le<double>(os, t.clock_hz);
  put_le<std::uint64_t>(os, t.samples.size());
  if constexpr (std::endian::native == std::endian::little) {
    os.write(reinterpret_cast<const char*>(t.samples.data()),
             static_cast<std::streamsize>(t.samples.size() * sizeof(float)));
  } else {
    for (float v : t.samples) put_le<float>(os, v);
  }
  if (!os) throw std::runtime_error("failed writing trace");
}

leakage::Trace read_trace_binary(std::istream& is) {
  char magic[4];
  if (!is.read(magic, 4) || std::memcmp(magic, kTraceMagic, 4) != 0) throw FormatError("not an SCTR trace (bad magic)");
  const auto version = get_le<std::uint32_t>(is, "version");
  if (version != kTraceVersion) throw FormatError("unsupported SCTR version " + std::to_string(version));
  leakage::Trace t;
  t.sample_rate = get_le<double>(is, "sample_rate");
  t.clock_hz = get_le<double>(is, "clock");
  const auto n = get_le<std::uint64_t>(is, "n_samples");
  if (!(t.sample_rate > 0) || !(t.clock_hz > 0)) throw FormatError("non-positive sample rate or clock");
  t.samples.resize(n);
  if constexpr (std::endian::native == std::endian::little) {
    if (!is.read(reinterpret_cast<char*>(t.samples.data()), static_cast<std::streamsize>(n * sizeof(float)))) {
      throw FormatError("truncated trace: expected " + std::to_string(n) + " samples");
    }
  } else {
    for (auto& v : t.samples) v = get_le<float>(is, "samples");
  }
  return t;
}

std::string sidecar_json(const leakage::TraceMeta& meta) {
  json j{{"format", "SCTR"},
         {"version", kTraceVersion},
         {"seed", meta.seed},
         {"scenario", meta.scenario_id},
         {"laser", laser_to_json(meta.laser)}};
  if (meta.scalar_hex) j["scalar_hex"] = *meta.scalar_hex;
  return j.dump(2) + "\n";
}

leakage::TraceMeta parse_sidecar(const std::string& json_text) {
  leakage::TraceMeta m;
  try {
    const auto j = json::parse(json_text);
    m.seed = j.at("seed").get<std::uint64_t>();
    m.scenario_id = j.at("scenario").get<std::string>();
    m.laser = laser_from_json(j.at("laser"));
    if (j.contains("scalar_hex")) m.scalar_hex = j.at("scalar_hex").get<std::string>();
  } catch (const json::exception& e) {
    throw FormatError(std::string("bad trace sidecar: ") + e.what());
  }
  return m;
}

void write_trace(const std::filesystem::path& path, const leakage::Trace& t) {
  {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
    write_trace_binary(os, t);
  }
  std::ofstream meta(sidecar_path(path), std::ios::binary);
  if (!meta) throw std::runtime_error("cannot open " + sidecar_path(path).string() + " for writing");
  meta << sidecar_json(t.meta);
}

leakage::Trace read_trace(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open trace " + path.string());
  auto t = read_trace_binary(is);
  const auto side = sidecar_path(path);
  if (std::filesystem::exists(side)) {
    std::ifstream ms(side, std::ios::binary);
    std::stringstream buf;
    buf << ms.rdbuf();
    t.meta = parse_sidecar(buf.str());
  }
  return t;
}

}  // namespace sculi::io
