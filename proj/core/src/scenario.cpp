#include "sculi/scenario.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <openssl/evp.h>

namespace sculi::bench {

namespace {

namespace pt = boost::property_tree;
using accel::BlockId;

constexpr std::string_view kDefaultsSection = "defaults";
constexpr std::size_t kScalarBits = 233;

std::string join_lines(const std::vector<std::string>& lines) {
  std::string out;
  for (const auto& l : lines) {
    if (!out.empty()) out += '\n';
    out += l;
  }
  return out;
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

double parse_double(const std::string& v) {
  double out = 0.0;
  const auto* end = v.data() + v.size();
  const auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end) throw std::invalid_argument("expected a number, got '" + v + "'");
  return out;
}

std::uint64_t parse_uint(const std::string& v) {
  std::uint64_t out = 0;
  const auto* end = v.data() + v.size();
  const auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end) throw std::invalid_argument("expected a non-negative integer, got '" + v + "'");
  return out;
}

bool parse_bool(const std::string& v) {
  if (v == "on" || v == "true" || v == "yes" || v == "1") return true;
  if (v == "off" || v == "false" || v == "no" || v == "0") return false;
  throw std::invalid_argument("expected on/off, got '" + v + "'");
}

attack::Mode parse_mode(const std::string& v) {
  if (v == attack::mode_name(attack::Mode::Dynamic)) return attack::Mode::Dynamic;
  if (v == attack::mode_name(attack::Mode::StaticOnly)) return attack::Mode::StaticOnly;
  throw std::invalid_argument("expected sum-of-squares or static-only, got '" + v + "'");
}

std::string format_double(double v) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  (void)ec;
  return std::string(buf.data(), ptr);
}

using Setter = std::function<void(Scenario&, const std::string&)>;

struct Key {
  std::string name;
  Setter set;
  std::function<std::string(const Scenario&)> get;
};

const std::vector<Key>& keys() {
  static const std::vector<Key> table = [] {
    std::vector<Key> k;
    // `field` is a generic accessor usable on const and mutable scenarios.
    auto num = [&k](std::string name, auto field) {
      k.push_back({std::move(name), [field](Scenario& s, const std::string& v) { field(s) = parse_double(v); },
                   [field](const Scenario& s) { return format_double(field(s)); }});
    };
    k.push_back({"scalar", [](Scenario& s, const std::string& v) { s.scalar = v; },
                 [](const Scenario& s) { return s.scalar; }});
    k.push_back({"base_point", [](Scenario& s, const std::string& v) { s.base_point = v; },
                 [](const Scenario& s) { return s.base_point; }});
    k.push_back({"seed", [](Scenario& s, const std::string& v) { s.seed = parse_uint(v); },
                 [](const Scenario& s) { return std::to_string(s.seed); }});
    k.push_back({"repeat", [](Scenario& s, const std::string& v) { s.repeat = parse_uint(v); },
                 [](const Scenario& s) { return std::to_string(s.repeat); }});
    k.push_back({"laser", [](Scenario& s, const std::string& v) { s.laser.enabled = parse_bool(v); },
                 [](const Scenario& s) { return std::string(s.laser.enabled ? "on" : "off"); }});
    num("laser_power_pct", [](auto& s) -> auto& { return s.laser.power_pct; });
    num("laser_diameter_um", [](auto& s) -> auto& { return s.laser.fwhm_diameter_um; });
    num("laser_x_um", [](auto& s) -> auto& { return s.laser.center_x_um; });
    num("laser_y_um", [](auto& s) -> auto& { return s.laser.center_y_um; });
    num("w_dyn", [](auto& s) -> auto& { return s.params.w_dyn; });
    num("i_static0", [](auto& s) -> auto& { return s.params.i_static0; });
    num("alpha", [](auto& s) -> auto& { return s.params.alpha; });
    num("eta", [](auto& s) -> auto& { return s.params.eta; });
    num("sigma_noise", [](auto& s) -> auto& { return s.params.sigma_noise; });
    num("drift", [](auto& s) -> auto& { return s.params.drift; });
    num("leak_weight", [](auto& s) -> auto& { return s.params.leak_weight; });
    num("kernel_decay", [](auto& s) -> auto& { return s.params.kernel_decay; });
    for (auto b : accel::kAllBlocks) {
      const auto i = accel::index(b);
      num("gamma_" + std::string(config_block_key(b)), [i](auto& s) -> auto& { return s.params.gamma[i]; });
    }
    for (auto b : accel::kAllBlocks) {
      const auto i = accel::index(b);
      num("gate_" + std::string(config_block_key(b)), [i](auto& s) -> auto& { return s.params.gate_weight[i]; });
    }
    k.push_back({"attack", [](Scenario& s, const std::string& v) { s.attack.mode = parse_mode(v); },
                 [](const Scenario& s) { return std::string(attack::mode_name(s.attack.mode)); }});
    k.push_back({"quiescent_window",
                 [](Scenario& s, const std::string& v) { s.attack.quiescent_window = parse_uint(v); },
                 [](const Scenario& s) { return std::to_string(s.attack.quiescent_window); }});
    k.push_back({"allow_inversion",
                 [](Scenario& s, const std::string& v) { s.attack.allow_inversion = parse_bool(v); },
                 [](const Scenario& s) { return std::string(s.attack.allow_inversion ? "on" : "off"); }});
    return k;
  }();
  return table;
}

// `gamma` is write-only shorthand for all five gamma_<block> keys.
void apply(Scenario& s, const std::string& key, const std::string& value) {
  if (key == "gamma") {
    s.params.set_gamma(parse_double(value));
    return;
  }
  for (const auto& k : keys()) {
    if (k.name == key) {
      k.set(s, value);
      return;
    }
  }
  throw std::invalid_argument("unknown key");
}

void apply_section(Scenario& s, const pt::ptree& section, const std::string& name,
                   std::vector<std::string>& problems) {
  // `gamma` first so gamma_<block> in the same section refines it.
  if (auto g = section.get_optional<std::string>("gamma")) {
    try {
      apply(s, "gamma", trim(*g));
    } catch (const std::invalid_argument& e) {
      problems.push_back("[" + name + "] gamma: " + e.what());
    }
  }
  for (const auto& [key, child] : section) {
    if (key == "gamma") continue;
    if (!child.empty()) {
      problems.push_back("[" + name + "] " + key + ": nested keys are not supported");
      continue;
    }
    try {
      apply(s, key, trim(child.data()));
    } catch (const std::invalid_argument& e) {
      problems.push_back("[" + name + "] " + key + ": " + e.what());
    }
  }
}

bool valid_name(std::string_view name) {
  if (name.empty() || name == "." || name == "..") return false;
  for (char c : name) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' ||
                    c == '-' || c == '.';
    if (!ok) return false;
  }
  return true;
}

void validate(const Scenario& s, std::vector<std::string>& problems) {
  const std::string where = "[" + s.name + "] ";
  auto check = [&](const char* key, auto&& fn) {
    try {
      fn();
    } catch (const std::exception& e) {
      std::string msg = e.what();
      if (auto* ce = dynamic_cast<const ConfigError*>(&e)) msg = join_lines(ce->problems());
      problems.push_back(where + key + ": " + msg);
    }
  };
  if (!valid_name(s.name)) problems.push_back(where + "name: use only letters, digits, '_', '-' and '.'");
  check("scalar", [&] { (void)s.resolve_scalar(); });
  check("base_point", [&] { (void)s.resolve_base_point(); });
  if (s.repeat == 0) problems.push_back(where + "repeat: must be at least 1");
  check("laser", [&] {
    if (s.laser.enabled) s.laser.validate();
  });
  check("params", [&] { s.params.validate(); });
  if (s.attack.quiescent_window == 0 || s.attack.quiescent_window > leakage::kSamplesPerCycle) {
    problems.push_back(where + "quiescent_window: must lie in [1, " + std::to_string(leakage::kSamplesPerCycle) + "]");
  }
}

/// Section names in file order, without duplicates.
std::vector<std::string> section_names(std::string_view text) {
  std::vector<std::string> names;
  std::istringstream is{std::string(text)};
  for (std::string line; std::getline(is, line);) {
    line = trim(line);
    if (line.size() < 2 || line.front() != '[' || line.back() != ']') continue;
    auto name = trim(std::string_view(line).substr(1, line.size() - 2));
    if (std::find(names.begin(), names.end(), name) == names.end()) names.push_back(std::move(name));
  }
  return names;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> problems)
    : std::runtime_error(join_lines(problems)), problems_(std::move(problems)) {}

std::string_view config_block_key(BlockId b) {
  switch (b) {
    case BlockId::FieldMultiplier: return "multiplier";
    case BlockId::FieldAdder: return "adder";
    case BlockId::Registers: return "registers";
    case BlockId::Controller: return "controller";
    case BlockId::Multiplexer: return "mux";
  }
  return "";
}

Scalar Scenario::resolve_scalar() const {
  constexpr std::string_view kRandom = "random:";
  Scalar k;
  if (std::string_view(scalar).substr(0, kRandom.size()) == kRandom) {
    std::uint64_t seed_value = 0;
    try {
      seed_value = parse_uint(scalar.substr(kRandom.size()));
    } catch (const std::invalid_argument&) {
      throw ConfigError({"random scalar seed must be a non-negative integer, got '" + scalar + "'"});
    }
    k = Scalar::random_with_length(kScalarBits, seed_value);
  } else {
    try {
      k = Scalar::from_hex(scalar);
    } catch (const std::invalid_argument& e) {
      throw ConfigError({std::string("not a hex scalar or random:<seed>: ") + e.what()});
    }
  }
  if (k.processed_length() == 0) throw ConfigError({"scalar must be at least 2"});
  return k;
}

curve::AffinePoint<field::Gf233> Scenario::resolve_base_point() const {
  const auto& c = curve::b233();
  if (base_point == "G") return c.base_point;
  curve::AffinePoint<field::Gf233> p;
  try {
    p = curve::point_from_string<field::Gf233>(base_point);
  } catch (const std::invalid_argument& e) {
    throw ConfigError({std::string("expected G or x,y in hex: ") + e.what()});
  }
  if (p.infinity) throw ConfigError({"base point must be finite"});
  if (!curve::is_on_curve(p, c)) throw ConfigError({"point is not on B-233"});
  if (p.x.is_zero()) throw ConfigError({"base point with x = 0 has order 2"});
  return p;
}

const Scenario& Config::find(std::string_view name) const {
  for (const auto& s : scenarios) {
    if (s.name == name) return s;
  }
  std::string known;
  for (const auto& s : scenarios) known += (known.empty() ? "" : ", ") + s.name;
  throw ConfigError({"no scenario named '" + std::string(name) + "' (have: " + known + ")"});
}

Config parse_config(std::string_view text) {
  pt::ptree tree;
  try {
    std::istringstream is{std::string(text)};
    pt::read_ini(is, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError({"line " + std::to_string(e.line()) + ": " + e.message()});
  }

  std::vector<std::string> problems;
  Scenario defaults;
  defaults.name.clear();
  for (const auto& [name, section] : tree) {
    // A top-level key has a value and no children.
    if (section.empty()) problems.push_back(name + ": keys must appear inside a [section]");
  }
  if (auto d = tree.get_child_optional(std::string(kDefaultsSection))) {
    apply_section(defaults, *d, std::string(kDefaultsSection), problems);
  }

  // The INI reader drops sections without keys, so scenario names come from
  // the headers themselves.
  Config cfg;
  const pt::ptree no_keys;
  for (const auto& name : section_names(text)) {
    if (name == kDefaultsSection) continue;
    const auto section = tree.get_child_optional(pt::ptree::path_type(name, '\0'));
    Scenario s = defaults;
    s.name = name;
    apply_section(s, section ? *section : no_keys, name, problems);
    cfg.scenarios.push_back(std::move(s));
  }
  if (problems.empty()) {
    if (cfg.scenarios.empty()) problems.emplace_back("config defines no scenario sections");
    for (const auto& s : cfg.scenarios) validate(s, problems);
  }
  if (!problems.empty()) throw ConfigError(std::move(problems));
  return cfg;
}

Config load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError({path + ": cannot open config file"});
  std::ostringstream os;
  os << in.rdbuf();
  return parse_config(os.str());
}

std::string canonical_text(const Scenario& s) {
  std::string out = "[" + s.name + "]\n";
  for (const auto& k : keys()) out += k.name + " = " + k.get(s) + "\n";
  return out;
}

std::string config_hash(const Scenario& s) {
  const std::string text = canonical_text(s);
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (EVP_Digest(text.data(), text.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex += kHex[digest[i] >> 4];
    hex += kHex[digest[i] & 0xf];
  }
  return hex;
}

}  // namespace sculi::bench
