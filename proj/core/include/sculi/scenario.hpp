// Experiment configuration.
//
// A config is INI text. Every section except [defaults] is one scenario whose
// name is the section name; keys missing from a scenario are taken from
// [defaults], then from the built-in values. Comment lines start with ';'.
//
//   [defaults]
//   ; hex, or random:<seed> for a random 233-bit scalar
//   scalar = random:1
//   sigma_noise = 6.4
//
//   [exp3]
//   laser = on
//   laser_power_pct = 100
//   laser_diameter_um = 14
//
// Keys:
//   scalar, base_point (G or x,y in hex), seed, repeat
//   laser (on/off), laser_power_pct, laser_diameter_um, laser_x_um, laser_y_um
//   w_dyn, i_static0, alpha, eta, sigma_noise, drift, leak_weight, kernel_decay
//   gamma (all blocks), gamma_<block>, gate_<block>
//     with <block> one of multiplier, adder, registers, controller, mux
//   attack (sum-of-squares / static-only), quiescent_window, allow_inversion
#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sculi/attack.hpp"
#include "sculi/curve.hpp"
#include "sculi/floorplan.hpp"
#include "sculi/power_model.hpp"
#include "sculi/scalar.hpp"

namespace sculi::bench {

/// Invalid configuration. what() lists every problem, one per line, as
/// "[section] key: message".
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

struct Scenario {
  std::string name = "reference";
  std::string scalar = "random:1";
  std::string base_point = "G";
  std::uint64_t seed = 1;
  std::size_t repeat = 1;
  leakage::LaserSpec laser{};
  leakage::PowerParams params{};
  attack::AttackOptions attack{};

  /// The scalar this scenario attacks. Throws ConfigError when unparsable.
  Scalar resolve_scalar() const;
  curve::AffinePoint<field::Gf233> resolve_base_point() const;
  /// Noise seed of repeat r.
  std::uint64_t seed_for(std::size_t r) const { return seed + r; }

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

struct Config {
  std::vector<Scenario> scenarios;

  const Scenario& find(std::string_view name) const;
};

/// Parses INI text. All problems are collected before throwing ConfigError.
Config parse_config(std::string_view text);
Config load_config(const std::string& path);

/// Canonical text of one scenario: a single section with every key, in a
/// fixed order, numbers in shortest round-trip form. parse_config of the
/// result gives back an equal scenario.
std::string canonical_text(const Scenario& s);
/// Lowercase hex SHA-256 of canonical_text(s).
std::string config_hash(const Scenario& s);

std::string_view config_block_key(accel::BlockId b);

}  // namespace sculi::bench
