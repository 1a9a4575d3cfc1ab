// Die geometry and Gaussian laser-spot illumination.
#pragma once

#include <array>

#include "sculi/schedule.hpp"

namespace sculi::leakage {

/// Axis-aligned rectangle in micrometres.
struct Rect {
  double x = 0, y = 0, width = 0, height = 0;

  double right() const { return x + width; }
  double top() const { return y + height; }
  double area() const { return width * height; }
  bool contains(const Rect& r) const;
  bool overlaps(const Rect& r) const;
};

struct Floorplan {
  Rect die;
  std::array<Rect, accel::kBlockCount> blocks;

  const Rect& block(accel::BlockId b) const { return blocks[accel::index(b)]; }
  /// Throws std::invalid_argument when a block leaves the die or two blocks overlap.
  void validate() const;
};

/// 3000 x 3000 um die; the field multiplier occupies the largest area.
Floorplan default_floorplan();

struct LaserSpec {
  bool enabled = false;
  double power_pct = 0.0;         // % of maximum CW output
  double fwhm_diameter_um = 1.0;  // spot FWHM
  double center_x_um = 0.0;
  double center_y_um = 0.0;

  /// Throws std::invalid_argument for power outside [0,100] or d <= 0.
  void validate() const;

  friend bool operator==(const LaserSpec&, const LaserSpec&) = default;
};

/// Gaussian standard deviation for a FWHM diameter.
double fwhm_to_sigma(double fwhm_um);

/// Peak-intensity proxy: power_pct / d^2. Zero for a disabled laser.
double beam_intensity(const LaserSpec& spec);

/// Fraction of a unit-mass 2-D Gaussian spot falling inside `r`, by 64 x 64
/// midpoint quadrature over the part of `r` within six sigma of the centre.
double spot_mass_in(const LaserSpec& spec, const Rect& r);

/// eta * power_pct * (spot mass over the block).
double absorbed_power(const LaserSpec& spec, const Floorplan& plan, accel::BlockId b, double eta);

}  // namespace sculi::leakage
