#include "sculi/floorplan.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sculi::leakage {

namespace {
constexpr int kQuadraturePoints = 64;
constexpr double kWindowSigmas = 6.0;
}  // namespace

bool Rect::contains(const Rect& r) const {
  return r.x >= x && r.y >= y && r.right() <= right() && r.top() <= top();
}

bool Rect::overlaps(const Rect& r) const {
  return x < r.right() && r.x < right() && y < r.top() && r.y < top();
}

void Floorplan::validate() const {
  if (die.width <= 0 || die.height <= 0) throw std::invalid_argument("die must have positive size");
  for (auto b : accel::kAllBlocks) {
    const Rect& r = block(b);
    const std::string name(accel::block_name(b));
    if (r.width <= 0 || r.height <= 0) throw std::invalid_argument("block " + name + " must have positive size");
    if (!die.contains(r)) throw std::invalid_argument("block " + name + " lies outside the die");
  }
  for (std::size_t i = 0; i < accel::kBlockCount; ++i)
    for (std::size_t j = i + 1; j < accel::kBlockCount; ++j)
      if (blocks[i].overlaps(blocks[j])) {
        throw std::invalid_argument("blocks " + std::string(accel::block_name(accel::kAllBlocks[i])) + " and " +
                                    std::string(accel::block_name(accel::kAllBlocks[j])) + " overlap");
      }
}

Floorplan default_floorplan() {
  Floorplan f;
  f.die = Rect{0, 0, 3000, 3000};
  f.blocks[accel::index(accel::BlockId::FieldMultiplier)] = Rect{0, 0, 1800, 3000};
  f.blocks[accel::index(accel::BlockId::Registers)] = Rect{1800, 0, 1200, 1500};
  f.blocks[accel::index(accel::BlockId::FieldAdder)] = Rect{1800, 1500, 600, 900};
  f.blocks[accel::index(accel::BlockId::Controller)] = Rect{2400, 1500, 600, 900};
  f.blocks[accel::index(accel::BlockId::Multiplexer)] = Rect{1800, 2400, 1200, 600};
  return f;
}

void LaserSpec::validate() const {
  if (!(power_pct >= 0.0 && power_pct <= 100.0)) {
    throw std::invalid_argument("laser power_pct must lie in [0, 100], got " + std::to_string(power_pct));
  }
  if (!(fwhm_diameter_um > 0.0)) {
    throw std::invalid_argument("laser diameter must be positive, got " + std::to_string(fwhm_diameter_um));
  }
}

double fwhm_to_sigma(double fwhm_um) { return fwhm_um / (2.0 * std::sqrt(2.0 * std::log(2.0))); }

double beam_intensity(const LaserSpec& spec) {
  if (!spec.enabled) return 0.0;
  return spec.power_pct / (spec.fwhm_diameter_um * spec.fwhm_diameter_um);
}

double spot_mass_in(const LaserSpec& spec, const Rect& r) {
  const double sigma = fwhm_to_sigma(spec.fwhm_diameter_um);
  const double half = kWindowSigmas * sigma;
  const double x0 = std::max(r.x, spec.center_x_um - half);
  const double x1 = std::min(r.right(), spec.center_x_um + half);
  const double y0 = std::max(r.y, spec.center_y_um - half);
  const double y1 = std::min(r.top(), spec.center_y_um + half);
  if (x0 >= x1 || y0 >= y1) return 0.0;

  // The density is separable, so the 2-D midpoint sum factors into two 1-D sums.
  auto axis = [sigma](double lo, double hi, double c) {
    const double h = (hi - lo) / kQuadraturePoints;
    double sum = 0.0;
    for (int i = 0; i < kQuadraturePoints; ++i) {
      const double u = (lo + (i + 0.5) * h - c) / sigma;
      sum += std::exp(-0.5 * u * u);
    }
    return sum * h / (sigma * std::sqrt(2.0 * M_PI));
  };
  return axis(x0, x1, spec.center_x_um) * axis(y0, y1, spec.center_y_um);
}

double absorbed_power(const LaserSpec& spec, const Floorplan& plan, accel::BlockId b, double eta) {
  if (!spec.enabled || spec.power_pct == 0.0) return 0.0;
  return eta * spec.power_pct * spot_mass_in(spec, plan.block(b));
}

}  // namespace sculi::leakage
