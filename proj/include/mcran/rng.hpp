#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace mcran {

// Deterministic draws on top of mt19937_64. The standard distribution
// classes are implementation-defined, so uniform and normal transforms are
// pinned here to keep generated instances reproducible across toolchains.
class Rng {
public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1) with 53-bit resolution.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Standard normal via Box-Muller; one cached value per pair.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    double u2 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

  // Uniform point in a disk of radius `radius` around (cx, cy).
  void disk_point(double cx, double cy, double radius, double& x, double& y) {
    double r = radius * std::sqrt(uniform());
    double theta = 2.0 * std::numbers::pi * uniform();
    x = cx + r * std::cos(theta);
    y = cy + r * std::sin(theta);
  }

  int uniform_int(int n) { return static_cast<int>(uniform() * n) % n; }

private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace mcran
