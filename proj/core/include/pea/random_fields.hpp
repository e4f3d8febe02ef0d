#pragma once

#include <cstdint>
#include <random>

#include "pea/field.hpp"

namespace pea {

// Single source of randomness for a run.  Gaussian variates are synthesized
// from the raw 64-bit stream (Box-Muller) rather than std::normal_distribution
// so the draw sequence is pinned by the seed alone, not by the standard
// library implementation.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t raw() { return eng_(); }

  double uniform() {  // [0, 1)
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(kTwoPi * u2);
    have_spare_ = true;
    return r * std::cos(kTwoPi * u2);
  }

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Random constrained state: independent complex Gaussian coefficients on the
// dealiased band shaped by (1 + lambda)^-spectral_decay, then projected onto
// the constraint manifold and scaled so that ||U||_H = amplitude (when the
// projected draw is nonzero).
StateVector random_state(const Grid& g, const Domain& d, Rng& rng,
                         double amplitude, double spectral_decay = 1.0);

// Same construction normalized in W1; used for twin-experiment initial-guess
// perturbations ("spanning" all retained shells).
StateVector random_perturbation_w1(const Grid& g, const Domain& d, Rng& rng,
                                   double w1_amplitude, double spectral_decay = 0.75);

}  // namespace pea
