#include "pea/random_fields.hpp"

#include <cmath>

#include "pea/norms.hpp"
#include "pea/spectral_ops.hpp"

namespace pea {

namespace {

void fill_field(ScalarField& f, Rng& rng, double decay) {
  const Grid& g = f.grid;
  // Fixed iteration order keeps the draw sequence reproducible.
  for (int i1 = 0; i1 < g.N1; ++i1) {
    const int k1 = freq_of_index(i1, g.N1);
    if (std::abs(k1) > g.cutoff1) continue;
    for (int i2 = 0; i2 < g.N2; ++i2) {
      const int k2 = freq_of_index(i2, g.N2);
      if (std::abs(k2) > g.cutoff2) continue;
      for (int i3 = 0; i3 < g.N3; ++i3) {
        const int m = freq_of_index(i3, g.N3);
        if (std::abs(m) > g.cutoff3) continue;
        const double lam = lambda_symbol(f.domain, k1, k2, m);
        const double shape = std::pow(1.0 + lam, -decay);
        f.at(i1, i2, i3) = shape * Cx(rng.gaussian(), rng.gaussian());
      }
    }
  }
}

StateVector random_draw(const Grid& g, const Domain& d, Rng& rng, double decay) {
  StateVector u(g, d);
  fill_field(u.v1, rng, decay);
  fill_field(u.v2, rng, decay);
  fill_field(u.b, rng, decay);
  return project_state_symmetries(u);
}

void rescale(StateVector& u, Space s, double target) {
  const double n = norm(u, s);
  if (n > 0.0 && target > 0.0) {
    const double f = target / n;
    for (std::size_t i = 0; i < u.v1.c.size(); ++i) {
      u.v1.c[i] *= f;
      u.v2.c[i] *= f;
      u.b.c[i] *= f;
    }
  }
}

}  // namespace

StateVector random_state(const Grid& g, const Domain& d, Rng& rng,
                         double amplitude, double spectral_decay) {
  StateVector u = random_draw(g, d, rng, spectral_decay);
  rescale(u, Space::H, amplitude);
  return u;
}

StateVector random_perturbation_w1(const Grid& g, const Domain& d, Rng& rng,
                                   double w1_amplitude, double spectral_decay) {
  StateVector u = random_draw(g, d, rng, spectral_decay);
  rescale(u, Space::W1, w1_amplitude);
  return u;
}

}  // namespace pea
