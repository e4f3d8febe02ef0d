#include "pea/norms.hpp"

#include <cmath>

#include "pea/spectral_ops.hpp"

namespace pea {

namespace {

// lambda^0, lambda^1, lambda^2 weights for H, W1, W2.
inline double weight(double lambda, Space s) {
  switch (s) {
    case Space::H: return 1.0;
    case Space::W1: return lambda;
    case Space::W2: return lambda * lambda;
  }
  return 1.0;
}

long double weighted_sum2(const ScalarField& f, Space s) {
  const Grid& g = f.grid;
  long double acc = 0.0L;
  for (int i1 = 0; i1 < g.N1; ++i1) {
    const int k1 = freq_of_index(i1, g.N1);
    for (int i2 = 0; i2 < g.N2; ++i2) {
      const int k2 = freq_of_index(i2, g.N2);
      const std::size_t off = flat_index(g, i1, i2, 0);
      for (int i3 = 0; i3 < g.N3; ++i3) {
        const int m = freq_of_index(i3, g.N3);
        acc += weight(lambda_symbol(f.domain, k1, k2, m), s) * std::norm(f.c[off + i3]);
      }
    }
  }
  return acc;
}

long double weighted_dot(const ScalarField& f, const ScalarField& h, Space s) {
  const Grid& g = f.grid;
  long double acc = 0.0L;
  for (int i1 = 0; i1 < g.N1; ++i1) {
    const int k1 = freq_of_index(i1, g.N1);
    for (int i2 = 0; i2 < g.N2; ++i2) {
      const int k2 = freq_of_index(i2, g.N2);
      const std::size_t off = flat_index(g, i1, i2, 0);
      for (int i3 = 0; i3 < g.N3; ++i3) {
        const int m = freq_of_index(i3, g.N3);
        const Cx p = f.c[off + i3] * std::conj(h.c[off + i3]);
        acc += weight(lambda_symbol(f.domain, k1, k2, m), s) * p.real();
      }
    }
  }
  return acc;
}

}  // namespace

double norm(const ScalarField& f, Space s) {
  return std::sqrt(static_cast<double>(weighted_sum2(f, s)) * f.domain.volume());
}

double norm(const StateVector& u, Space s) {
  const long double sum = weighted_sum2(u.v1, s) + weighted_sum2(u.v2, s) +
                          weighted_sum2(u.b, s);
  return std::sqrt(static_cast<double>(sum) * u.domain().volume());
}

double inner_product(const ScalarField& f, const ScalarField& g, Space s) {
  return static_cast<double>(weighted_dot(f, g, s)) * f.domain.volume();
}

double inner_product(const StateVector& u, const StateVector& v, Space s) {
  const long double sum = weighted_dot(u.v1, v.v1, s) + weighted_dot(u.v2, v.v2, s) +
                          weighted_dot(u.b, v.b, s);
  return static_cast<double>(sum) * u.domain().volume();
}

double reality_violation(const ScalarField& f) {
  const Grid& g = f.grid;
  double worst = 0.0;
  for (int i1 = 0; i1 < g.N1; ++i1) {
    const int j1 = (g.N1 - i1) % g.N1;
    for (int i2 = 0; i2 < g.N2; ++i2) {
      const int j2 = (g.N2 - i2) % g.N2;
      for (int i3 = 0; i3 < g.N3; ++i3) {
        const int j3 = (g.N3 - i3) % g.N3;
        const Cx diff = f.c[flat_index(g, i1, i2, i3)] -
                        std::conj(f.c[flat_index(g, j1, j2, j3)]);
        worst = std::max(worst, std::abs(diff));
      }
    }
  }
  return worst;
}

double parity_violation(const ScalarField& f) {
  if (f.parity == Parity::None) return 0.0;
  ScalarField p = f;
  enforce_parity(p);
  long double acc = 0.0L;
  for (std::size_t i = 0; i < f.c.size(); ++i) acc += std::norm(f.c[i] - p.c[i]);
  return std::sqrt(static_cast<double>(acc) * f.domain.volume());
}

double mean_violation(const ScalarField& f) {
  return std::abs(f.c[0]) * std::sqrt(f.domain.volume());
}

double barotropic_violation(const StateVector& u) {
  const Grid& g = u.grid();
  const Domain& d = u.domain();
  long double acc = 0.0L;
  for (int i1 = 0; i1 < g.N1; ++i1) {
    const int k1 = freq_of_index(i1, g.N1);
    for (int i2 = 0; i2 < g.N2; ++i2) {
      const int k2 = freq_of_index(i2, g.N2);
      const std::size_t off = flat_index(g, i1, i2, 0);
      const Cx div = Cx(0.0, kTwoPi * k1 / d.L1) * u.v1.c[off] +
                     Cx(0.0, kTwoPi * k2 / d.L2) * u.v2.c[off];
      acc += std::norm(div);
    }
  }
  return std::sqrt(static_cast<double>(acc) * d.volume());
}

double constraint_violation(const StateVector& u) {
  const StateVector p = project_state_symmetries(u);
  return norm(u - p, Space::H);
}

bool all_finite(const ScalarField& f) {
  for (const Cx& v : f.c)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

bool all_finite(const StateVector& u) {
  return all_finite(u.v1) && all_finite(u.v2) && all_finite(u.b);
}

}  // namespace pea
