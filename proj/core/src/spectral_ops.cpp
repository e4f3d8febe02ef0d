#include "pea/spectral_ops.hpp"

#include <cmath>
#include <stdexcept>

#include "pea/fft.hpp"
#include "pea/norms.hpp"

namespace pea {

namespace {

void require_same_shape(const ScalarField& a, const ScalarField& b) {
  if (!a.grid.same_shape(b.grid))
    throw std::invalid_argument("ScalarField: shape mismatch");
}

Parity flip(Parity p) {
  if (p == Parity::Even) return Parity::Odd;
  if (p == Parity::Odd) return Parity::Even;
  return Parity::None;
}

}  // namespace

ScalarField derivative(const ScalarField& f, Direction dir) {
  const Grid& g = f.grid;
  const Domain& d = f.domain;
  ScalarField out(g, d, dir == Direction::Z ? flip(f.parity) : f.parity, true);
  const double base = kTwoPi / (dir == Direction::X1 ? d.L1 : dir == Direction::X2 ? d.L2 : d.L3);
  for (int i1 = 0; i1 < g.N1; ++i1) {
    const int k1 = freq_of_index(i1, g.N1);
    for (int i2 = 0; i2 < g.N2; ++i2) {
      const int k2 = freq_of_index(i2, g.N2);
      const Cx* src = &f.at(i1, i2, 0);
      Cx* dst = &out.at(i1, i2, 0);
      for (int i3 = 0; i3 < g.N3; ++i3) {
        const int m = freq_of_index(i3, g.N3);
        const int k = dir == Direction::X1 ? k1 : dir == Direction::X2 ? k2 : m;
        dst[i3] = Cx(0.0, base * k) * src[i3];
      }
    }
  }
  return out;
}

ScalarField divergence_h(const ScalarField& v1, const ScalarField& v2) {
  require_same_shape(v1, v2);
  const Grid& g = v1.grid;
  const Domain& d = v1.domain;
  ScalarField out(g, d, v1.parity, true);
  const double b1 = kTwoPi / d.L1;
  const double b2 = kTwoPi / d.L2;
  for (int i1 = 0; i1 < g.N1; ++i1) {
    const int k1 = freq_of_index(i1, g.N1);
    for (int i2 = 0; i2 < g.N2; ++i2) {
      const int k2 = freq_of_index(i2, g.N2);
      const std::size_t off = flat_index(g, i1, i2, 0);
      for (int i3 = 0; i3 < g.N3; ++i3) {
        out.c[off + i3] = Cx(0.0, b1 * k1) * v1.c[off + i3] +
                          Cx(0.0, b2 * k2) * v2.c[off + i3];
      }
    }
  }
  return out;
}

ScalarField laplacian3(const ScalarField& f) {
  const Grid& g = f.grid;
  ScalarField out(g, f.domain, f.parity, true);
  for (int i1 = 0; i1 < g.N1; ++i1) {
    const int k1 = freq_of_index(i1, g.N1);
    for (int i2 = 0; i2 < g.N2; ++i2) {
      const int k2 = freq_of_index(i2, g.N2);
      const std::size_t off = flat_index(g, i1, i2, 0);
      for (int i3 = 0; i3 < g.N3; ++i3) {
        const int m = freq_of_index(i3, g.N3);
        out.c[off + i3] = -lambda_symbol(f.domain, k1, k2, m) * f.c[off + i3];
      }
    }
  }
  return out;
}

ScalarField vertical_integral(const ScalarField& f, double tol) {
  const Grid& g = f.grid;
  const Domain& d = f.domain;

  // Precondition: zero z-mean per horizontal wavevector.
  long double zmean2 = 0.0L, total2 = 0.0L;
  for (int i1 = 0; i1 < g.N1; ++i1)
    for (int i2 = 0; i2 < g.N2; ++i2) {
      const std::size_t off = flat_index(g, i1, i2, 0);
      zmean2 += std::norm(f.c[off]);
      for (int i3 = 0; i3 < g.N3; ++i3) total2 += std::norm(f.c[off + i3]);
    }
  if (std::sqrt(static_cast<double>(zmean2)) >
      tol * std::max(std::sqrt(static_cast<double>(total2)), 1e-300))
    throw std::invalid_argument("vertical_integral: input has nonzero z-mean");

  ScalarField out(g, d, flip(f.parity), f.parity == Parity::Even);
  for (int i1 = 0; i1 < g.N1; ++i1)
    for (int i2 = 0; i2 < g.N2; ++i2) {
      const std::size_t off = flat_index(g, i1, i2, 0);
      Cx constant(0.0, 0.0);
      for (int i3 = 1; i3 < g.N3; ++i3) {
        const int m = freq_of_index(i3, g.N3);
        if (m == -g.N3 / 2) {  // Nyquist: no conjugate partner, drop it
          out.c[off + i3] = Cx(0.0, 0.0);
          continue;
        }
        const Cx inv_imu = Cx(0.0, -d.L3 / (kTwoPi * m));  // 1/(i mu_m)
        const Cx primitive = f.c[off + i3] * inv_imu;
        out.c[off + i3] = primitive;
        constant -= primitive;  // the "-1" part of (e^{i mu z} - 1)
      }
      out.c[off] = constant;
    }
  return out;
}

void dealias_inplace(ScalarField& f) {
  const Grid& g = f.grid;
  for (int i1 = 0; i1 < g.N1; ++i1) {
    const bool kill1 = std::abs(freq_of_index(i1, g.N1)) > g.cutoff1;
    for (int i2 = 0; i2 < g.N2; ++i2) {
      const bool kill12 = kill1 || std::abs(freq_of_index(i2, g.N2)) > g.cutoff2;
      const std::size_t off = flat_index(g, i1, i2, 0);
      for (int i3 = 0; i3 < g.N3; ++i3) {
        if (kill12 || std::abs(freq_of_index(i3, g.N3)) > g.cutoff3)
          f.c[off + i3] = Cx(0.0, 0.0);
      }
    }
  }
}

ScalarField dealias(const ScalarField& f) {
  ScalarField out = f;
  dealias_inplace(out);
  return out;
}

void enforce_reality(ScalarField& f) {
  const Grid& g = f.grid;
  for (int i1 = 0; i1 < g.N1; ++i1) {
    const int j1 = (g.N1 - i1) % g.N1;
    for (int i2 = 0; i2 < g.N2; ++i2) {
      const int j2 = (g.N2 - i2) % g.N2;
      for (int i3 = 0; i3 < g.N3; ++i3) {
        const int j3 = (g.N3 - i3) % g.N3;
        const std::size_t a = flat_index(g, i1, i2, i3);
        const std::size_t b = flat_index(g, j1, j2, j3);
        if (a < b) {
          const Cx avg = 0.5 * (f.c[a] + std::conj(f.c[b]));
          f.c[a] = avg;
          f.c[b] = std::conj(avg);
        } else if (a == b) {
          f.c[a] = Cx(f.c[a].real(), 0.0);
        }
      }
    }
  }
}

void enforce_parity(ScalarField& f) {
  if (f.parity == Parity::None) return;
  const Grid& g = f.grid;
  const double sign = f.parity == Parity::Even ? 1.0 : -1.0;
  for (int i1 = 0; i1 < g.N1; ++i1)
    for (int i2 = 0; i2 < g.N2; ++i2) {
      const std::size_t off = flat_index(g, i1, i2, 0);
      for (int i3 = 0; i3 <= g.N3 / 2; ++i3) {
        const int j3 = (g.N3 - i3) % g.N3;
        if (i3 == j3) {  // m = 0 and the Nyquist plane are self-mirrored
          if (f.parity == Parity::Odd) f.c[off + i3] = Cx(0.0, 0.0);
          continue;
        }
        const Cx a = f.c[off + i3];
        const Cx b = f.c[off + j3];
        const Cx proj = 0.5 * (a + sign * b);
        f.c[off + i3] = proj;
        f.c[off + j3] = sign * proj;
      }
    }
}

void enforce_mean_zero(ScalarField& f) { f.c[0] = Cx(0.0, 0.0); }

void leray_project_zmean(ScalarField& v1, ScalarField& v2) {
  require_same_shape(v1, v2);
  const Grid& g = v1.grid;
  const Domain& d = v1.domain;
  for (int i1 = 0; i1 < g.N1; ++i1) {
    const int k1 = freq_of_index(i1, g.N1);
    for (int i2 = 0; i2 < g.N2; ++i2) {
      const int k2 = freq_of_index(i2, g.N2);
      if (k1 == 0 && k2 == 0) continue;
      const double a1 = kTwoPi * k1 / d.L1;
      const double a2 = kTwoPi * k2 / d.L2;
      const double inv = 1.0 / (a1 * a1 + a2 * a2);
      const std::size_t off = flat_index(g, i1, i2, 0);
      const Cx dot = a1 * v1.c[off] + a2 * v2.c[off];
      v1.c[off] -= a1 * dot * inv;
      v2.c[off] -= a2 * dot * inv;
    }
  }
}

StateVector project_state_symmetries(const StateVector& u) {
  StateVector r = u;
  // States live on the dealiased band; beyond it the +-Nyquist conflation
  // makes reality and Leray incompatible, so out-of-band content is removed
  // first (itself an orthogonal projection commuting with the rest).
  dealias_inplace(r.v1);
  dealias_inplace(r.v2);
  dealias_inplace(r.b);
  enforce_reality(r.v1);
  enforce_reality(r.v2);
  enforce_reality(r.b);
  r.v1.parity = Parity::Even;
  r.v2.parity = Parity::Even;
  r.b.parity = Parity::Odd;
  enforce_parity(r.v1);
  enforce_parity(r.v2);
  enforce_parity(r.b);
  enforce_mean_zero(r.v1);
  enforce_mean_zero(r.v2);
  leray_project_zmean(r.v1, r.v2);
  r.v1.mean_zero = r.v2.mean_zero = r.b.mean_zero = true;
  return r;
}

ScalarField dealiased_product(const ScalarField& a, const ScalarField& b,
                              Parity parity, bool mean_zero) {
  require_same_shape(a, b);
  const Grid& g = a.grid;
  std::vector<Cx> pa(g.size()), pb(g.size());
  fft::backward_raw(g, a.c.data(), pa.data());
  fft::backward_raw(g, b.c.data(), pb.data());
  for (std::size_t i = 0; i < pa.size(); ++i) {
    // Inputs are reality-symmetric; multiply the real samples to keep the
    // product exactly real.
    pa[i] = Cx(pa[i].real() * pb[i].real(), 0.0);
  }
  ScalarField out(g, a.domain, parity, mean_zero);
  fft::forward_raw(g, pa.data(), out.c.data());
  const double scale = 1.0 / static_cast<double>(g.size());
  for (auto& v : out.c) v *= scale;
  dealias_inplace(out);
  return out;
}

}  // namespace pea
