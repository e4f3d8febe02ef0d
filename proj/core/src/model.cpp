#include "pea/model.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>

#include "pea/errors.hpp"
#include "pea/fft.hpp"
#include "pea/norms.hpp"
#include "pea/spectral_ops.hpp"

namespace pea {

namespace {

void add_scaled(ScalarField& dst, const ScalarField& src, double s) {
  for (std::size_t i = 0; i < dst.c.size(); ++i) dst.c[i] += s * src.c[i];
}

void negate(ScalarField& f) {
  for (auto& z : f.c) z = -z;
}

}  // namespace

void PhysicalParams::validate() const {
  if (!(nu > 0.0) || !std::isfinite(nu)) throw ConfigError("nu must be positive and finite");
  if (!std::isfinite(coriolis)) throw ConfigError("coriolis must be finite");
}

ForcingSpec ForcingSpec::none(const Grid& g, const Domain& d) {
  ForcingSpec f;
  f.G = StateVector(g, d);
  f.is_zero = true;
  return f;
}

ForcingSpec ForcingSpec::standard(const Grid& g, const Domain& d, double amplitude) {
  ForcingSpec f;
  f.G = StateVector(g, d);
  const Cx mi4(0.0, -0.25);  // -i/4
  const Cx pi4(0.0, 0.25);

  // G_f1 = cos(2 pi z/L3) sin(2 pi x2/L2)
  f.G.v1.at_freq(0, 1, 1) = mi4;
  f.G.v1.at_freq(0, 1, -1) = mi4;
  f.G.v1.at_freq(0, -1, 1) = pi4;
  f.G.v1.at_freq(0, -1, -1) = pi4;

  // G_b = sin(2 pi z/L3) cos(2 pi x1/L1)
  f.G.b.at_freq(1, 0, 1) = mi4;
  f.G.b.at_freq(-1, 0, 1) = mi4;
  f.G.b.at_freq(1, 0, -1) = pi4;
  f.G.b.at_freq(-1, 0, -1) = pi4;

  for (auto* c : {&f.G.v1, &f.G.v2, &f.G.b})
    for (auto& z : c->c) z *= amplitude;

  f.G = project_state_symmetries(f.G);
  f.is_zero = (norm(f.G, Space::H) == 0.0);
  return f;
}

ForcingSpec ForcingSpec::from_coefficients(const Grid& g, const Domain& d,
                                           const std::vector<Coefficient>& coefs) {
  ForcingSpec f;
  f.G = StateVector(g, d);
  for (const auto& c : coefs) {
    if (c.field < 0 || c.field > 2) throw ConfigError("forcing coefficient field must be 0, 1, or 2");
    if (std::abs(c.k1) > 4 || std::abs(c.k2) > 4 || std::abs(c.m) > 4)
      throw ConfigError("forcing coefficients must satisfy |k_i| <= 4");
    ScalarField& dst = c.field == 0 ? f.G.v1 : c.field == 1 ? f.G.v2 : f.G.b;
    dst.at_freq(c.k1, c.k2, c.m) = Cx(c.re, c.im);
  }
  f.G = project_state_symmetries(f.G);
  f.is_zero = (norm(f.G, Space::H) == 0.0);
  return f;
}

double ForcingSpec::K_G() const { return norm(G, Space::H); }

ScalarField vertical_velocity(const StateVector& u) {
  ScalarField div = divergence_h(u.v1, u.v2);
  ScalarField w = vertical_integral(div);
  negate(w);
  return w;
}

StateVector nonlinear_term(const StateVector& u) {
  const Grid& g = u.grid();
  const Domain& d = u.domain();

  ScalarField w = vertical_velocity(u);
  PhysicalField pv1 = transform_inverse(u.v1);
  PhysicalField pv2 = transform_inverse(u.v2);
  PhysicalField pw = transform_inverse(w);
  const std::size_t n = pv1.r.size();

  StateVector out(g, d);
  struct Comp {
    const ScalarField* a;
    ScalarField* dst;
  };
  const Comp comps[] = {{&u.v1, &out.v1}, {&u.v2, &out.v2}, {&u.b, &out.b}};

  for (const auto& comp : comps) {
    const ScalarField& a = *comp.a;
    PhysicalField pa = transform_inverse(a);
    PhysicalField da1 = transform_inverse(derivative(a, Direction::X1));
    PhysicalField da2 = transform_inverse(derivative(a, Direction::X2));
    PhysicalField da3 = transform_inverse(derivative(a, Direction::Z));

    PhysicalField adv(g, d), f1(g, d), f2(g, d), f3(g, d);
    for (std::size_t i = 0; i < n; ++i) {
      adv.r[i] = pv1.r[i] * da1.r[i] + pv2.r[i] * da2.r[i] + pw.r[i] * da3.r[i];
      f1.r[i] = pv1.r[i] * pa.r[i];
      f2.r[i] = pv2.r[i] * pa.r[i];
      f3.r[i] = pw.r[i] * pa.r[i];
    }

    // Parity in z: the advecting field (v1, v2, w) is (even, even, odd) and
    // so is grad a for even a, odd a likewise; every product below has the
    // parity of a itself.
    ScalarField sadv = transform_forward(adv, a.parity, true);
    dealias_inplace(sadv);
    ScalarField sf1 = transform_forward(f1, a.parity, false);
    ScalarField sf2 = transform_forward(f2, a.parity, false);
    ScalarField sf3 = transform_forward(f3, a.parity == Parity::Even ? Parity::Odd : Parity::Even, false);
    dealias_inplace(sf1);
    dealias_inplace(sf2);
    dealias_inplace(sf3);

    ScalarField div = derivative(sf1, Direction::X1);
    add_scaled(div, derivative(sf2, Direction::X2), 1.0);
    add_scaled(div, derivative(sf3, Direction::Z), 1.0);

    ScalarField& dst = *comp.dst;
    for (std::size_t i = 0; i < dst.c.size(); ++i) dst.c[i] = 0.5 * (sadv.c[i] + div.c[i]);
    dst.mean_zero = true;
  }
  return out;
}

StateVector linear_terms(const StateVector& u, const PhysicalParams& p, bool include_viscous) {
  const Grid& g = u.grid();
  const Domain& d = u.domain();
  StateVector out(g, d);

  if (p.enable_coriolis && p.coriolis != 0.0) {
    // -f v_perp = -f (-v2, v1) = (f v2, -f v1)
    add_scaled(out.v1, u.v2, p.coriolis);
    add_scaled(out.v2, u.v1, -p.coriolis);
  }

  if (p.enable_buoyancy_gradient) {
    ScalarField beta = vertical_integral(u.b);
    add_scaled(out.v1, derivative(beta, Direction::X1), -1.0);
    add_scaled(out.v2, derivative(beta, Direction::X2), -1.0);
  }

  if (include_viscous && p.nu != 0.0) {
    add_scaled(out.v1, laplacian3(u.v1), p.nu);
    add_scaled(out.v2, laplacian3(u.v2), p.nu);
    add_scaled(out.b, laplacian3(u.b), p.nu);
  }
  return out;
}

Tendency pressure_projection(const StateVector& tendency) {
  const Grid& g = tendency.grid();
  const Domain& d = tendency.domain();
  Tendency t;
  t.du = tendency;
  t.p = ScalarField(g, d, Parity::Even, true);

  for (int i1 = 0; i1 < g.N1; ++i1) {
    const double a1 = kTwoPi * freq_of_index(i1, g.N1) / d.L1;
    for (int i2 = 0; i2 < g.N2; ++i2) {
      const double a2 = kTwoPi * freq_of_index(i2, g.N2) / d.L2;
      const double norm2 = a1 * a1 + a2 * a2;
      if (norm2 == 0.0) continue;
      Cx& t1 = t.du.v1.at(i1, i2, 0);
      Cx& t2 = t.du.v2.at(i1, i2, 0);
      const Cx adot = a1 * t1 + a2 * t2;
      t.p.at(i1, i2, 0) = Cx(0.0, -1.0) * adot / norm2;
      t1 -= a1 * adot / norm2;
      t2 -= a2 * adot / norm2;
    }
  }
  return t;
}

Tendency rhs(const StateVector& u, const PhysicalParams& p, const ForcingSpec& g,
             bool include_viscous) {
  StateVector total = linear_terms(u, p, include_viscous);
  if (p.enable_nonlinear) {
    StateVector bu = nonlinear_term(u);
    axpy(-1.0, bu, total);
  }
  if (!g.is_zero) axpy(1.0, g.G, total);

  Tendency t = pressure_projection(total);
  t.du.v1.parity = Parity::Even;
  t.du.v2.parity = Parity::Even;
  t.du.b.parity = Parity::Odd;
  enforce_parity(t.du.v1);
  enforce_parity(t.du.v2);
  enforce_parity(t.du.b);
  return t;
}

}  // namespace pea
