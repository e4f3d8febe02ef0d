#pragma once

#include <vector>

#include "pea/field.hpp"

namespace pea {

struct PhysicalParams {
  double nu = 1.0;        // kinematic viscosity, > 0
  double coriolis = 1.0;  // rotation parameter f

  // Term switches for linearized probes and integrator diagnostics.  All true
  // for the physical model.
  bool enable_nonlinear = true;
  bool enable_coriolis = true;
  bool enable_buoyancy_gradient = true;

  void validate() const;
};

// Static forcing G = (G_f1, G_f2, G_b), band-limited to |k_i| <= 4 and
// satisfying the state constraints.
struct ForcingSpec {
  StateVector G;
  bool is_zero = false;

  // No forcing.
  static ForcingSpec none(const Grid& g, const Domain& d);
  // Built-in preset: G_f = A (cos(2 pi z/L3) sin(2 pi x2/L2), 0),
  // G_b = A sin(2 pi z/L3) cos(2 pi x1/L1), symmetrized and Leray-projected.
  static ForcingSpec standard(const Grid& g, const Domain& d, double amplitude);

  struct Coefficient {
    int field = 0;  // 0 = v1, 1 = v2, 2 = b
    int k1 = 0, k2 = 0, m = 0;
    double re = 0.0, im = 0.0;
  };
  static ForcingSpec from_coefficients(const Grid& g, const Domain& d,
                                       const std::vector<Coefficient>& coefs);

  // K_G = (||G_f||_H^2 + ||G_b||_H^2)^(1/2).
  double K_G() const;
};

// Velocity tendency with the diagnosed surface pressure (z-independent).
struct Tendency {
  StateVector du;
  ScalarField p;
};

// w(x,z) = -integral_0^z div_h v dxi.  Requires the barotropic constraint
// (zero z-mean of div_h v per horizontal wavevector); odd in z, vanishes at
// z = +-L3/2.
ScalarField vertical_velocity(const StateVector& u);

// Advection B(U) in skew-symmetric form,
//   B_a = 1/2 [ (u.grad) a + div(u a) ],   u = (v1, v2, w),
// computed pseudo-spectrally with 2/3 dealiasing.  Exactly energy-neutral:
// (B(U), U)_H = 0 up to rounding.
StateVector nonlinear_term(const StateVector& u);

// Right-hand-side contribution of the linear terms (signs as they appear in
// d/dt U = ...): -f (-v2, v1) - grad_h integral_0^z b   on the velocity part,
// plus nu Delta3 on all components when include_viscous is set.
StateVector linear_terms(const StateVector& u, const PhysicalParams& p,
                         bool include_viscous);

// Removes the gradient part of the z-mean velocity tendency (2D Leray) and
// returns the surface pressure p that generated it.  Never solves an
// elliptic problem: p is read off mode-wise.
Tendency pressure_projection(const StateVector& tendency);

// Full right-hand side d/dt U = G - B(U) - f v_perp - grad_h int b
// (+ nu Delta3 U unless the integrator handles diffusion exactly), with the
// velocity tendency pressure-projected and the result parity-projected.
Tendency rhs(const StateVector& u, const PhysicalParams& p, const ForcingSpec& g,
             bool include_viscous = true);

}  // namespace pea
