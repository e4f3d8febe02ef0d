#pragma once

#include "pea/field.hpp"

namespace pea {

enum class Direction { X1 = 0, X2 = 1, Z = 2 };

// Exact spectral derivative: multiply by i (2 pi k / L).  A z-derivative flips
// the parity tag; horizontal derivatives keep it.  The output is mean-zero.
ScalarField derivative(const ScalarField& f, Direction dir);

// Horizontal divergence of (v1, v2).
ScalarField divergence_h(const ScalarField& v1, const ScalarField& v2);

// Full three-dimensional Laplacian: multiply by -lambda(k).
ScalarField laplacian3(const ScalarField& f);

// F(x,z) = integral_0^z f(x,xi) dxi for f with zero z-mean per horizontal
// wavevector.  Mode exp(i mu_m z), m != 0, maps to (exp(i mu_m z) - 1)/(i mu_m);
// the -1 parts accumulate into the m = 0 slab (retained).  Flips the parity
// tag; for even input the constant-in-z part cancels exactly and the output is
// purely odd.  Throws std::invalid_argument when the z-mean exceeds
// tol * ||f||_H.
ScalarField vertical_integral(const ScalarField& f, double tol = 1e-10);

// Zero every coefficient with |k_i| > cutoff_i (the 2/3 rule, Nyquist
// included).  Idempotent.
ScalarField dealias(const ScalarField& f);
void dealias_inplace(ScalarField& f);

// Orthogonal projection onto the constraint manifold: dealiased band, reality
// symmetry, declared z-parity, zero box mean for the velocity, and a 2D Leray
// projection of the z-mean velocity slab (divergence-free barotropic part).
// Composition of commuting orthogonal projections in H, hence idempotent and
// a contraction.  (Valid states are band-limited by construction; the band
// restriction here only ever removes content that could not belong to one.)
[[nodiscard]] StateVector project_state_symmetries(const StateVector& u);

// In-place variants used on integrator hot paths.
void enforce_reality(ScalarField& f);
void enforce_parity(ScalarField& f);          // projects onto the tagged parity
void enforce_mean_zero(ScalarField& f);
void leray_project_zmean(ScalarField& v1, ScalarField& v2);

// Pointwise product computed on the collocation grid and truncated back to the
// dealiased band (alias-free for band-limited inputs).
ScalarField dealiased_product(const ScalarField& a, const ScalarField& b,
                              Parity parity, bool mean_zero);

}  // namespace pea
