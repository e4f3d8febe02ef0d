#pragma once

#include "pea/field.hpp"

namespace pea {

// H  : L2 on the box (all three components),
// W1 : modes weighted by lambda(k)^(1/2)  (== ||grad_{x,z} U||_{L2}),
// W2 : modes weighted by lambda(k)        (== ||Delta_{x,z} U||_{L2}).
enum class Space { H = 0, W1 = 1, W2 = 2 };

double norm(const ScalarField& f, Space s);
double norm(const StateVector& u, Space s);

// Real inner product carrying the same spectral weight as the norm:
// (U, V)_s = |O| * sum_k lambda(k)^s Re(u_hat conj(v_hat)).
double inner_product(const ScalarField& f, const ScalarField& g, Space s);
double inner_product(const StateVector& u, const StateVector& v, Space s);

// Constraint diagnostics (absolute, H-flavored; divide by a norm of u for the
// relative figures quoted in tests).
double reality_violation(const ScalarField& f);   // max_k |f(k) - conj(f(-k))|
double parity_violation(const ScalarField& f);    // H-norm of the off-parity part
double mean_violation(const ScalarField& f);      // |f_hat(0,0,0)| * sqrt(|O|)
double barotropic_violation(const StateVector& u);  // H-norm of div of z-mean v
// ||U - project_state_symmetries(U)||_H: single combined violation figure.
double constraint_violation(const StateVector& u);

bool all_finite(const ScalarField& f);
bool all_finite(const StateVector& u);

}  // namespace pea
