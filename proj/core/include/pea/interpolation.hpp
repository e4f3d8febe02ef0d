#pragma once

#include <cstdint>

#include "pea/modes.hpp"
#include "pea/norms.hpp"

namespace pea {

// Diagonal real Fourier multiplier K with 0 < kappa_min <= kappa(k) <=
// kappa_max.  The symbol is constant on the orbit {(+-k_h, +-m)} of every
// wavevector, so K is self-adjoint, real, and maps the state space (parity,
// reality, mean-zero, barotropic) into itself.
struct MultiplierK {
  Grid grid;
  Domain domain;
  std::vector<double> symbol;  // per flat index
  double kappa_min = 1.0;
  double kappa_max = 1.0;

  static MultiplierK identity(const Grid& g, const Domain& d);
  // kappa(k) = 1 + 1/2 cos(pi lambda(k)/lambda_max), lambda_max over the
  // dealiased band; range [1/2, 3/2].
  static MultiplierK smooth(const Grid& g, const Domain& d);
  // Independent uniform draws in [1/2, 2] per wavevector orbit.
  static MultiplierK random(const Grid& g, const Domain& d, std::uint64_t seed);

  void validate() const;  // bounds and orbit symmetry on the dealiased band
  double symbol_at(int k1, int k2, int m) const;
  // ||K||_{H->H} restricted to the dealiased band.
  double norm_h() const;
};

// R_L u = sum_j l_j(u) psi_j with l_j(u) = (K e_j, u)_H and psi_j = K^{-1} e_j
// (Lagrange by construction: l_k(psi_j) = delta_kj).
struct InterpolationOperator {
  ModeSet modes;
  std::vector<std::vector<SparseEntry>> riesz;  // Riesz elements K e_j
  std::vector<std::vector<SparseEntry>> psi;    // reconstruction elements
  double k_norm_h = 1.0;
  bool lagrange = true;
};

InterpolationOperator build_generalized_operator(const ModeSet& modes, const MultiplierK& K);

double apply_functional(const InterpolationOperator& op, std::size_t j, const StateVector& u);
StateVector apply_interpolation(const StateVector& u, const InterpolationOperator& op);
// Adjoint in H: R* u = sum_j (psi_j, u)_H K e_j.
StateVector apply_interpolation_adjoint(const StateVector& u, const InterpolationOperator& op);

// Power-iteration estimate with its convergence record.
struct DefectEstimate {
  double value = 0.0;
  double residual = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

// Closed form for pure modal sets: lambda_next^{-1/2} (V = W1) or
// lambda_next^{-1} (V = W2).
double modal_defect_closed_form(const ModeSet& modes, Space v);

// sup { ||Q_L u||_H : ||u||_V <= 1 } on the dealiased truncation, where Q_L
// is the H-orthoprojector onto the annihilator of the functionals.
DefectEstimate completeness_defect(const InterpolationOperator& op, Space v,
                                   std::uint64_t seed = 1234, double tol = 1e-9,
                                   std::size_t max_iter = 10000);

enum class OperatorKind { IMinusR, R };

// ||T||_{from->to} on the dealiased truncation by singular power iteration,
// T in {I - R_L, R_L}.
DefectEstimate operator_norm(const InterpolationOperator& op, OperatorKind kind, Space from,
                             Space to, std::uint64_t seed = 1234, double tol = 1e-9,
                             std::size_t max_iter = 10000);

}  // namespace pea
