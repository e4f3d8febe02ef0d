#pragma once

#include <cstddef>
#include <vector>

#include "pea/field.hpp"

namespace pea {

// One Fourier coefficient of an eigenmode: field 0 = v1, 1 = v2, 2 = b.
struct SparseEntry {
  int field = 0;
  int k1 = 0, k2 = 0, m = 0;
  Cx value{0.0, 0.0};
};

// Real unit eigenmode of A = -Delta on the constrained state space, stored
// sparsely (at most 8 coefficients).  (k1, k2, m) is the canonical
// nonnegative-halfspace wavevector; component enumerates the degenerate
// directions at that wavevector:
//   k_h = 0, m >= 1:  0 = v1 cos(mu z), 1 = v2 cos(mu z), 2 = b sin(mu z)
//   k_h != 0, m = 0:  0 = kperp cos(k.x), 1 = kperp sin(k.x)   (z-mean velocity)
//   k_h != 0, m >= 1: 0..3 = {v1, v2} x {cos, sin}(k.x) cos(mu z),
//                     4..5 = b {cos, sin}(k.x) sin(mu z)
struct EigenMode {
  double lambda = 0.0;
  int k1 = 0, k2 = 0, m = 0;
  int component = 0;
  std::vector<SparseEntry> entries;
};

// Eigenbasis ordered by (lambda, k1, k2, m, component), always ending at a
// shell boundary so degenerate eigenspaces are never split.
struct ModeSet {
  Grid grid;
  Domain domain;
  std::vector<EigenMode> modes;
  std::vector<std::size_t> shell_begin;  // index of the first mode of each shell
  double lambda_next = 0.0;              // first eigenvalue beyond the set

  std::size_t count() const { return modes.size(); }
  double lambda_max() const { return modes.empty() ? 0.0 : modes.back().lambda; }
};

// Enumerates the first shells of the spectrum with at least n_request modes.
// Only shells that are provably complete on the dealiased band are eligible;
// asking for more is a grid-capacity error (ConfigError).
ModeSet build_mode_set(const Grid& g, const Domain& d, std::size_t n_request);

StateVector materialize_mode(const EigenMode& mode, const Grid& g, const Domain& d);

// (e_j, U)_H via the sparse entries.
double mode_coefficient(const StateVector& u, const EigenMode& mode);

// P_N U = sum_j (e_j, U)_H e_j and Q_N U = U - P_N U.
StateVector project_modes(const StateVector& u, const ModeSet& modes);
StateVector complement(const StateVector& u, const ModeSet& modes);

}  // namespace pea
