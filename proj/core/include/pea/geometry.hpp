#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace pea {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

// Periodic box (0,L1) x (0,L2) x (-L3/2, L3/2).  The z coordinate is stored on
// the circle [0,L3) with grid point j at z = j*L3/N3; values at "negative" z
// live at indices j > N3/2.  z = +-L3/2 is the single grid point j = N3/2.
struct Domain {
  double L1 = kTwoPi;
  double L2 = kTwoPi;
  double L3 = kTwoPi;

  double volume() const { return L1 * L2 * L3; }
  void validate() const {
    if (!(L1 > 0.0) || !(L2 > 0.0) || !(L3 > 0.0))
      throw std::invalid_argument("Domain: box lengths must be positive");
  }
};

// Collocation grid plus the 2/3-rule dealias cutoffs.  Retained band is
// |k_i| <= cutoff_i with cutoff_i = floor(N_i/3) < N_i/2, so the Nyquist
// frequency is always discarded.
struct Grid {
  int N1 = 0, N2 = 0, N3 = 0;
  int cutoff1 = 0, cutoff2 = 0, cutoff3 = 0;

  static Grid make(int n1, int n2, int n3) {
    Grid g;
    g.N1 = n1; g.N2 = n2; g.N3 = n3;
    g.cutoff1 = n1 / 3; g.cutoff2 = n2 / 3; g.cutoff3 = n3 / 3;
    g.validate();
    return g;
  }

  void validate() const {
    auto bad = [](int n) { return n < 8 || n % 2 != 0; };
    if (bad(N1) || bad(N2) || bad(N3))
      throw std::invalid_argument("Grid: sizes must be even and >= 8");
    if (cutoff1 >= N1 / 2 || cutoff2 >= N2 / 2 || cutoff3 >= N3 / 2)
      throw std::invalid_argument("Grid: dealias cutoff must stay below Nyquist");
    if (cutoff1 < 1 || cutoff2 < 1 || cutoff3 < 1)
      throw std::invalid_argument("Grid: dealias cutoff must be at least 1");
  }

  std::size_t size() const {
    return static_cast<std::size_t>(N1) * N2 * N3;
  }
  bool same_shape(const Grid& o) const {
    return N1 == o.N1 && N2 == o.N2 && N3 == o.N3;
  }
};

// Row-major (i1,i2,i3) linear index; i3 (the z direction) is contiguous.
inline std::size_t flat_index(const Grid& g, int i1, int i2, int i3) {
  return (static_cast<std::size_t>(i1) * g.N2 + i2) * g.N3 + i3;
}

// Signed frequency of a storage index in the standard FFT layout
// [0, 1, ..., N/2-1, -N/2, ..., -1].
inline int freq_of_index(int i, int N) { return (i <= N / 2 - 1) ? i : i - N; }
inline int index_of_freq(int k, int N) { return (k >= 0) ? k : k + N; }

// Laplacian symbol: lambda(k) = (2 pi k1/L1)^2 + (2 pi k2/L2)^2 + (2 pi m/L3)^2.
inline double lambda_symbol(const Domain& d, int k1, int k2, int m) {
  const double a = kTwoPi * k1 / d.L1;
  const double b = kTwoPi * k2 / d.L2;
  const double c = kTwoPi * m / d.L3;
  return a * a + b * b + c * c;
}

// First nonzero eigenvalue of the (constrained) Stokes-type operator on the box:
// min over wavevectors k != 0 of lambda(k).
inline double lambda_1(const Domain& d) {
  const double a = lambda_symbol(d, 1, 0, 0);
  const double b = lambda_symbol(d, 0, 1, 0);
  const double c = lambda_symbol(d, 0, 0, 1);
  return std::fmin(a, std::fmin(b, c));
}

}  // namespace pea
