#pragma once

#include <complex>
#include <vector>

#include "pea/geometry.hpp"

namespace pea {

using Cx = std::complex<double>;

enum class Parity { Even, Odd, None };

// Scalar field stored as full complex Fourier coefficients on the N1 x N2 x N3
// grid, row-major (k1,k2,m) in the standard FFT frequency layout.  The parity
// tag refers to reflection in z; mean_zero marks a vanishing (0,0,0) mode.
// Tags are declarative: operations set them on outputs, checks verify them.
class ScalarField {
 public:
  ScalarField() = default;
  ScalarField(const Grid& g, const Domain& d, Parity p, bool mz)
      : grid(g), domain(d), parity(p), mean_zero(mz), c(g.size(), Cx(0.0, 0.0)) {}

  Grid grid;
  Domain domain;
  Parity parity = Parity::None;
  bool mean_zero = false;
  std::vector<Cx> c;

  Cx& at(int i1, int i2, int i3) { return c[flat_index(grid, i1, i2, i3)]; }
  const Cx& at(int i1, int i2, int i3) const { return c[flat_index(grid, i1, i2, i3)]; }

  // Access by signed frequency (k1,k2,m).
  Cx& at_freq(int k1, int k2, int m) {
    return at(index_of_freq(k1, grid.N1), index_of_freq(k2, grid.N2),
              index_of_freq(m, grid.N3));
  }
  const Cx& at_freq(int k1, int k2, int m) const {
    return at(index_of_freq(k1, grid.N1), index_of_freq(k2, grid.N2),
              index_of_freq(m, grid.N3));
  }

  void set_zero() { std::fill(c.begin(), c.end(), Cx(0.0, 0.0)); }
};

// Real-valued collocation samples, row-major (x1,x2,x3).
struct PhysicalField {
  Grid grid;
  Domain domain;
  std::vector<double> r;

  PhysicalField() = default;
  PhysicalField(const Grid& g, const Domain& d) : grid(g), domain(d), r(g.size(), 0.0) {}
  double& at(int i1, int i2, int i3) { return r[flat_index(grid, i1, i2, i3)]; }
  const double& at(int i1, int i2, int i3) const { return r[flat_index(grid, i1, i2, i3)]; }
};

// Prognostic state U = (v1, v2, b): horizontal velocity even in z with zero
// box mean and divergence-free z-mean, buoyancy odd in z.
struct StateVector {
  ScalarField v1, v2, b;

  StateVector() = default;
  StateVector(const Grid& g, const Domain& d)
      : v1(g, d, Parity::Even, true),
        v2(g, d, Parity::Even, true),
        b(g, d, Parity::Odd, true) {}

  const Grid& grid() const { return v1.grid; }
  const Domain& domain() const { return v1.domain; }
  bool same_shape(const StateVector& o) const { return grid().same_shape(o.grid()); }
};

// Elementwise linear algebra used by the integrator and the assimilation
// update.  Shapes must agree; tags follow the left operand.
StateVector operator+(const StateVector& a, const StateVector& b);
StateVector operator-(const StateVector& a, const StateVector& b);
StateVector operator*(double s, const StateVector& a);
void axpy(double s, const StateVector& x, StateVector& y);  // y += s*x

}  // namespace pea
