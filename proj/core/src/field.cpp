#include "pea/field.hpp"

#include <stdexcept>

namespace pea {

namespace {
void require_same_shape(const StateVector& a, const StateVector& b) {
  if (!a.same_shape(b))
    throw std::invalid_argument("StateVector: shape mismatch");
}
}  // namespace

StateVector operator+(const StateVector& a, const StateVector& b) {
  require_same_shape(a, b);
  StateVector r = a;
  for (std::size_t i = 0; i < r.v1.c.size(); ++i) {
    r.v1.c[i] += b.v1.c[i];
    r.v2.c[i] += b.v2.c[i];
    r.b.c[i] += b.b.c[i];
  }
  return r;
}

StateVector operator-(const StateVector& a, const StateVector& b) {
  require_same_shape(a, b);
  StateVector r = a;
  for (std::size_t i = 0; i < r.v1.c.size(); ++i) {
    r.v1.c[i] -= b.v1.c[i];
    r.v2.c[i] -= b.v2.c[i];
    r.b.c[i] -= b.b.c[i];
  }
  return r;
}

StateVector operator*(double s, const StateVector& a) {
  StateVector r = a;
  for (std::size_t i = 0; i < r.v1.c.size(); ++i) {
    r.v1.c[i] *= s;
    r.v2.c[i] *= s;
    r.b.c[i] *= s;
  }
  return r;
}

void axpy(double s, const StateVector& x, StateVector& y) {
  require_same_shape(x, y);
  for (std::size_t i = 0; i < y.v1.c.size(); ++i) {
    y.v1.c[i] += s * x.v1.c[i];
    y.v2.c[i] += s * x.v2.c[i];
    y.b.c[i] += s * x.b.c[i];
  }
}

}  // namespace pea
