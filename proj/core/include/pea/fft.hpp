#pragma once

#include "pea/field.hpp"

namespace pea {

// Thin wrapper over FFTW c2c transforms.  Plans are cached per grid shape and
// created with FFTW_ESTIMATE | FFTW_UNALIGNED: planning is then deterministic
// (no runtime measurement), which keeps entire runs bitwise reproducible.
// Execution uses the new-array interface and is safe from concurrent workers;
// planning itself is serialized internally.
namespace fft {

// Unnormalized exp(-i k x) transform (physical -> spectral accumulation).
void forward_raw(const Grid& g, const Cx* in, Cx* out);
// Unnormalized exp(+i k x) transform (spectral -> physical synthesis).
void backward_raw(const Grid& g, const Cx* in, Cx* out);

}  // namespace fft

// transform_forward: collocation samples -> Fourier coefficients f_hat with
// f(x) = sum_k f_hat(k) exp(i k.x); applies the 1/(N1 N2 N3) normalization.
// Tags on the result are supplied by the caller.
ScalarField transform_forward(const PhysicalField& f, Parity parity = Parity::None,
                              bool mean_zero = false);

// transform_inverse: coefficients -> real collocation samples.  The imaginary
// residue of the synthesis (rounding-level for reality-symmetric input) is
// discarded.
PhysicalField transform_inverse(const ScalarField& f);

}  // namespace pea
