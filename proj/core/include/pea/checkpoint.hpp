#pragma once

#include <cstdint>
#include <string>

#include "pea/field.hpp"
#include "pea/interpolation.hpp"
#include "pea/modes.hpp"

namespace pea {

inline constexpr std::uint32_t kCheckpointVersion = 1;

// Binary container (little-endian): magic "PEA1", format version u32, then
// the payload.  State checkpoints continue with N1 N2 N3 as u32, L1 L2 L3 as
// f64, the current time as f64, and the three coefficient arrays (v1, v2, b)
// as interleaved (re, im) f64 in row-major (k1, k2, m) order with the
// standard FFT frequency layout.  Typed records (mode sets, interpolation
// operators) put a u32 type tag >= 0xFFFF0000 where a state file has N1, so
// the two kinds are distinguishable by the first u32 after the header.
struct Checkpoint {
  StateVector state;
  double time = 0.0;
};

void save_checkpoint(const std::string& path, const StateVector& u, double time);

// Loads are verbatim: coefficients are restored bit-exactly with no
// re-projection, so a restarted run continues bitwise.
Checkpoint load_checkpoint(const std::string& path);

void save_mode_set(const std::string& path, const ModeSet& modes);
ModeSet load_mode_set(const std::string& path);

void save_operator(const std::string& path, const InterpolationOperator& op);
InterpolationOperator load_operator(const std::string& path);

}  // namespace pea
