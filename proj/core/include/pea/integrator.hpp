#pragma once

#include <vector>

#include "pea/model.hpp"

namespace pea {

enum class Scheme { IFRK4 };

struct IntegratorConfig {
  double dt = 0.01;
  Scheme scheme = Scheme::IFRK4;
  // Advective CFL number dt * max_x sum_i |u_i| / dx_i above which a step
  // refuses to run.  Checked, never silently adjusted.
  double cfl_guard = 1.0;

  void validate() const;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<StateVector> states;
};

// One IFRK4 step of size dt.  The diffusion factor e^{-nu lambda dt} is
// applied exactly per mode through the integrating factor; the explicit
// stages see only advection, Coriolis, buoyancy gradient, and forcing.  The
// output is re-projected onto the symmetry constraints.  Throws
// NumericalError on CFL violation or blow-up (non-finite values, or a W1 norm
// above 1e6 times the incoming scale).
StateVector step(const StateVector& u, const PhysicalParams& p, const ForcingSpec& g,
                 double dt, const IntegratorConfig& cfg);

// Integrates to time T, returning the state at t = 0, at each requested
// sample time, and at T.  Each inter-sample interval is covered by an integer
// number of equal steps of size <= cfg.dt, so requested times are landed on
// exactly, never interpolated.  Sample times must lie in [0, T].
Trajectory evolve(const StateVector& u0, const PhysicalParams& p, const ForcingSpec& g,
                  const IntegratorConfig& cfg, double T,
                  const std::vector<double>& sample_times = {});

struct SpinUpResult {
  StateVector state;
  double radius = 0.0;  // plateaued running max of ||U(t)||_W2
  double elapsed = 0.0;
  bool converged = false;
  // Trace of the per-window maxima, for failure reports.
  std::vector<double> window_end_times;
  std::vector<double> window_max_w2;
};

// Integrates until the maximum of ||U||_W2 over a trailing window of the
// given length changes by less than tol relatively between consecutive
// windows (or the state has decayed to rest).  Non-convergence within
// max_time is reported through the result, not thrown.
SpinUpResult spin_up(const StateVector& u0, const PhysicalParams& p, const ForcingSpec& g,
                     const IntegratorConfig& cfg, double window, double tol,
                     double max_time);

// max over sampled t in (0, T] of ||S_t U - S_t U*||_H / ||U - U*||_H,
// sampled after every step.  Returns 1 when U == U*.
double lipschitz_probe(const StateVector& u, const StateVector& ustar,
                       const PhysicalParams& p, const ForcingSpec& g,
                       const IntegratorConfig& cfg, double T);

// Least-squares fit y ~= amplitude * e^{-rate t} on log y; all y must be
// positive and sizes equal.
struct ExpFit {
  double rate = 0.0;
  double amplitude = 0.0;
};
ExpFit fit_exponential_rate(const std::vector<double>& t, const std::vector<double>& y);

}  // namespace pea
