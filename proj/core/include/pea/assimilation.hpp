#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "pea/integrator.hpp"
#include "pea/interpolation.hpp"
#include "pea/model.hpp"

namespace pea {

// Observation times t_0 < t_1 < ... with gap bounds
// 0 < alpha <= t_{n+1} - t_n <= beta.
struct ObservationSchedule {
  std::vector<double> times;
  double alpha = 0.0;
  double beta = 0.0;

  static ObservationSchedule uniform(double t0, double gap, std::size_t n_steps);
  // Gaps drawn uniformly in [alpha, beta] from a seeded generator.
  static ObservationSchedule jittered(double t0, double alpha, double beta, std::size_t n_steps,
                                      std::uint64_t seed);

  void validate() const;
  std::size_t steps() const { return times.empty() ? 0 : times.size() - 1; }
};

// Observation values r^n = R_L U(t_n), stored as states in span{psi_j}.
struct ObservationStream {
  std::vector<double> times;
  std::vector<StateVector> values;
};

// Samples the interpolant of a recorded reference trajectory at every
// schedule time; throws ConfigError when a sample time is missing.
ObservationStream observe(const Trajectory& reference, const InterpolationOperator& op,
                          const ObservationSchedule& schedule);

// One step of the prognostic recursion:
//   u_n = (I - R_L) S_{delta} u_{n-1} + r^n,
// followed by the symmetry projection.
StateVector assimilate_step(const StateVector& u_prev, const StateVector& r_n, double delta,
                            const PhysicalParams& params, const ForcingSpec& g,
                            const IntegratorConfig& icfg, const InterpolationOperator& op);

struct AssimilationStepRecord {
  std::size_t n = 0;
  double t = 0.0;
  double err_h = 0.0;
  double err_w1 = 0.0;
  double err_w2 = 0.0;
  double jump_norm = 0.0;  // ||u_n - S_delta u_{n-1}||_W1, 0 at n = 0
  double q_local = 1.0;    // err_w1(n) / err_w1(n-1), 1 at n = 0
};

// Least-squares geometric fit of the W1 error tail: err ~ amplitude * q^n.
struct GeometricFit {
  double q = 0.0;
  double residual = 0.0;      // rms residual of the log fit
  std::size_t window_begin = 0;
  std::size_t window_end = 0;  // one past the last fitted step
  bool valid = false;
};

struct AssimilationReport {
  std::vector<AssimilationStepRecord> steps;
  GeometricFit fit;
  bool reliable = false;
  double error_floor = 0.0;
  double initial_err_w1 = 0.0;
  double final_err_w1 = 0.0;
  // Populated only when TwinSetup.keep_states is set.
  std::vector<StateVector> anchors;     // u_n
  std::vector<StateVector> reference;   // U(t_n)
};

struct TwinSetup {
  PhysicalParams params;
  ForcingSpec forcing;
  IntegratorConfig integrator;
  ObservationSchedule schedule;

  // Reference preparation: spin up from a seeded state unless an
  // absorbing-ball state is supplied directly.
  std::optional<StateVector> reference_start;
  std::uint64_t reference_seed = 1;
  double reference_amplitude = 1.0;
  double spinup_window = 2.0;
  double spinup_tol = 0.02;
  double spinup_max_time = 200.0;

  // Initial guess u_0 = U(t_0) + seeded W1-normalized perturbation across all
  // shells (or exactly U(t_0) when synchronized).
  std::uint64_t guess_seed = 2;
  double guess_w1_error = 1.0;
  bool synchronized = false;

  // Verdict parameters: the error floor is
  // max(floor_abs, floor_rel * initial W1 error).
  double margin = 0.1;
  double floor_rel = 1e-4;
  double floor_abs = 1e-12;

  bool keep_states = false;
};

AssimilationReport run_twin_experiment(const TwinSetup& setup, const InterpolationOperator& op);

// Fits the geometric tail of the W1 error after discarding the first 20% of
// steps (transient) and everything at or below the floor.
GeometricFit fit_error_tail(const std::vector<AssimilationStepRecord>& steps, double floor_abs);

// Fills report.fit / report.reliable / report.error_floor; reliable iff
// q <= 1 - margin and the final W1 error is at or below the floor.  Requires
// at least 10 post-transient steps (ConfigError otherwise).
bool reliability_verdict(AssimilationReport& report, double margin, double floor_abs);

// Piecewise prognosis u(t) = S_{t - t_n} u_n on [t_n, t_{n+1}).
struct PrognosticTrajectory {
  std::vector<double> times;
  std::vector<StateVector> anchors;
};

PrognosticTrajectory make_prognostic_trajectory(const ObservationSchedule& schedule,
                                                std::vector<StateVector> anchors);

// Right-continuous evaluation; t must lie in [t_0, t_last] (ConfigError).
StateVector evaluate_prognosis(const PrognosticTrajectory& traj, double t,
                               const PhysicalParams& params, const ForcingSpec& g,
                               const IntegratorConfig& icfg);

// Squeezing ratios ||Q_N [S_t U - S_t U*]||_W1 / ||U - U*||_W1 over pairs.
struct SqueezingEstimate {
  double q_max = 0.0;
  std::vector<double> ratios;
  std::size_t skipped = 0;  // degenerate pairs (U = U*)
};

SqueezingEstimate estimate_squeezing(const std::vector<std::pair<StateVector, StateVector>>& pairs,
                                     const ModeSet& modes, double t, const PhysicalParams& params,
                                     const ForcingSpec& g, const IntegratorConfig& icfg);

// Measured constants feeding the discrete dissipativity check.
struct DissipativityConstants {
  double a0 = 0.0;   // semigroup H-decay rate
  double a1 = 0.0;   // forcing gain
  double c0 = 0.0;   // observation coupling
  double c1 = 0.0;   // ||I - R||_{H->H}
  double K = 0.0;    // empirical absorbing radius in W2
  double K_G = 0.0;  // forcing norm
};

struct DissipativityRecord {
  double sup_h = 0.0;
  double sup_w2 = 0.0;
  double gain = 0.0;           // c1 * exp(-a0 * alpha)
  bool hypothesis_ok = false;  // gain < 1
  double rho = 0.0;            // (a1 K_G + c0 K) / (1 - gain); inf if violated
  bool h_bounded = false;      // sup_h <= 1 + rho
  bool w2_bounded = false;     // sup_w2 <= rho
};

DissipativityRecord verify_dissipativity(const std::vector<StateVector>& u_seq, double alpha,
                                         const DissipativityConstants& c);

// Observation-gap threshold alpha > (1/a0) ln(1 + ||K||_{H->H}) for the
// generalized-mode contraction argument.
inline double alpha_threshold(double a0, double k_norm_h) {
  return std::log1p(k_norm_h) / a0;
}

}  // namespace pea
