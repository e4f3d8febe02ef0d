#include "pea/assimilation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pea/errors.hpp"
#include "pea/norms.hpp"
#include "pea/random_fields.hpp"
#include "pea/spectral_ops.hpp"

namespace pea {

namespace {

StateVector advance(const StateVector& u, const PhysicalParams& p, const ForcingSpec& g,
                    const IntegratorConfig& cfg, double span) {
  return evolve(u, p, g, cfg, span).states.back();
}

double gap_tolerance(double beta) { return 1e-9 * (1.0 + std::abs(beta)); }

}  // namespace

ObservationSchedule ObservationSchedule::uniform(double t0, double gap, std::size_t n_steps) {
  if (n_steps == 0) throw ConfigError("observation schedule needs at least one step");
  ObservationSchedule s;
  s.alpha = gap;
  s.beta = gap;
  s.times.resize(n_steps + 1);
  for (std::size_t i = 0; i <= n_steps; ++i) s.times[i] = t0 + gap * static_cast<double>(i);
  s.validate();
  return s;
}

ObservationSchedule ObservationSchedule::jittered(double t0, double alpha, double beta,
                                                  std::size_t n_steps, std::uint64_t seed) {
  if (n_steps == 0) throw ConfigError("observation schedule needs at least one step");
  ObservationSchedule s;
  s.alpha = alpha;
  s.beta = beta;
  s.times.resize(n_steps + 1);
  s.times[0] = t0;
  Rng rng(seed);
  for (std::size_t i = 1; i <= n_steps; ++i) s.times[i] = s.times[i - 1] + rng.uniform(alpha, beta);
  s.validate();
  return s;
}

void ObservationSchedule::validate() const {
  if (times.size() < 2) throw ConfigError("observation schedule needs at least two times");
  if (!(alpha > 0.0) || !(beta >= alpha) || !std::isfinite(beta))
    throw ConfigError("observation gap bounds must satisfy 0 < alpha <= beta < inf");
  const double tol = gap_tolerance(beta);
  for (std::size_t i = 1; i < times.size(); ++i) {
    const double gap = times[i] - times[i - 1];
    if (!std::isfinite(gap) || gap < alpha - tol || gap > beta + tol)
      throw ConfigError("observation gap outside [alpha, beta]");
  }
}

ObservationStream observe(const Trajectory& reference, const InterpolationOperator& op,
                          const ObservationSchedule& schedule) {
  schedule.validate();
  ObservationStream stream;
  stream.times = schedule.times;
  stream.values.reserve(schedule.times.size());
  for (double t : schedule.times) {
    const double tol = 1e-9 * (1.0 + std::abs(t));
    std::size_t hit = reference.times.size();
    for (std::size_t i = 0; i < reference.times.size(); ++i)
      if (std::abs(reference.times[i] - t) <= tol) {
        hit = i;
        break;
      }
    if (hit == reference.times.size())
      throw ConfigError("reference trajectory is missing an observation time");
    stream.values.push_back(apply_interpolation(reference.states[hit], op));
  }
  return stream;
}

StateVector assimilate_step(const StateVector& u_prev, const StateVector& r_n, double delta,
                            const PhysicalParams& params, const ForcingSpec& g,
                            const IntegratorConfig& icfg, const InterpolationOperator& op) {
  if (!(delta > 0.0) || !std::isfinite(delta))
    throw ConfigError("assimilation gap must be positive and finite");
  if (!u_prev.same_shape(r_n)) throw ConfigError("state and observation shapes differ");
  const StateVector su = advance(u_prev, params, g, icfg, delta);
  StateVector u = su - apply_interpolation(su, op) + r_n;
  return project_state_symmetries(u);
}

GeometricFit fit_error_tail(const std::vector<AssimilationStepRecord>& steps, double floor_abs) {
  GeometricFit fit;
  if (steps.size() < 2) return fit;
  const std::size_t begin = steps.size() / 5;  // drop the transient fifth
  std::size_t end = begin;
  while (end < steps.size() && steps[end].err_w1 > floor_abs) ++end;
  if (end < begin + 2) return fit;

  std::vector<double> n(end - begin), y(end - begin);
  for (std::size_t i = begin; i < end; ++i) {
    n[i - begin] = static_cast<double>(steps[i].n);
    y[i - begin] = steps[i].err_w1;
  }
  const ExpFit ef = fit_exponential_rate(n, y);
  fit.q = std::exp(-ef.rate);
  double ss = 0.0;
  for (std::size_t i = 0; i < n.size(); ++i) {
    const double r = std::log(y[i]) - (std::log(ef.amplitude) - ef.rate * n[i]);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / static_cast<double>(n.size()));
  fit.window_begin = begin;
  fit.window_end = end;
  fit.valid = true;
  return fit;
}

bool reliability_verdict(AssimilationReport& report, double margin, double floor_abs) {
  if (!(margin >= 0.0 && margin < 1.0)) throw ConfigError("verdict margin must lie in [0, 1)");
  const std::size_t rows = report.steps.size();
  const std::size_t discard = rows / 5;
  if (rows == 0 || rows - 1 < discard + 10)
    throw ConfigError("reliability verdict needs at least 10 post-transient steps");
  report.fit = fit_error_tail(report.steps, floor_abs);
  report.error_floor = floor_abs;
  report.initial_err_w1 = report.steps.front().err_w1;
  report.final_err_w1 = report.steps.back().err_w1;
  const bool floor_ok = report.final_err_w1 <= floor_abs;
  // A run that is at the floor throughout has nothing left to fit and has
  // converged by definition.
  report.reliable = report.fit.valid ? (report.fit.q <= 1.0 - margin && floor_ok) : floor_ok;
  return report.reliable;
}

AssimilationReport run_twin_experiment(const TwinSetup& setup, const InterpolationOperator& op) {
  setup.params.validate();
  setup.integrator.validate();
  setup.schedule.validate();
  const Grid& g = setup.forcing.G.grid();
  const Domain& d = setup.forcing.G.domain();
  if (!op.modes.grid.same_shape(g))
    throw ConfigError("interpolation operator grid does not match the experiment grid");

  StateVector U = [&] {
    if (setup.reference_start) {
      if (!setup.reference_start->same_shape(setup.forcing.G))
        throw ConfigError("reference start state has the wrong shape");
      return *setup.reference_start;
    }
    Rng rng(setup.reference_seed);
    const StateVector u0 = random_state(g, d, rng, setup.reference_amplitude);
    const SpinUpResult sr = spin_up(u0, setup.params, setup.forcing, setup.integrator,
                                    setup.spinup_window, setup.spinup_tol, setup.spinup_max_time);
    if (!sr.converged) throw NumericalError("reference spin-up did not settle");
    return sr.state;
  }();

  StateVector u = U;
  if (!setup.synchronized) {
    Rng rng(setup.guess_seed);
    const StateVector pert = random_perturbation_w1(g, d, rng, setup.guess_w1_error, 0.75);
    u = project_state_symmetries(U + pert);
  }

  AssimilationReport rep;
  rep.steps.reserve(setup.schedule.times.size());
  const auto record = [&](std::size_t n, double t, double jump) {
    const StateVector diff = U - u;
    AssimilationStepRecord row;
    row.n = n;
    row.t = t;
    row.err_h = norm(diff, Space::H);
    row.err_w1 = norm(diff, Space::W1);
    row.err_w2 = norm(diff, Space::W2);
    row.jump_norm = jump;
    const double prev = rep.steps.empty() ? 0.0 : rep.steps.back().err_w1;
    row.q_local = (n > 0 && prev > 0.0) ? row.err_w1 / prev : 1.0;
    rep.steps.push_back(row);
    if (setup.keep_states) {
      rep.anchors.push_back(u);
      rep.reference.push_back(U);
    }
  };

  record(0, setup.schedule.times[0], 0.0);
  for (std::size_t n = 1; n < setup.schedule.times.size(); ++n) {
    const double delta = setup.schedule.times[n] - setup.schedule.times[n - 1];
    U = advance(U, setup.params, setup.forcing, setup.integrator, delta);
    const StateVector su = advance(u, setup.params, setup.forcing, setup.integrator, delta);
    const StateVector r = apply_interpolation(U, op);
    u = project_state_symmetries(su - apply_interpolation(su, op) + r);
    record(n, setup.schedule.times[n], norm(u - su, Space::W1));
  }

  rep.initial_err_w1 = rep.steps.front().err_w1;
  rep.final_err_w1 = rep.steps.back().err_w1;
  const double floor = std::max(setup.floor_abs, setup.floor_rel * rep.initial_err_w1);
  const std::size_t rows = rep.steps.size();
  if (rows - 1 >= rows / 5 + 10) {
    reliability_verdict(rep, setup.margin, floor);
  } else {
    // Too short to certify; report the fit without a verdict.
    rep.fit = fit_error_tail(rep.steps, floor);
    rep.error_floor = floor;
    rep.reliable = false;
  }
  return rep;
}

PrognosticTrajectory make_prognostic_trajectory(const ObservationSchedule& schedule,
                                                std::vector<StateVector> anchors) {
  schedule.validate();
  if (anchors.size() != schedule.times.size())
    throw ConfigError("anchor count must match the observation schedule");
  for (const auto& a : anchors)
    if (!a.same_shape(anchors.front())) throw ConfigError("anchor shapes differ");
  PrognosticTrajectory traj;
  traj.times = schedule.times;
  traj.anchors = std::move(anchors);
  return traj;
}

StateVector evaluate_prognosis(const PrognosticTrajectory& traj, double t,
                               const PhysicalParams& params, const ForcingSpec& g,
                               const IntegratorConfig& icfg) {
  if (traj.times.empty() || traj.anchors.size() != traj.times.size())
    throw ConfigError("prognostic trajectory is empty or inconsistent");
  const double tol = 1e-9 * (1.0 + std::abs(traj.times.back()));
  if (t < traj.times.front() - tol || t > traj.times.back() + tol)
    throw ConfigError("time outside the prognostic range");
  auto it = std::upper_bound(traj.times.begin(), traj.times.end(), t + tol);
  const std::size_t n = static_cast<std::size_t>(it - traj.times.begin()) - 1;
  const double span = t - traj.times[n];
  if (span <= tol) return traj.anchors[n];
  return advance(traj.anchors[n], params, g, icfg, span);
}

SqueezingEstimate estimate_squeezing(const std::vector<std::pair<StateVector, StateVector>>& pairs,
                                     const ModeSet& modes, double t, const PhysicalParams& params,
                                     const ForcingSpec& g, const IntegratorConfig& icfg) {
  if (!(t > 0.0) || !std::isfinite(t)) throw ConfigError("squeezing time must be positive");
  SqueezingEstimate est;
  est.ratios.reserve(pairs.size());
  for (const auto& [ua, ub] : pairs) {
    if (!ua.same_shape(ub) || !ua.grid().same_shape(modes.grid))
      throw ConfigError("squeezing pair shapes differ");
    const double n0 = norm(ua - ub, Space::W1);
    const double scale = std::max({norm(ua, Space::W1), norm(ub, Space::W1), 1.0});
    if (n0 <= 1e-13 * scale) {
      ++est.skipped;
      continue;
    }
    const StateVector sa = advance(ua, params, g, icfg, t);
    const StateVector sb = advance(ub, params, g, icfg, t);
    const double ratio = norm(complement(sa - sb, modes), Space::W1) / n0;
    est.ratios.push_back(ratio);
    est.q_max = std::max(est.q_max, ratio);
  }
  return est;
}

DissipativityRecord verify_dissipativity(const std::vector<StateVector>& u_seq, double alpha,
                                         const DissipativityConstants& c) {
  if (u_seq.empty()) throw ConfigError("dissipativity check needs a non-empty run");
  if (!(alpha > 0.0)) throw ConfigError("dissipativity check needs alpha > 0");
  DissipativityRecord rec;
  for (const auto& u : u_seq) {
    rec.sup_h = std::max(rec.sup_h, norm(u, Space::H));
    rec.sup_w2 = std::max(rec.sup_w2, norm(u, Space::W2));
  }
  rec.gain = c.c1 * std::exp(-c.a0 * alpha);
  rec.hypothesis_ok = rec.gain < 1.0;
  if (rec.hypothesis_ok) {
    rec.rho = (c.a1 * c.K_G + c.c0 * c.K) / (1.0 - rec.gain);
    rec.h_bounded = rec.sup_h <= 1.0 + rec.rho;
    rec.w2_bounded = rec.sup_w2 <= rec.rho;
  } else {
    // No bound is certified when the contraction hypothesis fails.
    rec.rho = std::numeric_limits<double>::infinity();
    rec.h_bounded = false;
    rec.w2_bounded = false;
  }
  return rec;
}

}  // namespace pea
