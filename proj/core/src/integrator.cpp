#include "pea/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pea/errors.hpp"
#include "pea/fft.hpp"
#include "pea/norms.hpp"
#include "pea/spectral_ops.hpp"

namespace pea {

namespace {

// Per-mode integrating factor e^{-nu lambda dt/2}, rebuilt only when dt or nu
// changes.  Local to each trajectory loop, so concurrent trajectories never
// share mutable state.
struct ExpFactors {
  double nu = -1.0;
  double dt = -1.0;
  std::vector<double> ehalf;

  void build(const Grid& g, const Domain& d, double nu_, double dt_) {
    if (nu == nu_ && dt == dt_ && ehalf.size() == static_cast<std::size_t>(g.size())) return;
    nu = nu_;
    dt = dt_;
    ehalf.assign(g.size(), 1.0);
    std::size_t idx = 0;
    for (int i1 = 0; i1 < g.N1; ++i1)
      for (int i2 = 0; i2 < g.N2; ++i2)
        for (int i3 = 0; i3 < g.N3; ++i3, ++idx) {
          const double lam = lambda_symbol(d, freq_of_index(i1, g.N1),
                                           freq_of_index(i2, g.N2), freq_of_index(i3, g.N3));
          ehalf[idx] = std::exp(-0.5 * nu * lam * dt);
        }
  }
};

void scale_fields(StateVector& u, const std::vector<double>& s) {
  for (ScalarField* f : {&u.v1, &u.v2, &u.b})
    for (std::size_t i = 0; i < f->c.size(); ++i) f->c[i] *= s[i];
}

double max_abs_physical(const ScalarField& f) {
  PhysicalField p = transform_inverse(f);
  double m = 0.0;
  for (double v : p.r) m = std::max(m, std::abs(v));
  return m;
}

double advective_cfl(const StateVector& u, double dt) {
  const Grid& g = u.grid();
  const Domain& d = u.domain();
  ScalarField w = vertical_velocity(u);
  return dt * (max_abs_physical(u.v1) * g.N1 / d.L1 + max_abs_physical(u.v2) * g.N2 / d.L2 +
               max_abs_physical(w) * g.N3 / d.L3);
}

int steps_for(double span, double dt) {
  int n = static_cast<int>(std::ceil(span / dt - 1e-9));
  return std::max(n, 1);
}

StateVector step_impl(const StateVector& u, const PhysicalParams& p, const ForcingSpec& g,
                      double dt, const IntegratorConfig& cfg, ExpFactors& ef) {
  if (!all_finite(u)) throw NumericalError("non-finite input state");
  const double cfl = advective_cfl(u, dt);
  if (cfl > cfg.cfl_guard) {
    std::ostringstream msg;
    msg << "advective CFL " << cfl << " exceeds guard " << cfg.cfl_guard << " at dt=" << dt;
    throw NumericalError(msg.str());
  }
  ef.build(u.grid(), u.domain(), p.nu, dt);
  const double w1_in = norm(u, Space::W1);

  // IFRK4 for du/dt = -nu A u + N(u): with E = e^{-nu A dt/2},
  //   k1 = N(u),  k2 = N(E(u + dt/2 k1)),  k3 = N(Eu + dt/2 k2),
  //   k4 = N(E^2 u + dt E k3),
  //   u+ = E^2 u + dt/6 (E^2 k1 + 2E(k2 + k3) + k4).
  Tendency t1 = rhs(u, p, g, false);
  StateVector s2 = u;
  axpy(0.5 * dt, t1.du, s2);
  scale_fields(s2, ef.ehalf);
  Tendency t2 = rhs(s2, p, g, false);

  StateVector eu = u;
  scale_fields(eu, ef.ehalf);
  StateVector s3 = eu;
  axpy(0.5 * dt, t2.du, s3);
  Tendency t3 = rhs(s3, p, g, false);

  StateVector e2u = eu;
  scale_fields(e2u, ef.ehalf);
  StateVector ek3 = t3.du;
  scale_fields(ek3, ef.ehalf);
  StateVector s4 = e2u;
  axpy(dt, ek3, s4);
  Tendency t4 = rhs(s4, p, g, false);

  StateVector k1e = t1.du;
  scale_fields(k1e, ef.ehalf);
  scale_fields(k1e, ef.ehalf);
  StateVector k23 = t2.du;
  axpy(1.0, t3.du, k23);
  scale_fields(k23, ef.ehalf);

  StateVector out = e2u;
  axpy(dt / 6.0, k1e, out);
  axpy(dt / 3.0, k23, out);
  axpy(dt / 6.0, t4.du, out);
  out = project_state_symmetries(out);

  if (!all_finite(out)) throw NumericalError("non-finite state after step (blow-up)");
  const double w1_out = norm(out, Space::W1);
  if (w1_out > 1e6 * std::max(1.0, w1_in)) {
    std::ostringstream msg;
    msg << "W1 norm " << w1_out << " exceeds blow-up guard (input scale " << w1_in << ")";
    throw NumericalError(msg.str());
  }
  return out;
}

}  // namespace

void IntegratorConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("integrator dt must be positive and finite");
  if (!(cfl_guard > 0.0) || !std::isfinite(cfl_guard)) throw ConfigError("cfl_guard must be positive and finite");
}

StateVector step(const StateVector& u, const PhysicalParams& p, const ForcingSpec& g,
                 double dt, const IntegratorConfig& cfg) {
  p.validate();
  cfg.validate();
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("step size must be positive and finite");
  ExpFactors ef;
  return step_impl(u, p, g, dt, cfg, ef);
}

Trajectory evolve(const StateVector& u0, const PhysicalParams& p, const ForcingSpec& g,
                  const IntegratorConfig& cfg, double T, const std::vector<double>& sample_times) {
  p.validate();
  cfg.validate();
  if (T < 0.0 || !std::isfinite(T)) throw ConfigError("evolve horizon T must be nonnegative and finite");

  std::vector<double> targets = sample_times;
  std::sort(targets.begin(), targets.end());
  targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
  for (double s : targets)
    if (s < 0.0 || s > T) throw ConfigError("sample times must lie in [0, T]");
  if (targets.empty() || targets.back() < T) targets.push_back(T);

  Trajectory tr;
  tr.times.push_back(0.0);
  tr.states.push_back(u0);

  StateVector u = u0;
  double t = 0.0;
  ExpFactors ef;
  for (double target : targets) {
    const double span = target - t;
    if (span <= 0.0) continue;
    const int n = steps_for(span, cfg.dt);
    const double h = span / n;
    for (int i = 0; i < n; ++i) u = step_impl(u, p, g, h, cfg, ef);
    t = target;
    tr.times.push_back(t);
    tr.states.push_back(u);
  }
  return tr;
}

SpinUpResult spin_up(const StateVector& u0, const PhysicalParams& p, const ForcingSpec& g,
                     const IntegratorConfig& cfg, double window, double tol, double max_time) {
  p.validate();
  cfg.validate();
  if (!(window > 0.0) || !(tol > 0.0) || !(max_time > 0.0))
    throw ConfigError("spin_up window, tol, and max_time must be positive");

  SpinUpResult r;
  const double scale0 = std::max(norm(u0, Space::W2), 1.0);
  const int n = steps_for(window, cfg.dt);
  const double h = window / n;

  StateVector u = u0;
  double t = 0.0;
  double prev = -1.0;
  ExpFactors ef;
  while (t < max_time - 1e-9 * window) {
    double wmax = 0.0;
    for (int i = 0; i < n; ++i) {
      u = step_impl(u, p, g, h, cfg, ef);
      wmax = std::max(wmax, norm(u, Space::W2));
    }
    t += window;
    r.window_end_times.push_back(t);
    r.window_max_w2.push_back(wmax);
    if (prev >= 0.0) {
      const bool plateau = std::abs(wmax - prev) <= tol * std::max(wmax, 1e-300);
      const bool at_rest = wmax <= 1e-10 * scale0;
      if (plateau || at_rest) {
        r.converged = true;
        r.radius = wmax;
        r.state = u;
        r.elapsed = t;
        return r;
      }
    }
    prev = wmax;
  }
  r.converged = false;
  r.radius = prev;
  r.state = u;
  r.elapsed = t;
  return r;
}

double lipschitz_probe(const StateVector& u, const StateVector& ustar, const PhysicalParams& p,
                       const ForcingSpec& g, const IntegratorConfig& cfg, double T) {
  p.validate();
  cfg.validate();
  if (!(T > 0.0) || !std::isfinite(T)) throw ConfigError("lipschitz_probe horizon must be positive");
  const double d0 = norm(u - ustar, Space::H);
  if (d0 == 0.0) return 1.0;

  const int n = steps_for(T, cfg.dt);
  const double h = T / n;
  StateVector a = u, b = ustar;
  double best = 1.0;
  ExpFactors ef;
  for (int i = 0; i < n; ++i) {
    a = step_impl(a, p, g, h, cfg, ef);
    b = step_impl(b, p, g, h, cfg, ef);
    best = std::max(best, norm(a - b, Space::H) / d0);
  }
  return best;
}

ExpFit fit_exponential_rate(const std::vector<double>& t, const std::vector<double>& y) {
  if (t.size() != y.size() || t.size() < 2)
    throw ConfigError("fit_exponential_rate needs at least two matched samples");
  double mt = 0.0, ml = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!(y[i] > 0.0)) throw ConfigError("fit_exponential_rate needs positive values");
    mt += t[i];
    ml += std::log(y[i]);
  }
  mt /= static_cast<double>(t.size());
  ml /= static_cast<double>(t.size());
  double cov = 0.0, var = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    cov += (t[i] - mt) * (std::log(y[i]) - ml);
    var += (t[i] - mt) * (t[i] - mt);
  }
  if (var == 0.0) throw ConfigError("fit_exponential_rate needs distinct times");
  ExpFit f;
  f.rate = -cov / var;
  f.amplitude = std::exp(ml + f.rate * mt);
  return f;
}

}  // namespace pea
