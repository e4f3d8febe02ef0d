#include "pea/modes.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pea/errors.hpp"

namespace pea {

namespace {

enum class TrigH { Cos, Sin, None };
enum class TrigZ { Cos, Sin, None };

// Appends the coefficients of amp * trig_h(k_h . x_h) * trig_z(mu_m z) on one
// field.  None means the constant factor 1 in that direction (k or m zero).
void add_product(std::vector<SparseEntry>& out, int field, int k1, int k2, int m,
                 TrigH th, TrigZ tz, double amp) {
  struct Half {
    int sign;
    Cx coef;
  };
  const Half hh[2] = {{+1, th == TrigH::Sin ? Cx(0.0, -0.5) : Cx(0.5, 0.0)},
                      {-1, th == TrigH::Sin ? Cx(0.0, 0.5) : Cx(0.5, 0.0)}};
  const Half hz[2] = {{+1, tz == TrigZ::Sin ? Cx(0.0, -0.5) : Cx(0.5, 0.0)},
                      {-1, tz == TrigZ::Sin ? Cx(0.0, 0.5) : Cx(0.5, 0.0)}};
  const int nh = th == TrigH::None ? 1 : 2;
  const int nz = tz == TrigZ::None ? 1 : 2;
  for (int a = 0; a < nh; ++a)
    for (int c = 0; c < nz; ++c) {
      const Cx ch = th == TrigH::None ? Cx(1.0, 0.0) : hh[a].coef;
      const Cx cz = tz == TrigZ::None ? Cx(1.0, 0.0) : hz[c].coef;
      const int sh = th == TrigH::None ? 1 : hh[a].sign;
      const int sz = tz == TrigZ::None ? 1 : hz[c].sign;
      out.push_back({field, sh * k1, sh * k2, sz * m, amp * ch * cz});
    }
}

double entry_norm2(const std::vector<SparseEntry>& entries) {
  double s = 0.0;
  for (const auto& e : entries) s += std::norm(e.value);
  return s;
}

void normalize_entries(std::vector<SparseEntry>& entries, double volume) {
  const double n = std::sqrt(volume * entry_norm2(entries));
  for (auto& e : entries) e.value /= n;
}

struct ModeLess {
  bool operator()(const EigenMode& a, const EigenMode& b) const {
    const double tol = 1e-9 * (1.0 + std::min(a.lambda, b.lambda));
    if (std::abs(a.lambda - b.lambda) > tol) return a.lambda < b.lambda;
    if (a.k1 != b.k1) return a.k1 < b.k1;
    if (a.k2 != b.k2) return a.k2 < b.k2;
    if (a.m != b.m) return a.m < b.m;
    return a.component < b.component;
  }
};

}  // namespace

ModeSet build_mode_set(const Grid& g, const Domain& d, std::size_t n_request) {
  g.validate();
  d.validate();
  if (n_request < 1) throw ConfigError("mode count must be at least 1");

  const double vol = d.volume();
  // Shells with lambda below this cap cannot have members outside the
  // dealiased band, so they are complete on the grid.
  const double s1 = kTwoPi / d.L1, s2 = kTwoPi / d.L2, s3 = kTwoPi / d.L3;
  const double cap = std::min({s1 * (g.cutoff1 + 1) * s1 * (g.cutoff1 + 1),
                               s2 * (g.cutoff2 + 1) * s2 * (g.cutoff2 + 1),
                               s3 * (g.cutoff3 + 1) * s3 * (g.cutoff3 + 1)});

  std::vector<EigenMode> all;
  auto push = [&](double lam, int k1, int k2, int m, int comp,
                  std::vector<SparseEntry> entries) {
    normalize_entries(entries, vol);
    all.push_back({lam, k1, k2, m, comp, std::move(entries)});
  };

  // k_h = 0, m >= 1: two barotropic velocity polarizations and one buoyancy.
  for (int m = 1; m <= g.cutoff3; ++m) {
    const double lam = lambda_symbol(d, 0, 0, m);
    if (lam >= cap) break;
    for (int f = 0; f < 2; ++f) {
      std::vector<SparseEntry> e;
      add_product(e, f, 0, 0, m, TrigH::None, TrigZ::Cos, 1.0);
      push(lam, 0, 0, m, f, std::move(e));
    }
    std::vector<SparseEntry> e;
    add_product(e, 2, 0, 0, m, TrigH::None, TrigZ::Sin, 1.0);
    push(lam, 0, 0, m, 2, std::move(e));
  }

  // Canonical horizontal halfspace: k1 > 0 (any k2), or k1 = 0 and k2 > 0.
  for (int k1 = 0; k1 <= g.cutoff1; ++k1) {
    const int k2lo = (k1 == 0) ? 1 : -g.cutoff2;
    for (int k2 = k2lo; k2 <= g.cutoff2; ++k2) {
      if (k1 == 0 && k2 <= 0) continue;
      const double lam_h = lambda_symbol(d, k1, k2, 0);
      if (lam_h < cap) {
        // z-mean velocity: single divergence-free polarization kperp/|k|.
        const double a1 = s1 * k1, a2 = s2 * k2;
        const double inv = 1.0 / std::sqrt(a1 * a1 + a2 * a2);
        const double p1 = -a2 * inv, p2 = a1 * inv;
        for (int comp = 0; comp < 2; ++comp) {
          const TrigH th = comp == 0 ? TrigH::Cos : TrigH::Sin;
          std::vector<SparseEntry> e;
          if (p1 != 0.0) add_product(e, 0, k1, k2, 0, th, TrigZ::None, p1);
          if (p2 != 0.0) add_product(e, 1, k1, k2, 0, th, TrigZ::None, p2);
          push(lam_h, k1, k2, 0, comp, std::move(e));
        }
      }
      for (int m = 1; m <= g.cutoff3; ++m) {
        const double lam = lambda_symbol(d, k1, k2, m);
        if (lam >= cap) break;
        // z-fluctuating velocity keeps both polarizations (only the z-mean is
        // divergence-constrained).
        int comp = 0;
        for (int f = 0; f < 2; ++f)
          for (TrigH th : {TrigH::Cos, TrigH::Sin}) {
            std::vector<SparseEntry> e;
            add_product(e, f, k1, k2, m, th, TrigZ::Cos, 1.0);
            push(lam, k1, k2, m, comp++, std::move(e));
          }
        for (TrigH th : {TrigH::Cos, TrigH::Sin}) {
          std::vector<SparseEntry> e;
          add_product(e, 2, k1, k2, m, th, TrigZ::Sin, 1.0);
          push(lam, k1, k2, m, comp++, std::move(e));
        }
      }
    }
  }

  std::sort(all.begin(), all.end(), ModeLess());

  // Shell boundaries on the sorted list.
  std::vector<std::size_t> starts{0};
  for (std::size_t i = 1; i < all.size(); ++i)
    if (all[i].lambda - all[i - 1].lambda > 1e-9 * (1.0 + all[i - 1].lambda))
      starts.push_back(i);

  if (n_request > all.size()) {
    std::ostringstream msg;
    msg << "requested " << n_request << " modes but only " << all.size()
        << " lie in complete shells on this grid";
    throw ConfigError(msg.str());
  }
  std::size_t shell_idx = 0;
  while (shell_idx + 1 < starts.size() && starts[shell_idx + 1] < n_request) ++shell_idx;
  // The set ends at the end of shell shell_idx; the next shell supplies
  // lambda_{N+1} and must itself be complete on the grid.
  if (shell_idx + 1 >= starts.size()) {
    std::ostringstream msg;
    msg << "requested " << n_request << " modes but the grid has no complete shell beyond lambda="
        << all[starts[shell_idx]].lambda;
    throw ConfigError(msg.str());
  }
  const std::size_t n = starts[shell_idx + 1];

  ModeSet ms;
  ms.grid = g;
  ms.domain = d;
  ms.lambda_next = all[n].lambda;
  ms.modes.assign(all.begin(), all.begin() + n);
  ms.shell_begin.assign(starts.begin(), starts.begin() + shell_idx + 1);
  return ms;
}

StateVector materialize_mode(const EigenMode& mode, const Grid& g, const Domain& d) {
  StateVector u(g, d);
  for (const auto& e : mode.entries) {
    ScalarField& f = e.field == 0 ? u.v1 : e.field == 1 ? u.v2 : u.b;
    f.at_freq(e.k1, e.k2, e.m) += e.value;
  }
  return u;
}

double mode_coefficient(const StateVector& u, const EigenMode& mode) {
  double s = 0.0;
  for (const auto& e : mode.entries) {
    const ScalarField& f = e.field == 0 ? u.v1 : e.field == 1 ? u.v2 : u.b;
    s += (e.value * std::conj(f.at_freq(e.k1, e.k2, e.m))).real();
  }
  return s * u.domain().volume();
}

StateVector project_modes(const StateVector& u, const ModeSet& modes) {
  StateVector out(u.grid(), u.domain());
  for (const auto& mode : modes.modes) {
    const double c = mode_coefficient(u, mode);
    for (const auto& e : mode.entries) {
      ScalarField& f = e.field == 0 ? out.v1 : e.field == 1 ? out.v2 : out.b;
      f.at_freq(e.k1, e.k2, e.m) += c * e.value;
    }
  }
  return out;
}

StateVector complement(const StateVector& u, const ModeSet& modes) {
  return u - project_modes(u, modes);
}

}  // namespace pea
