#include "pea/interpolation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <map>

#include "pea/errors.hpp"
#include "pea/random_fields.hpp"
#include "pea/spectral_ops.hpp"

namespace pea {

namespace {

bool in_band(const Grid& g, int k1, int k2, int m) {
  return std::abs(k1) <= g.cutoff1 && std::abs(k2) <= g.cutoff2 && std::abs(m) <= g.cutoff3;
}

// Canonical orbit representative of (k1,k2,m) under the symmetries K must
// respect: joint sign flip of (k1,k2) and either sign of m.
std::array<int, 3> orbit_key(int k1, int k2, int m) {
  if (k1 < 0 || (k1 == 0 && k2 < 0)) {
    k1 = -k1;
    k2 = -k2;
  }
  return {k1, k2, std::abs(m)};
}

template <typename F>
void fill_symbol(MultiplierK& K, F&& gen) {
  const Grid& g = K.grid;
  K.symbol.assign(g.size(), 1.0);
  std::map<std::array<int, 3>, double> drawn;
  std::size_t idx = 0;
  for (int i1 = 0; i1 < g.N1; ++i1)
    for (int i2 = 0; i2 < g.N2; ++i2)
      for (int i3 = 0; i3 < g.N3; ++i3, ++idx) {
        const auto key = orbit_key(freq_of_index(i1, g.N1), freq_of_index(i2, g.N2),
                                   freq_of_index(i3, g.N3));
        auto it = drawn.find(key);
        if (it == drawn.end()) it = drawn.emplace(key, gen(key)).first;
        K.symbol[idx] = it->second;
      }
}

}  // namespace

MultiplierK MultiplierK::identity(const Grid& g, const Domain& d) {
  MultiplierK K;
  K.grid = g;
  K.domain = d;
  K.symbol.assign(g.size(), 1.0);
  K.kappa_min = 1.0;
  K.kappa_max = 1.0;
  return K;
}

MultiplierK MultiplierK::smooth(const Grid& g, const Domain& d) {
  MultiplierK K;
  K.grid = g;
  K.domain = d;
  double lam_max = 0.0;
  for (int k1 = -g.cutoff1; k1 <= g.cutoff1; ++k1)
    for (int k2 = -g.cutoff2; k2 <= g.cutoff2; ++k2)
      for (int m = -g.cutoff3; m <= g.cutoff3; ++m)
        lam_max = std::max(lam_max, lambda_symbol(d, k1, k2, m));
  const double pi = 0.5 * kTwoPi;
  fill_symbol(K, [&](const std::array<int, 3>& k) {
    const double lam = lambda_symbol(d, k[0], k[1], k[2]);
    return 1.0 + 0.5 * std::cos(pi * std::min(lam / lam_max, 1.0));
  });
  K.kappa_min = 0.5;
  K.kappa_max = 1.5;
  return K;
}

MultiplierK MultiplierK::random(const Grid& g, const Domain& d, std::uint64_t seed) {
  MultiplierK K;
  K.grid = g;
  K.domain = d;
  Rng rng(seed);
  fill_symbol(K, [&](const std::array<int, 3>&) { return rng.uniform(0.5, 2.0); });
  K.kappa_min = 0.5;
  K.kappa_max = 2.0;
  return K;
}

void MultiplierK::validate() const {
  if (symbol.size() != static_cast<std::size_t>(grid.size()))
    throw ConfigError("multiplier symbol size does not match grid");
  if (!(kappa_min > 0.0) || !(kappa_max >= kappa_min) || !std::isfinite(kappa_max))
    throw ConfigError("multiplier bounds must satisfy 0 < kappa_min <= kappa_max < inf");
  for (int k1 = -grid.cutoff1; k1 <= grid.cutoff1; ++k1)
    for (int k2 = -grid.cutoff2; k2 <= grid.cutoff2; ++k2)
      for (int m = -grid.cutoff3; m <= grid.cutoff3; ++m) {
        const double s = symbol_at(k1, k2, m);
        if (!(s >= kappa_min) || !(s <= kappa_max))
          throw ConfigError("multiplier symbol out of declared bounds");
        if (s != symbol_at(-k1, -k2, -m) || s != symbol_at(k1, k2, -m))
          throw ConfigError("multiplier symbol breaks orbit symmetry");
      }
}

double MultiplierK::symbol_at(int k1, int k2, int m) const {
  return symbol[flat_index(grid, index_of_freq(k1, grid.N1), index_of_freq(k2, grid.N2),
                           index_of_freq(m, grid.N3))];
}

double MultiplierK::norm_h() const {
  double s = 0.0;
  for (int k1 = -grid.cutoff1; k1 <= grid.cutoff1; ++k1)
    for (int k2 = -grid.cutoff2; k2 <= grid.cutoff2; ++k2)
      for (int m = -grid.cutoff3; m <= grid.cutoff3; ++m)
        s = std::max(s, std::abs(symbol_at(k1, k2, m)));
  return s;
}

InterpolationOperator build_generalized_operator(const ModeSet& modes, const MultiplierK& K) {
  if (!modes.grid.same_shape(K.grid)) throw ConfigError("mode set and multiplier grids differ");
  K.validate();
  InterpolationOperator op;
  op.modes = modes;
  op.k_norm_h = K.norm_h();
  op.riesz.reserve(modes.count());
  op.psi.reserve(modes.count());
  for (const auto& mode : modes.modes) {
    std::vector<SparseEntry> r = mode.entries;
    std::vector<SparseEntry> p = mode.entries;
    for (std::size_t i = 0; i < mode.entries.size(); ++i) {
      const auto& e = mode.entries[i];
      if (!in_band(K.grid, e.k1, e.k2, e.m)) throw ConfigError("mode entry outside dealiased band");
      const double kap = K.symbol_at(e.k1, e.k2, e.m);
      r[i].value *= kap;
      p[i].value /= kap;
    }
    op.riesz.push_back(std::move(r));
    op.psi.push_back(std::move(p));
  }
  op.lagrange = true;
  return op;
}

namespace {

double sparse_dot_state(const std::vector<SparseEntry>& a, const StateVector& u) {
  double s = 0.0;
  for (const auto& e : a) {
    const ScalarField& f = e.field == 0 ? u.v1 : e.field == 1 ? u.v2 : u.b;
    s += (e.value * std::conj(f.at_freq(e.k1, e.k2, e.m))).real();
  }
  return s * u.domain().volume();
}

void sparse_accumulate(StateVector& out, const std::vector<SparseEntry>& a, double c) {
  for (const auto& e : a) {
    ScalarField& f = e.field == 0 ? out.v1 : e.field == 1 ? out.v2 : out.b;
    f.at_freq(e.k1, e.k2, e.m) += c * e.value;
  }
}

}  // namespace

double apply_functional(const InterpolationOperator& op, std::size_t j, const StateVector& u) {
  if (j >= op.riesz.size()) throw ConfigError("functional index out of range");
  return sparse_dot_state(op.riesz[j], u);
}

StateVector apply_interpolation(const StateVector& u, const InterpolationOperator& op) {
  StateVector out(u.grid(), u.domain());
  for (std::size_t j = 0; j < op.riesz.size(); ++j)
    sparse_accumulate(out, op.psi[j], sparse_dot_state(op.riesz[j], u));
  return out;
}

StateVector apply_interpolation_adjoint(const StateVector& u, const InterpolationOperator& op) {
  StateVector out(u.grid(), u.domain());
  for (std::size_t j = 0; j < op.riesz.size(); ++j)
    sparse_accumulate(out, op.riesz[j], sparse_dot_state(op.psi[j], u));
  return out;
}

double modal_defect_closed_form(const ModeSet& modes, Space v) {
  if (v == Space::W1) return 1.0 / std::sqrt(modes.lambda_next);
  if (v == Space::W2) return 1.0 / modes.lambda_next;
  throw ConfigError("completeness defect is defined against V in {W1, W2}");
}

namespace {

// Sparse vectors keyed by (field, k1, k2, m) for the Gram-Schmidt pass.
using Key = std::array<int, 4>;
using SparseMap = std::map<Key, Cx>;

SparseMap to_map(const std::vector<SparseEntry>& v) {
  SparseMap m;
  for (const auto& e : v) m[{e.field, e.k1, e.k2, e.m}] += e.value;
  return m;
}

double map_dot(const SparseMap& a, const SparseMap& b, double vol) {
  double s = 0.0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (ia->first < ib->first)
      ++ia;
    else if (ib->first < ia->first)
      ++ib;
    else {
      s += (ia->second * std::conj(ib->second)).real();
      ++ia;
      ++ib;
    }
  }
  return s * vol;
}

double map_dot_state(const SparseMap& a, const StateVector& u) {
  double s = 0.0;
  for (const auto& [k, v] : a) {
    const ScalarField& f = k[0] == 0 ? u.v1 : k[0] == 1 ? u.v2 : u.b;
    s += (v * std::conj(f.at_freq(k[1], k[2], k[3]))).real();
  }
  return s * u.domain().volume();
}

void map_accumulate_state(StateVector& out, const SparseMap& a, double c) {
  for (const auto& [k, v] : a) {
    ScalarField& f = k[0] == 0 ? out.v1 : k[0] == 1 ? out.v2 : out.b;
    f.at_freq(k[1], k[2], k[3]) += c * v;
  }
}

// H-orthonormal basis of span{riesz_j} by modified Gram-Schmidt.
std::vector<SparseMap> orthonormal_riesz(const InterpolationOperator& op) {
  const double vol = op.modes.domain.volume();
  std::vector<SparseMap> phi;
  for (const auto& r : op.riesz) {
    SparseMap w = to_map(r);
    for (const auto& p : phi) {
      const double c = map_dot(p, w, vol);
      if (c != 0.0)
        for (const auto& [k, v] : p) w[k] -= c * v;
    }
    double n2 = 0.0;
    for (const auto& [k, v] : w) n2 += std::norm(v);
    n2 *= vol;
    if (n2 > 1e-28) {
      const double inv = 1.0 / std::sqrt(n2);
      for (auto& [k, v] : w) v *= inv;
      phi.push_back(std::move(w));
    }
  }
  return phi;
}

// Multiplies coefficients by lambda(k)^expnt (zero at k = 0).
void apply_lambda_power(StateVector& u, const std::vector<double>& factors) {
  for (ScalarField* f : {&u.v1, &u.v2, &u.b})
    for (std::size_t i = 0; i < f->c.size(); ++i) f->c[i] *= factors[i];
}

std::vector<double> lambda_power_factors(const Grid& g, const Domain& d, double expnt) {
  std::vector<double> f(g.size(), 1.0);
  if (expnt == 0.0) return f;
  std::size_t idx = 0;
  for (int i1 = 0; i1 < g.N1; ++i1)
    for (int i2 = 0; i2 < g.N2; ++i2)
      for (int i3 = 0; i3 < g.N3; ++i3, ++idx) {
        const double lam = lambda_symbol(d, freq_of_index(i1, g.N1), freq_of_index(i2, g.N2),
                                         freq_of_index(i3, g.N3));
        f[idx] = lam > 0.0 ? std::pow(lam, expnt) : 0.0;
      }
  return f;
}

double space_exponent(Space s) {
  switch (s) {
    case Space::H:
      return 0.0;
    case Space::W1:
      return 0.5;
    default:
      return 1.0;
  }
}

// Power iteration for the largest eigenvalue of the PSD map `apply`.
DefectEstimate power_iterate(const Grid& g, const Domain& d, std::uint64_t seed, double tol,
                             std::size_t max_iter,
                             const std::function<StateVector(const StateVector&)>& apply) {
  Rng rng(seed);
  StateVector w = project_state_symmetries(random_state(g, d, rng, 1.0));
  const double w0 = norm(w, Space::H);
  if (w0 <= 0.0) throw NumericalError("power iteration start vector is zero");
  w = (1.0 / w0) * w;
  DefectEstimate est;
  double lam_prev = -1.0;
  for (std::size_t it = 1; it <= max_iter; ++it) {
    // Re-project every iterate: the operators preserve the constraint
    // manifold only in exact arithmetic, and roundoff leakage into the
    // unconstrained polarizations gets amplified when those directions carry
    // larger singular values than the constrained ones.
    StateVector y = project_state_symmetries(apply(w));
    const double lam = inner_product(w, y, Space::H);
    StateVector r = y;
    axpy(-lam, w, r);
    const double res = norm(r, Space::H) / std::max(std::abs(lam), 1e-300);
    est.iterations = it;
    est.residual = res;
    est.value = std::sqrt(std::max(lam, 0.0));
    const double yn = norm(y, Space::H);
    if (yn <= 1e-300) {
      // Operator annihilates the iterate: norm is zero.
      est.value = 0.0;
      est.residual = 0.0;
      est.converged = true;
      return est;
    }
    w = (1.0 / yn) * y;
    if (it >= 3 && lam_prev >= 0.0 && std::abs(lam - lam_prev) <= tol * std::max(lam, 1e-300) &&
        res <= std::sqrt(tol)) {
      est.converged = true;
      return est;
    }
    lam_prev = lam;
  }
  est.converged = false;
  return est;
}

}  // namespace

DefectEstimate completeness_defect(const InterpolationOperator& op, Space v, std::uint64_t seed,
                                   double tol, std::size_t max_iter) {
  if (v == Space::H) throw ConfigError("completeness defect is defined against V in {W1, W2}");
  const Grid& g = op.modes.grid;
  const Domain& d = op.modes.domain;
  const std::vector<SparseMap> phi = orthonormal_riesz(op);
  // T = A^{-s/2} Q A^{-s/2}; the defect is sqrt(lambda_max(T)).
  const std::vector<double> winv = lambda_power_factors(g, d, -space_exponent(v));
  auto apply = [&](const StateVector& u) {
    StateVector y = u;
    apply_lambda_power(y, winv);
    for (const auto& p : phi) {
      const double c = map_dot_state(p, y);
      if (c != 0.0) map_accumulate_state(y, p, -c);
    }
    apply_lambda_power(y, winv);
    return y;
  };
  return power_iterate(g, d, seed, tol, max_iter, apply);
}

DefectEstimate operator_norm(const InterpolationOperator& op, OperatorKind kind, Space from,
                             Space to, std::uint64_t seed, double tol, std::size_t max_iter) {
  const Grid& g = op.modes.grid;
  const Domain& d = op.modes.domain;
  const std::vector<double> from_inv = lambda_power_factors(g, d, -space_exponent(from));
  const std::vector<double> to_fwd = lambda_power_factors(g, d, space_exponent(to));

  auto forward = [&](const StateVector& u) {
    StateVector y = u;
    apply_lambda_power(y, from_inv);
    StateVector ry = apply_interpolation(y, op);
    if (kind == OperatorKind::IMinusR) {
      StateVector diff = y - ry;
      apply_lambda_power(diff, to_fwd);
      return diff;
    }
    apply_lambda_power(ry, to_fwd);
    return ry;
  };
  auto adjoint = [&](const StateVector& u) {
    StateVector y = u;
    apply_lambda_power(y, to_fwd);
    StateVector ry = apply_interpolation_adjoint(y, op);
    if (kind == OperatorKind::IMinusR) {
      StateVector diff = y - ry;
      apply_lambda_power(diff, from_inv);
      return diff;
    }
    apply_lambda_power(ry, from_inv);
    return ry;
  };
  auto apply = [&](const StateVector& u) { return adjoint(forward(u)); };
  return power_iterate(g, d, seed, tol, max_iter, apply);
}

}  // namespace pea
