#include "pea/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>

namespace pea {
namespace fft {

namespace {

struct PlanCache {
  std::mutex mu;
  std::map<std::tuple<int, int, int, int>, fftw_plan> plans;

  fftw_plan get(const Grid& g, int sign) {
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(g.N1, g.N2, g.N3, sign);
    auto it = plans.find(key);
    if (it != plans.end()) return it->second;
    // Dummy buffers only shape the plan; execution uses the new-array API,
    // which requires matching out-of-place-ness, hence two buffers here.
    fftw_complex* bin = fftw_alloc_complex(g.size());
    fftw_complex* bout = fftw_alloc_complex(g.size());
    fftw_plan p = fftw_plan_dft_3d(g.N1, g.N2, g.N3, bin, bout, sign,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(bin);
    fftw_free(bout);
    plans.emplace(key, p);
    return p;
  }
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

void execute(const Grid& g, int sign, const Cx* in, Cx* out) {
  fftw_plan p = cache().get(g, sign);
  // Out-of-place c2c transforms leave the input intact.
  fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(const_cast<Cx*>(in)),
                   reinterpret_cast<fftw_complex*>(out));
}

}  // namespace

void forward_raw(const Grid& g, const Cx* in, Cx* out) {
  execute(g, FFTW_FORWARD, in, out);
}

void backward_raw(const Grid& g, const Cx* in, Cx* out) {
  execute(g, FFTW_BACKWARD, in, out);
}

}  // namespace fft

ScalarField transform_forward(const PhysicalField& f, Parity parity, bool mean_zero) {
  ScalarField out(f.grid, f.domain, parity, mean_zero);
  std::vector<Cx> tmp(f.r.size());
  for (std::size_t i = 0; i < f.r.size(); ++i) tmp[i] = Cx(f.r[i], 0.0);
  fft::forward_raw(f.grid, tmp.data(), out.c.data());
  const double scale = 1.0 / static_cast<double>(f.grid.size());
  for (auto& v : out.c) v *= scale;
  return out;
}

PhysicalField transform_inverse(const ScalarField& f) {
  PhysicalField out(f.grid, f.domain);
  std::vector<Cx> tmp(f.c.size());
  fft::backward_raw(f.grid, f.c.data(), tmp.data());
  for (std::size_t i = 0; i < tmp.size(); ++i) out.r[i] = tmp[i].real();
  return out;
}

}  // namespace pea
