#include "kgnf/fft.hh"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace kgnf {
namespace {

struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
  fftw_complex* in = nullptr;
  fftw_complex* out = nullptr;
  int n = 0;
};

std::mutex plan_mutex;
std::map<int, PlanPair>& plan_cache() {
  static std::map<int, PlanPair> cache;
  return cache;
}

PlanPair& plans_for(int n) {
  std::lock_guard<std::mutex> lock(plan_mutex);
  auto& cache = plan_cache();
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  PlanPair p;
  p.n = n;
  p.in = fftw_alloc_complex(n);
  p.out = fftw_alloc_complex(n);
  // FFTW_ESTIMATE keeps planning deterministic and cheap.
  p.forward = fftw_plan_dft_1d(n, p.in, p.out, FFTW_FORWARD, FFTW_ESTIMATE);
  p.backward = fftw_plan_dft_1d(n, p.in, p.out, FFTW_BACKWARD, FFTW_ESTIMATE);
  return cache.emplace(n, p).first->second;
}

void run(const std::vector<cplx>& in, std::vector<cplx>& out, bool forward) {
  const int n = static_cast<int>(in.size());
  out.resize(n);
  PlanPair& p = plans_for(n);
  // Shared scratch buffers: serialize execution on them.  Transform sizes here
  // are small (N <= 4096), so this is never a bottleneck.
  std::lock_guard<std::mutex> lock(plan_mutex);
  for (int j = 0; j < n; ++j) {
    p.in[j][0] = in[j].real();
    p.in[j][1] = in[j].imag();
  }
  fftw_execute(forward ? p.forward : p.backward);
  for (int j = 0; j < n; ++j) out[j] = cplx{p.out[j][0], p.out[j][1]};
}

}  // namespace

void dft_raw_forward(const std::vector<cplx>& in, std::vector<cplx>& out) {
  run(in, out, true);
}
void dft_raw_backward(const std::vector<cplx>& in, std::vector<cplx>& out) {
  run(in, out, false);
}

}  // namespace kgnf
