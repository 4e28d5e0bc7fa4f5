#include "gevrey/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

namespace gevrey {

namespace {

class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(std::size_t n, int sign) {
    std::lock_guard lock(mutex_);
    const auto key = std::make_pair(n, sign);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    // Planning scratch only; execution goes through the new-array interface.
    auto* buf = fftw_alloc_complex(n);
    fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, sign,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(buf);
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

void run(cplx* data, std::size_t n, int sign) {
  if (n == 0) return;
  auto* p = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(cache().get(n, sign), p, p);
}

}  // namespace

void fft_inplace(cplx* data, std::size_t n) { run(data, n, FFTW_FORWARD); }

void ifft_inplace(cplx* data, std::size_t n) {
  run(data, n, FFTW_BACKWARD);
  const double s = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) data[i] *= s;
}

std::vector<cplx> fft(std::vector<cplx> data) {
  fft_inplace(data.data(), data.size());
  return data;
}

std::vector<cplx> ifft(std::vector<cplx> data) {
  ifft_inplace(data.data(), data.size());
  return data;
}

std::vector<double> fft_freqs(std::size_t n, double d) {
  std::vector<double> f(n);
  const double scale = 1.0 / (static_cast<double>(n) * d);
  const auto half = static_cast<long long>((n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    const auto k = static_cast<long long>(i);
    f[i] = static_cast<double>(k <= half ? k : k - static_cast<long long>(n)) * scale;
  }
  return f;
}

}  // namespace gevrey
