#include "spectral/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

#include "spectral/error.hpp"

namespace spectral::fft {

namespace {

// Planning is not thread-safe in FFTW, executing is. Plans are created once
// per (length, direction) with FFTW_ESTIMATE so results do not depend on
// run-time measurements.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  fftw_plan get(std::size_t n, int sign) {
    std::lock_guard lock(mutex_);
    const auto key = std::make_pair(n, sign);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    auto* in = fftw_alloc_complex(n);
    auto* out = fftw_alloc_complex(n);
    fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), in, out, sign,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(in);
    fftw_free(out);
    if (plan == nullptr) throw NumericalError("fft: FFTW failed to create a plan");
    plans_.emplace(key, plan);
    return plan;
  }

  PlanCache(const PlanCache&) = delete;
  PlanCache& operator=(const PlanCache&) = delete;

 private:
  PlanCache() = default;
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  std::mutex mutex_;
  std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

void execute(std::span<const cplx> in, std::span<cplx> out, int sign) {
  if (in.size() != out.size()) throw PreconditionError("fft: input/output length mismatch");
  if (in.empty()) return;
  if (static_cast<const void*>(in.data()) == static_cast<const void*>(out.data())) {
    throw PreconditionError("fft: in-place transforms are not supported");
  }
  fftw_plan plan = PlanCache::instance().get(in.size(), sign);
  // FFTW does not modify the input of an out-of-place complex DFT.
  auto* src = reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in.data()));
  auto* dst = reinterpret_cast<fftw_complex*>(out.data());
  fftw_execute_dft(plan, src, dst);
}

}  // namespace

void forward(std::span<const cplx> in, std::span<cplx> out) { execute(in, out, FFTW_FORWARD); }

void inverse(std::span<const cplx> in, std::span<cplx> out) {
  execute(in, out, FFTW_BACKWARD);
  const double scale = 1.0 / static_cast<double>(out.size());
  for (auto& z : out) z *= scale;
}

std::vector<cplx> forward(std::span<const cplx> in) {
  std::vector<cplx> out(in.size());
  forward(in, std::span<cplx>(out));
  return out;
}

std::vector<cplx> forward(std::span<const double> in) {
  std::vector<cplx> tmp(in.begin(), in.end());
  return forward(std::span<const cplx>(tmp));
}

std::vector<cplx> inverse(std::span<const cplx> in) {
  std::vector<cplx> out(in.size());
  inverse(in, std::span<cplx>(out));
  return out;
}

}  // namespace spectral::fft
