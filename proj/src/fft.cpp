#include "szego/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

#include "szego/error.hpp"

namespace szego::fft {
namespace {

class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(std::size_t n, Direction dir) {
    std::lock_guard lock(mutex_);
    auto key = std::make_pair(n, dir);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    // FFTW planning is not thread-safe; the scratch buffer only shapes the plan.
    auto* scratch = fftw_alloc_complex(n);
    int sign = dir == Direction::forward ? FFTW_FORWARD : FFTW_BACKWARD;
    fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), scratch, scratch, sign,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(scratch);
    if (plan == nullptr) fail(Errc::numerical_failure, "fftw planning failed");
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<std::size_t, Direction>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

}  // namespace

bool is_power_of_two(std::size_t n) noexcept { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_power_of_two(std::size_t n) noexcept {
  std::size_t m = 1;
  while (m < n) m <<= 1;
  return m;
}

void transform(std::span<cplx> data, Direction dir) {
  if (data.empty()) return;
  fftw_plan plan = cache().get(data.size(), dir);
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, ptr, ptr);
}

std::vector<cplx> transformed(std::vector<cplx> data, Direction dir) {
  transform(data, dir);
  return data;
}

}  // namespace szego::fft
