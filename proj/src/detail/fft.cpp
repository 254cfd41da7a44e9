#include "biphoton/detail/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>

namespace biphoton::detail {

namespace {
// FFTW's planner is not thread-safe; executions are.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

FftPlan::FftPlan(std::complex<double>* data, int rows, int cols, int direction) {
  if (rows <= 0 || cols <= 0) throw std::invalid_argument("FftPlan: empty shape");
  const int sign = direction > 0 ? FFTW_BACKWARD : FFTW_FORWARD;
  auto* ptr = reinterpret_cast<fftw_complex*>(data);
  std::lock_guard lock(planner_mutex());
  if (cols == 1)
    plan_ = fftw_plan_dft_1d(rows, ptr, ptr, sign, FFTW_ESTIMATE);
  else
    plan_ = fftw_plan_dft_2d(rows, cols, ptr, ptr, sign, FFTW_ESTIMATE);
  if (plan_ == nullptr) throw std::runtime_error("FftPlan: fftw planning failed");
}

FftPlan::~FftPlan() {
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(plan_));
}

void FftPlan::execute() const { fftw_execute(static_cast<fftw_plan>(plan_)); }

}  // namespace biphoton::detail
