#pragma once

#include <complex>

// Thin RAII wrapper around FFTW complex-to-complex plans.
//
// Plans are created with FFTW_ESTIMATE only: ESTIMATE planning is
// deterministic (MEASURE picks algorithms by timing, which makes repeated
// runs produce bit-different rounding), and plan creation is cheap enough
// to do per transform where no plan is cached. Plan creation/destruction is
// serialized internally; fftw_execute on distinct plans is thread-safe.

namespace biphoton::detail {

class FftPlan {
 public:
  // direction +1 applies the e^{+2*pi*i*j*k/n} kernel (unnormalized),
  // direction -1 its conjugate. `data` must stay valid for the plan's life;
  // execute() transforms in place. cols == 1 plans a 1-D transform of
  // length `rows`, otherwise a 2-D rows x cols transform. Both axes of the
  // 2-D case must be transformed identically (square grids only), so the
  // storage order of `data` does not matter.
  FftPlan(std::complex<double>* data, int rows, int cols, int direction);
  ~FftPlan();

  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;

  void execute() const;

 private:
  void* plan_;  // fftw_plan
};

}  // namespace biphoton::detail
