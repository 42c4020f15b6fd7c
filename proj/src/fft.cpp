#include "hwarp/fft.hpp"

#include <algorithm>
#include <cstring>
#include <memory>
#include <mutex>

#include <fftw3.h>

#include "hwarp/error.hpp"

namespace hwarp::fft {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};

template <typename T>
using FftwBuffer = std::unique_ptr<T[], FftwFree>;

template <typename T>
FftwBuffer<T> allocate(std::size_t count) {
  auto* p = static_cast<T*>(fftw_malloc(sizeof(T) * count));
  if (!p) throw std::bad_alloc();
  return FftwBuffer<T>(p);
}

class Plan {
 public:
  explicit Plan(fftw_plan p) : plan_(p) {
    if (!plan_) throw std::runtime_error("fftw: plan creation failed");
  }
  Plan(const Plan&) = delete;
  Plan& operator=(const Plan&) = delete;
  ~Plan() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan_);
  }
  void execute() const { fftw_execute(plan_); }

 private:
  fftw_plan plan_;
};

void check_dims(int width, int height) {
  if (width < 1 || height < 1) throw InvalidArgument("fft: dimensions must be positive");
}

}  // namespace

std::vector<std::complex<double>> forward(std::span<const double> real, int width, int height) {
  check_dims(width, height);
  const std::size_t n_real = static_cast<std::size_t>(width) * height;
  if (real.size() != n_real) throw InvalidArgument("fft::forward: size mismatch");
  const std::size_t n_cplx = static_cast<std::size_t>(height) * (width / 2 + 1);

  auto in = allocate<double>(n_real);
  auto out = allocate<fftw_complex>(n_cplx);
  fftw_plan raw;
  {
    std::lock_guard lock(planner_mutex());
    raw = fftw_plan_dft_r2c_2d(height, width, in.get(), out.get(), FFTW_ESTIMATE);
  }
  Plan plan(raw);
  std::copy(real.begin(), real.end(), in.get());
  plan.execute();

  std::vector<std::complex<double>> result(n_cplx);
  std::memcpy(static_cast<void*>(result.data()), out.get(), sizeof(fftw_complex) * n_cplx);
  return result;
}

std::vector<double> inverse(std::span<const std::complex<double>> spectrum, int width, int height) {
  check_dims(width, height);
  const std::size_t n_real = static_cast<std::size_t>(width) * height;
  const std::size_t n_cplx = static_cast<std::size_t>(height) * (width / 2 + 1);
  if (spectrum.size() != n_cplx) throw InvalidArgument("fft::inverse: size mismatch");

  auto in = allocate<fftw_complex>(n_cplx);
  auto out = allocate<double>(n_real);
  fftw_plan raw;
  {
    std::lock_guard lock(planner_mutex());
    raw = fftw_plan_dft_c2r_2d(height, width, in.get(), out.get(), FFTW_ESTIMATE);
  }
  Plan plan(raw);
  // c2r destroys its input, so plan first and fill afterwards.
  std::memcpy(static_cast<void*>(in.get()), spectrum.data(), sizeof(fftw_complex) * n_cplx);
  plan.execute();
  return std::vector<double>(out.get(), out.get() + n_real);
}

}  // namespace hwarp::fft
