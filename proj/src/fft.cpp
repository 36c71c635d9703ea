#include "slepsense/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>

namespace slepsense {

namespace {
// FFTW plan creation is not thread safe; execution on distinct buffers is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

std::vector<std::complex<double>> transform(
    const std::vector<std::complex<double>>& x, int sign) {
  if (x.empty()) throw std::invalid_argument("fft: empty input");
  const int n = static_cast<int>(x.size());
  std::vector<std::complex<double>> in(x), out(x.size());
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(in.data()),
                            reinterpret_cast<fftw_complex*>(out.data()), sign,
                            FFTW_ESTIMATE | FFTW_PRESERVE_INPUT);
  }
  if (!plan) throw std::runtime_error("fft: plan creation failed");
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  return out;
}
}  // namespace

std::vector<std::complex<double>> fft(const std::vector<std::complex<double>>& x) {
  return transform(x, FFTW_FORWARD);
}

std::vector<std::complex<double>> ifft(const std::vector<std::complex<double>>& x) {
  return transform(x, FFTW_BACKWARD);
}

std::vector<std::complex<double>> fft_real(const std::vector<double>& x) {
  std::vector<std::complex<double>> cx(x.begin(), x.end());
  return fft(cx);
}

}  // namespace slepsense
