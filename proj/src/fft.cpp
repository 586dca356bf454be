#include "fft.hpp"

#include "travwave/error.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

namespace travwave::fft {

namespace {

enum class PlanKind { dct2, dct3, r2c, c2r };

std::mutex& planner_mutex();

// The FFTW planner is not re-entrant; everything that touches it goes
// through this cache.
class PlanCache {
public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(PlanKind kind, int n) {
    std::lock_guard lock(planner_mutex());
    const auto key = std::make_pair(kind, n);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;

    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    fftw_plan plan = nullptr;
    switch (kind) {
    case PlanKind::dct2:
    case PlanKind::dct3: {
      std::vector<double> in(n), out(n);
      plan = fftw_plan_r2r_1d(n, in.data(), out.data(), kind == PlanKind::dct2 ? FFTW_REDFT10 : FFTW_REDFT01, flags);
      break;
    }
    case PlanKind::r2c: {
      std::vector<double> in(n);
      std::vector<std::complex<double>> out(n / 2 + 1);
      plan = fftw_plan_dft_r2c_1d(n, in.data(), reinterpret_cast<fftw_complex*>(out.data()), flags);
      break;
    }
    case PlanKind::c2r: {
      std::vector<std::complex<double>> in(n / 2 + 1);
      std::vector<double> out(n);
      plan = fftw_plan_dft_c2r_1d(n, reinterpret_cast<fftw_complex*>(in.data()), out.data(), flags);
      break;
    }
    }
    if (plan == nullptr) throw Error("FFTW failed to create a plan");
    plans_.emplace(key, plan);
    return plan;
  }

private:
  std::map<std::pair<PlanKind, int>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

} // namespace

std::vector<double> dct2(std::span<const double> x) {
  std::vector<double> in(x.begin(), x.end()), out(x.size());
  if (x.empty()) return out;
  fftw_execute_r2r(cache().get(PlanKind::dct2, static_cast<int>(x.size())), in.data(), out.data());
  return out;
}

std::vector<double> dct3(std::span<const double> x) {
  std::vector<double> in(x.begin(), x.end()), out(x.size());
  if (x.empty()) return out;
  fftw_execute_r2r(cache().get(PlanKind::dct3, static_cast<int>(x.size())), in.data(), out.data());
  return out;
}

std::vector<std::complex<double>> rfft(std::span<const double> x) {
  std::vector<double> in(x.begin(), x.end());
  std::vector<std::complex<double>> out(x.size() / 2 + 1);
  if (x.empty()) return out;
  fftw_execute_dft_r2c(cache().get(PlanKind::r2c, static_cast<int>(x.size())), in.data(),
                       reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

std::vector<double> irfft(std::span<const std::complex<double>> spectrum, std::size_t n) {
  if (spectrum.size() != n / 2 + 1) throw InvalidArgument("irfft: spectrum length does not match n/2+1");
  // c2r overwrites its input.
  std::vector<std::complex<double>> in(spectrum.begin(), spectrum.end());
  std::vector<double> out(n);
  if (n == 0) return out;
  fftw_execute_dft_c2r(cache().get(PlanKind::c2r, static_cast<int>(n)), reinterpret_cast<fftw_complex*>(in.data()),
                       out.data());
  const double scale = 1.0 / static_cast<double>(n);
  for (double& v : out) v *= scale;
  return out;
}

RealTransform::RealTransform(std::size_t n) : n_(n) {
  if (n == 0) throw InvalidArgument("transform size must be positive");
  real_ = fftw_alloc_real(n);
  spec_ = reinterpret_cast<std::complex<double>*>(fftw_alloc_complex(n / 2 + 1));
  std::lock_guard lock(planner_mutex());
  const int size = static_cast<int>(n);
  forward_plan_ = fftw_plan_dft_r2c_1d(size, real_, reinterpret_cast<fftw_complex*>(spec_), FFTW_ESTIMATE);
  inverse_plan_ = fftw_plan_dft_c2r_1d(size, reinterpret_cast<fftw_complex*>(spec_), real_, FFTW_ESTIMATE);
  if (forward_plan_ == nullptr || inverse_plan_ == nullptr) throw Error("FFTW failed to create a plan");
}

RealTransform::~RealTransform() {
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
    fftw_destroy_plan(static_cast<fftw_plan>(inverse_plan_));
  }
  fftw_free(real_);
  fftw_free(spec_);
}

void RealTransform::forward() { fftw_execute(static_cast<fftw_plan>(forward_plan_)); }
void RealTransform::inverse() { fftw_execute(static_cast<fftw_plan>(inverse_plan_)); }

} // namespace travwave::fft
