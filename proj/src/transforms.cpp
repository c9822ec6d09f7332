#include "bsq/transforms.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cstdlib>
#include <map>
#include <mutex>
#include <thread>

#include "bsq/errors.hpp"

namespace bsq {

namespace {

// Plan cache keyed by grid size. Plans are created once under a lock with
// FFTW_ESTIMATE | FFTW_UNALIGNED so they can be replayed on any buffer via the
// new-array execute interface, which is reentrant-safe.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  struct Plans {
    fftw_plan forward = nullptr;
    fftw_plan backward = nullptr;
  };

  const Plans& get(int n) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = plans_.find(n);
    if (it != plans_.end()) return it->second;

    ComplexGrid scratch_in = ComplexGrid::Zero(n, n);
    ComplexGrid scratch_out = ComplexGrid::Zero(n, n);
    auto* in = reinterpret_cast<fftw_complex*>(scratch_in.data());
    auto* out = reinterpret_cast<fftw_complex*>(scratch_out.data());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    Plans p;
    p.forward = fftw_plan_dft_2d(n, n, in, out, FFTW_FORWARD, flags);
    p.backward = fftw_plan_dft_2d(n, n, in, out, FFTW_BACKWARD, flags);
    if (!p.forward || !p.backward) throw Error("fftw planning failed");
    return plans_.emplace(n, p).first->second;
  }

  int thread_cap() const { return thread_cap_; }

 private:
  PlanCache() {
    int requested = 1;
    if (const char* env = std::getenv("BSQ_NUM_THREADS")) {
      const int hw = std::max(1u, std::thread::hardware_concurrency());
      requested = std::clamp(std::atoi(env), 1, hw);
    }
#if defined(BSQ_HAVE_FFTW_THREADS)
    if (requested > 1 && fftw_init_threads()) {
      fftw_plan_with_nthreads(requested);
      thread_cap_ = requested;
    }
#else
    (void)requested;
#endif
  }

  std::mutex mutex_;
  std::map<int, Plans> plans_;
  int thread_cap_ = 1;
};

void execute(fftw_plan plan, const ComplexGrid& in, ComplexGrid& out) {
  // FFTW would overwrite the input of an in-place transform; the const_cast
  // is safe because in != out here.
  fftw_execute_dft(
      plan,
      reinterpret_cast<fftw_complex*>(const_cast<Complex*>(in.data())),
      reinterpret_cast<fftw_complex*>(out.data()));
}

}  // namespace

int fft_thread_cap() { return PlanCache::instance().thread_cap(); }

SpectralField to_spectral(const RealGrid& values, const Grid& grid) {
  const int n = grid.size();
  if (values.rows() != n || values.cols() != n) {
    throw Error("physical data does not match grid size");
  }
  ComplexGrid in = values.cast<Complex>();
  SpectralField f(grid);
  execute(PlanCache::instance().get(n).forward, in, f.coeffs);
  f.coeffs /= Real(n) * Real(n);
  enforce_hermitian(f);
  return f;
}

RealGrid to_physical(const SpectralField& f) {
  const int n = f.grid.size();
  ComplexGrid out(n, n);
  execute(PlanCache::instance().get(n).backward, f.coeffs, out);
  return out.real();
}

}  // namespace bsq
