#include "kvn/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cstdlib>
#include <map>
#include <thread>
#include <vector>

#include "kvn/errors.hpp"

namespace kvn {

int worker_threads() {
  if (const char* env = std::getenv("KVN_THREADS")) {
    int n = std::atoi(env);
    if (n >= 1) return n;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

namespace {

// One fftw_plan_many_dft execution: `howmany` lines of length n, elements
// `stride` apart, lines `dist` apart, starting at `offset` (in complexes).
struct Batch {
  long offset;
  int howmany;
};

// Fixed chunking keeps the plan set identical for every thread count, so
// results are bit-stable regardless of parallelism.
constexpr long kMaxLinesPerBatch = 1024;

}  // namespace

struct FftEngine::Impl {
  PhaseGrid grid;
  fftw_complex* scratch = nullptr;

  struct AxisPlans {
    int stride = 1;
    long dist = 1;
    std::vector<Batch> batches;
    std::map<int, fftw_plan> by_howmany;  // created lazily per sign
  };
  std::map<std::pair<int, int>, AxisPlans> plans;  // key: (axis, sign)

  explicit Impl(const PhaseGrid& g) : grid(g) {
    scratch = fftw_alloc_complex(static_cast<size_t>(grid.total_points()));
    if (scratch == nullptr) throw NumericError("fftw allocation failed");
  }

  ~Impl() {
    for (auto& [key, ap] : plans)
      for (auto& [n, p] : ap.by_howmany) fftw_destroy_plan(p);
    fftw_free(scratch);
  }

  AxisPlans& plans_for(int axis, int sign) {
    auto key = std::make_pair(axis, sign);
    auto it = plans.find(key);
    if (it != plans.end()) return it->second;

    const int n = grid.axes()[axis].points;
    const long stride = grid.stride(axis);
    const long total = grid.total_points();

    AxisPlans ap;
    if (stride == 1) {
      ap.stride = 1;
      ap.dist = n;
      const long lines = total / n;
      for (long at = 0; at < lines; at += kMaxLinesPerBatch)
        ap.batches.push_back(
            {at * n, static_cast<int>(std::min(kMaxLinesPerBatch, lines - at))});
    } else {
      ap.stride = static_cast<int>(stride);
      ap.dist = 1;
      const long outer = total / (n * stride);
      for (long o = 0; o < outer; ++o)
        for (long at = 0; at < stride; at += kMaxLinesPerBatch)
          ap.batches.push_back(
              {o * n * stride + at,
               static_cast<int>(std::min(kMaxLinesPerBatch, stride - at))});
    }
    for (const Batch& b : ap.batches) {
      if (ap.by_howmany.count(b.howmany)) continue;
      // Planned at the batch's own offset; all offsets here are multiples
      // of at least 64 bytes, so new-array execution keeps the alignment
      // class the plan was created with.
      fftw_plan p = fftw_plan_many_dft(
          1, &n, b.howmany, scratch + b.offset, nullptr, ap.stride,
          static_cast<int>(ap.dist), scratch + b.offset, nullptr, ap.stride,
          static_cast<int>(ap.dist), sign, FFTW_ESTIMATE);
      if (p == nullptr) throw NumericError("fftw planning failed");
      ap.by_howmany.emplace(b.howmany, p);
    }
    return plans.emplace(key, std::move(ap)).first->second;
  }

  void execute(int axis, int sign, Field& data) {
    const long total = grid.total_points();
    if (static_cast<long>(data.size()) != total)
      throw NumericError("field size does not match the grid");
    {
      auto* src = reinterpret_cast<const double*>(data.data());
      auto* dst = reinterpret_cast<double*>(scratch);
      std::copy(src, src + 2 * total, dst);
    }

    AxisPlans& ap = plans_for(axis, sign);
    const long nbatches = static_cast<long>(ap.batches.size());
#ifdef KVN_HAVE_OPENMP
#pragma omp parallel for schedule(static) num_threads(worker_threads())
#endif
    for (long r = 0; r < nbatches; ++r) {
      const Batch& b = ap.batches[r];
      fftw_plan p = ap.by_howmany.find(b.howmany)->second;
      fftw_execute_dft(p, scratch + b.offset, scratch + b.offset);
    }

    const double scale = sign == FFTW_BACKWARD ? 1.0 / grid.axes()[axis].points : 1.0;
    auto* out = reinterpret_cast<double*>(data.data());
    auto* in = reinterpret_cast<const double*>(scratch);
    if (scale == 1.0) {
      std::copy(in, in + 2 * total, out);
    } else {
#ifdef KVN_HAVE_OPENMP
#pragma omp parallel for schedule(static) num_threads(worker_threads())
#endif
      for (long i = 0; i < 2 * total; ++i) out[i] = in[i] * scale;
    }
  }
};

FftEngine::FftEngine(const PhaseGrid& grid) : impl_(std::make_unique<Impl>(grid)) {}
FftEngine::~FftEngine() = default;

void FftEngine::forward(int axis, Field& data) {
  impl_->execute(axis, FFTW_FORWARD, data);
}
void FftEngine::backward(int axis, Field& data) {
  impl_->execute(axis, FFTW_BACKWARD, data);
}

}  // namespace kvn
