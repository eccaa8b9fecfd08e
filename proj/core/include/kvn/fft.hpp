#pragma once

#include <complex>
#include <memory>

#include "kvn/grid.hpp"

namespace kvn {

// Batched complex FFTs along one axis of a row-major tensor grid. Plans are
// created with FFTW_ESTIMATE so repeated runs produce byte-identical
// results, and data is staged through FFTW-aligned scratch. Transform
// batches are chunked with a fixed policy, so results do not depend on the
// worker thread count.
class FftEngine {
 public:
  explicit FftEngine(const PhaseGrid& grid);
  ~FftEngine();
  FftEngine(const FftEngine&) = delete;
  FftEngine& operator=(const FftEngine&) = delete;

  // In-place transform of `data` along `axis`; forward uses the e^{-ikx}
  // convention and backward is its normalized inverse.
  void forward(int axis, Field& data);
  void backward(int axis, Field& data);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Worker thread count: KVN_THREADS when set, hardware concurrency otherwise.
int worker_threads();

}  // namespace kvn
