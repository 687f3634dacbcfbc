#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <numbers>
#include <stdexcept>
#include <thread>
#include <vector>

namespace phasebound {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Thrown when an iterative routine fails to converge or a numerical guard
/// trips. Precondition violations raise std::invalid_argument instead; the
/// CLI maps the two classes to exit codes 1 and 2.
class numerical_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Maps an angle to the principal interval [-pi, pi).
inline double wrap_angle(double x) {
  return x - two_pi * std::floor((x + pi) / two_pi);
}

/// Kahan-Neumaier compensated accumulator. Batch statistics stay independent
/// of accumulation order at double precision.
class KahanSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Worker count for internal parallel loops: PHASEBOUND_THREADS when set,
/// otherwise the hardware concurrency.
int thread_count();

/// Runs fn(chunk_index, begin, end) over [0, count) split into fixed-size
/// chunks. Chunk boundaries depend only on `chunk`, never on scheduling, so
/// callers that derive per-chunk RNG streams get identical results at any
/// thread count.
template <typename Fn>
void parallel_chunks(std::int64_t count, std::int64_t chunk, Fn&& fn) {
  if (count <= 0) return;
  const std::int64_t n_chunks = (count + chunk - 1) / chunk;
  const int workers = std::min<std::int64_t>(thread_count(), n_chunks);
  if (workers <= 1) {
    for (std::int64_t c = 0; c < n_chunks; ++c) {
      fn(c, c * chunk, std::min(count, (c + 1) * chunk));
    }
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  auto work = [&] {
    for (;;) {
      const std::int64_t c = next.fetch_add(1);
      if (c >= n_chunks || failed.load()) return;
      try {
        fn(c, c * chunk, std::min(count, (c + 1) * chunk));
      } catch (...) {
        if (!failed.exchange(true)) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (failed.load()) std::rethrow_exception(error);
}

}  // namespace phasebound
