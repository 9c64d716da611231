#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <thread>
#include <vector>

namespace qnetbound::internal {

// Worker-thread budget: hardware concurrency, capped by QNETBOUND_THREADS
// when that holds a positive integer. A cap of 1 forces sequential execution.
inline unsigned thread_budget() {
  unsigned budget = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("QNETBOUND_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && cap >= 1) {
      budget = std::min<unsigned long>(budget, static_cast<unsigned long>(cap));
    }
  }
  return budget;
}

// Run chunk_fn(c) for every chunk index in [0, chunk_count). Work is handed
// out through an atomic counter, so which thread runs a chunk is scheduling
// luck — results must be keyed by chunk index and merged in index order by
// the caller to stay deterministic.
template <typename Fn>
void run_chunks(std::int64_t chunk_count, Fn&& chunk_fn) {
  const unsigned budget = thread_budget();
  if (budget <= 1 || chunk_count <= 1) {
    for (std::int64_t c = 0; c < chunk_count; ++c) {
      chunk_fn(c);
    }
    return;
  }
  std::atomic<std::int64_t> next{0};
  const unsigned workers =
      static_cast<unsigned>(std::min<std::int64_t>(budget, chunk_count));
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      while (true) {
        const std::int64_t c = next.fetch_add(1);
        if (c >= chunk_count) {
          return;
        }
        chunk_fn(c);
      }
    });
  }
  for (std::thread& t : pool) {
    t.join();
  }
}

// Neumaier-compensated accumulator: keeps long sums of nonnegative terms
// exact enough that chunked parallel reductions match the sequential answer.
struct CompensatedSum {
  double sum = 0.0;
  double comp = 0.0;

  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }

  double value() const { return sum + comp; }
};

// Streaming mean/variance (Welford) with pairwise merge (Chan et al.),
// so per-chunk moments combine deterministically in chunk order.
struct Moments {
  std::int64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++count;
    const double delta = x - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (x - mean);
  }

  void merge(const Moments& other) {
    if (other.count == 0) {
      return;
    }
    if (count == 0) {
      *this = other;
      return;
    }
    const double delta = other.mean - mean;
    const double total = static_cast<double>(count) + static_cast<double>(other.count);
    m2 += other.m2 + delta * delta * (static_cast<double>(count) *
                                      static_cast<double>(other.count) / total);
    mean += delta * (static_cast<double>(other.count) / total);
    count += other.count;
  }

  double sample_variance() const {
    return count > 1 ? m2 / static_cast<double>(count - 1)
                     : std::numeric_limits<double>::quiet_NaN();
  }
};

}  // namespace qnetbound::internal
