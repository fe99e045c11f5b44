#pragma once

#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <thread>
#include <vector>

namespace orlicz {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Extended-value product with the modular convention 0*inf = 0.
inline double ext_mul(double w, double v) {
  if (w == 0.0) return 0.0;
  return w * v;
}

// Deterministic pairwise reduction. The result depends only on the order of
// `terms`, never on how the fill was partitioned.
inline double pairwise_sum(std::vector<double>& terms) {
  if (terms.empty()) return 0.0;
  std::size_t n = terms.size();
  while (n > 1) {
    std::size_t half = (n + 1) / 2;
    for (std::size_t i = 0; i < n / 2; ++i) terms[i] = terms[2 * i] + terms[2 * i + 1];
    if (n % 2 == 1) terms[n / 2] = terms[n - 1];
    n = half;
  }
  return terms[0];
}

// Thread cap from ORLICZ_KIT_THREADS (default 1). Parallelism is only ever
// used for race-free fills, so results do not depend on the cap.
inline int thread_cap() {
  static int cap = [] {
    const char* env = std::getenv("ORLICZ_KIT_THREADS");
    if (!env) return 1;
    int v = std::atoi(env);
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw <= 0) hw = 1;
    if (v < 1) v = 1;
    return v < hw ? v : hw;
  }();
  return cap;
}

inline void parallel_fill(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body) {
  int nt = thread_cap();
  if (nt <= 1 || n < 4096) {
    body(0, n);
    return;
  }
  std::vector<std::thread> threads;
  std::size_t chunk = (n + nt - 1) / nt;
  for (int t = 0; t < nt; ++t) {
    std::size_t lo = t * chunk;
    std::size_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    threads.emplace_back(body, lo, hi);
  }
  for (auto& th : threads) th.join();
}

}  // namespace orlicz
