#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <future>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace ordrep {

// Raised when an operation is called outside its contract (e.g. a bound
// exceeding the truncation of a set). The CLI maps this to exit code 3.
struct precondition_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised on malformed input files / malformed argument strings.
// The CLI maps this to exit code 2.
struct parse_error : std::runtime_error {
  long line = 0;
  explicit parse_error(const std::string& msg, long line_no = 0)
      : std::runtime_error(line_no > 0 ? msg + " (line " + std::to_string(line_no) + ")" : msg),
        line(line_no) {}
};

// Process-wide cap on internal parallelism. Defaults to 1 so results are
// reproducible unless the caller opts in; deterministic combining keeps the
// output identical for any cap.
inline std::atomic<int>& max_threads_ref() {
  static std::atomic<int> t{1};
  return t;
}

inline void set_max_threads(int t) { max_threads_ref().store(t < 1 ? 1 : t); }
inline int max_threads() { return max_threads_ref().load(); }

namespace detail {

struct kahan_acc {
  double sum = 0.0;
  double comp = 0.0;
  void add(double v) {
    double y = v - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

}  // namespace detail

// Sums f(0) + ... + f(n-1) with compensated per-block accumulation.
// Blocks are combined in index order whatever the thread count, so the
// result is bit-identical for any value of max_threads().
template <class F>
double blockwise_sum(std::size_t n, F&& f, std::size_t block = 4096) {
  if (n == 0) return 0.0;
  std::size_t nblocks = (n + block - 1) / block;
  std::vector<double> partial(nblocks, 0.0);
  auto run_block = [&](std::size_t b) {
    detail::kahan_acc acc;
    std::size_t lo = b * block;
    std::size_t hi = std::min(n, lo + block);
    for (std::size_t i = lo; i < hi; ++i) acc.add(f(i));
    partial[b] = acc.sum;
  };
  int threads = max_threads();
  if (threads <= 1 || nblocks == 1) {
    for (std::size_t b = 0; b < nblocks; ++b) run_block(b);
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (;;) {
        std::size_t b = next.fetch_add(1);
        if (b >= nblocks) return;
        run_block(b);
      }
    };
    std::vector<std::thread> pool;
    int nt = std::min<std::size_t>(threads, nblocks);
    pool.reserve(nt);
    for (int t = 0; t < nt; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  detail::kahan_acc total;
  for (double p : partial) total.add(p);
  return total.sum;
}

}  // namespace ordrep
