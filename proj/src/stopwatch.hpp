#pragma once

#include <chrono>

namespace moadagrad::detail {

// Monotonic clock that can exclude nested intervals (observer callbacks).
class Stopwatch {
 public:
  using Clock = std::chrono::steady_clock;

  Stopwatch() : start_(Clock::now()) {}

  template <typename F>
  void excluding(F&& f) {
    auto t0 = Clock::now();
    f();
    excluded_ += Clock::now() - t0;
  }

  double seconds() const {
    return std::chrono::duration<double>(Clock::now() - start_ - excluded_).count();
  }

 private:
  Clock::time_point start_;
  Clock::duration excluded_{0};
};

}  // namespace moadagrad::detail
