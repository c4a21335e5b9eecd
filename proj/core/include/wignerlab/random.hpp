#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>

namespace wignerlab {

// Counter-based random stream.
//
// A stream is a 64-bit key plus a draw counter; the i-th draw is a pure
// function of (key, i). Child streams are derived from a parent key and an
// integer id, so the numbers consumed for (trial, i, j) never depend on the
// order in which trials or entries are visited.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : key_(mix(seed ^ 0x6a09e667f3bcc909ULL)) {}

  // Independent stream for sub-task `id`. Does not advance this stream.
  RandomStream derive(std::uint64_t id) const;

  std::uint64_t next_u64();

  // Uniform on the open interval (0, 1).
  double uniform();
  double normal();
  // +1 or -1 with probability 1/2 each.
  double sign();
  bool bernoulli(double p) { return uniform() < p; }

  std::uint64_t key() const { return key_; }

  static std::uint64_t mix(std::uint64_t x);

 private:
  struct FromKey {};
  RandomStream(FromKey, std::uint64_t key) : key_(key) {}

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

// Runs body(i) for i in [0, count) on `threads` workers. Each index is
// executed exactly once; callers write results into index-addressed slots
// so output never depends on scheduling.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& body);

// Pairwise (cascade) summation; result is independent of thread count
// because the summation tree depends only on the length.
double pairwise_sum(std::span<const double> values);

}  // namespace wignerlab
