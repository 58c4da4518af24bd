#pragma once

#include <initializer_list>
#include <optional>
#include <vector>

#include "ddc/ints.hpp"

namespace ddc {

// The Chern numbers (c_1, ..., c_m) driving the Segre recurrence. Entries are
// nonnegative exact integers, m >= 1.
class Coefficients {
 public:
  explicit Coefficients(std::vector<Int> entries);
  Coefficients(std::initializer_list<long> entries);

  int order() const { return static_cast<int>(entries_.size()); }

  // 1-based: coeff(1) = c_1, ..., coeff(order()) = c_m.
  const Int& coeff(int q) const { return entries_[static_cast<size_t>(q - 1)]; }

  const std::vector<Int>& entries() const { return entries_; }

 private:
  std::vector<Int> entries_;
};

// s_0 .. s_L of the Segre recurrence.
using SegreTerms = std::vector<Int>;

// Incremental generator for
//
//   s_0 = 1,
//   s_j = sum_{q=1}^{min(j,m)} (-1)^{q+1} c_q s_{j-q},
//
// which is the order-m recurrence with its first m-1 sums truncated (absent
// coefficients act as zero, so the two regimes share one code path). Keeps a
// sliding window of the last m terms; all arithmetic is exact.
class SegreCursor {
 public:
  explicit SegreCursor(Coefficients c);

  // Generates the next term and returns a reference valid until the next call.
  const Int& next();

  // Index of the most recently generated term; -1 before the first next().
  long index() const { return index_; }

 private:
  Coefficients coeffs_;
  std::vector<Int> window_;  // ring buffer of the last m terms
  Int acc_;
  long index_ = -1;
};

// s_0 .. s_last_index, exact. last_index >= 0.
SegreTerms segre_sequence(const Coefficients& c, long last_index);

enum class ViolationKind {
  NonpositiveInPrefix,  // some s_j <= 0 with j <= n - r
  NonzeroInTail,        // some s_j != 0 with n - r + 1 <= j <= n
};

const char* to_string(ViolationKind kind);

struct PatternVerdict {
  bool accepted = false;
  std::optional<long> violation_index;
  std::optional<ViolationKind> violation_kind;
};

// Tests the positive-defect sequence pattern
//
//   s_j > 0 for j = 0, ..., n - r   and   s_j = 0 for j = n - r + 1, ..., n
//
// generating terms one at a time and stopping at the first violated
// constraint. Requires 1 <= r <= n. When `evidence` is non-null and the
// pattern is accepted, it receives the full s_0..s_n.
PatternVerdict check_pattern(const Coefficients& c, long n, long r,
                             SegreTerms* evidence = nullptr);

}  // namespace ddc
