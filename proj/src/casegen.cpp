#include "ddc/casegen.hpp"

#include <algorithm>
#include <string>
#include <utility>

namespace ddc {

CaseSpec admissible_case(int N, int m) {
  if (m < 3) {
    throw ConstraintError("codimension constraint violated: m >= 3 (got m=" +
                          std::to_string(m) + ")");
  }
  if (N < 10) {
    throw ConstraintError("ambient dimension constraint violated: N >= 10 (got N=" +
                          std::to_string(N) + ")");
  }
  // N - m >= (3N - 2)/4 in exact integers: 4(N - m) >= 3N - 2, i.e. N >= 4m - 2.
  if (N < 4 * m - 2) {
    throw ConstraintError("dimension constraint violated: N >= 4m - 2 = " +
                          std::to_string(4 * m - 2) + " (got N=" + std::to_string(N) +
                          ")");
  }
  return CaseSpec{N, m, N - m};
}

std::vector<DefectBranch> defect_branches(const CaseSpec& cs) {
  std::vector<DefectBranch> branches;
  for (int r = 1; r <= cs.m - 1; ++r) {
    if ((cs.n - r) % 2 != 0) continue;  // r must share the parity of n
    const int c1 = (cs.n - r) / 2;
    branches.push_back(DefectBranch{r, c1});
  }
  return branches;
}

const char* to_string(BoundVariant v) {
  return v == BoundVariant::Plain ? "plain" : "chained";
}

BoundVariant bound_variant_from_string(const std::string& name) {
  if (name == "plain") return BoundVariant::Plain;
  if (name == "chained") return BoundVariant::Chained;
  throw ConstraintError("unknown bound variant '" + name + "' (expected plain|chained)");
}

BoundsVector chern_bounds(int c1, int m, BoundVariant variant) {
  if (c1 < 1) throw ConstraintError("bounds require c1 >= 1");
  if (m < 2) throw ConstraintError("bounds require m >= 2");
  BoundsVector b;
  b.variant = variant;
  b.c1 = c1;
  b.static_bounds.reserve(static_cast<size_t>(m) - 1);
  for (int j = 2; j <= m; ++j) {
    b.static_bounds.push_back(pow_int(Int(c1), static_cast<unsigned long>(j)));
  }
  return b;
}

bool log_concavity_ok(const std::vector<Int>& c) {
  // Work on (1, c_1, ..., c_m).
  std::vector<Int> a;
  a.reserve(c.size() + 1);
  a.emplace_back(1);
  a.insert(a.end(), c.begin(), c.end());
  const size_t len = a.size();
  // No internal zeros: once a zero occurs, everything after must be zero.
  bool seen_zero = false;
  for (const Int& v : a) {
    if (sgn(v) == 0) {
      seen_zero = true;
    } else if (seen_zero) {
      return false;
    }
  }
  // a_j^2 >= a_{j-1} a_{j+1} for the interior entries.
  for (size_t j = 1; j + 1 < len; ++j) {
    if (a[j] * a[j] < a[j - 1] * a[j + 1]) return false;
  }
  return true;
}

std::string SchurViolation::describe() const {
  std::string text = "schur(";
  for (size_t i = 0; i < partition.size(); ++i) {
    if (i) text += ",";
    text += std::to_string(partition[i]);
  }
  return text + ") = " + to_decimal(value);
}

namespace {

// det(c_{lambda_i + j - i}) over (c_0 = 1, c_1, ..., c_m, 0, ...), exact.
Int schur_determinant(const std::vector<Int>& c, const std::vector<int>& partition) {
  const int rows = static_cast<int>(partition.size());
  const long m = static_cast<long>(c.size());
  auto entry = [&](int i, int j) -> Int {
    const long idx = partition[static_cast<size_t>(i)] + j - i;
    if (idx < 0 || idx > m) return Int(0);
    if (idx == 0) return Int(1);
    return c[static_cast<size_t>(idx - 1)];
  };
  std::vector<std::vector<Int>> a(static_cast<size_t>(rows),
                                  std::vector<Int>(static_cast<size_t>(rows)));
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < rows; ++j) a[i][j] = entry(i, j);
  }
  // Fraction-free (Bareiss) elimination keeps everything in Z.
  Int prev(1);
  int sign = 1;
  for (int k = 0; k < rows - 1; ++k) {
    if (sgn(a[k][k]) == 0) {
      int pivot = -1;
      for (int i = k + 1; i < rows; ++i) {
        if (sgn(a[i][k]) != 0) {
          pivot = i;
          break;
        }
      }
      if (pivot < 0) return Int(0);
      std::swap(a[static_cast<size_t>(k)], a[static_cast<size_t>(pivot)]);
      sign = -sign;
    }
    for (int i = k + 1; i < rows; ++i) {
      for (int j = k + 1; j < rows; ++j) {
        a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) / prev;
      }
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  return sign * a[static_cast<size_t>(rows - 1)][static_cast<size_t>(rows - 1)];
}

void gen_partitions(long total, int max_part, int max_rows, std::vector<int>& current,
                    std::vector<std::vector<int>>& out) {
  if (total == 0) {
    out.push_back(current);
    return;
  }
  if (max_rows == 0) return;
  for (int part = static_cast<int>(std::min<long>(max_part, total)); part >= 1; --part) {
    current.push_back(part);
    gen_partitions(total - part, part, max_rows - 1, current, out);
    current.pop_back();
  }
}

}  // namespace

std::optional<SchurViolation> first_schur_violation(const std::vector<Int>& c, long n) {
  const int m = static_cast<int>(c.size());
  const long cap = std::min<long>(n, static_cast<long>(m) * m);
  for (long total = 1; total <= cap; ++total) {
    std::vector<std::vector<int>> partitions;
    std::vector<int> scratch;
    gen_partitions(total, m, m, scratch, partitions);
    for (const auto& parts : partitions) {
      const Int det = schur_determinant(c, parts);
      if (sgn(det) < 0) return SchurViolation{parts, det};
    }
  }
  return std::nullopt;
}

std::optional<std::string> positivity_filter_violation(const std::vector<Int>& c, long n) {
  if (!log_concavity_ok(c)) return "log-concavity";
  if (const auto violation = first_schur_violation(c, n)) return violation->describe();
  return std::nullopt;
}

Int degree_bound(int N, int m, int r) {
  const CaseSpec cs = admissible_case(N, m);
  if (r < 1 || r > m - 1) {
    throw ConstraintError("defect out of range: 1 <= r <= m - 1 (got r=" +
                          std::to_string(r) + ")");
  }
  if ((cs.n - r) % 2 != 0) {
    throw ConstraintError("defect parity violated: r must equal n mod 2 (n=" +
                          std::to_string(cs.n) + ", r=" + std::to_string(r) + ")");
  }
  const long c1 = (cs.n - r) / 2;
  // sum_{j=0}^{m} c1^j by Horner; the tests recompute it term by term.
  Int total = 1;
  for (int j = 0; j < m; ++j) total = total * c1 + 1;
  return total;
}

Int degree_of(const std::vector<Int>& c) { return 1 + sum_of(c); }

}  // namespace ddc
