#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ddc/errors.hpp"
#include "ddc/ints.hpp"

namespace ddc {

// A validated (N, m) verification target; n = N - m is the subvariety
// dimension.
struct CaseSpec {
  int N = 0;
  int m = 0;
  int n = 0;
};

// Checks the input domain of the search: m >= 3, N >= 10, and
// N - m >= (3N - 2)/4, enforced in the exact integer form 4(N - m) >= 3N - 2,
// i.e. N >= 4m - 2. Throws ConstraintError naming the violated inequality.
CaseSpec admissible_case(int N, int m);

// A candidate duality defect r together with the first Chern number it
// forces, c1 = (n - r)/2.
struct DefectBranch {
  int r = 0;
  int c1 = 0;
};

// Exactly the r in [1, m-1] with r ≡ n (mod 2), in increasing order. For an
// admissible case every branch has c1 > 0.
std::vector<DefectBranch> defect_branches(const CaseSpec& cs);

enum class BoundVariant { Plain, Chained };

const char* to_string(BoundVariant v);
BoundVariant bound_variant_from_string(const std::string& name);

// Upper bounds for c_2..c_m. Plain uses the static bounds B_j = c1^j; chained
// bounds c_j by c1 * c_{j-1} at enumeration time (a subset of plain, since
// B_j <= c1^j still holds along any chain).
struct BoundsVector {
  BoundVariant variant = BoundVariant::Plain;
  int c1 = 0;
  std::vector<Int> static_bounds;  // B_2 .. B_m

  const Int& outer() const { return static_bounds.front(); }
  int order() const { return static_cast<int>(static_bounds.size()) + 1; }
};

// Requires c1 >= 1, m >= 2.
BoundsVector chern_bounds(int c1, int m, BoundVariant variant);

// Log-concavity with no internal zeros, applied to the sequence
// (1, c_1, ..., c_m): c_j^2 >= c_{j-1} c_{j+1} for 1 <= j <= m-1, and no zero
// entry is followed by a nonzero one.
bool log_concavity_ok(const std::vector<Int>& c);

// A Schur determinant det(c_{lambda_i + j - i}) that came out negative, which
// is impossible for the Chern numbers of a globally generated bundle as long
// as |lambda| does not exceed the subvariety dimension.
struct SchurViolation {
  std::vector<int> partition;
  Int value;

  std::string describe() const;  // e.g. "schur(2,1,1) = -92"
};

// Scans every partition with parts <= m and at most m rows, capped at
// |lambda| <= n (beyond that the determinant has no degree to pair against),
// in order of increasing |lambda|; returns the first negative determinant.
// c_0 = 1 is implied and entries beyond c_m are zero.
std::optional<SchurViolation> first_schur_violation(const std::vector<Int>& c, long n);

// The full positivity filter a candidate must clear to count against the
// verdict: log-concavity with no internal zeros plus Schur nonnegativity.
// Returns a description of the violated constraint, or nullopt if clean.
std::optional<std::string> positivity_filter_violation(const std::vector<Int>& c, long n);

// Degree ceiling for a positive-defect case: sum_{j=0}^{m} c1^j with
// c1 = (N - m - r)/2. Validates the case and the branch.
Int degree_bound(int N, int m, int r);

// deg(X) = 1 + c_1 + ... + c_m for a tuple of Chern numbers.
Int degree_of(const std::vector<Int>& c);

}  // namespace ddc
