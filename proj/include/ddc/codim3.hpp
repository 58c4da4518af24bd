#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ddc/ints.hpp"

namespace ddc {

// The order-3 sequence u_0 = 0, u_1 = 0, u_2 = 1,
// u_j = c1 u_{j-1} - c2 u_{j-2} + c3 u_{j-3}, for positive c1, c2, c3.
// It shadows the Segre sequence of the same coefficients: u_{j+2} = s_j.
struct USequence {
  long c1 = 0, c2 = 0, c3 = 0;
  std::vector<Int> terms;  // u_0 .. u_L
};

// Requires c1, c2, c3 >= 1 and last_index >= 2.
USequence u_sequence(long c1, long c2, long c3, long last_index);

// Smallest m > 2 with u_m = u_{m+1} = 0 after a strictly positive run
// u_2, ..., u_{m-1} > 0. Returns nullopt when the positive run breaks without
// completing a double zero, or when the horizon is reached with all terms
// still positive. Requires horizon > 3.
std::optional<long> find_double_zero(long c1, long c2, long c3, long horizon);

// Dense integer polynomial, coefficients in ascending degree order. The
// representation is normalized: no trailing zero coefficients (the zero
// polynomial is an empty coefficient vector).
struct Polynomial {
  std::vector<Int> coeffs;

  static Polynomial from_coeffs(std::vector<Int> raw);  // trims trailing zeros
  static Polynomial power_minus_const(unsigned long degree, const Int& constant);  // t^degree - constant

  long degree() const { return static_cast<long>(coeffs.size()) - 1; }  // -1 for zero
  bool is_zero() const { return coeffs.empty(); }
  bool is_monic() const;
  bool operator==(const Polynomial& other) const { return coeffs == other.coeffs; }
};

// rho = t^3 - c1 t^2 + c2 t - c3, the characteristic polynomial of the
// u-sequence.
Polynomial char_poly(long c1, long c2, long c3);

// Exact division with remainder by a monic divisor of degree >= 1:
// dividend = divisor * quotient + remainder, deg(remainder) < deg(divisor).
// Throws ConstraintError for non-monic or constant divisors.
std::pair<Polynomial, Polynomial> poly_divide(const Polynomial& dividend,
                                              const Polynomial& divisor);

// The k with k^m = d exactly, if it exists. Requires d >= 1, m >= 1.
std::optional<Int> integer_nth_root(const Int& d, unsigned long m);

// Structural facts forced by a double zero at index m: the sequence repeats
// scaled by d = c3 * u_{m-1} every m steps, d has an integer m-th root, the
// characteristic polynomial divides t^m - d, and m is 4 or 6. A failed check
// is recorded as an anomaly; anomalies indicate an implementation bug, never
// a property of the input.
struct LemmaReport {
  long m = 0;
  Int d;
  std::optional<Int> root;
  bool divides = false;
  bool classified = false;
  std::optional<std::string> anomaly;
};

// Requires that find_double_zero(c1, c2, c3, ...) yields exactly this m.
LemmaReport verify_lemma_structure(long c1, long c2, long c3, long m);

// Scans all (c1, c2, c3) in [1, cmax]^3 and records every detected
// double-zero index. The value set must be a subset of {4, 6}.
using ClassificationMap = std::map<std::array<long, 3>, long>;
ClassificationMap brute_force_classify(long cmax, long horizon);

// The no-search resolution for odd ambient dimension in codimension 3: the
// defect is forced to 2, so a candidate sequence would need a double zero at
// index n + 1 >= 9, which the double-zero classification rules out.
struct OddCaseDeduction {
  int N = 0;
  int n = 0;              // N - 3
  int r = 0;              // always 2
  long pattern_index = 0;  // n + 1
  bool excluded = false;   // pattern_index not in {4, 6}
};

// Requires N odd and N >= 11.
OddCaseDeduction deduce_odd_case(int N);

}  // namespace ddc
