#include "ddc/codim3.hpp"

#include <string>

#include "ddc/errors.hpp"

namespace ddc {

namespace {

void require_positive(long c1, long c2, long c3) {
  if (c1 < 1 || c2 < 1 || c3 < 1) {
    throw ConstraintError("u-sequence requires positive coefficients, got (" +
                          std::to_string(c1) + "," + std::to_string(c2) + "," +
                          std::to_string(c3) + ")");
  }
}

// Incremental u-term generator on a rolling 3-window.
struct UCursor {
  long c1, c2, c3;
  Int w0 = 0, w1 = 0, w2 = 1;  // u_{j-3}, u_{j-2}, u_{j-1} once j > 2
  long next_index = 3;

  Int advance() {
    Int u = c1 * w2 - c2 * w1 + c3 * w0;
    w0 = w1;
    w1 = w2;
    w2 = u;
    ++next_index;
    return w2;
  }
};

}  // namespace

USequence u_sequence(long c1, long c2, long c3, long last_index) {
  require_positive(c1, c2, c3);
  if (last_index < 2) {
    throw ConstraintError("u-sequence needs last_index >= 2 to cover the initial terms");
  }
  USequence u{c1, c2, c3, {}};
  u.terms.reserve(static_cast<size_t>(last_index) + 1);
  u.terms.emplace_back(0);
  u.terms.emplace_back(0);
  u.terms.emplace_back(1);
  UCursor cur{c1, c2, c3};
  for (long j = 3; j <= last_index; ++j) u.terms.push_back(cur.advance());
  return u;
}

std::optional<long> find_double_zero(long c1, long c2, long c3, long horizon) {
  require_positive(c1, c2, c3);
  if (horizon <= 3) throw ConstraintError("horizon must be > 3");
  UCursor cur{c1, c2, c3};
  // u_2 = 1 starts the positive run. Scan for the first index where the run
  // breaks; a double zero there is the pattern, anything else rules it out.
  Int u = cur.advance();  // u_3
  for (long j = 3; j <= horizon; ++j) {
    if (sgn(u) < 0) return std::nullopt;
    if (sgn(u) == 0) {
      Int nxt = cur.advance();  // u_{j+1}
      return sgn(nxt) == 0 ? std::optional<long>(j) : std::nullopt;
    }
    u = cur.advance();
  }
  return std::nullopt;  // still positive at the horizon
}

Polynomial Polynomial::from_coeffs(std::vector<Int> raw) {
  while (!raw.empty() && sgn(raw.back()) == 0) raw.pop_back();
  return Polynomial{std::move(raw)};
}

Polynomial Polynomial::power_minus_const(unsigned long degree, const Int& constant) {
  std::vector<Int> c(degree + 1, Int(0));
  c[0] = -constant;
  c[degree] = 1;
  return Polynomial::from_coeffs(std::move(c));
}

bool Polynomial::is_monic() const {
  return !coeffs.empty() && coeffs.back() == 1;
}

Polynomial char_poly(long c1, long c2, long c3) {
  require_positive(c1, c2, c3);
  return Polynomial{{Int(-c3), Int(c2), Int(-c1), Int(1)}};
}

std::pair<Polynomial, Polynomial> poly_divide(const Polynomial& dividend,
                                              const Polynomial& divisor) {
  if (divisor.degree() < 1) {
    throw ConstraintError("polynomial divisor must have degree >= 1");
  }
  if (!divisor.is_monic()) {
    throw ConstraintError("polynomial divisor must be monic");
  }
  const long dd = divisor.degree();
  std::vector<Int> rem = dividend.coeffs;
  if (dividend.degree() < dd) {
    return {Polynomial{}, Polynomial::from_coeffs(std::move(rem))};
  }
  std::vector<Int> quot(static_cast<size_t>(dividend.degree() - dd) + 1, Int(0));
  for (long k = dividend.degree(); k >= dd; --k) {
    Int lead = rem[static_cast<size_t>(k)];
    if (sgn(lead) == 0) continue;
    quot[static_cast<size_t>(k - dd)] = lead;
    // rem -= lead * t^{k-dd} * divisor
    for (long i = 0; i <= dd; ++i) {
      rem[static_cast<size_t>(k - dd + i)] -= lead * divisor.coeffs[static_cast<size_t>(i)];
    }
  }
  return {Polynomial::from_coeffs(std::move(quot)), Polynomial::from_coeffs(std::move(rem))};
}

std::optional<Int> integer_nth_root(const Int& d, unsigned long m) {
  if (sgn(d) < 1) throw ConstraintError("integer_nth_root requires d >= 1");
  if (m < 1) throw ConstraintError("integer_nth_root requires m >= 1");
  Int root;
  const bool exact = mpz_root(root.get_mpz_t(), d.get_mpz_t(), m) != 0;
  if (!exact) return std::nullopt;
  return root;
}

LemmaReport verify_lemma_structure(long c1, long c2, long c3, long m) {
  const auto detected = find_double_zero(c1, c2, c3, m + 4);
  if (!detected || *detected != m) {
    throw ConstraintError("index m=" + std::to_string(m) +
                          " does not match the detected double-zero pattern for (" +
                          std::to_string(c1) + "," + std::to_string(c2) + "," +
                          std::to_string(c3) + ")");
  }
  LemmaReport report;
  report.m = m;

  const USequence u = u_sequence(c1, c2, c3, m - 1);
  report.d = Int(c3) * u.terms[static_cast<size_t>(m - 1)];
  std::string why;
  if (sgn(report.d) <= 0) {
    // u_{m-1} > 0 is part of the detected pattern, so this cannot happen.
    why += " d = c3*u_{m-1} not positive;";
  }

  report.root = integer_nth_root(report.d, static_cast<unsigned long>(m));
  if (!report.root) why += " d has no integer " + std::to_string(m) + "-th root;";

  const auto [quotient, remainder] =
      poly_divide(Polynomial::power_minus_const(static_cast<unsigned long>(m), report.d),
                  char_poly(c1, c2, c3));
  (void)quotient;
  report.divides = remainder.is_zero();
  if (!report.divides) why += " t^m - d not divisible by the characteristic polynomial;";

  report.classified = (m == 4 || m == 6);
  if (!report.classified) why += " index m outside {4, 6};";

  if (!why.empty()) report.anomaly = "structure checks failed:" + why;
  return report;
}

ClassificationMap brute_force_classify(long cmax, long horizon) {
  ClassificationMap found;
  if (cmax < 1) return found;
  if (horizon < 10) throw ConstraintError("classification horizon must be >= 10");
  for (long c1 = 1; c1 <= cmax; ++c1) {
    for (long c2 = 1; c2 <= cmax; ++c2) {
      for (long c3 = 1; c3 <= cmax; ++c3) {
        if (auto m = find_double_zero(c1, c2, c3, horizon)) {
          found[{c1, c2, c3}] = *m;
        }
      }
    }
  }
  return found;
}

OddCaseDeduction deduce_odd_case(int N) {
  if (N % 2 == 0) {
    throw ConstraintError("odd-dimension deduction requires N odd (got N=" +
                          std::to_string(N) + ")");
  }
  if (N < 11) {
    throw ConstraintError("odd-dimension deduction requires N >= 11 (got N=" +
                          std::to_string(N) + ")");
  }
  OddCaseDeduction d;
  d.N = N;
  d.n = N - 3;            // even, so the defect parity forces r = 2
  d.r = 2;
  d.pattern_index = d.n + 1;  // u_{j+2} = s_j turns the zero tail into a double zero here
  d.excluded = (d.pattern_index != 4 && d.pattern_index != 6);  // n + 1 >= 9
  if (!d.excluded) {
    throw InternalInconsistency("odd-case pattern index unexpectedly classifiable");
  }
  return d;
}

}  // namespace ddc
