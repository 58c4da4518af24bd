#include "ddc/recurrence.hpp"

#include <stdexcept>

#include "ddc/errors.hpp"

namespace ddc {

Int from_decimal(const std::string& text) {
  Int v;
  if (text.empty() || mpz_set_str(v.get_mpz_t(), text.c_str(), 10) != 0) {
    throw std::invalid_argument("not a base-10 integer: '" + text + "'");
  }
  return v;
}

Int pow_int(const Int& base, unsigned long exp) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

Int sum_of(const std::vector<Int>& values) {
  Int total = 0;
  for (const Int& v : values) total += v;
  return total;
}

Coefficients::Coefficients(std::vector<Int> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) {
    throw ConstraintError("coefficient list must have order m >= 1");
  }
  for (size_t i = 0; i < entries_.size(); ++i) {
    if (sgn(entries_[i]) < 0) {
      throw ConstraintError("coefficient c_" + std::to_string(i + 1) +
                            " is negative: " + to_decimal(entries_[i]));
    }
  }
}

Coefficients::Coefficients(std::initializer_list<long> entries)
    : Coefficients(std::vector<Int>(entries.begin(), entries.end())) {}

SegreCursor::SegreCursor(Coefficients c)
    : coeffs_(std::move(c)), window_(static_cast<size_t>(coeffs_.order())) {}

const Int& SegreCursor::next() {
  const int m = coeffs_.order();
  ++index_;
  if (index_ == 0) {
    acc_ = 1;
  } else {
    // s_j = sum_{q=1}^{min(j,m)} (-1)^{q+1} c_q s_{j-q}
    const long reach = index_ < m ? index_ : m;
    mpz_set_ui(acc_.get_mpz_t(), 0);
    for (long q = 1; q <= reach; ++q) {
      const Int& cq = coeffs_.coeff(static_cast<int>(q));
      const Int& prev = window_[static_cast<size_t>((index_ - q) % m)];
      if (q % 2 == 1) {
        mpz_addmul(acc_.get_mpz_t(), cq.get_mpz_t(), prev.get_mpz_t());
      } else {
        mpz_submul(acc_.get_mpz_t(), cq.get_mpz_t(), prev.get_mpz_t());
      }
    }
  }
  Int& slot = window_[static_cast<size_t>(index_ % m)];
  mpz_swap(slot.get_mpz_t(), acc_.get_mpz_t());
  return slot;
}

SegreTerms segre_sequence(const Coefficients& c, long last_index) {
  if (last_index < 0) {
    throw ConstraintError("sequence length index must be >= 0");
  }
  SegreTerms terms;
  terms.reserve(static_cast<size_t>(last_index) + 1);
  SegreCursor cursor(c);
  for (long j = 0; j <= last_index; ++j) terms.push_back(cursor.next());
  return terms;
}

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::NonpositiveInPrefix:
      return "nonpositive-in-prefix";
    case ViolationKind::NonzeroInTail:
      return "nonzero-in-tail";
  }
  return "?";
}

PatternVerdict check_pattern(const Coefficients& c, long n, long r, SegreTerms* evidence) {
  if (r < 1 || r > n) {
    throw ConstraintError("pattern requires 1 <= r <= n, got r=" + std::to_string(r) +
                          ", n=" + std::to_string(n));
  }
  if (evidence) {
    evidence->clear();
    evidence->reserve(static_cast<size_t>(n) + 1);
  }
  SegreCursor cursor(c);
  const long prefix_end = n - r;  // closed; tail is [n-r+1, n], also closed
  for (long j = 0; j <= n; ++j) {
    const Int& s = cursor.next();
    if (j <= prefix_end) {
      if (sgn(s) <= 0) {
        if (evidence) evidence->clear();
        return {false, j, ViolationKind::NonpositiveInPrefix};
      }
    } else {
      if (sgn(s) != 0) {
        if (evidence) evidence->clear();
        return {false, j, ViolationKind::NonzeroInTail};
      }
    }
    if (evidence) evidence->push_back(s);
  }
  return {true, std::nullopt, std::nullopt};
}

}  // namespace ddc
