#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace ddc {

// Every mathematically meaningful integer in this project is exact. Sequence
// terms reach magnitudes around c1^n (hundreds of digits at the large cases),
// so machine words are never used where a value could exceed them.
using Int = mpz_class;

inline std::string to_decimal(const Int& v) { return v.get_str(10); }

// Parses a base-10 integer (optional leading '-'). Throws std::invalid_argument
// on anything else, including the empty string.
Int from_decimal(const std::string& text);

// base^exp, exact.
Int pow_int(const Int& base, unsigned long exp);

// Sum of the coefficients, exact.
Int sum_of(const std::vector<Int>& values);

}  // namespace ddc
