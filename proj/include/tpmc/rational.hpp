#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

namespace tpmc {

/// All solver arithmetic is exact; there is no floating-point code path.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;
using Int = long long;

/// Parses "p/q" or a plain integer (optional sign, decimal digits only).
Rational parse_rational(const std::string& text);

/// Canonical text form: "p" when the denominator is 1, "p/q" otherwise.
std::string to_string(const Rational& value);

/// Sum of absolute values; used for penalty upper bounds.
Rational abs_sum(const std::vector<Rational>& values);

/// Lexicographic comparison of rational vectors.
int compare_lex(const std::vector<Rational>& a, const std::vector<Rational>& b);

} // namespace tpmc
