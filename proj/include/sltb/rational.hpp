#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace sltb {

// Expression templates off: values behave like plain value types under auto.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

// Accepts "n", "n/d", "-n/d" and plain decimals such as "0.25".
Rational parse_rational(std::string_view text);

// Canonical "num/den" form; integers keep the "/1" suffix.
std::string format_rational(const Rational& value);

double to_double(const Rational& value);

bool is_integer(const Rational& value);
Integer floor_of(const Rational& value);
Integer ceil_of(const Rational& value);

// Least common multiple of all denominators; 1 for an empty list.
Integer denominator_lcm(const std::vector<Rational>& values);

}  // namespace sltb
