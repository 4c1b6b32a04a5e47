#ifndef BRIM_INTEGER_HPP
#define BRIM_INTEGER_HPP

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace brim {

/// Arbitrary precision signed integer used for every length, count and
/// multiplicity. Exponents stay machine sized (see Exponent).
using BigInt = boost::multiprecision::cpp_int;

/// binom(n, t) with the total convention: 0 when t < 0 or n < t, and
/// binom(n, 0) = 1 for n >= 0. Negative n always yields 0.
BigInt binomial(std::int64_t n, std::int64_t t);

BigInt factorial(std::uint64_t n);

inline std::string to_string(const BigInt& v) { return v.str(); }

}  // namespace brim

#endif  // BRIM_INTEGER_HPP
