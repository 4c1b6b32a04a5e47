#include "brim/integer.hpp"

namespace brim {

BigInt binomial(std::int64_t n, std::int64_t t) {
  if (t < 0 || n < 0 || n < t) return 0;
  if (t > n - t) t = n - t;
  BigInt acc = 1;
  for (std::int64_t i = 1; i <= t; ++i) {
    acc *= (n - t + i);
    acc /= i;
  }
  return acc;
}

BigInt factorial(std::uint64_t n) {
  BigInt acc = 1;
  for (std::uint64_t i = 2; i <= n; ++i) acc *= i;
  return acc;
}

}  // namespace brim
