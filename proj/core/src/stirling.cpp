#include "summa/specfun/stirling.hpp"

#include "summa/error.hpp"

namespace summa::specfun {

StirlingTable stirling_tables(std::size_t max_p) {
  if (max_p > kStirlingMax) fail(ErrorCode::InvalidArgument, "stirling tables are limited to p <= 64");
  StirlingTable t;
  t.max_p = max_p;
  t.second_kind.assign(max_p + 1, std::vector<BigInt>(max_p + 1, 0));
  t.first_kind_unsigned.assign(max_p + 1, std::vector<BigInt>(max_p + 1, 0));
  t.second_kind[0][0] = 1;
  t.first_kind_unsigned[0][0] = 1;
  for (std::size_t p = 1; p <= max_p; ++p) {
    for (std::size_t m = 1; m <= p; ++m) {
      t.second_kind[p][m] = t.second_kind[p - 1][m - 1] + BigInt(m) * t.second_kind[p - 1][m];
      t.first_kind_unsigned[p][m] =
          t.first_kind_unsigned[p - 1][m - 1] + BigInt(p - 1) * t.first_kind_unsigned[p - 1][m];
    }
  }
  return t;
}

const StirlingTable& shared_stirling_table() {
  static const StirlingTable table = stirling_tables(kStirlingMax);
  return table;
}

BigInt factorial(std::size_t n) {
  BigInt r = 1;
  for (std::size_t i = 2; i <= n; ++i) r *= i;
  return r;
}

BigInt rising_factorial(const BigInt& a, std::size_t m) {
  BigInt r = 1;
  for (std::size_t i = 0; i < m; ++i) r *= a + i;
  return r;
}

}  // namespace summa::specfun
