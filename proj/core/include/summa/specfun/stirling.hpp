#pragma once

#include <cstddef>
#include <vector>

#include "summa/number.hpp"

namespace summa::specfun {

inline constexpr std::size_t kStirlingMax = 64;

struct StirlingTable {
  std::size_t max_p = 0;
  std::vector<std::vector<BigInt>> second_kind;          // {p m}
  std::vector<std::vector<BigInt>> first_kind_unsigned;  // [p m]
};

StirlingTable stirling_tables(std::size_t max_p);
// Table up to kStirlingMax, built once.
const StirlingTable& shared_stirling_table();

BigInt factorial(std::size_t n);
// (a)_m = a (a+1) ... (a+m-1)
BigInt rising_factorial(const BigInt& a, std::size_t m);

}  // namespace summa::specfun
