#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace nearspace {

/// Exact nonnegative integer for subgroup counts, Stirling numbers and binomials.
using BigCount = boost::multiprecision::cpp_int;

inline BigCount big_pow(std::uint64_t base, std::uint64_t exp) {
  return boost::multiprecision::pow(BigCount(base), static_cast<unsigned>(exp));
}

}  // namespace nearspace
