#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>

namespace qctl {

using BigNat = boost::multiprecision::cpp_int;

inline constexpr std::uint64_t kDefaultTetrationCap = std::uint64_t{1} << 16;

// t(0,n) = n, t(k+1,n) = 2^t(k,n). Throws CapExceeded above `cap`.
BigNat tetration(unsigned k, unsigned n, std::uint64_t cap = kDefaultTetrationCap);

// Same value as a machine word; throws CapExceeded above `cap`.
std::uint64_t tetration_u64(unsigned k, unsigned n, std::uint64_t cap = kDefaultTetrationCap);

}  // namespace qctl
