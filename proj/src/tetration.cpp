#include "qctl/tetration.hpp"

#include "qctl/errors.hpp"

namespace qctl {

std::uint64_t tetration_u64(unsigned k, unsigned n, std::uint64_t cap) {
  std::uint64_t v = n;
  auto refuse = [&] {
    throw CapExceeded("t(" + std::to_string(k) + "," + std::to_string(n) + ") exceeds the cap " +
                          std::to_string(cap),
                      "--tetration-cap");
  };
  if (v > cap) refuse();
  for (unsigned i = 0; i < k; ++i) {
    if (v >= 64) refuse();
    v = std::uint64_t{1} << v;
    if (v > cap) refuse();
  }
  return v;
}

BigNat tetration(unsigned k, unsigned n, std::uint64_t cap) { return BigNat(tetration_u64(k, n, cap)); }

}  // namespace qctl
