#include <iostream>

#include "qctl/verify.hpp"

int main() {
  qctl::VerifyOptions opts;
  opts.log = &std::cerr;
  auto reports = qctl::run_all(opts);
  int failed = 0;
  for (const auto& r : reports) {
    std::cout << r.line() << '\n';
    if (!r.pass()) ++failed;
  }
  std::cout << (failed ? "FAILED: " : "all criteria passed") ;
  if (failed) std::cout << failed << " of " << reports.size() << " criteria";
  std::cout << std::endl;
  return failed ? 1 : 0;
}
