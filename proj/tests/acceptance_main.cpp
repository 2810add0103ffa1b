#include <cstdlib>
#include <iostream>
#include <string>

#include "exqmc/acceptance.hpp"

int main(int argc, char** argv) {
  std::uint64_t seed = exqmc::kDefaultSeed;
  if (argc > 1) seed = std::stoull(argv[1]);
  const auto results = exqmc::run_acceptance(seed, std::cout);
  int failed = 0;
  for (const auto& r : results) failed += r.pass() ? 0 : 1;
  std::cout << (results.size() - failed) << "/" << results.size() << " criteria passed\n";
  return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
