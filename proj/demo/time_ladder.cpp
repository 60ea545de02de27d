// Maxwell and conjugate times along one oscillating covector, showing the interleaving.
#include <cstdio>
#include <cstdlib>

#include "sh2/conjugate.hpp"
#include "sh2/strata.hpp"

int main(int argc, char** argv) {
  using namespace sh2;
  const double k = argc > 1 ? std::atof(argv[1]) : 0.5;
  const double phi = argc > 2 ? std::atof(argv[2]) : 0.4;
  const CaseClass cc{CaseId::C1, k, phi, 1, 1};
  const int n = 5;
  const auto conj = conjugate::conjugate_times(cc, n);
  std::printf("C1 k=%g phi=%g\n", k, phi);
  for (int m = 1; m <= n; ++m) {
    std::printf("  Maxwell %d  %10.6f\n", m, strata::nth_maxwell_time(cc, m));
    std::printf("  conj    %d  %10.6f\n", m, conj[m - 1]);
  }
  std::printf("  Maxwell %d  %10.6f\n", n + 1, strata::nth_maxwell_time(cc, n + 1));
}
