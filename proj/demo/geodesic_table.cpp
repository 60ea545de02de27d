// Prints Exp(lambda, t) for one covector per stratum on a coarse time grid.
#include <cstdio>
#include <string>

#include "sh2/sh2.hpp"

int main() {
  using namespace sh2;
  const CaseClass lambdas[] = {
      {CaseId::C1, 0.6, 0.3, 1, 1},
      {CaseId::C2, 0.6, 0.3, 1, 1},
      {CaseId::C3, 1.0, -0.5, 1, -1},
      {CaseId::C4, 0.0, 0.0, 1, 1},
      {CaseId::C5, 1.0, 0.0, -1, 1},
  };
  std::printf("%-4s %6s %12s %12s %12s\n", "case", "t", "x", "y", "z");
  for (const auto& cc : lambdas) {
    for (double t : {0.5, 1.0, 2.0, 4.0}) {
      const auto q = sh2::exp(cc, t);
      std::printf("%-4s %6.2f %12.6f %12.6f %12.6f\n", std::string(to_string(cc.id)).c_str(), t, q.x, q.y, q.z);
    }
  }
}
