// Writes nested wavefronts and spheres for R = 1, 2, 3 as CSV into the given directory.
#include <cstdio>
#include <string>

#include "sh2/cloud.hpp"

int main(int argc, char** argv) {
  using namespace sh2;
  const std::string dir = argc > 1 ? argv[1] : ".";
  cloud::GridSpec g;
  g.k_count = 100;
  g.phi_count = 200;
  try {
    for (int R = 1; R <= 3; ++R) {
      const auto w = cloud::wavefront(R, g);
      const auto s = cloud::sphere(R, g);
      cloud::export_points(w, cloud::Format::csv, dir + "/wavefront_R" + std::to_string(R) + ".csv");
      cloud::export_points(s, cloud::Format::csv, dir + "/sphere_R" + std::to_string(R) + ".csv");
      std::printf("R=%d: %zu wavefront points, %zu sphere points\n", R, w.size(), s.size());
    }
  } catch (const IoError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 3;
  }
}
