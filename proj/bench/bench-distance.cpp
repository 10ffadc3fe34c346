// Serial vs OpenMP all-pairs BFS on the built grids.

#include "mobndn/distance.hpp"

#include <chrono>
#include <cstdio>

#include <omp.h>

using namespace mobndn;

int
main(int argc, char** argv)
{
  int reps = argc > 1 ? std::atoi(argv[1]) : 20;
  std::printf("threads %d\n", omp_get_max_threads());
  std::printf("%-8s %6s %12s %12s %8s\n", "grid", "nodes", "serial_ms", "parallel_ms", "speedup");
  for (int side : {2, 3, 4, 6, 8}) {
    Topology t = Topology::grid(side, side, 3);
    const auto& adj = t.adjacency();
    auto time = [&] (auto fn) {
      auto start = std::chrono::steady_clock::now();
      size_t sink = 0;
      for (int r = 0; r < reps; ++r) {
        sink += fn(adj).size();
      }
      auto end = std::chrono::steady_clock::now();
      if (sink == 0) {
        std::printf("empty\n");
      }
      return std::chrono::duration<double, std::milli>(end - start).count() / reps;
    };
    double serial = time(allPairsHopsSerial);
    double parallel = time(allPairsHops);
    if (allPairsHops(adj) != allPairsHopsSerial(adj)) {
      std::printf("MISMATCH on %dx%d\n", side, side);
      return 1;
    }
    std::printf("%-8s %6zu %12.3f %12.3f %8.2f\n", (std::to_string(side * side) + "AS").c_str(), adj.size(), serial,
                parallel, serial / parallel);
  }
  return 0;
}
