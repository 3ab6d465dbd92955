#pragma once

#include <chrono>
#include <cstddef>
#include <thread>
#include <vector>

#include "cagemap/connectivity.hpp"
#include "cagemap/geom.hpp"
#include "cagemap/slicing.hpp"

namespace cagemap {

struct BuildTimings {
  double slices_seconds = 0.0;
  double graph_seconds = 0.0;
};

// The full pipeline state for one workspace/object/epsilon: everything the
// queries need.  Slices build independently, so they parallelize.
struct Analysis {
  DiskUnion obstacles;
  RigidObject object;
  double epsilon = 0.0;
  EpsilonCore core;
  So2Partition partition;
  std::vector<SliceApprox> slices;
  ConnectivityGraph graph;
};

inline Analysis build_analysis(const DiskUnion& obs, const RigidObject& obj,
                               double epsilon, unsigned threads = 1,
                               BuildTimings* timings = nullptr) {
  using clock = std::chrono::steady_clock;
  Analysis a;
  a.obstacles = obs;
  a.object = obj;
  a.epsilon = epsilon;
  a.core = epsilon_core(obj, epsilon);
  a.partition = partition_so2(obj, epsilon);
  const std::size_t s = a.partition.size();
  a.slices.resize(s);
  const auto t0 = clock::now();
  const unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(s)));
  if (n == 1) {
    for (std::size_t i = 0; i < s; ++i)
      a.slices[i] = build_slice(obs, a.core, i, a.partition);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < n; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < s; i += n)
          a.slices[i] = build_slice(obs, a.core, i, a.partition);
      });
    for (std::thread& t : pool) t.join();
  }
  const auto t1 = clock::now();
  a.graph = build_graph(a.slices);
  const auto t2 = clock::now();
  if (timings) {
    timings->slices_seconds = std::chrono::duration<double>(t1 - t0).count();
    timings->graph_seconds = std::chrono::duration<double>(t2 - t1).count();
  }
  return a;
}

}  // namespace cagemap
