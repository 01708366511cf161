// Copyright 2026 The FCP Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "fcp/astar.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <tuple>

#include "fcp/errors.hpp"

namespace fcp
{

std::vector<FrenetPoint> astar_baseline(
  const Corridor & corridor, const SpaceState & init, const AStarConfig & config)
{
  if (corridor.n < 1 || config.resolution <= 0.0) {
    throw PlanningError(ErrorCode::kDomainError, "empty corridor or non-positive resolution");
  }
  const double res = config.resolution;
  const int n = corridor.n;
  const auto [lo_it, hi_it] = std::pair(
    std::min_element(corridor.d_lb.begin(), corridor.d_lb.end()),
    std::max_element(corridor.d_ub.begin(), corridor.d_ub.end()));
  const int j_min = static_cast<int>(std::ceil(*lo_it / res - 1e-9));
  const int j_max = static_cast<int>(std::floor(*hi_it / res + 1e-9));
  if (j_max < j_min) {
    throw PlanningError(ErrorCode::kNoPath, "corridor narrower than one grid level");
  }
  const int levels = j_max - j_min + 1;
  const auto index = [levels](int k, int j) { return static_cast<std::size_t>(k * levels + j); };
  const auto level_d = [&](int j) { return (j + j_min) * res; };
  const auto free = [&](int k, int j) {
    const double d = level_d(j);
    return j >= 0 && j < levels && d >= corridor.d_lb[k] - 1e-9 && d <= corridor.d_ub[k] + 1e-9;
  };

  int start = -1;
  for (int j = 0; j < levels; ++j) {
    if (free(0, j) &&
        (start < 0 || std::abs(level_d(j) - init.d) < std::abs(level_d(start) - init.d))) {
      start = j;
    }
  }
  if (start < 0) {
    throw PlanningError(ErrorCode::kNoPath, "no free cell at the first station");
  }

  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> g(static_cast<std::size_t>(n * levels), inf);
  std::vector<int> parent(g.size(), -1);
  std::vector<char> closed(g.size(), 0);
  using Entry = std::tuple<double, double, int, int>;  // f, g, k, j
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
  g[index(0, start)] = 0.0;
  open.emplace((n - 1) * corridor.ds, 0.0, 0, start);

  const double diag = std::hypot(corridor.ds, res);
  const struct
  {
    int dk;
    int dj;
    double len;
  } moves[] = {{1, 0, corridor.ds}, {1, 1, diag}, {1, -1, diag}, {0, 1, res}, {0, -1, res}};

  int goal = -1;
  while (!open.empty()) {
    const auto [f, gc, k, j] = open.top();
    open.pop();
    const auto id = index(k, j);
    if (closed[id]) {
      continue;
    }
    closed[id] = 1;
    if (k == n - 1) {
      goal = static_cast<int>(id);
      break;
    }
    for (const auto & mv : moves) {
      const int nk = k + mv.dk;
      const int nj = j + mv.dj;
      if (nk >= n || !free(nk, nj)) {
        continue;
      }
      const auto nid = index(nk, nj);
      const double cost = gc + mv.len * (1.0 + config.deviation_weight * std::abs(level_d(nj)));
      if (cost < g[nid]) {
        g[nid] = cost;
        parent[nid] = static_cast<int>(id);
        open.emplace(cost + (n - 1 - nk) * corridor.ds, cost, nk, nj);
      }
    }
  }
  if (goal < 0) {
    throw PlanningError(ErrorCode::kNoPath, "grid disconnected before the last station");
  }

  std::vector<FrenetPoint> path(static_cast<std::size_t>(n));
  std::vector<char> filled(path.size(), 0);
  for (int id = goal; id >= 0; id = parent[static_cast<std::size_t>(id)]) {
    const int k = id / levels;
    if (!filled[static_cast<std::size_t>(k)]) {
      path[static_cast<std::size_t>(k)] = {corridor.station(k), level_d(id % levels)};
      filled[static_cast<std::size_t>(k)] = 1;
    }
  }
  return path;
}

}  // namespace fcp
