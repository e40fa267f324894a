/* Copyright 2026 The htg-eval Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "htg_eval/persistence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <cstdint>
#include <tuple>
#include <unordered_map>

#include "htg_eval/error.hpp"

namespace htg {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using Column = std::vector<int>;  // sorted row indices, Z/2 coefficients

void add_into(Column& target, const Column& source) {
  Column out;
  out.reserve(target.size() + source.size());
  std::set_symmetric_difference(target.begin(), target.end(), source.begin(), source.end(),
                                std::back_inserter(out));
  target.swap(out);
}

// Standard left-to-right reduction. pivot_of_row[r] is the column whose
// lowest one sits in row r after reduction, or -1. Columns flagged in
// `cleared` are known to reduce to zero and are skipped.
std::vector<int> reduce(std::vector<Column>& columns, std::size_t n_rows,
                        const std::vector<char>& cleared) {
  std::vector<int> pivot_of_row(n_rows, -1);
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (!cleared.empty() && cleared[j]) {
      columns[j].clear();
      continue;
    }
    auto& col = columns[j];
    while (!col.empty()) {
      const int low = col.back();
      const int other = pivot_of_row[static_cast<std::size_t>(low)];
      if (other < 0) {
        pivot_of_row[static_cast<std::size_t>(low)] = static_cast<int>(j);
        break;
      }
      add_into(col, columns[static_cast<std::size_t>(other)]);
    }
  }
  return pivot_of_row;
}

}  // namespace

double max_landmark_witness_distance(const RowMatrix& points,
                                     std::span<const std::size_t> landmarks) {
  double best = 0.0;
  for (Eigen::Index w = 0; w < points.rows(); ++w) {
    for (auto l : landmarks) {
      best = std::max(best, (points.row(w) - points.row(static_cast<Eigen::Index>(l))).norm());
    }
  }
  return best;
}

FilteredComplex witness_complex(const RowMatrix& points, std::span<const std::size_t> landmarks,
                                double alpha_max) {
  require(alpha_max >= 0.0 && std::isfinite(alpha_max), ErrorCode::kInvalidArgument,
          "alpha_max must be finite and non-negative");
  const int n_land = static_cast<int>(landmarks.size());
  for (auto l : landmarks) {
    require(l < static_cast<std::size_t>(points.rows()), ErrorCode::kInvalidArgument,
            "landmark index out of range");
  }
  FilteredComplex cx;
  cx.alpha_max = alpha_max;
  cx.vertex_values.assign(static_cast<std::size_t>(n_land), kInf);
  if (n_land == 0) return cx;

  std::vector<double> edge_relax(static_cast<std::size_t>(n_land) * n_land, kInf);
  std::vector<double> dist(static_cast<std::size_t>(n_land));
  std::vector<int> order(static_cast<std::size_t>(n_land));
  std::vector<int> candidates;

  for (Eigen::Index w = 0; w < points.rows(); ++w) {
    for (int l = 0; l < n_land; ++l) {
      dist[static_cast<std::size_t>(l)] =
          (points.row(w) - points.row(static_cast<Eigen::Index>(landmarks[static_cast<std::size_t>(l)])))
              .norm();
    }
    std::iota(order.begin(), order.end(), 0);
    const int top = std::min(3, n_land);
    std::partial_sort(order.begin(), order.begin() + top, order.end(), [&](int x, int y) {
      const double dx = dist[static_cast<std::size_t>(x)], dy = dist[static_cast<std::size_t>(y)];
      return dx < dy || (dx == dy && x < y);
    });
    const auto d_at = [&](int rank) { return dist[static_cast<std::size_t>(order[static_cast<std::size_t>(rank)])]; };

    // Nearest landmark outside `s`, drawn from the three nearest overall.
    const auto nearest_outside = [&](int s0, int s1) {
      for (int r = 0; r < top; ++r) {
        const int l = order[static_cast<std::size_t>(r)];
        if (l != s0 && l != s1) return dist[static_cast<std::size_t>(l)];
      }
      return kInf;
    };

    // Vertices: relaxation d(w, a) - d1 for a != nearest, 0 for the nearest.
    for (int l = 0; l < n_land; ++l) {
      const double relax = std::max(0.0, dist[static_cast<std::size_t>(l)] - nearest_outside(l, l));
      auto& v = cx.vertex_values[static_cast<std::size_t>(l)];
      v = std::min(v, relax);
    }
    if (n_land < 2) continue;

    // Only landmarks within d3 + alpha_max can appear in an edge whose
    // relaxation at w is <= alpha_max.
    const double reach = (top >= 3 ? d_at(2) : kInf) + alpha_max;
    candidates.clear();
    for (int l = 0; l < n_land; ++l) {
      if (dist[static_cast<std::size_t>(l)] <= reach) candidates.push_back(l);
    }
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      for (std::size_t j = i + 1; j < candidates.size(); ++j) {
        const int a = std::min(candidates[i], candidates[j]);
        const int b = std::max(candidates[i], candidates[j]);
        const double far = std::max(dist[static_cast<std::size_t>(a)], dist[static_cast<std::size_t>(b)]);
        const double relax = std::max(0.0, far - nearest_outside(a, b));
        if (relax > alpha_max) continue;
        auto& e = edge_relax[static_cast<std::size_t>(a) * n_land + b];
        e = std::min(e, relax);
      }
    }
  }

  std::vector<std::vector<int>> adjacency(static_cast<std::size_t>(n_land));
  std::vector<double> edge_value(static_cast<std::size_t>(n_land) * n_land, kInf);
  for (int a = 0; a < n_land; ++a) {
    for (int b = a + 1; b < n_land; ++b) {
      double v = edge_relax[static_cast<std::size_t>(a) * n_land + b];
      v = std::max({v, cx.vertex_values[static_cast<std::size_t>(a)],
                    cx.vertex_values[static_cast<std::size_t>(b)]});
      if (v <= alpha_max) {
        cx.edges.push_back({a, b, v});
        edge_value[static_cast<std::size_t>(a) * n_land + b] = v;
        adjacency[static_cast<std::size_t>(a)].push_back(b);
      }
    }
  }
  for (int l = 0; l < n_land; ++l) {
    auto& v = cx.vertex_values[static_cast<std::size_t>(l)];
    if (v > alpha_max) v = kInf;
  }
  for (const auto& e : cx.edges) {
    for (int c : adjacency[static_cast<std::size_t>(e.a)]) {
      if (c <= e.b) continue;
      const double bc = edge_value[static_cast<std::size_t>(e.b) * n_land + c];
      if (bc == kInf) continue;
      const double ac = edge_value[static_cast<std::size_t>(e.a) * n_land + c];
      cx.triangles.push_back({e.a, e.b, c, std::max({e.value, ac, bc})});
    }
  }
  return cx;
}

PersistenceBarcode h1_persistence(const FilteredComplex& cx) {
  const auto n_vertices = cx.vertex_values.size();

  // Filtration order: by value, lower dimension first, then by vertices.
  std::vector<std::size_t> edge_order(cx.edges.size());
  std::iota(edge_order.begin(), edge_order.end(), std::size_t{0});
  std::sort(edge_order.begin(), edge_order.end(), [&](std::size_t x, std::size_t y) {
    const auto& ex = cx.edges[x];
    const auto& ey = cx.edges[y];
    if (ex.value != ey.value) return ex.value < ey.value;
    return std::tie(ex.a, ex.b) < std::tie(ey.a, ey.b);
  });
  std::vector<std::size_t> tri_order(cx.triangles.size());
  std::iota(tri_order.begin(), tri_order.end(), std::size_t{0});
  std::sort(tri_order.begin(), tri_order.end(), [&](std::size_t x, std::size_t y) {
    const auto& tx = cx.triangles[x];
    const auto& ty = cx.triangles[y];
    if (tx.value != ty.value) return tx.value < ty.value;
    return std::tie(tx.a, tx.b, tx.c) < std::tie(ty.a, ty.b, ty.c);
  });

  // Vertex rows follow the same rule: by value, then index.
  std::vector<std::size_t> vertex_order(n_vertices);
  std::iota(vertex_order.begin(), vertex_order.end(), std::size_t{0});
  std::sort(vertex_order.begin(), vertex_order.end(), [&](std::size_t x, std::size_t y) {
    if (cx.vertex_values[x] != cx.vertex_values[y]) return cx.vertex_values[x] < cx.vertex_values[y];
    return x < y;
  });
  std::vector<int> vertex_rank(n_vertices);
  for (std::size_t r = 0; r < n_vertices; ++r) vertex_rank[vertex_order[r]] = static_cast<int>(r);

  const auto n_edges = edge_order.size();
  std::unordered_map<std::uint64_t, int> edge_rank;
  edge_rank.reserve(n_edges * 2);
  const auto key = [](int a, int b) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
           static_cast<std::uint32_t>(b);
  };
  for (std::size_t r = 0; r < n_edges; ++r) {
    const auto& e = cx.edges[edge_order[r]];
    require(cx.vertex_values[static_cast<std::size_t>(e.a)] <= e.value &&
                cx.vertex_values[static_cast<std::size_t>(e.b)] <= e.value,
            ErrorCode::kNumericalError, "edge enters before one of its vertices");
    edge_rank.emplace(key(e.a, e.b), static_cast<int>(r));
  }

  // Dimension 2 first.
  std::vector<Column> tri_cols(tri_order.size());
  for (std::size_t j = 0; j < tri_order.size(); ++j) {
    const auto& t = cx.triangles[tri_order[j]];
    Column col;
    for (auto [u, v] : {std::pair{t.a, t.b}, std::pair{t.a, t.c}, std::pair{t.b, t.c}}) {
      auto it = edge_rank.find(key(u, v));
      require(it != edge_rank.end(), ErrorCode::kNumericalError,
              "triangle face missing from the filtration");
      require(cx.edges[edge_order[static_cast<std::size_t>(it->second)]].value <= t.value,
              ErrorCode::kNumericalError, "triangle enters before one of its edges");
      col.push_back(it->second);
    }
    std::sort(col.begin(), col.end());
    tri_cols[j] = std::move(col);
  }
  const auto tri_pivot = reduce(tri_cols, n_edges, {});

  // Dimension 1 with clearing: an edge that is the pivot of a reduced
  // triangle column is positive, so its own column reduces to zero.
  std::vector<Column> edge_cols(n_edges);
  std::vector<char> cleared(n_edges, 0);
  for (std::size_t r = 0; r < n_edges; ++r) {
    const auto& e = cx.edges[edge_order[r]];
    Column col{vertex_rank[static_cast<std::size_t>(e.a)], vertex_rank[static_cast<std::size_t>(e.b)]};
    std::sort(col.begin(), col.end());
    edge_cols[r] = std::move(col);
    cleared[r] = tri_pivot[r] >= 0 ? 1 : 0;
  }
  reduce(edge_cols, n_vertices, cleared);

  PersistenceBarcode barcode;
  for (std::size_t r = 0; r < n_edges; ++r) {
    if (!edge_cols[r].empty()) continue;  // negative edge: merges components
    const double birth = cx.edges[edge_order[r]].value;
    double death = cx.alpha_max;
    if (tri_pivot[r] >= 0) {
      death = cx.triangles[tri_order[static_cast<std::size_t>(tri_pivot[r])]].value;
    }
    require(death >= birth, ErrorCode::kNumericalError, "H1 interval dies before it is born");
    if (death > birth) barcode.push_back({birth, death});
  }
  std::sort(barcode.begin(), barcode.end(), [](const auto& x, const auto& y) {
    return std::tie(x.birth, x.death) < std::tie(y.birth, y.death);
  });
  return barcode;
}

PersistenceBarcode witness_persistence_h1(const RowMatrix& points,
                                          std::span<const std::size_t> landmarks,
                                          double alpha_max) {
  require(alpha_max > 0.0, ErrorCode::kInvalidArgument, "alpha_max must be positive");
  if (landmarks.size() < 3) return {};
  return h1_persistence(witness_complex(points, landmarks, alpha_max));
}

}  // namespace htg
