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

#ifndef HTG_EVAL_PERSISTENCE_HPP_
#define HTG_EVAL_PERSISTENCE_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "htg_eval/types.hpp"

namespace htg {

struct PersistenceInterval {
  double birth = 0.0;
  double death = 0.0;

  bool operator==(const PersistenceInterval&) const = default;
};

// One-dimensional intervals over [0, alpha_max]. Classes still alive at
// alpha_max die there; zero-length intervals are not reported.
using PersistenceBarcode = std::vector<PersistenceInterval>;

struct FilteredEdge {
  int a = 0;  // a < b
  int b = 0;
  double value = 0.0;
};

struct FilteredTriangle {
  int a = 0;  // a < b < c
  int b = 0;
  int c = 0;
  double value = 0.0;
};

// A filtered complex on landmark indices 0..n_vertices-1 truncated at
// dimension 2. Simplices absent from the filtration have no entry.
struct FilteredComplex {
  std::vector<double> vertex_values;  // +inf: vertex never enters
  std::vector<FilteredEdge> edges;
  std::vector<FilteredTriangle> triangles;
  double alpha_max = 0.0;
};

// Relaxed witness filtration. For witness w with landmark distances d(w, .)
// the relaxation of simplex s is max(0, max_{l in s} d(w, l) -
// min_{l not in s} d(w, l)); a vertex or edge enters at the minimum over
// witnesses, lifted to be no earlier than its faces. Triangles enter at the
// latest of their three edges. Simplices entering after alpha_max are
// dropped. Every row of `points` acts as a witness.
FilteredComplex witness_complex(const RowMatrix& points, std::span<const std::size_t> landmarks,
                                double alpha_max);

// H1 barcode of a filtered complex by Z/2 boundary-matrix column reduction
// with clearing: triangle columns are reduced first and the edges they pair
// are skipped when the edge columns are reduced.
PersistenceBarcode h1_persistence(const FilteredComplex& complex);

PersistenceBarcode witness_persistence_h1(const RowMatrix& points,
                                          std::span<const std::size_t> landmarks,
                                          double alpha_max);

// Largest landmark-to-witness distance.
double max_landmark_witness_distance(const RowMatrix& points,
                                     std::span<const std::size_t> landmarks);

}  // namespace htg

#endif  // HTG_EVAL_PERSISTENCE_HPP_
