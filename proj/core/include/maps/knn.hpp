#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "maps/data.hpp"

namespace maps {

/// Exact k-nearest-neighbour lists under Euclidean distance.
struct NeighborGraph {
  std::size_t k = 0;
  std::vector<std::vector<std::size_t>> neighbors;
  std::vector<std::vector<double>> distances;
  /// Unordered pairs (i < j) of points at zero distance. Allowed, but reported.
  std::vector<std::pair<std::size_t, std::size_t>> duplicate_pairs;

  std::size_t n() const { return neighbors.size(); }
};

/// Pairwise Euclidean distance matrix of the rows of `points`.
Matrix pairwise_distances(const Matrix& points);

/// Ties in distance go to the lower point index; self is never a neighbour.
NeighborGraph knn_graph(const Matrix& points, std::size_t k);
inline NeighborGraph knn_graph(const DataMatrix& data, std::size_t k) {
  return knn_graph(data.points, k);
}

/// The k nearest rows of `points` to an external query, same tie rule.
std::vector<std::pair<std::size_t, double>> nearest_to(const Matrix& points,
                                                      const Eigen::Ref<const Vector>& query,
                                                      std::size_t k);

/// Indices i with `target` among N_k(i), plus `target` itself; sorted ascending.
std::vector<std::size_t> reverse_neighbors(const NeighborGraph& graph, std::size_t target);

}  // namespace maps
