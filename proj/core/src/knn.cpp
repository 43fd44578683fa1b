#include "maps/knn.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "maps/error.hpp"

namespace maps {

Matrix pairwise_distances(const Matrix& points) {
  const Eigen::Index n = points.rows();
  Matrix dist = Matrix::Zero(n, n);
  // Explicit differences rather than the Gram trick: exact zeros for
  // duplicates and no cancellation on nearby points.
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double value = (points.row(i) - points.row(j)).norm();
      dist(i, j) = value;
      dist(j, i) = value;
    }
  return dist;
}

namespace {

std::vector<std::pair<std::size_t, double>> smallest(std::vector<std::pair<std::size_t, double>> all,
                                                     std::size_t k) {
  auto closer = [](const auto& a, const auto& b) {
    return a.second < b.second || (a.second == b.second && a.first < b.first);
  };
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k), all.end(), closer);
  all.resize(k);
  return all;
}

}  // namespace

NeighborGraph knn_graph(const Matrix& points, std::size_t k) {
  const auto n = static_cast<std::size_t>(points.rows());
  require(k >= 1 && k + 1 <= n, ErrorKind::kParameter,
          "k must lie in [1, n-1]; got k=" + std::to_string(k) + " with n=" + std::to_string(n));
  const Matrix dist = pairwise_distances(points);
  NeighborGraph graph;
  graph.k = k;
  graph.neighbors.resize(n);
  graph.distances.resize(n);
  std::vector<std::pair<std::size_t, double>> row;
  for (std::size_t i = 0; i < n; ++i) {
    row.clear();
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const double value = dist(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      row.emplace_back(j, value);
      if (j > i && value == 0.0) graph.duplicate_pairs.emplace_back(i, j);
    }
    for (const auto& [j, value] : smallest(row, k)) {
      graph.neighbors[i].push_back(j);
      graph.distances[i].push_back(value);
    }
  }
  return graph;
}

std::vector<std::pair<std::size_t, double>> nearest_to(const Matrix& points,
                                                      const Eigen::Ref<const Vector>& query,
                                                      std::size_t k) {
  const auto n = static_cast<std::size_t>(points.rows());
  require(query.size() == points.cols(), ErrorKind::kParameter, "query dimension mismatch");
  require(k >= 1 && k <= n, ErrorKind::kParameter,
          "k must lie in [1, n_train]; got k=" + std::to_string(k) + " with n_train=" + std::to_string(n));
  std::vector<std::pair<std::size_t, double>> all;
  all.reserve(n);
  for (std::size_t j = 0; j < n; ++j)
    all.emplace_back(j, (points.row(static_cast<Eigen::Index>(j)) - query.transpose()).norm());
  return smallest(std::move(all), k);
}

std::vector<std::size_t> reverse_neighbors(const NeighborGraph& graph, std::size_t target) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < graph.n(); ++i) {
    const auto& list = graph.neighbors[i];
    if (i == target || std::find(list.begin(), list.end(), target) != list.end()) out.push_back(i);
  }
  return out;
}

}  // namespace maps
