#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "maps/data.hpp"
#include "maps/knn.hpp"
#include "maps/manifold.hpp"

namespace maps {

enum class Metric {
  kResidualVariance,
  kNeighborPreservation,
  kEmbeddingError,
  kOoseError,
  kOoseEmbeddingError,
  kGazeError,
};

const char* to_string(Metric metric);

struct EvalReport {
  Metric metric = Metric::kResidualVariance;
  double value = 0.0;
  std::string dataset;
  std::string algorithm;
  std::size_t m = 0;
  std::size_t k = 0;
  std::size_t dims = 0;
  std::size_t trials = 1;
  double stddev = 0.0;
  std::uint64_t seed = 0;
};

/// 1 - r^2, r the Pearson correlation between reference geodesic distances and
/// embedded Euclidean distances over all unordered pairs.
double residual_variance(const GeodesicDistances& reference, const Matrix& embedded);

/// Percentage of each point's k nearest neighbours in `reference` that are
/// also among its k nearest neighbours in `embedded`.
double neighbor_preservation(const Matrix& reference, const Matrix& embedded, std::size_t k);

/// sum_i || y_i - sum_j w_ij y_j ||^2
double embedding_error(const LleWeights& weights, const Matrix& embedded);

/// Same residual restricted to the given rows.
double embedding_error(const LleWeights& weights, const Matrix& embedded,
                       const std::vector<std::size_t>& rows);

struct ProcrustesResult {
  Matrix aligned;
  double disparity = 0.0;  ///< ||reference - aligned||_F
  double scale = 1.0;
  Matrix rotation;
  Vector translation;
};

/// Similarity transform (translation, orthogonal map incl. reflections,
/// isotropic scale) that best maps `moving` onto `reference`.
ProcrustesResult procrustes_align(const Matrix& reference, const Matrix& moving);

/// Aligns `oose` to `full` and averages the row distances over `test_rows`
/// (all rows when empty).
double oose_error_isomap(const Matrix& full, const Matrix& oose,
                         const std::vector<std::size_t>& test_rows = {});

/// Average OoSE embedding error: for every held-out point i0, the local fit
/// residuals over the points affected by i0 (reverse neighbours plus i0),
/// evaluated on that fold's embedding; summed and divided by n.
double oose_embedding_error(const LleWeights& full_weights,
                            const std::vector<Matrix>& fold_embeddings,
                            const NeighborGraph& full_graph);

}  // namespace maps
