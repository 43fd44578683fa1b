#include "maps/metrics.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>

#include "maps/error.hpp"

namespace maps {

const char* to_string(Metric metric) {
  switch (metric) {
    case Metric::kResidualVariance: return "residual_variance";
    case Metric::kNeighborPreservation: return "neighbor_preservation";
    case Metric::kEmbeddingError: return "embedding_error";
    case Metric::kOoseError: return "oose_error";
    case Metric::kOoseEmbeddingError: return "oose_embedding_error";
    case Metric::kGazeError: return "gaze_error";
  }
  return "unknown";
}

double residual_variance(const GeodesicDistances& reference, const Matrix& embedded) {
  const auto n = reference.distances.rows();
  require(embedded.rows() == n, ErrorKind::kParameter, "embedding and reference sizes differ");
  require(reference.connected, ErrorKind::kValue, "reference geodesics are disconnected");
  // Two-pass Pearson correlation over the upper triangle.
  double mean_a = 0.0, mean_b = 0.0;
  std::size_t count = 0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) {
      mean_a += reference.distances(i, j);
      mean_b += (embedded.row(i) - embedded.row(j)).norm();
      ++count;
    }
  require(count > 0, ErrorKind::kParameter, "need at least two points");
  mean_a /= static_cast<double>(count);
  mean_b /= static_cast<double>(count);
  double cov = 0.0, var_a = 0.0, var_b = 0.0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double a = reference.distances(i, j) - mean_a;
      const double b = (embedded.row(i) - embedded.row(j)).norm() - mean_b;
      cov += a * b;
      var_a += a * a;
      var_b += b * b;
    }
  require(var_a > 0.0 && var_b > 0.0, ErrorKind::kValue,
          "correlation undefined: a distance vector has zero variance");
  const double r = cov / std::sqrt(var_a * var_b);
  return std::clamp(1.0 - r * r, 0.0, 1.0);
}

double neighbor_preservation(const Matrix& reference, const Matrix& embedded, std::size_t k) {
  require(reference.rows() == embedded.rows(), ErrorKind::kParameter, "point counts differ");
  const NeighborGraph full = knn_graph(reference, k);
  const NeighborGraph low = knn_graph(embedded, k);
  double total = 0.0;
  for (std::size_t i = 0; i < full.n(); ++i) {
    auto a = full.neighbors[i];
    auto b = low.neighbors[i];
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::vector<std::size_t> common;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
    total += static_cast<double>(common.size()) / static_cast<double>(k);
  }
  return 100.0 * total / static_cast<double>(full.n());
}

double embedding_error(const LleWeights& weights, const Matrix& embedded,
                       const std::vector<std::size_t>& rows) {
  require(static_cast<std::size_t>(embedded.rows()) == weights.n(), ErrorKind::kParameter,
          "embedding and weights sizes differ");
  double total = 0.0;
  Eigen::RowVectorXd fit(embedded.cols());
  for (std::size_t i : rows) {
    fit = embedded.row(static_cast<Eigen::Index>(i));
    for (std::size_t e = 0; e < weights.support[i].size(); ++e)
      fit -= weights.weights[i][e] * embedded.row(static_cast<Eigen::Index>(weights.support[i][e]));
    total += fit.squaredNorm();
  }
  return total;
}

double embedding_error(const LleWeights& weights, const Matrix& embedded) {
  std::vector<std::size_t> rows(weights.n());
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
  return embedding_error(weights, embedded, rows);
}

ProcrustesResult procrustes_align(const Matrix& reference, const Matrix& moving) {
  require(reference.rows() == moving.rows() && reference.cols() == moving.cols(), ErrorKind::kParameter,
          "Procrustes inputs must have the same shape");
  const Eigen::RowVectorXd ref_mean = reference.colwise().mean();
  const Eigen::RowVectorXd mov_mean = moving.colwise().mean();
  const Matrix ref_c = reference.rowwise() - ref_mean;
  const Matrix mov_c = moving.rowwise() - mov_mean;
  const double mov_norm2 = mov_c.squaredNorm();
  require(mov_norm2 > 0.0, ErrorKind::kValue, "Procrustes: moving configuration is degenerate");

  Eigen::JacobiSVD<Matrix> svd(mov_c.transpose() * ref_c, Eigen::ComputeFullU | Eigen::ComputeFullV);
  ProcrustesResult out;
  out.rotation = svd.matrixU() * svd.matrixV().transpose();
  out.scale = svd.singularValues().sum() / mov_norm2;
  out.translation = (ref_mean - out.scale * mov_mean * out.rotation).transpose();
  out.aligned = (out.scale * moving * out.rotation).rowwise() + out.translation.transpose();
  out.disparity = (reference - out.aligned).norm();
  return out;
}

double oose_error_isomap(const Matrix& full, const Matrix& oose, const std::vector<std::size_t>& test_rows) {
  const ProcrustesResult fit = procrustes_align(full, oose);
  double total = 0.0;
  if (test_rows.empty()) {
    for (Eigen::Index i = 0; i < full.rows(); ++i) total += (full.row(i) - fit.aligned.row(i)).norm();
    return total / static_cast<double>(full.rows());
  }
  for (std::size_t i : test_rows) {
    const auto r = static_cast<Eigen::Index>(i);
    total += (full.row(r) - fit.aligned.row(r)).norm();
  }
  return total / static_cast<double>(test_rows.size());
}

double oose_embedding_error(const LleWeights& full_weights, const std::vector<Matrix>& fold_embeddings,
                            const NeighborGraph& full_graph) {
  const std::size_t n = full_weights.n();
  require(fold_embeddings.size() == n && full_graph.n() == n, ErrorKind::kParameter,
          "need one fold embedding per point");
  double total = 0.0;
  for (std::size_t held = 0; held < n; ++held)
    total += embedding_error(full_weights, fold_embeddings[held], reverse_neighbors(full_graph, held));
  return total / static_cast<double>(n);
}

}  // namespace maps
