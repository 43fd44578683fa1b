#include "maps/manifold.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "maps/error.hpp"

namespace maps {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using Edge = std::pair<std::size_t, double>;

std::vector<std::vector<Edge>> symmetrize(const NeighborGraph& graph) {
  std::vector<std::vector<Edge>> adjacency(graph.n());
  for (std::size_t i = 0; i < graph.n(); ++i)
    for (std::size_t e = 0; e < graph.neighbors[i].size(); ++e) {
      const std::size_t j = graph.neighbors[i][e];
      const double w = graph.distances[i][e];
      adjacency[i].emplace_back(j, w);
      adjacency[j].emplace_back(i, w);
    }
  return adjacency;
}

void dijkstra(const std::vector<std::vector<Edge>>& adjacency, std::size_t source,
              Eigen::Ref<Vector> dist) {
  dist.setConstant(kInf);
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> frontier;
  dist(static_cast<Eigen::Index>(source)) = 0.0;
  frontier.emplace(0.0, source);
  while (!frontier.empty()) {
    const auto [du, u] = frontier.top();
    frontier.pop();
    if (du > dist(static_cast<Eigen::Index>(u))) continue;
    for (const auto& [v, w] : adjacency[u]) {
      const double candidate = du + w;
      if (candidate < dist(static_cast<Eigen::Index>(v))) {
        dist(static_cast<Eigen::Index>(v)) = candidate;
        frontier.emplace(candidate, v);
      }
    }
  }
}

}  // namespace

Matrix LleWeights::dense() const {
  const auto size = static_cast<Eigen::Index>(n());
  Matrix w = Matrix::Zero(size, size);
  for (std::size_t i = 0; i < n(); ++i)
    for (std::size_t e = 0; e < support[i].size(); ++e)
      w(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(support[i][e])) += weights[i][e];
  return w;
}

GeodesicDistances geodesics(const DataMatrix& data, const NeighborGraph& graph) {
  require(graph.n() == data.n(), ErrorKind::kParameter, "neighbour graph does not match dataset size");
  const auto adjacency = symmetrize(graph);
  const auto n = static_cast<Eigen::Index>(graph.n());
  GeodesicDistances geo;
  geo.distances.resize(n, n);
  for (Eigen::Index s = 0; s < n; ++s) dijkstra(adjacency, static_cast<std::size_t>(s), geo.distances.col(s));
  // Path sums may differ in the last bit between directions.
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double value = std::min(geo.distances(i, j), geo.distances(j, i));
      geo.distances(i, j) = value;
      geo.distances(j, i) = value;
    }
  geo.connected = geo.distances.allFinite();
  return geo;
}

std::vector<std::size_t> largest_component(const GeodesicDistances& geo) {
  const std::size_t n = geo.n();
  std::vector<bool> assigned(n, false);
  std::vector<std::size_t> best;
  for (std::size_t i = 0; i < n; ++i) {
    if (assigned[i]) continue;
    std::vector<std::size_t> component;
    for (std::size_t j = 0; j < n; ++j)
      if (std::isfinite(geo.distances(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)))) {
        component.push_back(j);
        assigned[j] = true;
      }
    if (component.size() > best.size()) best = std::move(component);
  }
  return best;
}

GeodesicDistances restrict_to(const GeodesicDistances& geo, const std::vector<std::size_t>& keep) {
  const auto size = static_cast<Eigen::Index>(keep.size());
  GeodesicDistances out;
  out.distances.resize(size, size);
  for (Eigen::Index a = 0; a < size; ++a)
    for (Eigen::Index b = 0; b < size; ++b)
      out.distances(a, b) = geo.distances(static_cast<Eigen::Index>(keep[static_cast<std::size_t>(a)]),
                                          static_cast<Eigen::Index>(keep[static_cast<std::size_t>(b)]));
  out.connected = out.distances.allFinite();
  return out;
}

void canonicalize_signs(Matrix& vectors) {
  for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
    Eigen::Index arg = 0;
    vectors.col(c).cwiseAbs().maxCoeff(&arg);
    if (vectors(arg, c) < 0.0) vectors.col(c) *= -1.0;
  }
}

Embedding classical_mds(const GeodesicDistances& geo, std::size_t dims) {
  const std::size_t n = geo.n();
  require(geo.connected, ErrorKind::kValue,
          "geodesic graph is disconnected; rerun on the largest connected component");
  require(dims >= 1 && dims < n, ErrorKind::kParameter,
          "embedding dimension must lie in [1, n-1]; got " + std::to_string(dims));

  const Matrix squared = geo.distances.array().square().matrix();
  const Vector row_mean = squared.rowwise().mean();
  const double grand_mean = row_mean.mean();
  Matrix gram = squared;
  gram.colwise() -= row_mean;
  gram.rowwise() -= row_mean.transpose();
  gram.array() += grand_mean;
  gram *= -0.5;

  Eigen::SelfAdjointEigenSolver<Matrix> solver(gram);
  require(solver.info() == Eigen::Success, ErrorKind::kNumerical, "MDS eigendecomposition failed");
  const Vector& values = solver.eigenvalues();
  const auto count = static_cast<Eigen::Index>(n);
  const auto l = static_cast<Eigen::Index>(dims);
  const double top = std::max(values(count - 1), 0.0);

  Embedding out;
  Matrix vectors(count, l);
  out.eigenvalues.resize(l);
  Eigen::Index positive = 0;
  for (Eigen::Index c = 0; c < l; ++c) {
    const double value = values(count - 1 - c);
    vectors.col(c) = solver.eigenvectors().col(count - 1 - c);
    out.eigenvalues(c) = std::max(value, 0.0);
    if (value > 1e-12 * top && value > 0.0) ++positive;
  }
  if (positive < l)
    out.warnings.push_back("requested " + std::to_string(dims) + " dimensions but only " +
                           std::to_string(positive) + " positive eigenvalues; trailing columns are zero");
  canonicalize_signs(vectors);
  out.coords = vectors * out.eigenvalues.cwiseSqrt().asDiagonal();
  for (Eigen::Index c = positive; c < l; ++c) {
    out.coords.col(c).setZero();
    out.eigenvalues(c) = 0.0;
  }
  return out;
}

IsomapResult isomap(const DataMatrix& data, std::size_t k, std::size_t dims, bool largest) {
  const NeighborGraph graph = knn_graph(data, k);
  IsomapResult result;
  result.geodesic = geodesics(data, graph);
  result.kept.resize(data.n());
  for (std::size_t i = 0; i < data.n(); ++i) result.kept[i] = i;
  if (!result.geodesic.connected && largest) {
    result.kept = largest_component(result.geodesic);
    result.geodesic = restrict_to(result.geodesic, result.kept);
  }
  result.embedding = classical_mds(result.geodesic, dims);
  return result;
}

std::vector<double> reconstruction_weights(const Matrix& points,
                                           const std::vector<std::size_t>& support,
                                           const Eigen::Ref<const Vector>& query, double reg) {
  require(reg >= 0.0, ErrorKind::kParameter, "regularisation must be non-negative");
  const auto k = static_cast<Eigen::Index>(support.size());
  Matrix local(k, points.cols());
  for (Eigen::Index e = 0; e < k; ++e)
    local.row(e) = points.row(static_cast<Eigen::Index>(support[static_cast<std::size_t>(e)])) - query.transpose();
  Matrix gram = local * local.transpose();
  const double trace = gram.trace();
  gram.diagonal().array() += trace > 0.0 ? reg * trace / static_cast<double>(k) : reg;

  const Vector w = gram.ldlt().solve(Vector::Ones(k));
  const double total = w.sum();
  require(w.allFinite() && total != 0.0 && std::isfinite(total), ErrorKind::kNumerical,
          "local weight system is singular");
  std::vector<double> out(static_cast<std::size_t>(k));
  for (Eigen::Index e = 0; e < k; ++e) out[static_cast<std::size_t>(e)] = w(e) / total;
  return out;
}

LleWeights lle_weights(const DataMatrix& data, const NeighborGraph& graph, double reg) {
  require(graph.n() == data.n(), ErrorKind::kParameter, "neighbour graph does not match dataset size");
  LleWeights out;
  out.support = graph.neighbors;
  out.weights.resize(graph.n());
  for (std::size_t i = 0; i < graph.n(); ++i) {
    try {
      out.weights[i] = reconstruction_weights(data.points, graph.neighbors[i],
                                              data.points.row(static_cast<Eigen::Index>(i)).transpose(), reg);
    } catch (const Error& e) {
      fail(e.kind(), "point " + std::to_string(i) + ": " + e.what());
    }
  }
  return out;
}

namespace {

// Orthonormal basis of the complement of the constant vector within the
// span of `basis` (columns orthonormal).
Matrix deflate_constant(const Matrix& basis) {
  const auto n = basis.rows();
  const Vector ones = Vector::Ones(n) / std::sqrt(static_cast<double>(n));
  Matrix projected = basis - ones * (ones.transpose() * basis);
  Eigen::JacobiSVD<Matrix> svd(projected, Eigen::ComputeThinU);
  return svd.matrixU().leftCols(basis.cols() - 1);
}

}  // namespace

Embedding lle_embed(const LleWeights& weights, std::size_t dims) {
  const std::size_t n = weights.n();
  require(dims >= 1 && dims + 2 <= n, ErrorKind::kParameter,
          "LLE embedding dimension must lie in [1, n-2]; got " + std::to_string(dims));
  const auto size = static_cast<Eigen::Index>(n);
  const Matrix residual = Matrix::Identity(size, size) - weights.dense();
  const Matrix cost = residual.transpose() * residual;

  Eigen::SelfAdjointEigenSolver<Matrix> solver(cost);
  require(solver.info() == Eigen::Success, ErrorKind::kNumerical, "LLE eigendecomposition failed");
  const Vector& values = solver.eigenvalues();
  const Matrix& vectors = solver.eigenvectors();
  const double cutoff = 1e-10 * values(size - 1);

  Eigen::Index near_null = 0;
  while (near_null < size && values(near_null) < cutoff) ++near_null;

  Eigen::Index constant = -1;
  for (Eigen::Index c = 0; c < near_null && constant < 0; ++c) {
    const auto v = vectors.col(c);
    if ((v.array() - v.mean()).abs().maxCoeff() <= 1e-6) constant = c;
  }

  const auto l = static_cast<Eigen::Index>(dims);
  Matrix chosen(size, l);
  Embedding out;
  out.eigenvalues.resize(l);
  if (constant >= 0) {
    Eigen::Index filled = 0;
    for (Eigen::Index c = 0; filled < l; ++c) {
      if (c == constant) continue;
      chosen.col(filled) = vectors.col(c);
      out.eigenvalues(filled++) = values(c);
    }
  } else {
    // Several null modes with the constant mixed in: split it off explicitly.
    require(near_null >= 1, ErrorKind::kNumerical, "no null vector found for the LLE cost matrix");
    const Matrix null_basis = deflate_constant(vectors.leftCols(near_null));
    out.warnings.push_back("LLE cost matrix has " + std::to_string(near_null) +
                           " null modes; the neighbourhood graph is likely disconnected");
    Eigen::Index filled = 0;
    for (Eigen::Index c = 0; c < null_basis.cols() && filled < l; ++c) {
      chosen.col(filled) = null_basis.col(c);
      out.eigenvalues(filled++) = 0.0;
    }
    for (Eigen::Index c = near_null; filled < l; ++c) {
      chosen.col(filled) = vectors.col(c);
      out.eigenvalues(filled++) = values(c);
    }
  }
  // Close bottom eigenvalues leave the chosen vectors slightly mixed with the
  // constant mode; remove it and re-orthonormalize.
  chosen.rowwise() -= chosen.colwise().mean();
  Eigen::HouseholderQR<Matrix> qr(chosen);
  Matrix q = qr.householderQ() * Matrix::Identity(size, l);
  for (Eigen::Index c = 0; c < l; ++c)
    if (q.col(c).dot(chosen.col(c)) < 0.0) q.col(c) *= -1.0;
  canonicalize_signs(q);
  out.coords = q * std::sqrt(static_cast<double>(n));
  return out;
}

Embedding pca_embed(const DataMatrix& data, std::size_t m) {
  const std::size_t limit = std::min(data.n() - 1, data.d());
  require(m >= 1 && m <= limit, ErrorKind::kParameter,
          "PCA dimension must lie in [1, " + std::to_string(limit) + "]");
  const Matrix centered = data.points.rowwise() - data.points.colwise().mean();
  const Matrix covariance = centered.transpose() * centered / static_cast<double>(data.n() - 1);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(covariance);
  require(solver.info() == Eigen::Success, ErrorKind::kNumerical, "PCA eigendecomposition failed");
  const auto d = static_cast<Eigen::Index>(data.d());
  const auto l = static_cast<Eigen::Index>(m);
  Matrix basis(d, l);
  Embedding out;
  out.eigenvalues.resize(l);
  for (Eigen::Index c = 0; c < l; ++c) {
    basis.col(c) = solver.eigenvectors().col(d - 1 - c);
    out.eigenvalues(c) = std::max(solver.eigenvalues()(d - 1 - c), 0.0);
  }
  canonicalize_signs(basis);
  out.coords = centered * basis;
  return out;
}

}  // namespace maps
