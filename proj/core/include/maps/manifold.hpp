#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "maps/data.hpp"
#include "maps/knn.hpp"

namespace maps {

/// All-pairs shortest paths over the OR-symmetrised k-NN graph.
struct GeodesicDistances {
  Matrix distances;  ///< n x n; +inf between components
  bool connected = false;

  std::size_t n() const { return static_cast<std::size_t>(distances.rows()); }
};

struct Embedding {
  Matrix coords;       ///< n x l
  Vector eigenvalues;  ///< one spectral value per column
  std::vector<std::string> warnings;

  std::size_t n() const { return static_cast<std::size_t>(coords.rows()); }
  std::size_t dims() const { return static_cast<std::size_t>(coords.cols()); }
};

/// Row-stochastic reconstruction weights; row i is supported on N_k(i).
struct LleWeights {
  std::vector<std::vector<std::size_t>> support;
  std::vector<std::vector<double>> weights;

  std::size_t n() const { return support.size(); }
  /// Dense n x n form, for tests and the spectral step.
  Matrix dense() const;
};

inline constexpr double kDefaultLleReg = 1e-3;

GeodesicDistances geodesics(const DataMatrix& data, const NeighborGraph& graph);

/// Indices of the largest connected component (lowest indices win ties).
std::vector<std::size_t> largest_component(const GeodesicDistances& geo);

/// Restricts a distance matrix to the given indices.
GeodesicDistances restrict_to(const GeodesicDistances& geo, const std::vector<std::size_t>& keep);

/// Flips each column so that its largest-magnitude entry is positive.
void canonicalize_signs(Matrix& vectors);

/// Classical MDS on a (geodesic) distance matrix; top-l eigenpairs of the
/// double-centred squared distances, eigenvalues clamped at zero.
Embedding classical_mds(const GeodesicDistances& geo, std::size_t dims);

struct IsomapResult {
  Embedding embedding;
  GeodesicDistances geodesic;
  std::vector<std::size_t> kept;  ///< rows of the input that were embedded
};

/// knn_graph -> geodesics -> classical_mds. With `largest_component` set a
/// disconnected graph is reduced to its largest component instead of failing.
IsomapResult isomap(const DataMatrix& data, std::size_t k, std::size_t dims,
                    bool largest_component = false);

/// Local reconstruction weights. Each local Gram matrix is conditioned with
/// reg * trace(C) / k on the diagonal (reg alone if the trace is zero).
LleWeights lle_weights(const DataMatrix& data, const NeighborGraph& graph,
                       double reg = kDefaultLleReg);

/// Weights reconstructing `query` from the given rows of `points`.
std::vector<double> reconstruction_weights(const Matrix& points,
                                           const std::vector<std::size_t>& support,
                                           const Eigen::Ref<const Vector>& query, double reg);

/// Bottom eigenvectors of (I - W)^T (I - W) after dropping the constant one,
/// scaled by sqrt(n) so that (1/n) Y^T Y = I.
Embedding lle_embed(const LleWeights& weights, std::size_t dims);

/// Projection of the centred data onto the top-m covariance eigenvectors.
Embedding pca_embed(const DataMatrix& data, std::size_t m);

}  // namespace maps
