#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "maps/data.hpp"
#include "maps/knn.hpp"
#include "maps/manifold.hpp"
#include "maps/mask.hpp"
#include "maps/metrics.hpp"

namespace maps {

/// Embedding of a held-out point. `affected` uses training indices, with the
/// test point itself taking index n_train.
struct OoseResult {
  Vector y;
  std::vector<std::size_t> affected;
  std::vector<std::size_t> support;
  std::vector<double> weights;
};

/// LLE extension: reconstruct the test point from its k nearest training
/// points and apply the weights to their embeddings. `train_graph` (k-NN of
/// the training set, same k) is computed when not supplied.
OoseResult lle_oose(const DataMatrix& train, const Embedding& train_embedding,
                    const Eigen::Ref<const Vector>& test, std::size_t k,
                    double reg = kDefaultLleReg,
                    const NeighborGraph* train_graph = nullptr);

/// Landmark-MDS extension for Isomap. Geodesics to the test point route
/// through its k nearest training points.
OoseResult isomap_oose(const DataMatrix& train, const GeodesicDistances& geo,
                       const Embedding& embedding, const Eigen::Ref<const Vector>& test,
                       std::size_t k);

/// Appearance-based parameter estimate: LLE weights of the test point applied
/// to the training parameters.
Vector estimate_parameters(const DataMatrix& train, const Eigen::Ref<const Vector>& test,
                           std::size_t k, double reg = kDefaultLleReg);

enum class OoseMethod { kIsomap, kLle, kGaze };

const char* to_string(OoseMethod method);
OoseMethod parse_oose_method(const std::string& text);

struct LeaveOneOutOptions {
  std::size_t k = 10;
  std::size_t dims = 2;
  double reg = kDefaultLleReg;
  /// Recompute k-NN and geodesics per Isomap fold instead of reusing the
  /// all-point geodesic matrix with row/column i removed.
  bool exact_folds = false;
};

/// Full-data references for leave-one-out scoring; reusable across masks.
struct FullReference {
  NeighborGraph graph;
  LleWeights weights;
  Matrix isomap_coords;  ///< Isomap embedding of the unmasked data
};

FullReference full_reference(const DataMatrix& data, const LeaveOneOutOptions& options,
                             OoseMethod method);

/// Leave-one-out OoSE experiment on masked data, scored with the metric that
/// matches `method`. Report context fields other than metric/value are left
/// for the caller.
EvalReport leave_one_out(const DataMatrix& data, const Mask& mask, OoseMethod method,
                         const LeaveOneOutOptions& options,
                         const FullReference* reference = nullptr);

}  // namespace maps
