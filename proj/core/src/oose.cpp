#include "maps/oose.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "maps/error.hpp"

namespace maps {

namespace {

std::vector<std::size_t> indices_of(const std::vector<std::pair<std::size_t, double>>& nearest) {
  std::vector<std::size_t> out;
  out.reserve(nearest.size());
  for (const auto& entry : nearest) out.push_back(entry.first);
  return out;
}

// Inserts the held-out row back at position `held` of an (n-1)-row matrix.
Matrix reinsert(const Matrix& train, const Vector& row, std::size_t held) {
  const auto h = static_cast<Eigen::Index>(held);
  Matrix out(train.rows() + 1, train.cols());
  out.topRows(h) = train.topRows(h);
  out.row(h) = row.transpose();
  out.bottomRows(train.rows() - h) = train.bottomRows(train.rows() - h);
  return out;
}

}  // namespace

const char* to_string(OoseMethod method) {
  switch (method) {
    case OoseMethod::kIsomap: return "isomap";
    case OoseMethod::kLle: return "lle";
    case OoseMethod::kGaze: return "gaze";
  }
  return "unknown";
}

OoseMethod parse_oose_method(const std::string& text) {
  if (text == "isomap") return OoseMethod::kIsomap;
  if (text == "lle") return OoseMethod::kLle;
  if (text == "gaze") return OoseMethod::kGaze;
  fail(ErrorKind::kParameter, "unknown OoSE method '" + text + "'");
}

OoseResult lle_oose(const DataMatrix& train, const Embedding& train_embedding,
                    const Eigen::Ref<const Vector>& test, std::size_t k, double reg,
                    const NeighborGraph* train_graph) {
  require(train_embedding.n() == train.n(), ErrorKind::kParameter,
          "training embedding does not match training set");
  const auto nearest = nearest_to(train.points, test, k);
  OoseResult out;
  out.support = indices_of(nearest);
  out.weights = reconstruction_weights(train.points, out.support, test, reg);
  out.y = Vector::Zero(train_embedding.coords.cols());
  for (std::size_t e = 0; e < out.support.size(); ++e)
    out.y += out.weights[e] * train_embedding.coords.row(static_cast<Eigen::Index>(out.support[e])).transpose();

  // Training points that would adopt the test point as a neighbour. The test
  // point takes index n_train, so it loses every distance tie.
  NeighborGraph local;
  if (train_graph == nullptr && k < train.n()) {
    local = knn_graph(train, k);
    train_graph = &local;
  }
  for (std::size_t i = 0; i < train.n(); ++i) {
    const double to_test = (train.points.row(static_cast<Eigen::Index>(i)) - test.transpose()).norm();
    if (train_graph == nullptr || to_test < train_graph->distances[i].back()) out.affected.push_back(i);
  }
  out.affected.push_back(train.n());
  return out;
}

OoseResult isomap_oose(const DataMatrix& train, const GeodesicDistances& geo, const Embedding& embedding,
                       const Eigen::Ref<const Vector>& test, std::size_t k) {
  const auto n = static_cast<Eigen::Index>(train.n());
  require(geo.distances.rows() == n && embedding.coords.rows() == n, ErrorKind::kParameter,
          "geodesics/embedding do not match the training set");
  for (Eigen::Index c = 0; c < embedding.eigenvalues.size(); ++c)
    require(embedding.eigenvalues(c) > 0.0, ErrorKind::kNumerical,
            "Isomap OoSE needs positive eigenvalues; component " + std::to_string(c) + " is not");

  const auto nearest = nearest_to(train.points, test, k);
  Vector to_test = Vector::Constant(n, std::numeric_limits<double>::infinity());
  for (const auto& [v, hop] : nearest)
    to_test = to_test.cwiseMin((geo.distances.row(static_cast<Eigen::Index>(v)).transpose().array() + hop).matrix());
  require(to_test.allFinite(), ErrorKind::kValue, "test point is not connected to the training graph");

  const Vector mean_sq = geo.distances.array().square().colwise().mean().transpose();
  const Vector centered = mean_sq - to_test.array().square().matrix();
  OoseResult out;
  out.y.resize(embedding.coords.cols());
  for (Eigen::Index c = 0; c < embedding.coords.cols(); ++c)
    out.y(c) = embedding.coords.col(c).dot(centered) / (2.0 * embedding.eigenvalues(c));
  out.support = indices_of(nearest);
  out.affected = out.support;
  std::sort(out.affected.begin(), out.affected.end());
  out.affected.push_back(train.n());
  return out;
}

Vector estimate_parameters(const DataMatrix& train, const Eigen::Ref<const Vector>& test, std::size_t k,
                           double reg) {
  require(train.params.has_value() && train.params->cols() >= 1, ErrorKind::kParameter,
          "parameter estimation needs ground-truth params");
  const auto support = indices_of(nearest_to(train.points, test, k));
  const auto weights = reconstruction_weights(train.points, support, test, reg);
  Vector estimate = Vector::Zero(train.params->cols());
  for (std::size_t e = 0; e < support.size(); ++e)
    estimate += weights[e] * train.params->row(static_cast<Eigen::Index>(support[e])).transpose();
  return estimate;
}

FullReference full_reference(const DataMatrix& data, const LeaveOneOutOptions& options, OoseMethod method) {
  FullReference ref;
  ref.graph = knn_graph(data, options.k);
  if (method == OoseMethod::kLle) ref.weights = lle_weights(data, ref.graph, options.reg);
  if (method == OoseMethod::kIsomap) {
    const GeodesicDistances geo = geodesics(data, ref.graph);
    ref.isomap_coords = classical_mds(geo, options.dims).coords;
  }
  return ref;
}

EvalReport leave_one_out(const DataMatrix& data, const Mask& mask, OoseMethod method,
                         const LeaveOneOutOptions& options, const FullReference* reference) {
  const DataMatrix masked = apply_mask(data, mask);
  const std::size_t n = data.n();
  EvalReport report;
  report.m = mask.size();
  report.k = options.k;
  report.dims = options.dims;

  FullReference computed;
  if (reference == nullptr && method != OoseMethod::kGaze) {
    computed = full_reference(data, options, method);
    reference = &computed;
  }

  switch (method) {
    case OoseMethod::kIsomap: {
      report.metric = Metric::kOoseError;
      GeodesicDistances all;
      if (!options.exact_folds) all = geodesics(masked, knn_graph(masked, options.k));
      std::vector<std::size_t> keep(n - 1);
      double total = 0.0;
      for (std::size_t held = 0; held < n; ++held) {
        for (std::size_t j = 0, w = 0; j < n; ++j)
          if (j != held) keep[w++] = j;
        const DataMatrix train = masked.without_row(held);
        const GeodesicDistances geo =
            options.exact_folds ? geodesics(train, knn_graph(train, options.k)) : restrict_to(all, keep);
        const Embedding train_embedding = classical_mds(geo, options.dims);
        const Vector test = masked.points.row(static_cast<Eigen::Index>(held)).transpose();
        const OoseResult extended = isomap_oose(train, geo, train_embedding, test, options.k);
        const Matrix manifold = reinsert(train_embedding.coords, extended.y, held);
        total += oose_error_isomap(reference->isomap_coords, manifold, {held});
      }
      report.value = total / static_cast<double>(n);
      break;
    }
    case OoseMethod::kLle: {
      report.metric = Metric::kOoseEmbeddingError;
      std::vector<Matrix> folds;
      folds.reserve(n);
      for (std::size_t held = 0; held < n; ++held) {
        const DataMatrix train = masked.without_row(held);
        const NeighborGraph graph = knn_graph(train, options.k);
        const Embedding train_embedding = lle_embed(lle_weights(train, graph, options.reg), options.dims);
        const Vector test = masked.points.row(static_cast<Eigen::Index>(held)).transpose();
        const OoseResult extended = lle_oose(train, train_embedding, test, options.k, options.reg, &graph);
        folds.push_back(reinsert(train_embedding.coords, extended.y, held));
      }
      report.value = oose_embedding_error(reference->weights, folds, reference->graph);
      break;
    }
    case OoseMethod::kGaze: {
      report.metric = Metric::kGazeError;
      require(data.params.has_value(), ErrorKind::kParameter, "gaze estimation needs params");
      double total = 0.0;
      for (std::size_t held = 0; held < n; ++held) {
        const DataMatrix train = masked.without_row(held);
        const Vector test = masked.points.row(static_cast<Eigen::Index>(held)).transpose();
        const Vector estimate = estimate_parameters(train, test, options.k, options.reg);
        total += (estimate - data.params->row(static_cast<Eigen::Index>(held)).transpose()).norm();
      }
      report.value = total / static_cast<double>(n);
      break;
    }
  }
  return report;
}

}  // namespace maps
