#include <random>

#include <gtest/gtest.h>

#include "maps/error.hpp"
#include "maps/manifold.hpp"
#include "maps/metrics.hpp"
#include "maps/synth.hpp"
#include "oracles.hpp"

namespace maps {
namespace {

DataMatrix line_data(std::size_t n, double spacing_growth = 0.0) {
  Matrix x(static_cast<Eigen::Index>(n), 1);
  double pos = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    x(static_cast<Eigen::Index>(i), 0) = pos;
    pos += 1.0 + spacing_growth * static_cast<double>(i);
  }
  return make_data(x);
}

TEST(Geodesics, PathThroughMiddlePoint) {
  const DataMatrix x = line_data(3);
  const GeodesicDistances geo = geodesics(x, knn_graph(x, 1));
  EXPECT_TRUE(geo.connected);
  EXPECT_DOUBLE_EQ(geo.distances(0, 2), 2.0);
  EXPECT_DOUBLE_EQ(geo.distances(2, 0), 2.0);
}

TEST(Geodesics, CompleteGraphIsEuclidean) {
  std::mt19937_64 rng(51);
  const DataMatrix x = make_data(testing::random_matrix(12, 3, rng));
  const GeodesicDistances geo = geodesics(x, knn_graph(x, 11));
  EXPECT_TRUE(geo.distances.isApprox(testing::distances(x.points), 1e-12));
}

TEST(Geodesics, BoundedBelowByEuclideanOnSwissRoll) {
  const DataMatrix x = synth_dataset(SynthKind::kSwissRoll, 300, 3);
  const GeodesicDistances geo = geodesics(x, knn_graph(x, 8));
  ASSERT_TRUE(geo.connected);
  const Matrix euclid = testing::distances(x.points);
  EXPECT_TRUE((geo.distances - geo.distances.transpose()).isZero(0.0));
  EXPECT_TRUE(geo.distances.diagonal().isZero(0.0));
  for (Eigen::Index i = 0; i < 300; ++i)
    for (Eigen::Index j = 0; j < 300; ++j) EXPECT_GE(geo.distances(i, j), euclid(i, j) * (1 - 1e-12));
  // Triangle inequality over graph paths.
  for (Eigen::Index i = 0; i < 300; i += 37)
    for (Eigen::Index j = 0; j < 300; j += 23)
      for (Eigen::Index l = 0; l < 300; l += 29)
        EXPECT_LE(geo.distances(i, j), geo.distances(i, l) + geo.distances(l, j) + 1e-9);
}

TEST(Geodesics, DisconnectedIsReported) {
  Matrix x(4, 1);
  x << 0, 1, 100, 101;
  const DataMatrix data = make_data(x);
  const GeodesicDistances geo = geodesics(data, knn_graph(data, 1));
  EXPECT_FALSE(geo.connected);
  EXPECT_TRUE(std::isinf(geo.distances(0, 2)));
  EXPECT_THROW(classical_mds(geo, 1), Error);
  EXPECT_EQ(largest_component(geo), (std::vector<std::size_t>{0, 1}));
  const IsomapResult iso = isomap(data, 1, 1, true);
  EXPECT_EQ(iso.kept, (std::vector<std::size_t>{0, 1}));
}

TEST(ClassicalMds, RightTriangleDistancesReproduced) {
  Matrix x(3, 2);
  x << 0, 0, 3, 0, 0, 4;
  GeodesicDistances geo{testing::distances(x), true};
  const Embedding y = classical_mds(geo, 2);
  EXPECT_TRUE(testing::distances(y.coords).isApprox(geo.distances, 1e-9));
  EXPECT_GE(y.eigenvalues(0), y.eigenvalues(1));
}

TEST(ClassicalMds, LineRecoveredUpToSignAndShift) {
  const DataMatrix x = line_data(8, 0.5);
  GeodesicDistances geo{testing::distances(x.points), true};
  const Embedding y = classical_mds(geo, 1);
  const Vector centered = x.points.col(0).array() - x.points.col(0).mean();
  const double sign = y.coords(0, 0) * centered(0) > 0 ? 1.0 : -1.0;
  EXPECT_TRUE((sign * y.coords.col(0)).isApprox(centered, 1e-9));
}

TEST(ClassicalMds, ExtraDimensionsWarn) {
  const DataMatrix x = line_data(5);
  GeodesicDistances geo{testing::distances(x.points), true};
  const Embedding y = classical_mds(geo, 3);
  EXPECT_FALSE(y.warnings.empty());
  EXPECT_TRUE(y.coords.col(2).isZero(0.0));
  EXPECT_THROW(classical_mds(geo, 5), Error);
}

TEST(ClassicalMds, SignConventionLargestEntryPositive) {
  std::mt19937_64 rng(52);
  const DataMatrix x = make_data(testing::random_matrix(20, 3, rng));
  const Embedding y = classical_mds(GeodesicDistances{testing::distances(x.points), true}, 3);
  for (Eigen::Index c = 0; c < 3; ++c) {
    Eigen::Index arg;
    y.coords.col(c).cwiseAbs().maxCoeff(&arg);
    EXPECT_GT(y.coords(arg, c), 0.0);
  }
}

TEST(Isomap, CompleteGraphMatchesEuclideanMds) {
  std::mt19937_64 rng(53);
  const DataMatrix x = make_data(testing::random_matrix(15, 2, rng));
  const IsomapResult iso = isomap(x, 14, 2);
  const Embedding mds = classical_mds(GeodesicDistances{testing::distances(x.points), true}, 2);
  EXPECT_TRUE(iso.embedding.coords.isApprox(mds.coords, 1e-8));
}

TEST(Isomap, SwissRollRecoversParameters) {
  const DataMatrix x = synth_dataset(SynthKind::kSwissRoll, 500, 7);
  const IsomapResult iso = isomap(x, 10, 2);
  EXPECT_LT(residual_variance(iso.geodesic, iso.embedding.coords), 0.05);
  const Matrix& params = *x.params;
  const ProcrustesResult fit = procrustes_align(params, iso.embedding.coords);
  const double spread = (params.rowwise() - params.colwise().mean()).norm();
  EXPECT_LT(fit.disparity / spread, 0.1);
}

TEST(Isomap, TranslatingBlobResidualVariance) {
  const DataMatrix x = synth_dataset(SynthKind::kTranslatingBlob, 100, 2);
  const IsomapResult iso = isomap(x, 10, 2);
  EXPECT_LT(residual_variance(iso.geodesic, iso.embedding.coords), 0.1);
}

TEST(LleWeights, MidpointGetsHalfHalf) {
  Matrix x(3, 2);
  x << 0, 0, 2, 2, 1, 1;
  const DataMatrix data = make_data(x);
  const LleWeights w = lle_weights(data, knn_graph(data, 2));
  EXPECT_NEAR(w.weights[2][0], 0.5, 1e-6);
  EXPECT_NEAR(w.weights[2][1], 0.5, 1e-6);
}

TEST(LleWeights, BarycentricOnSegment) {
  for (double t : {0.1, 0.25, 0.4}) {
    Matrix x(3, 1);
    x << 0, 1, t;
    const DataMatrix data = make_data(x);
    const LleWeights w = lle_weights(data, knn_graph(data, 2), 1e-10);
    // neighbours of point 2 in order of distance
    const auto& support = w.support[2];
    for (std::size_t e = 0; e < 2; ++e) {
      const double expected = support[e] == 0 ? 1.0 - t : t;
      EXPECT_NEAR(w.weights[2][e], expected, 1e-6);
    }
  }
}

TEST(LleWeights, BeatsUniformWeightsAndSumsToOne) {
  std::mt19937_64 rng(54);
  const DataMatrix x = make_data(testing::random_matrix(40, 5, rng));
  const NeighborGraph g = knn_graph(x, 5);
  const LleWeights w = lle_weights(x, g);
  LleWeights uniform = w;
  for (auto& row : uniform.weights) std::fill(row.begin(), row.end(), 0.2);
  EXPECT_LE(embedding_error(w, x.points), embedding_error(uniform, x.points));
  for (std::size_t i = 0; i < 40; ++i) {
    double s = 0.0;
    for (double v : w.weights[i]) s += v;
    EXPECT_NEAR(s, 1.0, 1e-12);
    EXPECT_EQ(w.support[i], g.neighbors[i]);
  }
}

TEST(LleEmbed, ConstraintsAndTraceIdentity) {
  std::mt19937_64 rng(55);
  for (int trial = 0; trial < 3; ++trial) {
    const DataMatrix x = make_data(testing::random_matrix(60, 4, rng));
    const LleWeights w = lle_weights(x, knn_graph(x, 6));
    const Embedding y = lle_embed(w, 2);
    const double n = 60.0;
    EXPECT_LT(y.coords.colwise().mean().cwiseAbs().maxCoeff(), 1e-8);
    EXPECT_TRUE(((y.coords.transpose() * y.coords) / n).isApprox(Matrix::Identity(2, 2), 1e-6));
    const double err = embedding_error(w, y.coords);
    EXPECT_NEAR(err, n * y.eigenvalues.sum(), 1e-6 * std::max(1.0, err));
  }
}

TEST(LleEmbed, LineIsMonotone) {
  const DataMatrix x = line_data(30, 0.05);
  const Embedding y = lle_embed(lle_weights(x, knn_graph(x, 4)), 1);
  bool increasing = true, decreasing = true;
  for (Eigen::Index i = 1; i < 30; ++i) {
    increasing &= y.coords(i, 0) > y.coords(i - 1, 0);
    decreasing &= y.coords(i, 0) < y.coords(i - 1, 0);
  }
  EXPECT_TRUE(increasing || decreasing);
}

TEST(LleEmbed, DimensionOutOfRange) {
  const DataMatrix x = line_data(5);
  EXPECT_THROW(lle_embed(lle_weights(x, knn_graph(x, 2)), 4), Error);
}

TEST(PcaEmbed, RankOneCapturesAllVariance) {
  Matrix x(10, 3);
  for (Eigen::Index i = 0; i < 10; ++i) x.row(i) << 1.0 * static_cast<double>(i), 2.0 * static_cast<double>(i), -1.0 * static_cast<double>(i);
  const DataMatrix data = make_data(x);
  const Embedding y = pca_embed(data, 1);
  const double total = (x.rowwise() - x.colwise().mean()).squaredNorm();
  EXPECT_NEAR(y.coords.squaredNorm(), total, 1e-9 * total);
}

TEST(PcaEmbed, FullRotationPreservesDistancesAndOrdersVariance) {
  std::mt19937_64 rng(56);
  Matrix x = testing::random_matrix(30, 4, rng);
  x.col(1) *= 3.0;
  x.col(3) *= 0.2;
  const DataMatrix data = make_data(x);
  const Embedding y = pca_embed(data, 4);
  EXPECT_TRUE(testing::distances(y.coords).isApprox(testing::distances(x), 1e-10));
  for (Eigen::Index c = 1; c < 4; ++c)
    EXPECT_GE(y.coords.col(c - 1).squaredNorm(), y.coords.col(c).squaredNorm() * (1 - 1e-12));
  EXPECT_THROW(pca_embed(data, 5), Error);
}

}  // namespace
}  // namespace maps
