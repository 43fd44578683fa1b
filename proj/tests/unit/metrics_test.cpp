#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "maps/error.hpp"
#include "maps/manifold.hpp"
#include "maps/metrics.hpp"
#include "oracles.hpp"

namespace maps {
namespace {

GeodesicDistances euclid(const Matrix& x) { return GeodesicDistances{testing::distances(x), true}; }

TEST(ResidualVariance, ZeroForExactAndScaledCopies) {
  std::mt19937_64 rng(61);
  const Matrix x = testing::random_matrix(25, 3, rng);
  EXPECT_NEAR(residual_variance(euclid(x), x), 0.0, 1e-12);
  EXPECT_NEAR(residual_variance(euclid(x), 4.0 * x), 0.0, 1e-12);
  const Matrix q = testing::random_orthogonal(3, rng);
  Matrix moved = x * q;
  moved.rowwise() += Eigen::RowVectorXd::Constant(3, 7.0);
  EXPECT_NEAR(residual_variance(euclid(x), moved), 0.0, 1e-12);
}

TEST(ResidualVariance, InUnitIntervalAndZeroVarianceIsError) {
  std::mt19937_64 rng(62);
  const Matrix x = testing::random_matrix(20, 4, rng);
  const Matrix y = testing::random_matrix(20, 2, rng);
  const double rv = residual_variance(euclid(x), y);
  EXPECT_GE(rv, 0.0);
  EXPECT_LE(rv, 1.0);
  EXPECT_THROW(residual_variance(euclid(x), Matrix::Zero(20, 2)), Error);
}

TEST(NeighborPreservation, FullForIsometry) {
  std::mt19937_64 rng(63);
  const Matrix x = testing::random_matrix(40, 3, rng);
  EXPECT_DOUBLE_EQ(neighbor_preservation(x, x * testing::random_orthogonal(3, rng), 5), 100.0);
}

TEST(NeighborPreservation, RandomEmbeddingMatchesChance) {
  std::mt19937_64 rng(64);
  const std::size_t n = 100, k = 20;
  const Matrix x = testing::random_matrix(n, 3, rng);
  double total = 0.0;
  const int trials = 200;
  for (int t = 0; t < trials; ++t) total += neighbor_preservation(x, testing::random_matrix(n, 3, rng), k);
  // chance level: k of the n-1 candidates are neighbours
  EXPECT_NEAR(total / trials, 100.0 * static_cast<double>(k) / static_cast<double>(n - 1), 1.0);
}

TEST(EmbeddingError, WeightsApplyToTheirOwnData) {
  std::mt19937_64 rng(65);
  const DataMatrix x = make_data(testing::random_matrix(30, 3, rng));
  const LleWeights w = lle_weights(x, knn_graph(x, 4));
  const Matrix y = testing::random_matrix(30, 2, rng);
  // manual sum
  double manual = 0.0;
  for (std::size_t i = 0; i < 30; ++i) {
    Eigen::RowVectorXd r = y.row(static_cast<Eigen::Index>(i));
    for (std::size_t e = 0; e < w.support[i].size(); ++e)
      r -= w.weights[i][e] * y.row(static_cast<Eigen::Index>(w.support[i][e]));
    manual += r.squaredNorm();
  }
  EXPECT_NEAR(embedding_error(w, y), manual, 1e-10 * manual);
  // Dense matrix form: ||(I - W) Y||^2
  const Matrix iw = Matrix::Identity(30, 30) - w.dense();
  EXPECT_NEAR((iw * y).squaredNorm(), manual, 1e-10 * manual);
  std::vector<std::size_t> all(30);
  std::iota(all.begin(), all.end(), 0);
  EXPECT_NEAR(embedding_error(w, y, all), manual, 1e-10 * manual);
  // constant shift is invisible because each weight row sums to one
  Matrix shifted = y;
  shifted.rowwise() += Eigen::RowVector2d(3.0, -1.0);
  EXPECT_NEAR(embedding_error(w, shifted), manual, 1e-9 * manual);
}

TEST(Procrustes, RecoversSimilarityTransform) {
  std::mt19937_64 rng(66);
  const Matrix ref = testing::random_matrix(30, 3, rng);
  const Matrix q = testing::random_orthogonal(3, rng);
  Matrix mov = 2.5 * ref * q;
  mov.rowwise() += Eigen::RowVector3d(1.0, -2.0, 0.5);
  const ProcrustesResult fit = procrustes_align(ref, mov);
  EXPECT_LT(fit.disparity, 1e-8);
  EXPECT_NEAR(fit.scale, 0.4, 1e-10);
  EXPECT_TRUE(fit.aligned.isApprox(ref, 1e-10));
}

TEST(Procrustes, IdentityAndNoWorseThanTranslation) {
  std::mt19937_64 rng(67);
  const Matrix ref = testing::random_matrix(20, 2, rng);
  EXPECT_LT(procrustes_align(ref, ref).disparity, 1e-10);
  const Matrix mov = testing::random_matrix(20, 2, rng);
  const Matrix rc = ref.rowwise() - ref.colwise().mean();
  const Matrix mc = mov.rowwise() - mov.colwise().mean();
  EXPECT_LE(procrustes_align(ref, mov).disparity, (rc - mc).norm() + 1e-12);
}

TEST(OoseMetrics, ZeroOnCopies) {
  std::mt19937_64 rng(68);
  const Matrix full = testing::random_matrix(15, 2, rng);
  EXPECT_LT(oose_error_isomap(full, full), 1e-10);
  EXPECT_LT(oose_error_isomap(full, full, {3, 7}), 1e-10);

  const DataMatrix x = make_data(testing::random_matrix(15, 3, rng));
  const NeighborGraph g = knn_graph(x, 4);
  const LleWeights w = lle_weights(x, g);
  const Embedding y = lle_embed(w, 2);
  const std::vector<Matrix> folds(15, y.coords);
  const double base = embedding_error(w, y.coords);
  const double oose = oose_embedding_error(w, folds, g);
  EXPECT_GE(oose, 0.0);
  EXPECT_LE(oose, base + 1e-12);
}

}  // namespace
}  // namespace maps
