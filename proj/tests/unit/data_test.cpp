#include <filesystem>
#include <fstream>
#include <random>

#include <gtest/gtest.h>

#include "maps/data.hpp"
#include "maps/error.hpp"
#include "maps/knn.hpp"
#include "maps/synth.hpp"
#include "oracles.hpp"

namespace maps {
namespace {

namespace fs = std::filesystem;

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected maps::Error";
  return ErrorKind::kIo;
}

class TempDir : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("maps_data_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write(const std::string& name, const std::string& text) {
    const auto path = dir_ / name;
    std::ofstream(path, std::ios::binary) << text;
    return path;
  }

  fs::path dir_;
};

using LoadDataset = TempDir;

TEST_F(LoadDataset, ParsesCsv) {
  const auto path = write("tri.csv", "0,0\n1,0\n0,1");
  const DataMatrix data = load_dataset(path, DataFormat::kCsv);
  EXPECT_EQ(data.n(), 3u);
  EXPECT_EQ(data.d(), 2u);
  EXPECT_DOUBLE_EQ(data.points(2, 1), 1.0);
}

TEST_F(LoadDataset, SidecarShapeMustMatch) {
  const auto path = write("tri.csv", "0,0\n1,0\n0,1\n");
  const auto good = write("good.meta", "image_shape=[1,2]\n");
  const auto bad = write("bad.meta", "image_shape=[2,2]\n");
  EXPECT_EQ(load_dataset(path, DataFormat::kCsv, good).image_shape, (ImageShape{1, 2}));
  EXPECT_EQ(kind_of([&] { load_dataset(path, DataFormat::kCsv, bad); }), ErrorKind::kMetadata);
}

TEST_F(LoadDataset, SplitsParamColumns) {
  const auto path = write("p.csv", "1,2,10,20\n3,4,30,40\n");
  const auto meta = write("p.meta", "{\"image_shape\": [1, 2], \"param_cols\": [2, 4]}");
  const DataMatrix data = load_dataset(path, DataFormat::kCsv, meta);
  ASSERT_TRUE(data.params);
  EXPECT_EQ(data.d(), 2u);
  EXPECT_DOUBLE_EQ((*data.params)(1, 0), 30.0);
  EXPECT_DOUBLE_EQ(data.points(1, 1), 4.0);
}

TEST_F(LoadDataset, RejectsRaggedAndNonFinite) {
  EXPECT_EQ(kind_of([&] { load_dataset(write("r.csv", "0,0\n1\n"), DataFormat::kCsv); }), ErrorKind::kFormat);
  EXPECT_EQ(kind_of([&] { load_dataset(write("n.csv", "0,nan\n1,1\n"), DataFormat::kCsv); }), ErrorKind::kValue);
  EXPECT_EQ(kind_of([&] { load_dataset(write("i.csv", "0,inf\n1,1\n"), DataFormat::kCsv); }), ErrorKind::kValue);
  EXPECT_EQ(kind_of([&] { load_dataset(write("x.csv", "0,abc\n1,1\n"), DataFormat::kCsv); }), ErrorKind::kFormat);
}

TEST_F(LoadDataset, BinaryRoundTrip) {
  std::mt19937_64 rng(3);
  const Matrix m = testing::random_matrix(7, 5, rng);
  const auto path = dir_ / "m.bin";
  write_binary_matrix(path, m);
  EXPECT_EQ(load_dataset(path, DataFormat::kBinary).points, m);
  EXPECT_EQ(fs::file_size(path), 4u + 16u + 7u * 5u * 8u);
  std::ofstream(dir_ / "bad.bin", std::ios::binary) << "NOPE";
  EXPECT_EQ(kind_of([&] { load_dataset(dir_ / "bad.bin", DataFormat::kBinary); }), ErrorKind::kFormat);
}

TEST_F(LoadDataset, CsvRoundTripIsExact) {
  std::mt19937_64 rng(4);
  DataMatrix data = make_data(testing::random_matrix(6, 3, rng));
  data.params = testing::random_matrix(6, 2, rng);
  const auto path = dir_ / "rt.csv";
  save_dataset(path, data);
  const DataMatrix back = load_dataset(path, DataFormat::kCsv, fs::path(path.string() + ".meta"));
  EXPECT_EQ(back.points, data.points);
  EXPECT_EQ(*back.params, *data.params);
}

TEST(Synth, ShapeContracts) {
  const DataMatrix roll = synth_dataset(SynthKind::kSwissRoll, 500, 7);
  EXPECT_EQ(roll.points.rows(), 500);
  EXPECT_EQ(roll.points.cols(), 3);
  EXPECT_EQ(roll.params->cols(), 2);

  SynthOptions options;
  options.side = 16;
  const DataMatrix blob = synth_dataset(SynthKind::kTranslatingBlob, 100, 1, options);
  EXPECT_EQ(blob.points.cols(), 256);
  EXPECT_EQ(blob.image_shape, (ImageShape{16, 16}));
  EXPECT_GE(blob.params->minCoeff(), 0.0);
  EXPECT_LT(blob.params->maxCoeff(), 16.0);
  EXPECT_TRUE(blob.points.allFinite());
}

TEST(Synth, DeterministicInSeed) {
  const DataMatrix a = synth_dataset(SynthKind::kTranslatingBlob, 50, 9);
  const DataMatrix b = synth_dataset(SynthKind::kTranslatingBlob, 50, 9);
  const DataMatrix c = synth_dataset(SynthKind::kTranslatingBlob, 50, 10);
  EXPECT_EQ(a.points, b.points);
  EXPECT_NE(a.points, c.points);
  EXPECT_EQ(synth_dataset(SynthKind::kSwissRoll, 20, 2).points, synth_dataset(SynthKind::kSwissRoll, 20, 2).points);
}

TEST(Synth, RejectsBadOptions) {
  SynthOptions options;
  options.radius = -1.0;
  EXPECT_THROW(synth_dataset(SynthKind::kTranslatingBlob, 10, 0, options), Error);
  EXPECT_THROW(synth_dataset(SynthKind::kSwissRoll, 1, 0), Error);
}

Matrix line(std::initializer_list<double> values) {
  Matrix m(static_cast<Eigen::Index>(values.size()), 1);
  Eigen::Index i = 0;
  for (double v : values) m(i++, 0) = v;
  return m;
}

TEST(KnnGraph, NearestByInspection) {
  const NeighborGraph g = knn_graph(line({0, 1, 3}), 1);
  EXPECT_EQ(g.neighbors[0], (std::vector<std::size_t>{1}));
  EXPECT_EQ(g.neighbors[1], (std::vector<std::size_t>{0}));
  EXPECT_EQ(g.neighbors[2], (std::vector<std::size_t>{1}));
}

TEST(KnnGraph, TiesGoToLowerIndex) {
  const NeighborGraph g = knn_graph(line({0, 1, 2}), 2);
  EXPECT_EQ(g.neighbors[1], (std::vector<std::size_t>{0, 2}));
  const NeighborGraph h = knn_graph(line({0, 1, 2}), 1);
  EXPECT_EQ(h.neighbors[1], (std::vector<std::size_t>{0}));
}

TEST(KnnGraph, KOutOfRange) {
  EXPECT_EQ(kind_of([] { knn_graph(line({0, 1, 2}), 3); }), ErrorKind::kParameter);
  EXPECT_EQ(kind_of([] { knn_graph(line({0, 1, 2}), 0); }), ErrorKind::kParameter);
}

TEST(KnnGraph, DuplicatesAreFlagged) {
  const NeighborGraph g = knn_graph(line({0, 0, 5}), 1);
  ASSERT_EQ(g.duplicate_pairs.size(), 1u);
  EXPECT_EQ(g.duplicate_pairs[0], (std::pair<std::size_t, std::size_t>{0, 1}));
}

TEST(KnnGraph, MatchesBruteForceScan) {
  std::mt19937_64 rng(11);
  const Matrix x = testing::random_matrix(50, 5, rng);
  for (std::size_t k : {1u, 4u, 10u}) {
    const NeighborGraph g = knn_graph(x, k);
    const auto expected = testing::brute_force_knn(x, k);
    const Matrix dist = testing::distances(x);
    for (std::size_t i = 0; i < 50; ++i) {
      EXPECT_EQ(g.neighbors[i], expected[i]);
      for (std::size_t e = 0; e < k; ++e)
        EXPECT_NEAR(g.distances[i][e], dist(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(g.neighbors[i][e])), 1e-12);
      EXPECT_TRUE(std::is_sorted(g.distances[i].begin(), g.distances[i].end()));
    }
  }
}

TEST(KnnGraph, PermutationCovariant) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 5; ++trial) {
    const Matrix x = testing::random_matrix(30, 4, rng);
    std::vector<std::size_t> perm(30);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    Matrix y(30, 4);
    for (std::size_t i = 0; i < 30; ++i) y.row(static_cast<Eigen::Index>(perm[i])) = x.row(static_cast<Eigen::Index>(i));
    const NeighborGraph gx = knn_graph(x, 5), gy = knn_graph(y, 5);
    for (std::size_t i = 0; i < 30; ++i)
      for (std::size_t e = 0; e < 5; ++e) EXPECT_EQ(gy.neighbors[perm[i]][e], perm[gx.neighbors[i][e]]);
  }
}

TEST(KnnGraph, NeighborsAreCloserThanNonNeighbors) {
  std::mt19937_64 rng(13);
  const Matrix x = testing::random_matrix(40, 3, rng);
  const NeighborGraph g = knn_graph(x, 6);
  const Matrix dist = testing::distances(x);
  for (std::size_t i = 0; i < 40; ++i) {
    const double radius = g.distances[i].back();
    for (std::size_t j = 0; j < 40; ++j) {
      if (j == i || std::find(g.neighbors[i].begin(), g.neighbors[i].end(), j) != g.neighbors[i].end()) continue;
      EXPECT_GE(dist(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)), radius);
    }
  }
}

TEST(KnnGraph, ReverseNeighborsMatchScan) {
  const Matrix x = line({0, 1, 2, 4, 7, 11, 16});
  const NeighborGraph g = knn_graph(x, 2);
  const auto expected = testing::brute_force_knn(x, 2);
  for (std::size_t target = 0; target < 7; ++target) {
    std::vector<std::size_t> scan;
    for (std::size_t i = 0; i < 7; ++i)
      if (i == target || std::count(expected[i].begin(), expected[i].end(), target)) scan.push_back(i);
    EXPECT_EQ(reverse_neighbors(g, target), scan);
    EXPECT_FALSE(scan.empty());
  }
}

}  // namespace
}  // namespace maps
