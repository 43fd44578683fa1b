#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <Eigen/Dense>

namespace maps {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

struct ImageShape {
  std::size_t height = 0;
  std::size_t width = 0;

  std::size_t pixels() const { return height * width; }
  bool operator==(const ImageShape&) const = default;
};

/// n points (rows) in d ambient dimensions, with optional image layout and
/// ground-truth parameters (one row per point).
struct DataMatrix {
  Matrix points;
  std::optional<ImageShape> image_shape;
  std::optional<Matrix> params;

  std::size_t n() const { return static_cast<std::size_t>(points.rows()); }
  std::size_t d() const { return static_cast<std::size_t>(points.cols()); }

  /// Throws on any broken invariant (n >= 2, d >= 1, finite, shape, params rows).
  void validate() const;

  /// Copy without row `index`; used for leave-one-out folds.
  DataMatrix without_row(std::size_t index) const;
};

/// Wraps a raw matrix with no metadata and validates it.
DataMatrix make_data(Matrix points);

enum class DataFormat { kCsv, kBinary };

/// Parsed sidecar metadata. `param_cols` is a half-open column range [start, end).
struct Sidecar {
  std::optional<ImageShape> image_shape;
  std::optional<std::pair<std::size_t, std::size_t>> param_cols;
};

Sidecar parse_sidecar(const std::string& text);
Sidecar read_sidecar(const std::filesystem::path& path);
std::string format_sidecar(const Sidecar& sidecar);

/// Parses one CSV document into a matrix. Rejects ragged rows and non-finite
/// values.
Matrix parse_csv(const std::string& text);

/// Reads the "MAPS" little-endian binary matrix container.
Matrix read_binary_matrix(const std::filesystem::path& path);
void write_binary_matrix(const std::filesystem::path& path, const Matrix& m);

DataMatrix load_dataset(const std::filesystem::path& path, DataFormat format,
                        const std::optional<std::filesystem::path>& sidecar = std::nullopt);

/// Applies sidecar metadata to a raw matrix: splits parameter columns, checks
/// the image shape against the remaining width.
DataMatrix bind_metadata(Matrix raw, const Sidecar& sidecar);

/// Writes points (followed by params, if any) as CSV with 17 significant digits.
void write_csv(const std::filesystem::path& path, const Matrix& m);
std::string format_csv(const Matrix& m);

/// Saves a dataset as CSV plus a sidecar describing the parameter columns.
void save_dataset(const std::filesystem::path& csv_path, const DataMatrix& data);

/// Fixed 17-significant-digit rendering used by every text output.
std::string format_double(double value);

/// FNV-1a digest over the dataset contents; used to key on-disk caches.
std::uint64_t content_hash(const DataMatrix& data);

}  // namespace maps
