#include "maps/data.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <regex>
#include <sstream>
#include <string_view>
#include <vector>

#include "maps/error.hpp"

namespace maps {

namespace {

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorKind::kIo, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

void require_finite(const Matrix& m, const std::string& what) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (!std::isfinite(m(i, j)))
        fail(ErrorKind::kValue, what + ": non-finite value at row " + std::to_string(i) +
                                    ", column " + std::to_string(j));
}

}  // namespace

void DataMatrix::validate() const {
  require(points.rows() >= 2, ErrorKind::kParameter, "dataset needs at least 2 points");
  require(points.cols() >= 1, ErrorKind::kParameter, "dataset needs at least 1 dimension");
  require_finite(points, "points");
  if (image_shape)
    require(image_shape->pixels() == d(), ErrorKind::kMetadata,
            "image shape " + std::to_string(image_shape->height) + "x" +
                std::to_string(image_shape->width) + " does not match d=" + std::to_string(d()));
  if (params) {
    require(params->rows() == points.rows(), ErrorKind::kMetadata,
            "params row count does not match points");
    require_finite(*params, "params");
  }
}

DataMatrix DataMatrix::without_row(std::size_t index) const {
  auto drop = [index](const Matrix& m) {
    Matrix out(m.rows() - 1, m.cols());
    const auto i = static_cast<Eigen::Index>(index);
    out.topRows(i) = m.topRows(i);
    out.bottomRows(m.rows() - 1 - i) = m.bottomRows(m.rows() - 1 - i);
    return out;
  };
  DataMatrix out;
  out.points = drop(points);
  out.image_shape = image_shape;
  if (params) out.params = drop(*params);
  return out;
}

DataMatrix make_data(Matrix points) {
  DataMatrix data;
  data.points = std::move(points);
  data.validate();
  return data;
}

Sidecar parse_sidecar(const std::string& text) {
  static const std::regex entry(
      R"RE("?(image_shape|param_cols)"?\s*[=:]\s*\[\s*([0-9]+)\s*,\s*([0-9]+)\s*\])RE");
  Sidecar sidecar;
  for (auto it = std::sregex_iterator(text.begin(), text.end(), entry); it != std::sregex_iterator();
       ++it) {
    const auto& match = *it;
    const std::size_t a = std::stoull(match[2].str());
    const std::size_t b = std::stoull(match[3].str());
    if (match[1] == "image_shape") {
      sidecar.image_shape = ImageShape{a, b};
    } else {
      require(a < b, ErrorKind::kMetadata, "param_cols must satisfy start < end");
      sidecar.param_cols = std::make_pair(a, b);
    }
  }
  return sidecar;
}

Sidecar read_sidecar(const std::filesystem::path& path) { return parse_sidecar(read_text(path)); }

std::string format_sidecar(const Sidecar& sidecar) {
  std::string out;
  if (sidecar.image_shape)
    out += "image_shape=[" + std::to_string(sidecar.image_shape->height) + "," +
           std::to_string(sidecar.image_shape->width) + "]\n";
  if (sidecar.param_cols)
    out += "param_cols=[" + std::to_string(sidecar.param_cols->first) + "," +
           std::to_string(sidecar.param_cols->second) + "]\n";
  return out;
}

Matrix parse_csv(const std::string& text) {
  std::vector<double> values;
  std::size_t cols = 0, rows = 0;
  std::string_view rest(text);
  std::size_t line_no = 0;
  while (!rest.empty()) {
    const auto eol = rest.find('\n');
    std::string_view line = trim(rest.substr(0, eol));
    rest = eol == std::string_view::npos ? std::string_view{} : rest.substr(eol + 1);
    ++line_no;
    if (line.empty()) continue;
    std::size_t fields = 0;
    while (true) {
      const auto comma = line.find(',');
      std::string_view field = trim(line.substr(0, comma));
      double value = 0.0;
      const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
      require(ec == std::errc{} && ptr == field.data() + field.size() && !field.empty(),
              ErrorKind::kFormat,
              "line " + std::to_string(line_no) + ": cannot parse '" + std::string(field) + "'");
      require(std::isfinite(value), ErrorKind::kValue,
              "line " + std::to_string(line_no) + ": non-finite value");
      values.push_back(value);
      ++fields;
      if (comma == std::string_view::npos) break;
      line = line.substr(comma + 1);
    }
    if (rows == 0) cols = fields;
    require(fields == cols, ErrorKind::kFormat,
            "line " + std::to_string(line_no) + ": expected " + std::to_string(cols) +
                " fields, found " + std::to_string(fields));
    ++rows;
  }
  require(rows > 0, ErrorKind::kFormat, "empty CSV");
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = values[i * cols + j];
  return m;
}

namespace {

constexpr char kMagic[4] = {'M', 'A', 'P', 'S'};

void put_u64(std::ostream& out, std::uint64_t v) {
  unsigned char bytes[8];
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<unsigned char>(v >> (8 * i));
  out.write(reinterpret_cast<const char*>(bytes), 8);
}

std::uint64_t get_u64(const unsigned char* p) {
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}

}  // namespace

Matrix read_binary_matrix(const std::filesystem::path& path) {
  const std::string bytes = read_text(path);
  require(bytes.size() >= 20 && std::memcmp(bytes.data(), kMagic, 4) == 0, ErrorKind::kFormat,
          path.string() + ": missing MAPS header");
  const auto* p = reinterpret_cast<const unsigned char*>(bytes.data());
  const std::uint64_t n = get_u64(p + 4);
  const std::uint64_t d = get_u64(p + 12);
  require(d != 0 && n <= (bytes.size() - 20) / 8 / d && bytes.size() == 20 + 8 * n * d,
          ErrorKind::kFormat, path.string() + ": payload size does not match header");
  Matrix m(n, d);
  for (std::uint64_t i = 0; i < n; ++i)
    for (std::uint64_t j = 0; j < d; ++j) {
      const std::uint64_t bits = get_u64(p + 20 + 8 * (i * d + j));
      double value;
      std::memcpy(&value, &bits, 8);
      require(std::isfinite(value), ErrorKind::kValue, path.string() + ": non-finite value");
      m(i, j) = value;
    }
  return m;
}

void write_binary_matrix(const std::filesystem::path& path, const Matrix& m) {
  std::ofstream out(path, std::ios::binary);
  require(static_cast<bool>(out), ErrorKind::kIo, "cannot write " + path.string());
  out.write(kMagic, 4);
  put_u64(out, static_cast<std::uint64_t>(m.rows()));
  put_u64(out, static_cast<std::uint64_t>(m.cols()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      std::uint64_t bits;
      const double value = m(i, j);
      std::memcpy(&bits, &value, 8);
      put_u64(out, bits);
    }
}

DataMatrix bind_metadata(Matrix raw, const Sidecar& sidecar) {
  DataMatrix data;
  if (sidecar.param_cols) {
    const auto [start, end] = *sidecar.param_cols;
    require(end <= static_cast<std::size_t>(raw.cols()), ErrorKind::kMetadata,
            "param_cols exceed the column count");
    const auto s = static_cast<Eigen::Index>(start);
    const auto width = static_cast<Eigen::Index>(end - start);
    data.params = raw.middleCols(s, width);
    Matrix points(raw.rows(), raw.cols() - width);
    points.leftCols(s) = raw.leftCols(s);
    points.rightCols(raw.cols() - s - width) = raw.rightCols(raw.cols() - s - width);
    data.points = std::move(points);
  } else {
    data.points = std::move(raw);
  }
  data.image_shape = sidecar.image_shape;
  data.validate();
  return data;
}

DataMatrix load_dataset(const std::filesystem::path& path, DataFormat format,
                        const std::optional<std::filesystem::path>& sidecar) {
  Matrix raw = format == DataFormat::kCsv ? parse_csv(read_text(path)) : read_binary_matrix(path);
  return bind_metadata(std::move(raw), sidecar ? read_sidecar(*sidecar) : Sidecar{});
}

std::string format_double(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

std::string format_csv(const Matrix& m) {
  std::string out;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out += ',';
      out += format_double(m(i, j));
    }
    out += '\n';
  }
  return out;
}

void write_csv(const std::filesystem::path& path, const Matrix& m) {
  std::ofstream out(path, std::ios::binary);
  require(static_cast<bool>(out), ErrorKind::kIo, "cannot write " + path.string());
  out << format_csv(m);
}

void save_dataset(const std::filesystem::path& csv_path, const DataMatrix& data) {
  Sidecar sidecar;
  sidecar.image_shape = data.image_shape;
  if (data.params) {
    Matrix all(data.points.rows(), data.points.cols() + data.params->cols());
    all << data.points, *data.params;
    write_csv(csv_path, all);
    sidecar.param_cols = std::make_pair(data.d(), data.d() + data.params->cols());
  } else {
    write_csv(csv_path, data.points);
  }
  std::filesystem::path meta = csv_path;
  meta += ".meta";
  std::ofstream out(meta, std::ios::binary);
  require(static_cast<bool>(out), ErrorKind::kIo, "cannot write " + meta.string());
  out << format_sidecar(sidecar);
}

std::uint64_t content_hash(const DataMatrix& data) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](const void* bytes, std::size_t size) {
    const auto* p = static_cast<const unsigned char*>(bytes);
    for (std::size_t i = 0; i < size; ++i) {
      h ^= p[i];
      h *= 1099511628211ull;
    }
  };
  const std::uint64_t shape[2] = {data.n(), data.d()};
  mix(shape, sizeof shape);
  mix(data.points.data(), sizeof(double) * data.points.size());
  return h;
}

}  // namespace maps
