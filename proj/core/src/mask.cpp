#include "maps/mask.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "maps/error.hpp"

namespace maps {

std::vector<std::size_t> Mask::sorted() const {
  std::vector<std::size_t> out = selected;
  std::sort(out.begin(), out.end());
  return out;
}

Vector Mask::indicator() const {
  Vector z = Vector::Zero(static_cast<Eigen::Index>(d));
  for (std::size_t j : selected) z(static_cast<Eigen::Index>(j)) = 1.0;
  return z;
}

Mask Mask::prefix(std::size_t m) const {
  require(m <= selected.size(), ErrorKind::kParameter,
          "prefix size " + std::to_string(m) + " exceeds mask size " + std::to_string(selected.size()));
  return Mask{d, std::vector<std::size_t>(selected.begin(), selected.begin() + static_cast<std::ptrdiff_t>(m))};
}

void Mask::validate() const {
  require(selected.size() <= d, ErrorKind::kParameter, "mask larger than its dimension");
  std::vector<bool> seen(d, false);
  for (std::size_t j : selected) {
    require(j < d, ErrorKind::kParameter, "mask index " + std::to_string(j) + " out of range");
    require(!seen[j], ErrorKind::kParameter, "mask index " + std::to_string(j) + " repeated");
    seen[j] = true;
  }
}

Mask make_mask(std::size_t d, std::vector<std::size_t> selected) {
  Mask mask{d, std::move(selected)};
  mask.validate();
  return mask;
}

DataMatrix apply_mask(const DataMatrix& data, const Mask& mask) {
  require(mask.d == data.d(), ErrorKind::kParameter,
          "mask dimension " + std::to_string(mask.d) + " does not match data dimension " +
              std::to_string(data.d()));
  mask.validate();
  const auto columns = mask.sorted();
  DataMatrix out;
  out.points.resize(data.points.rows(), static_cast<Eigen::Index>(columns.size()));
  for (std::size_t c = 0; c < columns.size(); ++c)
    out.points.col(static_cast<Eigen::Index>(c)) = data.points.col(static_cast<Eigen::Index>(columns[c]));
  out.params = data.params;
  return out;
}

std::string mask_to_json(const Mask& mask) {
  nlohmann::json j;
  j["d"] = mask.d;
  j["selected"] = mask.selected;
  return j.dump() + "\n";
}

Mask mask_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
    return make_mask(j.at("d").get<std::size_t>(), j.at("selected").get<std::vector<std::size_t>>());
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::kFormat, std::string("malformed mask JSON: ") + e.what());
  }
}

void write_mask(const std::filesystem::path& path, const Mask& mask) {
  std::ofstream out(path, std::ios::binary);
  require(static_cast<bool>(out), ErrorKind::kIo, "cannot write " + path.string());
  out << mask_to_json(mask);
}

Mask read_mask(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorKind::kIo, "cannot open " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return mask_from_json(text.str());
}

std::string mask_to_pgm(const Mask& mask, const ImageShape& shape) {
  require(shape.pixels() == mask.d, ErrorKind::kMetadata, "image shape does not match mask dimension");
  const Vector z = mask.indicator();
  std::string out = "P2\n" + std::to_string(shape.width) + " " + std::to_string(shape.height) + "\n255\n";
  for (std::size_t r = 0; r < shape.height; ++r) {
    for (std::size_t c = 0; c < shape.width; ++c) {
      if (c) out += ' ';
      out += z(static_cast<Eigen::Index>(r * shape.width + c)) > 0.0 ? "255" : "0";
    }
    out += '\n';
  }
  return out;
}

void write_mask_pgm(const std::filesystem::path& path, const Mask& mask, const ImageShape& shape) {
  const std::string text = mask_to_pgm(mask, shape);
  std::ofstream out(path, std::ios::binary);
  require(static_cast<bool>(out), ErrorKind::kIo, "cannot write " + path.string());
  out << text;
}

}  // namespace maps
