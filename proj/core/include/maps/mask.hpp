#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "maps/data.hpp"

namespace maps {

/// Selected dimensions in selection order. Indicator semantics: z(j) = 1 iff
/// j is selected.
struct Mask {
  std::size_t d = 0;
  std::vector<std::size_t> selected;

  std::size_t size() const { return selected.size(); }
  std::vector<std::size_t> sorted() const;
  Vector indicator() const;
  /// First m selections; valid because every greedy selector is nested.
  Mask prefix(std::size_t m) const;
  void validate() const;

  bool operator==(const Mask&) const = default;
};

Mask make_mask(std::size_t d, std::vector<std::size_t> selected);

/// Column slice in ascending dimension order. Params travel along; the image
/// shape does not, since the result is no longer a full image.
DataMatrix apply_mask(const DataMatrix& data, const Mask& mask);

std::string mask_to_json(const Mask& mask);
Mask mask_from_json(const std::string& text);
void write_mask(const std::filesystem::path& path, const Mask& mask);
Mask read_mask(const std::filesystem::path& path);

/// Plain PGM (P2): selected pixels 255, the rest 0.
std::string mask_to_pgm(const Mask& mask, const ImageShape& shape);
void write_mask_pgm(const std::filesystem::path& path, const Mask& mask, const ImageShape& shape);

}  // namespace maps
