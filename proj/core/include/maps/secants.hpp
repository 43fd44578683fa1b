#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "maps/data.hpp"
#include "maps/knn.hpp"

namespace maps {

/// Rows are the entrywise squares of unit-norm neighbour secants, so every row
/// is non-negative and sums to one. One row per unordered neighbour pair.
struct SecantMatrix {
  Matrix rows;  ///< |S_k| x d
  std::vector<std::pair<std::size_t, std::size_t>> pairs;

  std::size_t count() const { return static_cast<std::size_t>(rows.rows()); }
  std::size_t d() const { return static_cast<std::size_t>(rows.cols()); }
};

/// Squared, unnormalised secants of every clique {i} U N_k(i).
///
/// Logical shape c x d x n with c = (k+1 choose 2). Storage is slice-major:
/// slice i is a contiguous column-major c x d block, so the c entries for
/// (dimension j, point i) are contiguous.
class CliqueSecantArray {
 public:
  using ConstSlice = Eigen::Map<const Matrix>;
  using Slice = Eigen::Map<Matrix>;

  CliqueSecantArray() = default;
  CliqueSecantArray(std::size_t c, std::size_t d, std::size_t n);

  std::size_t c() const { return c_; }
  std::size_t d() const { return d_; }
  std::size_t n() const { return n_; }

  double operator()(std::size_t row, std::size_t dim, std::size_t point) const {
    return data_[(point * d_ + dim) * c_ + row];
  }
  double& operator()(std::size_t row, std::size_t dim, std::size_t point) {
    return data_[(point * d_ + dim) * c_ + row];
  }

  ConstSlice slice(std::size_t point) const {
    return ConstSlice(data_.data() + point * c_ * d_, static_cast<Eigen::Index>(c_),
                      static_cast<Eigen::Index>(d_));
  }
  Slice slice(std::size_t point) {
    return Slice(data_.data() + point * c_ * d_, static_cast<Eigen::Index>(c_),
                 static_cast<Eigen::Index>(d_));
  }

  /// Sorted clique members of each point; empty when built by hand.
  std::vector<std::vector<std::size_t>> cliques;

 private:
  std::size_t c_ = 0, d_ = 0, n_ = 0;
  std::vector<double> data_;
};

/// Lexicographic pair order for a sorted clique of size `size`.
std::vector<std::pair<std::size_t, std::size_t>> clique_pairs(std::size_t size);

SecantMatrix build_secants(const DataMatrix& data, const NeighborGraph& graph);
CliqueSecantArray build_clique_array(const DataMatrix& data, const NeighborGraph& graph);

}  // namespace maps
