#include "maps/secants.hpp"

#include <algorithm>
#include <set>

#include "maps/error.hpp"

namespace maps {

CliqueSecantArray::CliqueSecantArray(std::size_t c, std::size_t d, std::size_t n)
    : c_(c), d_(d), n_(n), data_(c * d * n, 0.0) {}

std::vector<std::pair<std::size_t, std::size_t>> clique_pairs(std::size_t size) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  pairs.reserve(size * (size - 1) / 2);
  for (std::size_t a = 0; a < size; ++a)
    for (std::size_t b = a + 1; b < size; ++b) pairs.emplace_back(a, b);
  return pairs;
}

namespace {

void require_graph_matches(const DataMatrix& data, const NeighborGraph& graph) {
  require(graph.n() == data.n(), ErrorKind::kParameter, "neighbour graph does not match dataset size");
}

std::string pair_name(std::size_t a, std::size_t b) {
  return "(" + std::to_string(a) + ", " + std::to_string(b) + ")";
}

}  // namespace

SecantMatrix build_secants(const DataMatrix& data, const NeighborGraph& graph) {
  require_graph_matches(data, graph);
  std::set<std::pair<std::size_t, std::size_t>> unique;
  for (std::size_t i = 0; i < graph.n(); ++i)
    for (std::size_t j : graph.neighbors[i]) unique.emplace(std::min(i, j), std::max(i, j));

  SecantMatrix secants;
  secants.pairs.assign(unique.begin(), unique.end());
  secants.rows.resize(static_cast<Eigen::Index>(secants.pairs.size()), data.points.cols());
  for (std::size_t r = 0; r < secants.pairs.size(); ++r) {
    const auto [a, b] = secants.pairs[r];
    const Vector diff = (data.points.row(static_cast<Eigen::Index>(a)) -
                         data.points.row(static_cast<Eigen::Index>(b)))
                            .transpose();
    const double norm2 = diff.squaredNorm();
    require(norm2 > 0.0, ErrorKind::kValue,
            "zero-norm secant between duplicate points " + pair_name(a, b));
    secants.rows.row(static_cast<Eigen::Index>(r)) = diff.array().square().transpose() / norm2;
  }
  return secants;
}

CliqueSecantArray build_clique_array(const DataMatrix& data, const NeighborGraph& graph) {
  require_graph_matches(data, graph);
  const std::size_t k = graph.k;
  require(data.n() >= k + 1, ErrorKind::kParameter, "clique array needs n >= k + 1");
  const auto pairs = clique_pairs(k + 1);
  CliqueSecantArray cliques(pairs.size(), data.d(), data.n());
  cliques.cliques.resize(data.n());
  for (std::size_t i = 0; i < data.n(); ++i) {
    auto& members = cliques.cliques[i];
    members = graph.neighbors[i];
    members.push_back(i);
    std::sort(members.begin(), members.end());
    auto slice = cliques.slice(i);
    for (std::size_t l = 0; l < pairs.size(); ++l) {
      const std::size_t a = members[pairs[l].first];
      const std::size_t b = members[pairs[l].second];
      const Vector diff = (data.points.row(static_cast<Eigen::Index>(a)) -
                           data.points.row(static_cast<Eigen::Index>(b)))
                              .transpose();
      require(diff.squaredNorm() > 0.0, ErrorKind::kValue,
              "zero-norm clique secant between duplicate points " + pair_name(a, b) +
                  " in the clique of point " + std::to_string(i));
      slice.row(static_cast<Eigen::Index>(l)) = diff.array().square().transpose();
    }
  }
  return cliques;
}

}  // namespace maps
