#include "maps/selectors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "maps/error.hpp"

namespace maps {

namespace {

void require_mask_size(std::size_t m, std::size_t d) {
  require(m >= 1 && m <= d, ErrorKind::kParameter,
          "mask size m=" + std::to_string(m) + " must lie in [1, " + std::to_string(d) + "]");
}

double distortion(const Vector& masked_norms, double target, Norm norm) {
  double acc = 0.0;
  for (Eigen::Index r = 0; r < masked_norms.size(); ++r) {
    const double gap = std::abs(masked_norms(r) - target);
    acc = norm == Norm::kL1 ? acc + gap : std::max(acc, gap);
  }
  return acc;
}

struct CliqueNorms {
  Matrix full;       // c x n: alpha_i = B_i 1
  Vector full_norm;  // ||alpha_i||
};

CliqueNorms clique_norms(const CliqueSecantArray& cliques) {
  CliqueNorms out;
  out.full.resize(static_cast<Eigen::Index>(cliques.c()), static_cast<Eigen::Index>(cliques.n()));
  out.full_norm.resize(static_cast<Eigen::Index>(cliques.n()));
  for (std::size_t i = 0; i < cliques.n(); ++i) {
    const auto col = static_cast<Eigen::Index>(i);
    out.full.col(col) = cliques.slice(i).rowwise().sum();
    out.full_norm(col) = out.full.col(col).norm();
    require(out.full_norm(col) > 0.0, ErrorKind::kValue,
            "degenerate clique: all secant norms of point " + std::to_string(i) + " are zero");
  }
  return out;
}

double cosine_sum(const Matrix& masked, const CliqueNorms& norms) {
  double total = 0.0;
  for (Eigen::Index i = 0; i < masked.cols(); ++i) {
    const double nn = masked.col(i).norm();
    if (nn > 0.0) total += masked.col(i).dot(norms.full.col(i)) / (nn * norms.full_norm(i));
  }
  return total;
}

}  // namespace

double binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  k = std::min(k, n - k);
  double value = 1.0;
  for (std::size_t i = 1; i <= k; ++i)
    value = value * static_cast<double>(n - k + i) / static_cast<double>(i);
  return std::round(value);
}

Norm parse_norm(const std::string& text) {
  if (text == "1" || text == "L1" || text == "l1") return Norm::kL1;
  if (text == "inf" || text == "Linf" || text == "linf") return Norm::kLinf;
  fail(ErrorKind::kParameter, "unknown norm '" + text + "' (expected L1 or Linf)");
}

const char* to_string(Norm norm) { return norm == Norm::kL1 ? "L1" : "Linf"; }

double global_objective(const SecantMatrix& secants, const Mask& mask, Norm norm) {
  require(mask.d == secants.d(), ErrorKind::kParameter, "mask dimension does not match secants");
  Vector masked = Vector::Zero(secants.rows.rows());
  for (std::size_t j : mask.sorted()) masked += secants.rows.col(static_cast<Eigen::Index>(j));
  return distortion(masked, static_cast<double>(mask.size()) / static_cast<double>(mask.d), norm);
}

double local_objective(const CliqueSecantArray& cliques, const Mask& mask) {
  require(mask.d == cliques.d(), ErrorKind::kParameter, "mask dimension does not match clique array");
  const CliqueNorms norms = clique_norms(cliques);
  Matrix masked = Matrix::Zero(static_cast<Eigen::Index>(cliques.c()), static_cast<Eigen::Index>(cliques.n()));
  for (std::size_t j : mask.sorted())
    for (std::size_t i = 0; i < cliques.n(); ++i)
      masked.col(static_cast<Eigen::Index>(i)) += cliques.slice(i).col(static_cast<Eigen::Index>(j));
  return cosine_sum(masked, norms);
}

Mask maps_global(const SecantMatrix& secants, std::size_t m, Norm norm) {
  const std::size_t d = secants.d();
  require_mask_size(m, d);
  const Matrix& a = secants.rows;
  const Eigen::Index rows = a.rows();
  Vector current = Vector::Zero(rows);
  std::vector<bool> used(d, false);
  Mask mask{d, {}};
  for (std::size_t step = 1; step <= m; ++step) {
    const double target = static_cast<double>(step) / static_cast<double>(d);
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_j = d;
    for (std::size_t j = 0; j < d; ++j) {
      if (used[j]) continue;
      const double* column = a.col(static_cast<Eigen::Index>(j)).data();
      double cost = 0.0;
      for (Eigen::Index r = 0; r < rows; ++r) {
        const double gap = std::abs(current(r) + column[r] - target);
        cost = norm == Norm::kL1 ? cost + gap : std::max(cost, gap);
      }
      if (cost < best) {
        best = cost;
        best_j = j;
      }
    }
    used[best_j] = true;
    current += a.col(static_cast<Eigen::Index>(best_j));
    mask.selected.push_back(best_j);
  }
  return mask;
}

Mask maps_local(const CliqueSecantArray& cliques, std::size_t m) {
  const std::size_t d = cliques.d(), n = cliques.n(), c = cliques.c();
  require_mask_size(m, d);
  const CliqueNorms norms = clique_norms(cliques);
  Matrix masked = Matrix::Zero(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(n));
  std::vector<bool> used(d, false);
  Mask mask{d, {}};
  for (std::size_t step = 0; step < m; ++step) {
    double best = -std::numeric_limits<double>::infinity();
    std::size_t best_j = d;
    for (std::size_t j = 0; j < d; ++j) {
      if (used[j]) continue;
      double score = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double* theta = masked.col(static_cast<Eigen::Index>(i)).data();
        const double* alpha = norms.full.col(static_cast<Eigen::Index>(i)).data();
        const double* column = cliques.slice(i).col(static_cast<Eigen::Index>(j)).data();
        double dot = 0.0, nn = 0.0;
        for (std::size_t r = 0; r < c; ++r) {
          const double beta = theta[r] + column[r];
          dot += beta * alpha[r];
          nn += beta * beta;
        }
        if (nn > 0.0) score += dot / (std::sqrt(nn) * norms.full_norm(static_cast<Eigen::Index>(i)));
      }
      if (score > best) {
        best = score;
        best_j = j;
      }
    }
    used[best_j] = true;
    for (std::size_t i = 0; i < n; ++i)
      masked.col(static_cast<Eigen::Index>(i)) += cliques.slice(i).col(static_cast<Eigen::Index>(best_j));
    mask.selected.push_back(best_j);
  }
  return mask;
}

Mask pcoa(const DataMatrix& data, std::size_t m) {
  const std::size_t d = data.d();
  require_mask_size(m, d);
  const Eigen::RowVectorXd mean = data.points.colwise().mean();
  const Eigen::RowVectorXd spread = (data.points.rowwise() - mean).array().square().colwise().sum();
  std::vector<std::size_t> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return spread(static_cast<Eigen::Index>(a)) > spread(static_cast<Eigen::Index>(b));
  });
  order.resize(m);
  return Mask{d, std::move(order)};
}

Mask random_mask(std::size_t d, std::size_t m, std::uint64_t seed) {
  require_mask_size(m, d);
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> perm(d);
  std::iota(perm.begin(), perm.end(), 0);
  for (std::size_t i = 0; i < m; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, d - 1);
    std::swap(perm[i], perm[pick(rng)]);
  }
  perm.resize(m);
  return Mask{d, std::move(perm)};
}

namespace {

void require_capacity(std::size_t d, std::size_t m) {
  const double subsets = binomial(d, m);
  require(subsets <= kExactSubsetLimit, ErrorKind::kCapacity,
          "exhaustive search over C(" + std::to_string(d) + ", " + std::to_string(m) +
              ") subsets exceeds the limit of 1e6");
}

// Depth-first enumeration of m-subsets in lexicographic order. `extend`
// accumulates the partial state for one more index at the given depth;
// `leaf` scores a complete subset.
template <typename Extend, typename Leaf>
void enumerate_subsets(std::size_t d, std::size_t m, Extend&& extend, Leaf&& leaf) {
  std::vector<std::size_t> chosen;
  chosen.reserve(m);
  auto recurse = [&](auto&& self, std::size_t start) -> void {
    if (chosen.size() == m) {
      leaf(chosen);
      return;
    }
    const std::size_t remaining = m - chosen.size();
    for (std::size_t j = start; j + remaining <= d; ++j) {
      extend(chosen.size(), j);
      chosen.push_back(j);
      self(self, j + 1);
      chosen.pop_back();
    }
  };
  recurse(recurse, 0);
}

}  // namespace

ExactResult exact_mask_global(const SecantMatrix& secants, std::size_t m, Norm norm) {
  const std::size_t d = secants.d();
  require_mask_size(m, d);
  require_capacity(d, m);
  const double target = static_cast<double>(m) / static_cast<double>(d);
  std::vector<Vector> partial(m + 1, Vector::Zero(secants.rows.rows()));
  ExactResult best{Mask{d, {}}, std::numeric_limits<double>::infinity()};
  enumerate_subsets(
      d, m,
      [&](std::size_t depth, std::size_t j) {
        partial[depth + 1] = partial[depth] + secants.rows.col(static_cast<Eigen::Index>(j));
      },
      [&](const std::vector<std::size_t>& chosen) {
        const double value = distortion(partial[m], target, norm);
        if (value < best.objective) best = {Mask{d, chosen}, value};
      });
  return best;
}

ExactResult exact_mask_local(const CliqueSecantArray& cliques, std::size_t m) {
  const std::size_t d = cliques.d();
  require_mask_size(m, d);
  require_capacity(d, m);
  const CliqueNorms norms = clique_norms(cliques);
  const auto c = static_cast<Eigen::Index>(cliques.c());
  const auto n = static_cast<Eigen::Index>(cliques.n());
  std::vector<Matrix> partial(m + 1, Matrix::Zero(c, n));
  ExactResult best{Mask{d, {}}, -std::numeric_limits<double>::infinity()};
  enumerate_subsets(
      d, m,
      [&](std::size_t depth, std::size_t j) {
        for (Eigen::Index i = 0; i < n; ++i)
          partial[depth + 1].col(i) =
              partial[depth].col(i) + cliques.slice(static_cast<std::size_t>(i)).col(static_cast<Eigen::Index>(j));
      },
      [&](const std::vector<std::size_t>& chosen) {
        const double value = cosine_sum(partial[m], norms);
        if (value > best.objective) best = {Mask{d, chosen}, value};
      });
  return best;
}

}  // namespace maps
