#include "maps/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "maps/error.hpp"

namespace maps {

Vector render_blob(std::size_t side, double radius, double row, double col) {
  Vector image(static_cast<Eigen::Index>(side * side));
  const double inv = 1.0 / (2.0 * radius * radius);
  for (std::size_t r = 0; r < side; ++r)
    for (std::size_t c = 0; c < side; ++c) {
      const double dr = static_cast<double>(r) - row;
      const double dc = static_cast<double>(c) - col;
      image(static_cast<Eigen::Index>(r * side + c)) = std::exp(-(dr * dr + dc * dc) * inv);
    }
  return image;
}

namespace {

// Arc length of the spiral r = t from 0 to t.
double spiral_length(double t) { return 0.5 * (t * std::sqrt(1.0 + t * t) + std::asinh(t)); }

double spiral_angle(double length, double guess) {
  double t = guess;
  for (int it = 0; it < 50; ++it) {
    const double step = (spiral_length(t) - length) / std::sqrt(1.0 + t * t);
    t -= step;
    if (std::abs(step) < 1e-14 * t) break;
  }
  return t;
}

// Uniform over the unrolled sheet: arc length s and height h are drawn
// uniformly and the angle t is recovered from s.
DataMatrix swiss_roll(std::size_t n, std::mt19937_64& rng, const SynthOptions& options) {
  require(options.height > 0.0, ErrorKind::kParameter, "swiss_roll height must be positive");
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double t0 = 1.5 * std::numbers::pi, t1 = 4.5 * std::numbers::pi;
  const double s0 = spiral_length(t0), s1 = spiral_length(t1);
  DataMatrix data;
  data.points.resize(static_cast<Eigen::Index>(n), 3);
  data.params = Matrix(static_cast<Eigen::Index>(n), 2);
  for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(n); ++i) {
    const double u = unit(rng);
    const double s = s0 + (s1 - s0) * u;
    const double t = spiral_angle(s, t0 + (t1 - t0) * u);
    const double h = options.height * unit(rng);
    data.points.row(i) << t * std::cos(t), h, t * std::sin(t);
    (*data.params)(i, 0) = s;
    (*data.params)(i, 1) = h;
  }
  return data;
}

DataMatrix translating_blob(std::size_t n, std::mt19937_64& rng, const SynthOptions& options) {
  require(options.side >= 2, ErrorKind::kParameter, "blob side must be at least 2");
  require(options.radius > 0.0, ErrorKind::kParameter, "blob radius must be positive");
  require(options.jitter >= 0.0 && options.jitter <= 0.5, ErrorKind::kParameter,
          "blob jitter must lie in [0, 0.5]");
  require(options.noise >= 0.0, ErrorKind::kParameter, "noise must be non-negative");
  const double g = static_cast<double>(options.side);
  const double lo = std::min(options.radius, (g - 1.0) / 2.0);
  const double hi = g - 1.0 - lo;

  const auto cols = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
  const std::size_t rows = (n + cols - 1) / cols;
  const double step_r = rows > 1 ? (hi - lo) / static_cast<double>(rows - 1) : 0.0;
  const double step_c = cols > 1 ? (hi - lo) / static_cast<double>(cols - 1) : 0.0;

  std::uniform_real_distribution<double> sym(-1.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  DataMatrix data;
  data.points.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(options.side * options.side));
  data.params = Matrix(static_cast<Eigen::Index>(n), 2);
  data.image_shape = ImageShape{options.side, options.side};
  for (std::size_t p = 0; p < n; ++p) {
    const double base_r = lo + static_cast<double>(p / cols) * step_r;
    const double base_c = lo + static_cast<double>(p % cols) * step_c;
    const double row = std::clamp(base_r + options.jitter * step_r * sym(rng), lo, hi);
    const double col = std::clamp(base_c + options.jitter * step_c * sym(rng), lo, hi);
    Vector image = render_blob(options.side, options.radius, row, col);
    if (options.noise > 0.0)
      for (Eigen::Index j = 0; j < image.size(); ++j) image(j) += options.noise * gauss(rng);
    const auto i = static_cast<Eigen::Index>(p);
    data.points.row(i) = image.transpose();
    (*data.params)(i, 0) = row;
    (*data.params)(i, 1) = col;
  }
  return data;
}

}  // namespace

DataMatrix synth_dataset(SynthKind kind, std::size_t n, std::uint64_t seed,
                         const SynthOptions& options) {
  require(n >= 2, ErrorKind::kParameter, "synthetic dataset needs n >= 2");
  std::mt19937_64 rng(seed);
  DataMatrix data = kind == SynthKind::kSwissRoll ? swiss_roll(n, rng, options)
                                                  : translating_blob(n, rng, options);
  data.validate();
  return data;
}

}  // namespace maps
