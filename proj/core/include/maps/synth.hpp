#pragma once

#include <cstddef>
#include <cstdint>

#include "maps/data.hpp"

namespace maps {

enum class SynthKind { kSwissRoll, kTranslatingBlob };

struct SynthOptions {
  // translating_blob
  std::size_t side = 16;     ///< image side length g, d = g * g
  double radius = 2.0;       ///< Gaussian blob standard deviation in pixels
  double jitter = 0.25;      ///< lattice jitter as a fraction of the lattice step
  double noise = 0.0;        ///< additive Gaussian pixel noise (std. dev.)
  // swiss_roll
  double height = 10.0;
};

/// Synthetic manifolds standing in for image datasets. Deterministic in seed.
///
/// swiss_roll: point (t cos t, h, t sin t) with t in [1.5 pi, 4.5 pi] and
/// h in [0, height], sampled uniformly over the unrolled sheet; params =
/// (arc length along the spiral, h).
/// translating_blob: a g x g image of an isotropic Gaussian whose centre
/// moves over a jittered lattice inside [radius, g - radius]^2; params = centre
/// (row, column) in pixel units. Image shape is recorded.
DataMatrix synth_dataset(SynthKind kind, std::size_t n, std::uint64_t seed,
                         const SynthOptions& options = {});

/// One blob image (flattened row-major) centred at (row, col).
Vector render_blob(std::size_t side, double radius, double row, double col);

}  // namespace maps
