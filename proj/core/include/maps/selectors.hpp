#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "maps/data.hpp"
#include "maps/mask.hpp"
#include "maps/secants.hpp"

namespace maps {

enum class Norm { kL1, kLinf };

/// Masked secant distortion ||A z - (m/d) 1||_p for the mask's indicator z.
double global_objective(const SecantMatrix& secants, const Mask& mask, Norm norm);

/// Sum over points of cos(B_i z, B_i 1). A point whose masked norm vector is
/// all-zero contributes 0.
double local_objective(const CliqueSecantArray& cliques, const Mask& mask);

/// Greedy global-structure selector. At step i picks the unused column whose
/// addition brings the masked squared secant norms closest (in the p-norm) to
/// i/d. Lowest index wins ties.
Mask maps_global(const SecantMatrix& secants, std::size_t m, Norm norm = Norm::kL1);

/// Greedy local-structure selector: maximises the summed per-point cosine
/// similarity between masked and full clique secant norms.
Mask maps_local(const CliqueSecantArray& cliques, std::size_t m);

/// The m highest-variance coordinates, lowest index first on ties.
Mask pcoa(const DataMatrix& data, std::size_t m);

/// Uniform m-subset from a seeded partial Fisher-Yates shuffle. Prefixes of
/// the same seed are nested.
Mask random_mask(std::size_t d, std::size_t m, std::uint64_t seed);

struct ExactResult {
  Mask mask;
  double objective = 0.0;
};

/// Upper bound on the number of subsets an exhaustive oracle will visit.
inline constexpr double kExactSubsetLimit = 1e6;

/// Exhaustive minimiser of global_objective over all m-subsets; returns the
/// lexicographically smallest optimum.
ExactResult exact_mask_global(const SecantMatrix& secants, std::size_t m, Norm norm = Norm::kL1);

/// Exhaustive maximiser of local_objective over all m-subsets.
ExactResult exact_mask_local(const CliqueSecantArray& cliques, std::size_t m);

double binomial(std::size_t n, std::size_t k);

Norm parse_norm(const std::string& text);
const char* to_string(Norm norm);

}  // namespace maps
