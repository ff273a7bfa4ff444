#pragma once

#include <cstdint>
#include <vector>

#include "samp/model.hpp"
#include "samp/path.hpp"

namespace samp {

// Exhaustive list of block orderings: paths[p][k] is the ascending index set
// moved at step k. Blocks have size s (the last one holds d mod s indices
// when s does not divide d) and partition {0..d-1}.
struct PathEnumeration {
    std::size_t d = 0;
    std::size_t s = 0;
    std::vector<std::vector<std::vector<std::size_t>>> paths;
};

// Number of block orderings, d!/(s!)^n for s | d. Exact integer arithmetic;
// InputError once the count would overflow (d > 20).
std::uint64_t manipulation_path_count(std::size_t d, std::size_t s);

// All block orderings for d features moved s at a time, deterministic
// (lexicographic) order. Refuses d > 9 with a size estimate; the count grows
// like d!.
PathEnumeration enumerate_paths(std::size_t d, std::size_t s);

// Materialise one block ordering as a concrete path from x0 to xT: step k
// assigns the coordinates of blocks[k] their xT values.
PathSegments realize_path(const std::vector<std::vector<std::size_t>>& blocks,
                          const Tensor& x0, const Tensor& xT);

struct BruteForceResult {
    PathSegments best_path;
    std::vector<std::vector<std::size_t>> best_blocks;
    double best_variance = 0.0;
    std::vector<double> all_variances;  // enumeration order
};

// Ground-truth optimum of the spread objective over every block ordering,
// integrating each realised path with plain gradients (no step cap, no
// momentum). Ties keep the first path in enumeration order. d <= 9 only.
BruteForceResult brute_force_optimal(const Model& model, int cls, const Tensor& x0,
                                     const Tensor& xT, std::size_t s);

}  // namespace samp
