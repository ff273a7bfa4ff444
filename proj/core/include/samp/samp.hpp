#pragma once

#include <optional>
#include <string>
#include <vector>

#include "samp/path.hpp"

namespace samp {

// Walk orientation relative to (baseline, input): to_target walks
// baseline -> input (insertion-flavoured), to_baseline walks input ->
// baseline (deletion-flavoured), both combines the two traversals.
enum class Direction { ToBaseline, ToTarget, Both };

std::string direction_name(Direction d);
Direction direction_from_name(const std::string& name);

struct SampConfig {
    std::size_t step_pixels = 10;           // s: coordinates moved per step
    std::optional<double> eta_ratio = 0.1;  // step budget as a fraction of the
                                            // endpoint L1 distance; nullopt =
                                            // unbounded (plain greedy SAMP)
    double momentum = 0.5;                  // lambda in [0,1); 0 = raw gradients
    Direction direction = Direction::Both;
    // Absolute L1 mass below which the walk stops and snaps to the end point.
    // Defaults to 1e-8 * initial L1 distance when unset.
    std::optional<double> termination_epsilon;

    void validate() const;  // InputError on any out-of-range field
};

struct SelectResult {
    std::vector<std::size_t> indices;  // M_k, ascending
    Tensor step;                       // full residual on M_k, zero elsewhere
};

// What the greedy pick optimises per step. Both traversal directions chase
// the currently most decisive coordinates: walking baseline -> input that
// means the largest first-order score gain, walking input -> baseline the
// largest score drop (the mirror image; picking by gain there would visit
// score-raising background pixels first and the traversal would lose its
// deletion character).
enum class SelectionObjective { Gain, Drop };

// Greedy coordinate pick: alpha_j = grad_j * (x_E_j - x_k_j) for coordinates
// not yet at their end value (finished ones are excluded outright), take the
// s largest alphas (Gain) or the s smallest (Drop), ties to the lower index.
// Fewer than s unfinished coordinates -> all of them. None left ->
// InputError (caller should have terminated).
SelectResult samp_select(const Tensor& grad, const Tensor& x_k, const Tensor& x_E,
                         std::size_t s,
                         SelectionObjective objective = SelectionObjective::Gain);

// L1 trust region: rescale the step to length eta when it is longer.
Tensor apply_infinitesimal_constraint(const Tensor& step, double eta);

// g_new = lambda * g_prev + (1 - lambda) * grad
Tensor momentum_update(const Tensor& g_prev, const Tensor& grad, double lambda);

// Greedy near-optimal path search: repeatedly move the step_pixels
// coordinates with the largest gradient-projected remaining change (per the
// selection objective), clipped to an L1 budget per step, accumulating
// a_i = sum_k g^k_i (dx^k)_i with the (optionally momentum-smoothed)
// gradient taken at the pre-move point. The walk runs from xS to xE as
// given; cfg.direction is interpreted by the callers that pick endpoint
// order, not here.
PathAttribution samp_attribute(const Model& model, int cls, const Tensor& xS,
                               const Tensor& xE, const SampConfig& cfg,
                               SelectionObjective objective = SelectionObjective::Gain);

struct BidirectionalResult {
    Attribution combined;          // oriented sum (x0->xT leg minus xT->x0 leg)
    PathAttribution to_target;     // raw x0 -> xT traversal
    PathAttribution to_baseline;   // raw xT -> x0 traversal
};

// Runs both traversals and sums their oriented attributions; on a linear
// model the sum is 2 * w_i * (xT_i - x0_i), and halve=true applies the 1/2
// normalisation that maps it back onto the single-direction scale.
// combined.delta_y is f(xT) - f(x0) either way.
BidirectionalResult bidirectional_attribute_detail(const Model& model, int cls,
                                                   const Tensor& x0, const Tensor& xT,
                                                   const SampConfig& cfg,
                                                   bool halve = false);

// Same, returning only the combined attribution. Requires
// cfg.direction == Direction::Both.
Attribution bidirectional_attribute(const Model& model, int cls, const Tensor& x0,
                                    const Tensor& xT, const SampConfig& cfg,
                                    bool halve = false);

struct DirectionalResult {
    Attribution attribution;          // oriented: positive supports f(input)
    std::vector<PathAttribution> legs;  // raw traversals, 1 or 2 entries
};

// Dispatch on cfg.direction with a fixed (baseline, input) pair, orienting
// the result so that sum(values) tracks f(input) - f(baseline) regardless of
// walk direction (the to_baseline traversal integrates the opposite way and
// is negated). `halve_both` applies the 1/2 normalisation in the Both case.
DirectionalResult directional_attribute(const Model& model, int cls,
                                        const Tensor& baseline, const Tensor& input,
                                        const SampConfig& cfg, bool halve_both = false);

}  // namespace samp
