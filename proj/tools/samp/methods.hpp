#pragma once

#include <string>
#include <vector>

#include "run_config.hpp"
#include "samp/metrics.hpp"
#include "samp/samp.hpp"

namespace samptool {

// The three attribution methods the toolkit exposes on the command line:
//   ig      straight-line path, plain gradients (step count ig_steps)
//   samp    greedy path search, no step cap, no momentum
//   samp++  greedy search with the L1 step cap and gradient momentum
// samp/samp++ honour cfg.direction; the Both case averages the two oriented
// traversals so every method reports attributions on the same scale.
struct MethodRun {
    samp::Attribution attribution;
    std::vector<samp::PathAttribution> legs;  // underlying traversals
};

bool is_known_method(const std::string& name);

// Search settings for samp/samp++; InputError for ig (which has no
// SampConfig) or an unknown name.
samp::SampConfig method_config(const RunConfig& cfg, const std::string& method);

MethodRun run_method(const samp::Model& model, int cls, const samp::Tensor& baseline,
                     const samp::Tensor& input, const std::string& method,
                     const RunConfig& cfg);

// Baseline construction for a named kind, wiring the blur parameters and
// seed from the run config.
samp::BaselineSpec baseline_spec(const RunConfig& cfg, const std::string& kind_name);

}  // namespace samptool
