#pragma once

#include <cstdint>
#include <vector>

#include "samp/tensor.hpp"

namespace samp {

struct Dataset {
    std::vector<Tensor> inputs;
    std::vector<int> labels;

    std::size_t size() const { return inputs.size(); }

    // InputError unless inputs/labels align, share one shape, and every
    // label fits in [0, num_classes).
    void check(int num_classes) const;
};

// Two-class toy images in [0,1]: a soft intensity blob whose quadrant depends
// on the class, plus pixel noise. Balanced labels (even index -> class 0).
// Enough structure for a small classifier to reach high accuracy while
// keeping gradients non-trivial.
Dataset make_blob_dataset(std::size_t n, std::size_t rows, std::size_t cols,
                          std::uint64_t seed);

}  // namespace samp
