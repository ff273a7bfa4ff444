#pragma once

#include <memory>

#include "run_config.hpp"
#include "samp/dataset.hpp"
#include "samp/model.hpp"
#include "samp/tensor.hpp"

namespace samptool {

// Model from --model; InputError when the flag is missing or the file is
// unreadable.
std::unique_ptr<samp::Model> load_model_checked(const RunConfig& cfg);

// Dataset from --dataset, reshaped to [rows, cols] images. An explicit
// --image-rows/--image-cols pair wins; otherwise square row lengths are
// folded automatically (the blur baseline needs 2-D inputs) and anything
// else stays flat.
samp::Dataset load_shaped_dataset(const RunConfig& cfg);

// Single image from --input (.pgm or .csv).
samp::Tensor load_input_image(const RunConfig& cfg);

}  // namespace samptool
