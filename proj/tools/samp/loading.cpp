#include "loading.hpp"

#include <cmath>

#include "samp/errors.hpp"
#include "samp/io.hpp"

namespace samptool {

using namespace samp;

std::unique_ptr<Model> load_model_checked(const RunConfig& cfg) {
    if (cfg.model_path.empty()) throw InputError("no model given (--model)");
    return load_model(cfg.model_path);
}

Dataset load_shaped_dataset(const RunConfig& cfg) {
    if (cfg.dataset_path.empty()) throw InputError("no dataset given (--dataset)");
    if ((cfg.image_rows == 0) != (cfg.image_cols == 0))
        throw InputError("--image-rows and --image-cols must be given together");

    std::optional<std::pair<std::size_t, std::size_t>> shape;
    if (cfg.image_rows > 0) {
        shape = {cfg.image_rows, cfg.image_cols};
    } else {
        Dataset flat = load_dataset_csv(cfg.dataset_path);
        if (flat.size() == 0) return flat;
        std::size_t d = flat.inputs.front().size();
        auto side = static_cast<std::size_t>(std::lround(std::sqrt(static_cast<double>(d))));
        if (side * side != d) return flat;  // not square: keep rows flat
        shape = {side, side};
    }
    return load_dataset_csv(cfg.dataset_path, shape);
}

Tensor load_input_image(const RunConfig& cfg) {
    if (cfg.input_path.empty()) throw InputError("no input image given (--input)");
    return read_image(cfg.input_path);
}

}  // namespace samptool
