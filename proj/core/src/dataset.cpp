#include "samp/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "samp/errors.hpp"
#include "samp/rng.hpp"

namespace samp {

void Dataset::check(int num_classes) const {
    if (inputs.empty()) throw InputError("dataset is empty");
    if (inputs.size() != labels.size())
        throw InputError("dataset has " + std::to_string(inputs.size()) + " inputs but " +
                         std::to_string(labels.size()) + " labels");
    for (const Tensor& x : inputs)
        if (!x.same_shape(inputs.front()))
            throw InputError("dataset inputs do not share one shape");
    for (int y : labels)
        if (y < 0 || y >= num_classes)
            throw InputError("dataset label " + std::to_string(y) + " out of range [0, " +
                             std::to_string(num_classes) + ")");
}

Dataset make_blob_dataset(std::size_t n, std::size_t rows, std::size_t cols,
                          std::uint64_t seed) {
    if (n == 0 || rows == 0 || cols == 0)
        throw InputError("blob dataset needs positive sample count and image size");
    Rng rng(seed);
    Dataset data;
    data.inputs.reserve(n);
    data.labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        int label = static_cast<int>(i % 2);
        // Every image carries two Gaussian bumps, one in the upper-left region
        // and one in the lower-right; the label says which bump peaks
        // brighter. The dimmer bump is made broader so both carry roughly the
        // same total mass, which rules out solving the task by pooled
        // brightness alone: the model has to compare local peak contrast,
        // keeping the learned score surface genuinely curved.
        double strong = rng.uniform(0.75, 1.0);
        double weak = strong - rng.uniform(0.2, 0.4);
        double r_strong = rng.uniform(0.9, 1.3);
        double r_weak = r_strong * std::sqrt(strong / weak);
        double amps[2] = {label == 0 ? strong : weak, label == 1 ? strong : weak};
        double radii[2] = {label == 0 ? r_strong : r_weak, label == 1 ? r_strong : r_weak};
        double centers[2] = {0.30, 0.70};
        Tensor img = Tensor::zeros({rows, cols});
        for (int b = 0; b < 2; ++b) {
            double cr = (centers[b] + rng.uniform(-0.12, 0.12)) * static_cast<double>(rows - 1);
            double cc = (centers[b] + rng.uniform(-0.12, 0.12)) * static_cast<double>(cols - 1);
            for (std::size_t r = 0; r < rows; ++r) {
                for (std::size_t c = 0; c < cols; ++c) {
                    double dr = static_cast<double>(r) - cr;
                    double dc = static_cast<double>(c) - cc;
                    img.at(r, c) +=
                        amps[b] * std::exp(-(dr * dr + dc * dc) / (2.0 * radii[b] * radii[b]));
                }
            }
        }
        for (std::size_t j = 0; j < img.size(); ++j)
            img[j] = std::clamp(img[j] + rng.normal(0.0, 0.03), 0.0, 1.0);
        data.inputs.push_back(std::move(img));
        data.labels.push_back(label);
    }
    return data;
}

}  // namespace samp
