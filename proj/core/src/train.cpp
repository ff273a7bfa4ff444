#include "samp/train.hpp"

#include <cmath>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "samp/errors.hpp"
#include "samp/rng.hpp"

namespace samp {

TrainResult train_fixture(const Model& proto, const Dataset& data, const TrainOptions& opts) {
    data.check(proto.num_classes());
    if (proto.num_classes() < 2)
        throw InputError("training needs at least two classes");
    if (data.inputs.front().size() != proto.input_dim())
        throw InputError("dataset input size does not match model input_dim");
    if (opts.epochs == 0) throw InputError("epochs must be positive");
    if (!(opts.learning_rate > 0.0)) throw InputError("learning rate must be positive");
    if (opts.momentum < 0.0 || opts.momentum >= 1.0)
        throw InputError("momentum must lie in [0, 1)");
    if (opts.batch_size == 0) throw InputError("batch size must be positive");

    TrainResult result;
    result.model = proto.clone();
    Rng rng(opts.seed);
    result.model->init_parameters(rng);

    auto params = result.model->parameter_views();
    if (params.empty()) throw InputError(proto.kind() + " model has no trainable parameters");
    std::vector<Tensor> grads, velocity;
    for (Tensor* p : params) {
        grads.push_back(Tensor::zeros(p->shape()));
        velocity.push_back(Tensor::zeros(p->shape()));
    }

    std::vector<std::size_t> order(data.size());
    std::iota(order.begin(), order.end(), std::size_t{0});

    for (std::size_t epoch = 0; epoch < opts.epochs; ++epoch) {
        // Fisher-Yates with our own Rng; std::shuffle is not portable bit-for-bit.
        for (std::size_t i = order.size(); i > 1; --i)
            std::swap(order[i - 1], order[rng.index(i)]);

        double epoch_loss = 0.0;
        for (std::size_t start = 0; start < order.size(); start += opts.batch_size) {
            std::size_t stop = std::min(start + opts.batch_size, order.size());
            for (Tensor& g : grads)
                for (std::size_t i = 0; i < g.size(); ++i) g[i] = 0.0;
            for (std::size_t k = start; k < stop; ++k)
                epoch_loss += result.model->accumulate_loss_gradients(
                    data.inputs[order[k]], data.labels[order[k]], grads);
            double inv = 1.0 / static_cast<double>(stop - start);
            for (std::size_t p = 0; p < params.size(); ++p) {
                for (std::size_t i = 0; i < grads[p].size(); ++i) {
                    velocity[p][i] =
                        opts.momentum * velocity[p][i] - opts.learning_rate * inv * grads[p][i];
                    (*params[p])[i] += velocity[p][i];
                }
            }
        }
        epoch_loss /= static_cast<double>(data.size());
        if (!std::isfinite(epoch_loss))
            throw TrainingError("training diverged at epoch " + std::to_string(epoch));
        result.final_loss = epoch_loss;
        result.epochs_run = epoch + 1;
    }

    // Parameters mutated in place above can defeat Tensor's finite-entry
    // guarantee; a final check keeps the contract honest.
    for (Tensor* p : params)
        for (std::size_t i = 0; i < p->size(); ++i)
            if (!std::isfinite((*p)[i]))
                throw TrainingError("training diverged at epoch " +
                                    std::to_string(opts.epochs - 1));

    result.final_accuracy = accuracy(*result.model, data);
    return result;
}

std::unique_ptr<Model> train_fixture(const Model& proto, const Dataset& data,
                                     std::size_t epochs, double learning_rate,
                                     std::uint64_t seed) {
    TrainOptions opts;
    opts.epochs = epochs;
    opts.learning_rate = learning_rate;
    opts.seed = seed;
    return train_fixture(proto, data, opts).model;
}

double accuracy(const Model& model, const Dataset& data) {
    data.check(model.num_classes());
    std::size_t hits = 0;
    for (std::size_t i = 0; i < data.size(); ++i)
        if (model.predict(data.inputs[i]) == data.labels[i]) ++hits;
    return static_cast<double>(hits) / static_cast<double>(data.size());
}

}  // namespace samp
