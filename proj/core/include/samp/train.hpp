#pragma once

#include <cstdint>
#include <memory>

#include "samp/dataset.hpp"
#include "samp/model.hpp"

namespace samp {

struct TrainOptions {
    std::size_t epochs = 200;
    double learning_rate = 0.1;
    double momentum = 0.9;
    std::size_t batch_size = 32;
    std::uint64_t seed = 0;
};

struct TrainResult {
    std::unique_ptr<Model> model;
    double final_loss = 0.0;      // mean cross-entropy over the last epoch
    double final_accuracy = 0.0;  // on the training set; these are fixtures
    std::size_t epochs_run = 0;
};

// Minibatch SGD with classical momentum on softmax cross-entropy. `proto`
// supplies the architecture; parameters are re-initialised from `seed`, so
// the result depends only on (proto shape, data, options). Throws
// TrainingError naming the epoch if the loss stops being finite.
TrainResult train_fixture(const Model& proto, const Dataset& data, const TrainOptions& opts);

// Shorthand with default momentum/batch size.
std::unique_ptr<Model> train_fixture(const Model& proto, const Dataset& data,
                                     std::size_t epochs, double learning_rate,
                                     std::uint64_t seed);

double accuracy(const Model& model, const Dataset& data);

}  // namespace samp
