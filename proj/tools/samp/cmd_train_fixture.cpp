#include <algorithm>
#include <fstream>
#include <iostream>

#include "artifacts.hpp"
#include "commands.hpp"
#include "loading.hpp"
#include "samp/errors.hpp"
#include "samp/io.hpp"
#include "samp/train.hpp"

namespace samptool {

using namespace samp;
using nlohmann::json;

namespace {

std::vector<std::size_t> parse_layer_sizes(const RunConfig& cfg, std::size_t input_dim,
                                           int classes) {
    std::vector<std::size_t> layers{input_dim};
    for (const std::string& tok : split_list(cfg.hidden)) {
        std::size_t width = 0;
        try {
            width = std::stoul(tok);
        } catch (const std::exception&) {
            throw InputError("bad hidden layer width '" + tok + "'");
        }
        if (width == 0) throw InputError("hidden layer widths must be positive");
        layers.push_back(width);
    }
    layers.push_back(static_cast<std::size_t>(classes));
    return layers;
}

}  // namespace

int cmd_train_fixture(const RunConfig& cfg) {
    ArtifactSink sink(cfg.out_dir);

    Dataset data;
    std::string dataset_source;
    if (cfg.make_blob_dataset) {
        data = make_blob_dataset(cfg.blob_samples, cfg.blob_rows, cfg.blob_cols, cfg.seed);
        save_dataset_csv(data, sink.path("dataset.csv"));
        dataset_source = "generated blob dataset";
    } else {
        data = load_shaped_dataset(cfg);
        dataset_source = cfg.dataset_path;
    }
    if (data.size() == 0) throw InputError("dataset is empty");

    int classes = 2;
    for (int label : data.labels) classes = std::max(classes, label + 1);

    MlpModel proto(parse_layer_sizes(cfg, data.inputs.front().size(), classes),
                   activation_from_name(cfg.activation));

    TrainOptions opt;
    opt.epochs = cfg.epochs;
    opt.learning_rate = cfg.learning_rate;
    opt.momentum = cfg.train_momentum;
    opt.batch_size = cfg.batch_size;
    opt.seed = cfg.seed;
    TrainResult result = train_fixture(proto, data, opt);

    save_model(*result.model, sink.path("model.json"));
    sink.path("model.bin");  // written by save_model; record it as an artifact

    json log;
    log["dataset"] = dataset_source;
    log["samples"] = data.size();
    log["layer_sizes"] = dynamic_cast<const MlpModel&>(*result.model).layer_sizes();
    log["activation"] = cfg.activation;
    log["epochs_run"] = result.epochs_run;
    log["final_loss"] = result.final_loss;
    log["final_accuracy"] = result.final_accuracy;
    log["seed"] = cfg.seed;
    {
        std::ofstream os(sink.path("train_log.json"));
        os << log.dump(2) << "\n";
    }

    std::cout << "trained " << dataset_source << " (" << data.size() << " samples) for "
              << result.epochs_run << " epochs\n"
              << "final_loss = " << result.final_loss << "\n"
              << "final_accuracy = " << result.final_accuracy << "\n"
              << "model written to " << (sink.root() / "model.json").string() << "\n";

    sink.write_manifest("train-fixture", config_json(cfg));
    return 0;
}

}  // namespace samptool
