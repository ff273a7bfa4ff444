// samp — path-method feature attribution toolkit.
//
// Subcommands: train-fixture, attribute, evaluate, sweep, verify. Settings
// resolve in layers: built-in defaults, then the --config JSON file, then
// explicit flags. The seed additionally falls back to the SAMP_SEED
// environment variable when neither a flag nor the config file names one.
//
// Exit codes: 0 success, 1 check/compute failure, 2 usage or input error.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "run_config.hpp"
#include "samp/errors.hpp"

namespace {

using samptool::RunConfig;

// First pass over argv: the config file must be applied before CLI11 binds
// flag defaults, so flags can override file values.
std::string find_config_argument(int argc, char** argv) {
    for (int i = 1; i < argc; ++i) {
        std::string arg = argv[i];
        if (arg == "--config" && i + 1 < argc) return argv[i + 1];
        if (arg.rfind("--config=", 0) == 0) return arg.substr(9);
    }
    return {};
}

void add_search_flags(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--step-pixels", cfg.step_pixels, "coordinates moved per step (s)");
    cmd->add_option("--eta-ratio", cfg.eta_ratio,
                    "per-step L1 budget as a fraction of the endpoint distance; "
                    "0 disables the cap");
    cmd->add_option("--lambda", cfg.lambda, "gradient momentum coefficient in [0,1)");
    cmd->add_option("--direction", cfg.direction,
                    "path orientation: to_baseline, to_target or both");
    cmd->add_option("--baseline", cfg.baseline,
                    "attribution baseline: black, white, uniform_random, "
                    "gaussian_random or gaussian_blur");
    cmd->add_option("--blur-kernel", cfg.blur_kernel, "blur baseline kernel size (odd)");
    cmd->add_option("--blur-sigma", cfg.blur_sigma, "blur baseline standard deviation");
}

void add_metric_flags(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--metric-step", cfg.metric_step,
                    "pixels replaced per Deletion/Insertion step (s_m)");
    cmd->add_option("--deletion-baseline", cfg.deletion_baseline,
                    "replacement values for Deletion");
    cmd->add_option("--insertion-baseline", cfg.insertion_baseline,
                    "starting canvas for Insertion");
    cmd->add_flag("--softmax-scores", cfg.softmax_scores,
                  "score with softmax probabilities instead of logits");
}

void add_image_shape_flags(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--image-rows", cfg.image_rows,
                    "dataset image height (default: infer a square)");
    cmd->add_option("--image-cols", cfg.image_cols, "dataset image width");
}

}  // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    bool config_file_has_seed = false;

    CLI::App app{"path-method feature attribution toolkit"};
    app.require_subcommand(1);

    try {
        std::string config_path = find_config_argument(argc, argv);
        if (!config_path.empty())
            config_file_has_seed = samptool::apply_config_file(cfg, config_path);
    } catch (const samp::InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    // --config is re-declared here only so CLI11 accepts (and documents) it;
    // the file was already applied above.
    std::string config_path_dummy;
    app.add_option("--config", config_path_dummy, "flat JSON config file")
        ->each([](const std::string&) {});

    CLI::Option* seed_opt = nullptr;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--out-dir", cfg.out_dir, "output directory for artifacts");
        CLI::Option* s = cmd->add_option("--seed", cfg.seed, "root random seed");
        cmd->callback([&, s] {
            if (s->count() > 0) seed_opt = s;
        });
        cmd->add_option("--config", config_path_dummy, "flat JSON config file")
            ->each([](const std::string&) {});
    };

    CLI::App* train = app.add_subcommand(
        "train-fixture", "train a small MLP classifier to attribute against");
    add_common(train);
    train->add_option("--dataset", cfg.dataset_path, "training dataset CSV");
    train->add_flag("--make-blob-dataset", cfg.make_blob_dataset,
                    "generate the two-class blob dataset instead of loading one");
    train->add_option("--blob-samples", cfg.blob_samples, "generated dataset size");
    train->add_option("--blob-rows", cfg.blob_rows, "generated image height");
    train->add_option("--blob-cols", cfg.blob_cols, "generated image width");
    train->add_option("--hidden", cfg.hidden, "comma-separated hidden layer widths");
    train->add_option("--activation", cfg.activation, "relu or tanh");
    train->add_option("--epochs", cfg.epochs, "training epochs");
    train->add_option("--learning-rate", cfg.learning_rate, "SGD learning rate");
    train->add_option("--train-momentum", cfg.train_momentum, "SGD momentum");
    train->add_option("--batch-size", cfg.batch_size, "minibatch size");
    add_image_shape_flags(train, cfg);

    CLI::App* attribute =
        app.add_subcommand("attribute", "attribute one input and export the path");
    add_common(attribute);
    attribute->add_option("--model", cfg.model_path, "model manifest JSON");
    attribute->add_option("--input", cfg.input_path, "input image (.pgm or .csv)");
    attribute->add_option("--method", cfg.method, "ig, samp or samp++");
    attribute->add_option("--class", cfg.cls, "class index (default: predicted)");
    attribute->add_option("--ig-steps", cfg.ig_steps, "straight-line step count");
    add_search_flags(attribute, cfg);

    CLI::App* evaluate = app.add_subcommand(
        "evaluate", "Deletion/Insertion AUC tables over a dataset slice");
    add_common(evaluate);
    evaluate->add_option("--model", cfg.model_path, "model manifest JSON");
    evaluate->add_option("--dataset", cfg.dataset_path, "evaluation dataset CSV");
    evaluate->add_option("--methods", cfg.methods, "comma-separated method list");
    evaluate->add_option("--num-inputs", cfg.num_inputs, "how many inputs to evaluate");
    evaluate->add_option("--class", cfg.cls, "fixed class (default: true labels)");
    evaluate->add_option("--ig-steps", cfg.ig_steps, "straight-line step count");
    evaluate->add_option("--threads", cfg.threads, "worker pool size (default 1)");
    add_search_flags(evaluate, cfg);
    add_metric_flags(evaluate, cfg);
    add_image_shape_flags(evaluate, cfg);

    CLI::App* sweep =
        app.add_subcommand("sweep", "grid sweeps over eta, beta, lambda or direction");
    add_common(sweep);
    sweep->add_option("--model", cfg.model_path, "model manifest JSON");
    sweep->add_option("--dataset", cfg.dataset_path, "dataset CSV");
    sweep->add_option("--param", cfg.sweep_param, "eta, beta, lambda or direction");
    sweep->add_option("--values", cfg.sweep_values, "comma-separated grid values");
    sweep->add_option("--sweep-inputs", cfg.sweep_inputs, "inputs per grid point");
    sweep->add_option("--class", cfg.cls, "fixed class (default: true labels)");
    add_search_flags(sweep, cfg);
    add_metric_flags(sweep, cfg);
    add_image_shape_flags(sweep, cfg);

    CLI::App* verify =
        app.add_subcommand("verify", "enumeration, brute-force and Monte-Carlo oracles");
    add_common(verify);
    verify->add_option("--trials", cfg.trials, "bridge sampler trials");
    verify->add_option("--independence-trials", cfg.independence_trials,
                       "trials per dimension for the correlation check");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);  // prints the message
        return 2;
    }

    try {
        // SAMP_SEED applies only when nothing else named a seed.
        if (seed_opt == nullptr && !config_file_has_seed) {
            if (auto env = samptool::seed_from_environment()) cfg.seed = *env;
        }

        if (train->parsed()) return samptool::cmd_train_fixture(cfg);
        if (attribute->parsed()) return samptool::cmd_attribute(cfg);
        if (evaluate->parsed()) return samptool::cmd_evaluate(cfg);
        if (sweep->parsed()) return samptool::cmd_sweep(cfg);
        if (verify->parsed()) return samptool::cmd_verify(cfg);
        std::cerr << "error: no subcommand\n";
        return 2;
    } catch (const samp::InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
