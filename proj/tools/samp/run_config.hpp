#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

namespace samptool {

// Every setting any subcommand reads, with the documented defaults (s=10,
// eta ratio 0.1, lambda 0.5, blur kernel 11 / sigma 5, metric step 10).
// Values are resolved in three layers: built-in defaults, then the flat
// JSON file given by --config, then explicit command-line flags.
struct RunConfig {
    // artifact plumbing
    std::string model_path;
    std::string dataset_path;
    std::string input_path;
    std::string out_dir = "out";
    std::uint64_t seed = 0;

    // path search settings
    std::size_t step_pixels = 10;
    double eta_ratio = 0.1;  // <= 0 disables the per-step cap (plain greedy)
    double lambda = 0.5;
    std::string direction = "both";
    std::string method = "samp++";
    std::string methods = "ig,samp,samp++";
    int cls = -1;  // -1: use the predicted (attribute) or labelled (evaluate) class
    std::size_t ig_steps = 100;
    std::string baseline = "black";  // path endpoint for attribution runs

    // metric settings
    std::string deletion_baseline = "black";
    std::string insertion_baseline = "gaussian_blur";
    std::size_t blur_kernel = 11;
    double blur_sigma = 5.0;
    std::size_t metric_step = 10;
    std::size_t num_inputs = 50;
    std::size_t image_rows = 0;  // 0: infer a square image from the row length
    std::size_t image_cols = 0;
    bool softmax_scores = false;

    // fixture training; the narrow tanh layer keeps the learned score
    // surface curved enough that path choice visibly matters downstream
    std::size_t epochs = 300;
    double learning_rate = 0.1;
    double train_momentum = 0.9;
    std::size_t batch_size = 32;
    std::string hidden = "16";  // comma-separated hidden layer widths
    std::string activation = "tanh";
    bool make_blob_dataset = false;
    std::size_t blob_samples = 200;
    std::size_t blob_rows = 16;
    std::size_t blob_cols = 16;

    // sweeps
    std::string sweep_param = "eta";
    std::string sweep_values;  // comma-separated; empty picks the documented grid
    std::size_t sweep_inputs = 20;

    // oracle verification
    std::size_t trials = 1000000;
    std::size_t independence_trials = 100000;

    std::size_t threads = 1;
};

// Applies the key/value pairs of a flat JSON object onto cfg. Unknown keys
// and wrong value types are InputErrors so typos cannot silently fall back
// to defaults. Returns true if the file carried an explicit "seed".
bool apply_config_file(RunConfig& cfg, const std::string& path);

// Canonical JSON image of the effective settings (keys sorted by nlohmann's
// object ordering, so the serialisation is stable).
nlohmann::json config_json(const RunConfig& cfg);

// FNV-1a 64-bit hash of the canonical serialisation, as 16 hex digits.
std::string config_hash(const nlohmann::json& canonical);

// SAMP_SEED fallback: used only when neither a flag nor the config file set
// the seed. Malformed values are InputErrors.
std::optional<std::uint64_t> seed_from_environment();

// "a,b,c" -> trimmed tokens; empty input -> empty list.
std::vector<std::string> split_list(const std::string& csv);
std::vector<double> split_numbers(const std::string& csv);

}  // namespace samptool
