#include "run_config.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include "samp/errors.hpp"

namespace samptool {

using nlohmann::json;
using samp::InputError;

namespace {

// One entry per accepted key: how to read it from JSON and how to write it
// back out for the canonical dump. Keeping both directions in one table
// means the config file format and the manifest cannot drift apart.
struct Field {
    std::function<void(RunConfig&, const json&)> set;
    std::function<json(const RunConfig&)> get;
};

template <typename T, typename M>
Field field(M RunConfig::* member) {
    return Field{
        [member](RunConfig& cfg, const json& v) {
            try {
                cfg.*member = v.get<T>();
            } catch (const json::exception&) {
                throw InputError("config value has the wrong type");
            }
        },
        [member](const RunConfig& cfg) { return json(cfg.*member); },
    };
}

const std::map<std::string, Field>& field_table() {
    static const std::map<std::string, Field> table = {
        {"model", field<std::string>(&RunConfig::model_path)},
        {"dataset", field<std::string>(&RunConfig::dataset_path)},
        {"input", field<std::string>(&RunConfig::input_path)},
        {"out_dir", field<std::string>(&RunConfig::out_dir)},
        {"seed", field<std::uint64_t>(&RunConfig::seed)},
        {"step_pixels", field<std::size_t>(&RunConfig::step_pixels)},
        {"eta_ratio", field<double>(&RunConfig::eta_ratio)},
        {"lambda", field<double>(&RunConfig::lambda)},
        {"direction", field<std::string>(&RunConfig::direction)},
        {"method", field<std::string>(&RunConfig::method)},
        {"methods", field<std::string>(&RunConfig::methods)},
        {"class", field<int>(&RunConfig::cls)},
        {"ig_steps", field<std::size_t>(&RunConfig::ig_steps)},
        {"baseline", field<std::string>(&RunConfig::baseline)},
        {"deletion_baseline", field<std::string>(&RunConfig::deletion_baseline)},
        {"insertion_baseline", field<std::string>(&RunConfig::insertion_baseline)},
        {"blur_kernel", field<std::size_t>(&RunConfig::blur_kernel)},
        {"blur_sigma", field<double>(&RunConfig::blur_sigma)},
        {"metric_step", field<std::size_t>(&RunConfig::metric_step)},
        {"num_inputs", field<std::size_t>(&RunConfig::num_inputs)},
        {"image_rows", field<std::size_t>(&RunConfig::image_rows)},
        {"image_cols", field<std::size_t>(&RunConfig::image_cols)},
        {"softmax_scores", field<bool>(&RunConfig::softmax_scores)},
        {"epochs", field<std::size_t>(&RunConfig::epochs)},
        {"learning_rate", field<double>(&RunConfig::learning_rate)},
        {"train_momentum", field<double>(&RunConfig::train_momentum)},
        {"batch_size", field<std::size_t>(&RunConfig::batch_size)},
        {"hidden", field<std::string>(&RunConfig::hidden)},
        {"activation", field<std::string>(&RunConfig::activation)},
        {"make_blob_dataset", field<bool>(&RunConfig::make_blob_dataset)},
        {"blob_samples", field<std::size_t>(&RunConfig::blob_samples)},
        {"blob_rows", field<std::size_t>(&RunConfig::blob_rows)},
        {"blob_cols", field<std::size_t>(&RunConfig::blob_cols)},
        {"sweep_param", field<std::string>(&RunConfig::sweep_param)},
        {"sweep_values", field<std::string>(&RunConfig::sweep_values)},
        {"sweep_inputs", field<std::size_t>(&RunConfig::sweep_inputs)},
        {"trials", field<std::size_t>(&RunConfig::trials)},
        {"independence_trials", field<std::size_t>(&RunConfig::independence_trials)},
        {"threads", field<std::size_t>(&RunConfig::threads)},
    };
    return table;
}

}  // namespace

bool apply_config_file(RunConfig& cfg, const std::string& path) {
    std::ifstream is(path);
    if (!is) throw InputError("cannot open config file " + path);
    json doc = json::parse(is, nullptr, false);
    if (doc.is_discarded()) throw InputError(path + ": malformed JSON");
    if (!doc.is_object()) throw InputError(path + ": config must be a flat JSON object");

    const auto& table = field_table();
    for (const auto& [key, value] : doc.items()) {
        auto it = table.find(key);
        if (it == table.end()) throw InputError(path + ": unknown config key '" + key + "'");
        try {
            it->second.set(cfg, value);
        } catch (const InputError&) {
            throw InputError(path + ": key '" + key + "' has the wrong type");
        }
    }
    return doc.contains("seed");
}

json config_json(const RunConfig& cfg) {
    json out = json::object();
    for (const auto& [key, f] : field_table()) out[key] = f.get(cfg);
    return out;
}

std::string config_hash(const json& canonical) {
    const std::string text = canonical.dump();
    std::uint64_t h = 1469598103934665603ull;  // FNV offset basis
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;  // FNV prime
    }
    std::ostringstream hex;
    hex << std::hex;
    for (int shift = 60; shift >= 0; shift -= 4) hex << ((h >> shift) & 0xF);
    return hex.str();
}

std::optional<std::uint64_t> seed_from_environment() {
    const char* raw = std::getenv("SAMP_SEED");
    if (raw == nullptr || *raw == '\0') return std::nullopt;
    try {
        std::size_t used = 0;
        unsigned long long v = std::stoull(raw, &used);
        if (used != std::string(raw).size())
            throw std::invalid_argument("trailing characters");
        return static_cast<std::uint64_t>(v);
    } catch (const std::exception&) {
        throw InputError(std::string("SAMP_SEED is not a valid seed: '") + raw + "'");
    }
}

std::vector<std::string> split_list(const std::string& csv) {
    std::vector<std::string> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t a = item.find_first_not_of(" \t");
        if (a == std::string::npos) continue;
        std::size_t b = item.find_last_not_of(" \t");
        out.push_back(item.substr(a, b - a + 1));
    }
    return out;
}

std::vector<double> split_numbers(const std::string& csv) {
    std::vector<double> out;
    for (const std::string& tok : split_list(csv)) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(tok, &used));
            if (used != tok.size()) throw std::invalid_argument("trailing characters");
        } catch (const std::exception&) {
            throw InputError("'" + tok + "' is not a number");
        }
    }
    return out;
}

}  // namespace samptool
