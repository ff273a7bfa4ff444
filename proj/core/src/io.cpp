#include "samp/io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "samp/errors.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace samp {

namespace {

std::ofstream open_out(const fs::path& path, std::ios::openmode mode = std::ios::out) {
    std::ofstream os(path, mode);
    if (!os) throw InputError("cannot write " + path.string());
    return os;
}

std::ifstream open_in(const fs::path& path, std::ios::openmode mode = std::ios::in) {
    std::ifstream is(path, mode);
    if (!is) throw InputError("cannot open " + path.string());
    return is;
}

void put_f64(std::ostream& os, double v) {
    auto bits = std::bit_cast<std::uint64_t>(v);
    char buf[8];
    for (int i = 0; i < 8; ++i) buf[i] = static_cast<char>((bits >> (8 * i)) & 0xff);
    os.write(buf, 8);
}

double get_f64(std::istream& is) {
    char buf[8];
    is.read(buf, 8);
    if (is.gcount() != 8) throw InputError("parameter blob ended early");
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i)
        bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(buf[i])) << (8 * i);
    return std::bit_cast<double>(bits);
}

// Round-trip-exact decimal formatting for text formats.
std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

json parse_json_file(const fs::path& path) {
    auto is = open_in(path);
    json j = json::parse(is, nullptr, false);
    if (j.is_discarded()) throw InputError("malformed JSON in " + path.string());
    return j;
}

fs::path sibling_blob(const fs::path& json_path) {
    fs::path p = json_path;
    p.replace_extension(".bin");
    return p;
}

std::vector<std::size_t> to_sizes(const json& arr) {
    std::vector<std::size_t> out;
    for (const auto& v : arr) out.push_back(v.get<std::size_t>());
    return out;
}

}  // namespace

void save_model(const Model& model, const fs::path& json_path) {
    json manifest;
    manifest["format"] = "samp-model";
    manifest["version"] = 1;
    manifest["kind"] = model.kind();

    if (const auto* mlp = dynamic_cast<const MlpModel*>(&model)) {
        manifest["layer_sizes"] = mlp->layer_sizes();
        manifest["activation"] = activation_name(mlp->activation());
    } else if (const auto* lin = dynamic_cast<const LinearModel*>(&model)) {
        manifest["classes"] = lin->num_classes();
        manifest["input_dim"] = lin->input_dim();
    } else if (const auto* cnt = dynamic_cast<const CountingModel*>(&model)) {
        manifest["input_layout"] = cnt->input_layout();
        manifest["target_value"] = cnt->target_value();
        manifest["tolerance"] = cnt->tolerance();
    } else {
        throw InputError("cannot serialize model kind '" + model.kind() + "'");
    }

    // parameter_views is a mutating surface; serialize from a private clone
    // so the input stays untouched (and const).
    std::unique_ptr<Model> copy = model.clone();
    auto views = copy->parameter_views();
    if (!views.empty()) {
        std::size_t total = 0;
        for (Tensor* t : views) total += t->size();
        manifest["parameters"] = copy->parameter_names();
        manifest["values"] = total;
        fs::path blob = sibling_blob(json_path);
        manifest["blob"] = blob.filename().string();
        auto os = open_out(blob, std::ios::binary);
        for (Tensor* t : views)
            for (std::size_t i = 0; i < t->size(); ++i) put_f64(os, (*t)[i]);
        if (!os) throw InputError("cannot write " + blob.string());
    }

    auto os = open_out(json_path);
    os << manifest.dump(2) << "\n";
}

std::unique_ptr<Model> load_model(const fs::path& json_path) {
    json manifest = parse_json_file(json_path);
    if (manifest.value("format", "") != "samp-model")
        throw InputError(json_path.string() + " is not a model manifest");

    std::string kind = manifest.value("kind", "");
    std::unique_ptr<Model> model;
    if (kind == "mlp") {
        model = std::make_unique<MlpModel>(to_sizes(manifest.at("layer_sizes")),
                                           activation_from_name(manifest.at("activation")));
    } else if (kind == "linear") {
        std::size_t classes = manifest.at("classes").get<std::size_t>();
        std::size_t dim = manifest.at("input_dim").get<std::size_t>();
        model = std::make_unique<LinearModel>(Tensor::zeros({classes, dim}),
                                              Tensor::zeros({classes}));
    } else if (kind == "counting") {
        model = std::make_unique<CountingModel>(to_sizes(manifest.at("input_layout")),
                                                manifest.at("target_value").get<double>(),
                                                manifest.at("tolerance").get<double>());
    } else {
        throw InputError("unknown model kind '" + kind + "' in " + json_path.string());
    }

    auto views = model->parameter_views();
    if (!views.empty()) {
        fs::path blob = json_path.parent_path() / manifest.at("blob").get<std::string>();
        auto is = open_in(blob, std::ios::binary);
        for (Tensor* t : views)
            for (std::size_t i = 0; i < t->size(); ++i) (*t)[i] = get_f64(is);
        char extra;
        if (is.read(&extra, 1))
            throw InputError(blob.string() + " holds more values than the manifest declares");
    }
    return model;
}

void save_dataset_csv(const Dataset& data, const fs::path& csv_path) {
    if (data.inputs.size() != data.labels.size())
        throw InputError("dataset inputs and labels differ in length");
    auto os = open_out(csv_path);
    for (std::size_t i = 0; i < data.inputs.size(); ++i) {
        const Tensor& x = data.inputs[i];
        for (std::size_t j = 0; j < x.size(); ++j) os << fmt(x[j]) << ",";
        os << data.labels[i] << "\n";
    }
}

Dataset load_dataset_csv(const fs::path& csv_path,
                         std::optional<std::pair<std::size_t, std::size_t>> image_shape) {
    auto is = open_in(csv_path);
    Dataset data;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            try {
                row.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw InputError(csv_path.string() + ":" + std::to_string(lineno) +
                                 ": not a number: '" + cell + "'");
            }
        }
        if (row.size() < 2)
            throw InputError(csv_path.string() + ":" + std::to_string(lineno) +
                             ": need at least one pixel and a label");
        double label_v = row.back();
        row.pop_back();
        int label = static_cast<int>(std::llround(label_v));
        if (std::abs(label_v - label) > 1e-9)
            throw InputError(csv_path.string() + ":" + std::to_string(lineno) +
                             ": label column is not an integer");
        std::vector<std::size_t> shape{row.size()};
        if (image_shape) {
            if (image_shape->first * image_shape->second != row.size())
                throw InputError(csv_path.string() + ":" + std::to_string(lineno) +
                                 ": row has " + std::to_string(row.size()) +
                                 " pixels, expected " +
                                 std::to_string(image_shape->first * image_shape->second));
            shape = {image_shape->first, image_shape->second};
        }
        data.inputs.emplace_back(shape, std::move(row));
        data.labels.push_back(label);
    }
    if (data.inputs.empty()) throw InputError(csv_path.string() + " holds no samples");
    return data;
}

namespace {

// Reads the next PGM token, skipping whitespace and '#' comments.
std::string pgm_token(std::istream& is) {
    std::string tok;
    int c;
    while ((c = is.get()) != EOF) {
        if (c == '#') {
            while ((c = is.get()) != EOF && c != '\n') {
            }
            continue;
        }
        if (std::isspace(c)) {
            if (!tok.empty()) break;
            continue;
        }
        tok.push_back(static_cast<char>(c));
    }
    return tok;
}

}  // namespace

Tensor read_pgm(const fs::path& path) {
    auto is = open_in(path, std::ios::binary);
    std::string magic = pgm_token(is);
    if (magic != "P2" && magic != "P5")
        throw InputError(path.string() + ": not an 8-bit PGM (magic '" + magic + "')");
    auto next_int = [&](const char* what) {
        std::string tok = pgm_token(is);
        try {
            return std::stoll(tok);
        } catch (const std::exception&) {
            throw InputError(path.string() + ": bad " + std::string(what) + " '" + tok + "'");
        }
    };
    long long cols = next_int("width");
    long long rows = next_int("height");
    long long maxval = next_int("maxval");
    if (cols <= 0 || rows <= 0) throw InputError(path.string() + ": non-positive size");
    if (maxval <= 0 || maxval > 255)
        throw InputError(path.string() + ": only 8-bit PGM supported (maxval " +
                         std::to_string(maxval) + ")");

    Tensor img = Tensor::zeros({static_cast<std::size_t>(rows), static_cast<std::size_t>(cols)});
    if (magic == "P2") {
        for (std::size_t i = 0; i < img.size(); ++i) {
            long long v = next_int("pixel");
            if (v < 0 || v > maxval) throw InputError(path.string() + ": pixel out of range");
            img[i] = static_cast<double>(v) / static_cast<double>(maxval);
        }
    } else {
        // P5: single whitespace after maxval already consumed by pgm_token.
        std::vector<unsigned char> buf(img.size());
        is.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
        if (static_cast<std::size_t>(is.gcount()) != buf.size())
            throw InputError(path.string() + ": truncated pixel data");
        for (std::size_t i = 0; i < img.size(); ++i) {
            if (buf[i] > maxval) throw InputError(path.string() + ": pixel out of range");
            img[i] = static_cast<double>(buf[i]) / static_cast<double>(maxval);
        }
    }
    return img;
}

void write_pgm(const fs::path& path, const Tensor& image) {
    if (image.shape().size() != 2) throw InputError("PGM writer expects a 2-D tensor");
    auto os = open_out(path);
    os << "P2\n" << image.cols() << " " << image.rows() << "\n255\n";
    for (std::size_t r = 0; r < image.rows(); ++r) {
        for (std::size_t c = 0; c < image.cols(); ++c) {
            double v = std::clamp(image.at(r, c), 0.0, 1.0);
            os << static_cast<int>(std::lround(v * 255.0));
            os << (c + 1 == image.cols() ? '\n' : ' ');
        }
    }
}

Tensor read_image_csv(const fs::path& path) {
    auto is = open_in(path);
    std::vector<double> values;
    std::size_t cols = 0, rows = 0, lineno = 0;
    std::string line;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::size_t row_cols = 0;
        while (std::getline(ss, cell, ',')) {
            try {
                values.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw InputError(path.string() + ":" + std::to_string(lineno) +
                                 ": not a number: '" + cell + "'");
            }
            ++row_cols;
        }
        if (cols == 0)
            cols = row_cols;
        else if (row_cols != cols)
            throw InputError(path.string() + ":" + std::to_string(lineno) +
                             ": ragged row (expected " + std::to_string(cols) + " cells)");
        ++rows;
    }
    if (rows == 0) throw InputError(path.string() + " holds no pixels");
    return Tensor({rows, cols}, std::move(values));
}

void write_image_csv(const fs::path& path, const Tensor& image) {
    if (image.shape().size() != 2) throw InputError("image CSV writer expects a 2-D tensor");
    auto os = open_out(path);
    for (std::size_t r = 0; r < image.rows(); ++r) {
        for (std::size_t c = 0; c < image.cols(); ++c)
            os << fmt(image.at(r, c)) << (c + 1 == image.cols() ? '\n' : ',');
    }
}

Tensor read_image(const fs::path& path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (ext == ".pgm") return read_pgm(path);
    if (ext == ".csv") return read_image_csv(path);
    throw InputError(path.string() + ": unsupported image format (use .pgm or .csv)");
}

void write_attribution_csv(const fs::path& path, const Tensor& values) {
    auto os = open_out(path);
    os << "index,value\n";
    for (std::size_t i = 0; i < values.size(); ++i) os << i << "," << fmt(values[i]) << "\n";
}

Tensor read_attribution_csv(const fs::path& path) {
    auto is = open_in(path);
    std::string line;
    if (!std::getline(is, line) || line != "index,value")
        throw InputError(path.string() + ": missing index,value header");
    std::vector<double> values;
    std::size_t lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto comma = line.find(',');
        if (comma == std::string::npos)
            throw InputError(path.string() + ":" + std::to_string(lineno) + ": missing comma");
        std::size_t index;
        double value;
        try {
            index = std::stoull(line.substr(0, comma));
            value = std::stod(line.substr(comma + 1));
        } catch (const std::exception&) {
            throw InputError(path.string() + ":" + std::to_string(lineno) + ": bad row");
        }
        if (index != values.size())
            throw InputError(path.string() + ":" + std::to_string(lineno) +
                             ": indices must be dense and ascending");
        values.push_back(value);
    }
    if (values.empty()) throw InputError(path.string() + " holds no values");
    // read the size before std::move: argument evaluation order is unspecified
    const std::size_t n = values.size();
    return Tensor({n}, std::move(values));
}

void write_saliency_pgm(const fs::path& pgm_path, const fs::path& sidecar_json_path,
                        const Tensor& values) {
    if (values.shape().size() != 2)
        throw InputError("saliency map writer expects a 2-D tensor");
    double lo = values[0], hi = values[0];
    for (std::size_t i = 0; i < values.size(); ++i) {
        lo = std::min(lo, values[i]);
        hi = std::max(hi, values[i]);
    }
    Tensor scaled = Tensor::zeros(values.shape());
    if (hi > lo)
        for (std::size_t i = 0; i < values.size(); ++i)
            scaled[i] = (values[i] - lo) / (hi - lo);
    write_pgm(pgm_path, scaled);

    json sidecar;
    sidecar["min"] = lo;
    sidecar["max"] = hi;
    sidecar["rows"] = values.rows();
    sidecar["cols"] = values.cols();
    sidecar["maxval"] = 255;
    auto os = open_out(sidecar_json_path);
    os << sidecar.dump(2) << "\n";
}

void save_path_segments(const fs::path& json_path, const PathSegments& path, std::size_t s,
                        std::optional<double> eta, double lambda) {
    path.validate();
    json header;
    header["format"] = "samp-path";
    header["version"] = 1;
    header["n"] = path.num_steps();
    header["d"] = path.start.size();
    header["s"] = s;
    if (eta)
        header["eta"] = *eta;
    else
        header["eta"] = nullptr;
    header["lambda"] = lambda;
    header["shape"] = path.start.shape();
    fs::path blob = sibling_blob(json_path);
    header["blob"] = blob.filename().string();

    auto os = open_out(blob, std::ios::binary);
    auto put_row = [&](const Tensor& t) {
        for (std::size_t i = 0; i < t.size(); ++i) put_f64(os, t[i]);
    };
    put_row(path.start);
    put_row(path.end);
    for (const Tensor& dx : path.steps) put_row(dx);
    if (!os) throw InputError("cannot write " + blob.string());

    auto hs = open_out(json_path);
    hs << header.dump(2) << "\n";
}

StoredPath load_path_segments(const fs::path& json_path) {
    json header = parse_json_file(json_path);
    if (header.value("format", "") != "samp-path")
        throw InputError(json_path.string() + " is not a path header");
    StoredPath out;
    std::size_t n = header.at("n").get<std::size_t>();
    std::size_t d = header.at("d").get<std::size_t>();
    out.s = header.at("s").get<std::size_t>();
    if (!header.at("eta").is_null()) out.eta = header.at("eta").get<double>();
    out.lambda = header.at("lambda").get<double>();
    std::vector<std::size_t> shape = to_sizes(header.at("shape"));

    fs::path blob = json_path.parent_path() / header.at("blob").get<std::string>();
    auto is = open_in(blob, std::ios::binary);
    auto get_row = [&]() {
        std::vector<double> row(d);
        for (std::size_t i = 0; i < d; ++i) row[i] = get_f64(is);
        return Tensor(shape, std::move(row));
    };
    out.path.start = get_row();
    out.path.end = get_row();
    out.path.steps.reserve(n);
    for (std::size_t k = 0; k < n; ++k) out.path.steps.push_back(get_row());
    out.path.validate();
    return out;
}

void write_metric_curve_csv(const fs::path& path, const MetricCurve& curve) {
    auto os = open_out(path);
    os << "k,y_raw,y_hat\n";
    for (const CurvePoint& p : curve.points)
        os << p.modified << "," << fmt(p.y_raw) << "," << fmt(p.y_hat) << "\n";
}

}  // namespace samp
