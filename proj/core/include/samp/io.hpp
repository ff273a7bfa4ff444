#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <utility>

#include "samp/dataset.hpp"
#include "samp/metrics.hpp"
#include "samp/model.hpp"
#include "samp/path.hpp"
#include "samp/tensor.hpp"

namespace samp {

// Model persistence: a small JSON manifest describing the architecture plus
// a sidecar .bin blob holding every parameter tensor flattened as
// little-endian float64, in parameter_views() order. Parameter-free kinds
// (counting) skip the blob. The blob sits next to the manifest and is named
// after it.
void save_model(const Model& model, const std::filesystem::path& json_path);
std::unique_ptr<Model> load_model(const std::filesystem::path& json_path);

// Dataset CSV: one row per sample, flattened pixel values then the label in
// the last column. Values are printed with round-trip precision. The reader
// reshapes inputs to image_shape when given, else keeps them flat.
void save_dataset_csv(const Dataset& data, const std::filesystem::path& csv_path);
Dataset load_dataset_csv(const std::filesystem::path& csv_path,
                         std::optional<std::pair<std::size_t, std::size_t>> image_shape =
                             std::nullopt);

// 8-bit PGM (P2 or P5 accepted; P2 written), values mapped to [0,1].
Tensor read_pgm(const std::filesystem::path& path);
void write_pgm(const std::filesystem::path& path, const Tensor& image);

// Image CSV: one text row per pixel row. Shape is taken from the grid.
Tensor read_image_csv(const std::filesystem::path& path);
void write_image_csv(const std::filesystem::path& path, const Tensor& image);

// Dispatch on extension: .pgm or .csv.
Tensor read_image(const std::filesystem::path& path);

// Attribution artifacts: exact values as "index,value" CSV, plus a min-max
// scaled 8-bit PGM saliency map whose scaling is recorded in a sidecar JSON
// so the quantised map can be mapped back to value space.
void write_attribution_csv(const std::filesystem::path& path, const Tensor& values);
Tensor read_attribution_csv(const std::filesystem::path& path);
void write_saliency_pgm(const std::filesystem::path& pgm_path,
                        const std::filesystem::path& sidecar_json_path,
                        const Tensor& values);

// Path export: JSON header carrying (n, d, s, eta, lambda) plus a blob of
// little-endian float64 rows — start, end, then the n steps. eta == nullopt
// is stored as JSON null ("unbounded").
struct StoredPath {
    PathSegments path;
    std::size_t s = 0;
    std::optional<double> eta;
    double lambda = 0.0;
};
void save_path_segments(const std::filesystem::path& json_path, const PathSegments& path,
                        std::size_t s, std::optional<double> eta, double lambda);
StoredPath load_path_segments(const std::filesystem::path& json_path);

// Metric curve CSV with a "k,y_raw,y_hat" header row.
void write_metric_curve_csv(const std::filesystem::path& path, const MetricCurve& curve);

}  // namespace samp
