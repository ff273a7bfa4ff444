#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "samp/model.hpp"
#include "samp/path.hpp"
#include "samp/samp.hpp"
#include "samp/tensor.hpp"

namespace samp {

enum class BaselineKind { Black, White, UniformRandom, GaussianRandom, GaussianBlur };

std::string baseline_kind_name(BaselineKind k);
BaselineKind baseline_kind_from_name(const std::string& name);

struct BaselineSpec {
    BaselineKind kind = BaselineKind::Black;
    std::optional<std::size_t> blur_kernel;  // s_g, odd; required iff blur
    std::optional<double> blur_sigma;        // Gaussian std dev; required iff blur
    std::uint64_t seed = 0;                  // used by the random kinds

    void validate() const;
    static BaselineSpec black();
    static BaselineSpec blur(std::size_t kernel, double sigma);
};

// Reference input per spec: black/white constants, per-pixel noise, or a
// blurred copy of x. Deterministic given the seed.
Tensor make_baseline(const Tensor& x, const BaselineSpec& spec);

// Separable 2-D Gaussian convolution on a [rows, cols] tensor. The kernel is
// normalised to sum 1; borders use symmetric reflection that duplicates the
// edge sample (-1 -> 0, n -> n-1), which preserves the image mean exactly
// for symmetric kernels.
Tensor gaussian_blur(const Tensor& image, std::size_t kernel_size, double sigma);

enum class MetricMode { Deletion, Insertion };

std::string metric_mode_name(MetricMode m);

struct CurvePoint {
    std::size_t modified = 0;  // pixels replaced (deletion) or restored (insertion)
    double y_raw = 0.0;        // model score at this state
    double y_hat = 0.0;        // y_raw / y(full input)
};

struct MetricCurve {
    std::vector<CurvePoint> points;  // chronological; K+1 entries
    double auc = 0.0;                // mean of y_hat over the points
};

// Score trajectory as the `step` highest-attributed features at a time are
// replaced with baseline values (deletion, starting from x) or restored into
// the baseline (insertion). Scores are pre-softmax logits unless
// softmax_scores is set; both normalise by the full-input score, so the
// intact end of the curve is exactly 1. NumericError when that normaliser is
// smaller than 1e-12 in magnitude. Ranking ties break by ascending index.
MetricCurve deletion_insertion(const Model& model, int cls, const Tensor& x,
                               const Attribution& attribution, MetricMode mode,
                               std::size_t step, const BaselineSpec& baseline,
                               bool softmax_scores = false);

// Sample Pearson correlation; NumericError when either side has zero
// variance (the coefficient is undefined there).
double pearson(const std::vector<double>& xs, const std::vector<double>& ys);

struct SensitivityPoint {
    double beta = 0.0;
    double correlation = 0.0;
};

// Completeness diagnostic: for each beta, run the path search from a zero
// baseline to every input with the step budget eta = ||x||_1 / beta, then
// correlate total attribution against the realised output change across
// inputs. Larger beta means finer steps, so the correlation should rise
// toward 1.
std::vector<SensitivityPoint> sensitivity_sweep(const Model& model, int cls,
                                                const std::vector<Tensor>& inputs,
                                                const std::vector<double>& beta_list,
                                                const SampConfig& cfg);

}  // namespace samp
