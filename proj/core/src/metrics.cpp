#include "samp/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "samp/errors.hpp"
#include "samp/rng.hpp"

namespace samp {

std::string baseline_kind_name(BaselineKind k) {
    switch (k) {
        case BaselineKind::Black: return "black";
        case BaselineKind::White: return "white";
        case BaselineKind::UniformRandom: return "uniform_random";
        case BaselineKind::GaussianRandom: return "gaussian_random";
        case BaselineKind::GaussianBlur: return "gaussian_blur";
    }
    throw InputError("unhandled baseline kind");
}

BaselineKind baseline_kind_from_name(const std::string& name) {
    if (name == "black") return BaselineKind::Black;
    if (name == "white") return BaselineKind::White;
    if (name == "uniform_random") return BaselineKind::UniformRandom;
    if (name == "gaussian_random") return BaselineKind::GaussianRandom;
    if (name == "gaussian_blur") return BaselineKind::GaussianBlur;
    throw InputError("unknown baseline '" + name +
                     "' (expected black, white, uniform_random, gaussian_random or "
                     "gaussian_blur)");
}

void BaselineSpec::validate() const {
    bool is_blur = kind == BaselineKind::GaussianBlur;
    if (is_blur != (blur_kernel.has_value() && blur_sigma.has_value()))
        throw InputError("blur kernel/sigma must be given exactly when kind is gaussian_blur");
    if (is_blur) {
        if (*blur_kernel % 2 == 0) throw InputError("blur kernel size must be odd");
        if (*blur_kernel > 1 && !(*blur_sigma > 0.0))
            throw InputError("blur sigma must be positive");
    }
}

BaselineSpec BaselineSpec::black() { return BaselineSpec{}; }

BaselineSpec BaselineSpec::blur(std::size_t kernel, double sigma) {
    BaselineSpec spec;
    spec.kind = BaselineKind::GaussianBlur;
    spec.blur_kernel = kernel;
    spec.blur_sigma = sigma;
    return spec;
}

namespace {

// Symmetric reflection that duplicates the border sample; bounces until the
// index lands inside [0, n), which matters when the kernel is wider than the
// image.
std::size_t reflect_index(long long i, long long n) {
    while (i < 0 || i >= n) {
        if (i < 0) i = -i - 1;
        if (i >= n) i = 2 * n - 1 - i;
    }
    return static_cast<std::size_t>(i);
}

std::vector<double> gaussian_kernel(std::size_t size, double sigma) {
    std::vector<double> k(size);
    long long half = static_cast<long long>(size) / 2;
    double total = 0.0;
    for (std::size_t i = 0; i < size; ++i) {
        double u = static_cast<double>(static_cast<long long>(i) - half) / sigma;
        k[i] = std::exp(-0.5 * u * u);
        total += k[i];
    }
    for (double& v : k) v /= total;
    return k;
}

}  // namespace

Tensor gaussian_blur(const Tensor& image, std::size_t kernel_size, double sigma) {
    if (image.shape().size() != 2)
        throw InputError("blur expects a 2-D [rows, cols] tensor");
    if (kernel_size % 2 == 0) throw InputError("blur kernel size must be odd");
    if (kernel_size == 1) return image;
    if (!(sigma > 0.0)) throw InputError("blur sigma must be positive");

    const long long rows = static_cast<long long>(image.rows());
    const long long cols = static_cast<long long>(image.cols());
    const long long half = static_cast<long long>(kernel_size) / 2;
    std::vector<double> kernel = gaussian_kernel(kernel_size, sigma);

    Tensor horiz = Tensor::zeros(image.shape());
    for (long long r = 0; r < rows; ++r)
        for (long long c = 0; c < cols; ++c) {
            double acc = 0.0;
            for (long long t = -half; t <= half; ++t)
                acc += kernel[static_cast<std::size_t>(t + half)] *
                       image.at(static_cast<std::size_t>(r), reflect_index(c + t, cols));
            horiz.at(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) = acc;
        }

    Tensor out = Tensor::zeros(image.shape());
    for (long long r = 0; r < rows; ++r)
        for (long long c = 0; c < cols; ++c) {
            double acc = 0.0;
            for (long long t = -half; t <= half; ++t)
                acc += kernel[static_cast<std::size_t>(t + half)] *
                       horiz.at(reflect_index(r + t, rows), static_cast<std::size_t>(c));
            out.at(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) = acc;
        }
    return out;
}

Tensor make_baseline(const Tensor& x, const BaselineSpec& spec) {
    spec.validate();
    switch (spec.kind) {
        case BaselineKind::Black:
            return Tensor::zeros(x.shape());
        case BaselineKind::White:
            return Tensor::full(x.shape(), 1.0);
        case BaselineKind::UniformRandom: {
            Tensor b = Tensor::zeros(x.shape());
            Rng rng(spec.seed);
            for (std::size_t i = 0; i < b.size(); ++i) b[i] = rng.uniform01();
            return b;
        }
        case BaselineKind::GaussianRandom: {
            // Grey-centred noise, clamped to the pixel domain.
            Tensor b = Tensor::zeros(x.shape());
            Rng rng(spec.seed);
            for (std::size_t i = 0; i < b.size(); ++i)
                b[i] = std::clamp(rng.normal(0.5, 0.25), 0.0, 1.0);
            return b;
        }
        case BaselineKind::GaussianBlur:
            return gaussian_blur(x, *spec.blur_kernel, *spec.blur_sigma);
    }
    throw InputError("unhandled baseline kind");
}

std::string metric_mode_name(MetricMode m) {
    return m == MetricMode::Deletion ? "deletion" : "insertion";
}

namespace {

double softmax_probability(const std::vector<double>& z, int cls) {
    double m = *std::max_element(z.begin(), z.end());
    double total = 0.0;
    for (double v : z) total += std::exp(v - m);
    return std::exp(z[static_cast<std::size_t>(cls)] - m) / total;
}

double score(const Model& model, const Tensor& x, int cls, bool softmax_scores) {
    if (!softmax_scores) return model.forward(x, cls);
    return softmax_probability(model.logits(x), cls);
}

}  // namespace

MetricCurve deletion_insertion(const Model& model, int cls, const Tensor& x,
                               const Attribution& attribution, MetricMode mode,
                               std::size_t step, const BaselineSpec& baseline,
                               bool softmax_scores) {
    if (step == 0) throw InputError("metric step must be positive");
    if (!attribution.values.same_shape(x))
        throw InputError("attribution shape does not match the input");

    const Tensor& a = attribution.values;
    std::vector<std::size_t> order(a.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a[i] > a[j]; });

    Tensor base = make_baseline(x, baseline);
    double y_full = score(model, x, cls, softmax_scores);
    if (std::abs(y_full) < 1e-12)
        throw NumericError("full-input score is too close to zero to normalize by");

    MetricCurve curve;
    Tensor cur = mode == MetricMode::Deletion ? x : base;
    const Tensor& incoming = mode == MetricMode::Deletion ? base : x;

    std::size_t modified = 0;
    curve.points.push_back({modified, score(model, cur, cls, softmax_scores), 0.0});
    while (modified < a.size()) {
        std::size_t stop = std::min(modified + step, a.size());
        for (std::size_t r = modified; r < stop; ++r) cur[order[r]] = incoming[order[r]];
        modified = stop;
        curve.points.push_back({modified, score(model, cur, cls, softmax_scores), 0.0});
    }

    double acc = 0.0;
    for (CurvePoint& p : curve.points) {
        p.y_hat = p.y_raw / y_full;
        acc += p.y_hat;
    }
    curve.auc = acc / static_cast<double>(curve.points.size());
    return curve;
}

double pearson(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 2)
        throw InputError("correlation needs two equally long series of length >= 2");
    double n = static_cast<double>(xs.size());
    double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double dx = xs[i] - mx, dy = ys[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0.0 || syy == 0.0)
        throw NumericError("correlation undefined: a series has zero variance");
    return sxy / std::sqrt(sxx * syy);
}

std::vector<SensitivityPoint> sensitivity_sweep(const Model& model, int cls,
                                                const std::vector<Tensor>& inputs,
                                                const std::vector<double>& beta_list,
                                                const SampConfig& cfg) {
    if (inputs.size() < 10)
        throw InputError("sensitivity sweep needs at least 10 inputs");
    if (beta_list.empty()) throw InputError("empty beta list");
    for (std::size_t i = 0; i < beta_list.size(); ++i) {
        if (!(beta_list[i] >= 1.0))
            throw InputError("beta must be >= 1 (eta cannot exceed the path mass)");
        if (i > 0 && beta_list[i] <= beta_list[i - 1])
            throw InputError("beta list must be strictly ascending");
    }

    std::vector<SensitivityPoint> out;
    out.reserve(beta_list.size());
    for (double beta : beta_list) {
        SampConfig step_cfg = cfg;
        step_cfg.eta_ratio = 1.0 / beta;
        std::vector<double> totals, deltas;
        totals.reserve(inputs.size());
        deltas.reserve(inputs.size());
        for (const Tensor& x : inputs) {
            Tensor zero = Tensor::zeros(x.shape());
            PathAttribution run = samp_attribute(model, cls, zero, x, step_cfg);
            totals.push_back(sum(run.attribution.values));
            deltas.push_back(run.attribution.delta_y);
        }
        out.push_back({beta, pearson(totals, deltas)});
    }
    return out;
}

}  // namespace samp
