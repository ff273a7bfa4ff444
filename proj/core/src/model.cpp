#include "samp/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "samp/errors.hpp"
#include "samp/rng.hpp"

namespace samp {

std::string activation_name(Activation a) {
    return a == Activation::ReLU ? "relu" : "tanh";
}

Activation activation_from_name(const std::string& name) {
    if (name == "relu") return Activation::ReLU;
    if (name == "tanh") return Activation::Tanh;
    throw InputError("unknown activation '" + name + "' (expected relu or tanh)");
}

void Model::check_input(const Tensor& x, int cls) const {
    if (x.size() != input_dim())
        throw InputError("input has " + std::to_string(x.size()) +
                         " values, model expects " + std::to_string(input_dim()));
    if (cls < 0 || cls >= num_classes())
        throw InputError("class " + std::to_string(cls) + " out of range [0, " +
                         std::to_string(num_classes()) + ")");
}

double Model::forward(const Tensor& x, int cls) const {
    check_input(x, cls);
    double v = forward_impl(x, cls);
    if (!std::isfinite(v))
        throw NumericError(kind() + " forward produced a non-finite score");
    return v;
}

Tensor Model::gradient(const Tensor& x, int cls) const {
    check_input(x, cls);
    return gradient_impl(x, cls);  // Tensor ctor rejects non-finite entries
}

std::vector<double> Model::logits(const Tensor& x) const {
    check_input(x, 0);
    auto z = logits_impl(x);
    for (double v : z)
        if (!std::isfinite(v))
            throw NumericError(kind() + " forward produced a non-finite score");
    return z;
}

std::vector<double> Model::logits_impl(const Tensor& x) const {
    std::vector<double> z(static_cast<std::size_t>(num_classes()));
    for (int c = 0; c < num_classes(); ++c) z[static_cast<std::size_t>(c)] = forward_impl(x, c);
    return z;
}

int Model::predict(const Tensor& x) const {
    auto z = logits(x);
    return static_cast<int>(std::max_element(z.begin(), z.end()) - z.begin());
}

double Model::accumulate_loss_gradients(const Tensor&, int, std::vector<Tensor>&) const {
    throw InputError(kind() + " model has no trainable parameters");
}

namespace {

// Softmax cross-entropy on raw logits; fills `delta` with p - onehot(label).
double softmax_ce(const std::vector<double>& z, int label, std::vector<double>& delta) {
    double m = *std::max_element(z.begin(), z.end());
    double sum = 0.0;
    delta.resize(z.size());
    for (std::size_t c = 0; c < z.size(); ++c) {
        delta[c] = std::exp(z[c] - m);
        sum += delta[c];
    }
    for (double& p : delta) p /= sum;
    double loss = std::log(sum) - (z[static_cast<std::size_t>(label)] - m);
    delta[static_cast<std::size_t>(label)] -= 1.0;
    return loss;
}

void check_label(int label, int classes) {
    if (label < 0 || label >= classes)
        throw InputError("label " + std::to_string(label) + " out of range [0, " +
                         std::to_string(classes) + ")");
}

}  // namespace

// ---------------------------------------------------------------- Linear

LinearModel::LinearModel(Tensor weights, Tensor bias)
    : weights_(std::move(weights)), bias_(std::move(bias)) {
    if (weights_.shape().size() != 2)
        throw InputError("linear weights must be 2-D [classes, input_dim]");
    if (bias_.shape().size() != 1 || bias_.size() != weights_.rows())
        throw InputError("linear bias must be 1-D with one entry per class");
}

std::unique_ptr<Model> LinearModel::clone() const {
    return std::make_unique<LinearModel>(*this);
}

void LinearModel::init_parameters(Rng& rng) {
    double scale = 1.0 / std::sqrt(static_cast<double>(weights_.cols()));
    for (std::size_t i = 0; i < weights_.size(); ++i)
        weights_[i] = rng.normal(0.0, scale);
    for (std::size_t i = 0; i < bias_.size(); ++i) bias_[i] = 0.0;
}

double LinearModel::forward_impl(const Tensor& x, int cls) const {
    auto c = static_cast<std::size_t>(cls);
    double acc = bias_[c];
    for (std::size_t j = 0; j < x.size(); ++j) acc += weights_.at(c, j) * x[j];
    return acc;
}

Tensor LinearModel::gradient_impl(const Tensor& x, int cls) const {
    Tensor g = Tensor::zeros(x.shape());
    auto c = static_cast<std::size_t>(cls);
    for (std::size_t j = 0; j < x.size(); ++j) g[j] = weights_.at(c, j);
    return g;
}

std::vector<double> LinearModel::logits_impl(const Tensor& x) const {
    std::vector<double> z(weights_.rows());
    for (std::size_t c = 0; c < weights_.rows(); ++c) {
        double acc = bias_[c];
        for (std::size_t j = 0; j < x.size(); ++j) acc += weights_.at(c, j) * x[j];
        z[c] = acc;
    }
    return z;
}

double LinearModel::accumulate_loss_gradients(const Tensor& x, int label,
                                              std::vector<Tensor>& grads) const {
    check_input(x, 0);
    check_label(label, num_classes());
    std::vector<double> delta;
    double loss = softmax_ce(logits_impl(x), label, delta);
    Tensor& gW = grads[0];
    Tensor& gb = grads[1];
    for (std::size_t c = 0; c < weights_.rows(); ++c) {
        gb[c] += delta[c];
        for (std::size_t j = 0; j < x.size(); ++j) gW.at(c, j) += delta[c] * x[j];
    }
    return loss;
}

// ------------------------------------------------------------------ MLP

MlpModel::MlpModel(std::vector<std::size_t> layer_sizes, Activation act) : act_(act) {
    if (layer_sizes.size() < 2)
        throw InputError("mlp needs at least input and output layer sizes");
    for (std::size_t n : layer_sizes)
        if (n == 0) throw InputError("mlp layer sizes must be positive");
    for (std::size_t l = 0; l + 1 < layer_sizes.size(); ++l) {
        weights_.push_back(Tensor::zeros({layer_sizes[l + 1], layer_sizes[l]}));
        biases_.push_back(Tensor::zeros({layer_sizes[l + 1]}));
    }
}

MlpModel::MlpModel(std::vector<Tensor> weights, std::vector<Tensor> biases, Activation act)
    : weights_(std::move(weights)), biases_(std::move(biases)), act_(act) {
    if (weights_.empty() || weights_.size() != biases_.size())
        throw InputError("mlp needs one bias vector per weight matrix");
    for (std::size_t l = 0; l < weights_.size(); ++l) {
        if (weights_[l].shape().size() != 2)
            throw InputError("mlp weight matrices must be 2-D");
        if (biases_[l].shape().size() != 1 || biases_[l].size() != weights_[l].rows())
            throw InputError("mlp bias length must match layer output size");
        if (l > 0 && weights_[l].cols() != weights_[l - 1].rows())
            throw InputError("mlp layer " + std::to_string(l) +
                             " input size does not match previous layer output");
    }
}

std::unique_ptr<Model> MlpModel::clone() const {
    return std::make_unique<MlpModel>(*this);
}

std::vector<std::size_t> MlpModel::layer_sizes() const {
    std::vector<std::size_t> sizes{weights_.front().cols()};
    for (const Tensor& w : weights_) sizes.push_back(w.rows());
    return sizes;
}

std::vector<Tensor*> MlpModel::parameter_views() {
    std::vector<Tensor*> views;
    for (std::size_t l = 0; l < weights_.size(); ++l) {
        views.push_back(&weights_[l]);
        views.push_back(&biases_[l]);
    }
    return views;
}

std::vector<std::string> MlpModel::parameter_names() const {
    std::vector<std::string> names;
    for (std::size_t l = 0; l < weights_.size(); ++l) {
        names.push_back("W" + std::to_string(l));
        names.push_back("b" + std::to_string(l));
    }
    return names;
}

void MlpModel::init_parameters(Rng& rng) {
    // He init for ReLU, Xavier for tanh; biases start at zero.
    for (std::size_t l = 0; l < weights_.size(); ++l) {
        double fan_in = static_cast<double>(weights_[l].cols());
        double scale = act_ == Activation::ReLU ? std::sqrt(2.0 / fan_in)
                                                : std::sqrt(1.0 / fan_in);
        for (std::size_t i = 0; i < weights_[l].size(); ++i)
            weights_[l][i] = rng.normal(0.0, scale);
        for (std::size_t i = 0; i < biases_[l].size(); ++i) biases_[l][i] = 0.0;
    }
}

// a[0] = x, a[l] = post-activation of layer l-1, a[L] = logits.
std::vector<std::vector<double>> MlpModel::run_forward(const Tensor& x) const {
    std::vector<std::vector<double>> a(weights_.size() + 1);
    a[0] = x.data();
    for (std::size_t l = 0; l < weights_.size(); ++l) {
        const Tensor& W = weights_[l];
        std::vector<double>& out = a[l + 1];
        out.resize(W.rows());
        for (std::size_t i = 0; i < W.rows(); ++i) {
            double z = biases_[l][i];
            for (std::size_t j = 0; j < W.cols(); ++j) z += W.at(i, j) * a[l][j];
            if (l != weights_.size() - 1)
                z = act_ == Activation::ReLU ? (z > 0.0 ? z : 0.0) : std::tanh(z);
            out[i] = z;
        }
    }
    return a;
}

double MlpModel::forward_impl(const Tensor& x, int cls) const {
    return run_forward(x).back()[static_cast<std::size_t>(cls)];
}

std::vector<double> MlpModel::logits_impl(const Tensor& x) const {
    return run_forward(x).back();
}

namespace {

// Derivative of the activation expressed through its own output value.
double act_deriv(Activation act, double h) {
    return act == Activation::ReLU ? (h > 0.0 ? 1.0 : 0.0) : 1.0 - h * h;
}

}  // namespace

Tensor MlpModel::gradient_impl(const Tensor& x, int cls) const {
    auto a = run_forward(x);
    std::size_t L = weights_.size();
    std::vector<double> delta(weights_[L - 1].rows(), 0.0);
    delta[static_cast<std::size_t>(cls)] = 1.0;
    for (std::size_t l = L; l-- > 0;) {
        const Tensor& W = weights_[l];
        std::vector<double> prev(W.cols(), 0.0);
        for (std::size_t i = 0; i < W.rows(); ++i)
            for (std::size_t j = 0; j < W.cols(); ++j) prev[j] += delta[i] * W.at(i, j);
        if (l > 0)
            for (std::size_t j = 0; j < prev.size(); ++j)
                prev[j] *= act_deriv(act_, a[l][j]);
        delta = std::move(prev);
    }
    Tensor g = Tensor::zeros(x.shape());
    for (std::size_t j = 0; j < delta.size(); ++j) g[j] = delta[j];
    return g;
}

std::vector<char> MlpModel::activation_pattern(const Tensor& x) const {
    check_input(x, 0);
    auto a = run_forward(x);
    std::vector<char> pattern;
    for (std::size_t l = 1; l < a.size() - 1; ++l)
        for (double h : a[l]) pattern.push_back(h > 0.0 ? 1 : 0);
    return pattern;
}

double MlpModel::accumulate_loss_gradients(const Tensor& x, int label,
                                           std::vector<Tensor>& grads) const {
    check_input(x, 0);
    check_label(label, num_classes());
    auto a = run_forward(x);
    std::vector<double> delta;
    double loss = softmax_ce(a.back(), label, delta);
    std::size_t L = weights_.size();
    for (std::size_t l = L; l-- > 0;) {
        const Tensor& W = weights_[l];
        Tensor& gW = grads[2 * l];
        Tensor& gb = grads[2 * l + 1];
        for (std::size_t i = 0; i < W.rows(); ++i) {
            gb[i] += delta[i];
            for (std::size_t j = 0; j < W.cols(); ++j) gW.at(i, j) += delta[i] * a[l][j];
        }
        if (l == 0) break;
        std::vector<double> prev(W.cols(), 0.0);
        for (std::size_t i = 0; i < W.rows(); ++i)
            for (std::size_t j = 0; j < W.cols(); ++j) prev[j] += delta[i] * W.at(i, j);
        for (std::size_t j = 0; j < prev.size(); ++j) prev[j] *= act_deriv(act_, a[l][j]);
        delta = std::move(prev);
    }
    return loss;
}

// ------------------------------------------------------------- Counting

CountingModel::CountingModel(std::vector<std::size_t> input_layout, double target_value,
                             double tolerance)
    : layout_(std::move(input_layout)), target_(target_value), tolerance_(tolerance) {
    if (layout_.empty()) throw InputError("counting model needs an input layout");
    if (!(tolerance_ > 0.0)) throw InputError("counting tolerance must be positive");
    if (!std::isfinite(target_)) throw InputError("counting target must be finite");
}

std::size_t CountingModel::input_dim() const {
    std::size_t n = 1;
    for (std::size_t e : layout_) n *= e;
    return n;
}

std::unique_ptr<Model> CountingModel::clone() const {
    return std::make_unique<CountingModel>(*this);
}

double CountingModel::forward_impl(const Tensor& x, int) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double u = (x[i] - target_) / tolerance_;
        acc += std::exp(-u * u);
    }
    return acc;
}

Tensor CountingModel::gradient_impl(const Tensor& x, int) const {
    Tensor g = Tensor::zeros(x.shape());
    for (std::size_t i = 0; i < x.size(); ++i) {
        double u = (x[i] - target_) / tolerance_;
        g[i] = -2.0 * u / tolerance_ * std::exp(-u * u);
    }
    return g;
}

// ------------------------------------------------------------- FD oracle

Tensor finite_diff_gradient(const Model& model, const Tensor& x, int cls, double h) {
    if (!(h > 0.0)) throw InputError("finite difference step must be positive");
    Tensor g = Tensor::zeros(x.shape());
    Tensor probe = x;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double step = h * (1.0 + std::abs(x[i]));
        probe[i] = x[i] + step;
        double hi = model.forward(probe, cls);
        probe[i] = x[i] - step;
        double lo = model.forward(probe, cls);
        probe[i] = x[i];
        g[i] = (hi - lo) / (2.0 * step);
    }
    return g;
}

}  // namespace samp
