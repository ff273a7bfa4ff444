#pragma once

#include <memory>
#include <string>
#include <vector>

#include "samp/tensor.hpp"

namespace samp {

class Rng;

enum class Activation { ReLU, Tanh };

std::string activation_name(Activation a);
Activation activation_from_name(const std::string& name);

// Differentiable per-class scoring function f: R^d -> R. Instances are
// immutable after construction/training, so forward and gradient are safe to
// call concurrently from many workers.
class Model {
public:
    virtual ~Model() = default;

    virtual std::string kind() const = 0;
    virtual std::size_t input_dim() const = 0;
    virtual int num_classes() const = 0;

    // Pre-softmax score of class `cls`.
    double forward(const Tensor& x, int cls) const;

    // Exact reverse-mode gradient of forward w.r.t. x; same shape as x.
    Tensor gradient(const Tensor& x, int cls) const;

    std::vector<double> logits(const Tensor& x) const;

    // Argmax class, ties to the lowest index.
    int predict(const Tensor& x) const;

    virtual std::unique_ptr<Model> clone() const = 0;

    // Trainable surface; non-trainable kinds keep the empty defaults.
    virtual std::vector<Tensor*> parameter_views() { return {}; }
    virtual std::vector<std::string> parameter_names() const { return {}; }
    virtual void init_parameters(Rng&) {}

    // Adds one sample's softmax cross-entropy parameter gradients into
    // `grads` (aligned with parameter_views) and returns the sample loss.
    virtual double accumulate_loss_gradients(const Tensor& x, int label,
                                             std::vector<Tensor>& grads) const;

protected:
    void check_input(const Tensor& x, int cls) const;

    virtual double forward_impl(const Tensor& x, int cls) const = 0;
    virtual Tensor gradient_impl(const Tensor& x, int cls) const = 0;
    virtual std::vector<double> logits_impl(const Tensor& x) const;
};

// f_c(x) = w_c . x + b_c
class LinearModel : public Model {
public:
    LinearModel(Tensor weights, Tensor bias);  // weights [C, d], bias [C]

    std::string kind() const override { return "linear"; }
    std::size_t input_dim() const override { return weights_.cols(); }
    int num_classes() const override { return static_cast<int>(weights_.rows()); }
    std::unique_ptr<Model> clone() const override;

    const Tensor& weights() const { return weights_; }
    const Tensor& bias() const { return bias_; }

    std::vector<Tensor*> parameter_views() override { return {&weights_, &bias_}; }
    std::vector<std::string> parameter_names() const override { return {"W", "b"}; }
    void init_parameters(Rng& rng) override;
    double accumulate_loss_gradients(const Tensor& x, int label,
                                     std::vector<Tensor>& grads) const override;

protected:
    double forward_impl(const Tensor& x, int cls) const override;
    Tensor gradient_impl(const Tensor& x, int cls) const override;
    std::vector<double> logits_impl(const Tensor& x) const override;

private:
    Tensor weights_;
    Tensor bias_;
};

// Dense feed-forward stack; activation between layers, none after the last.
// Gradients are accumulated layer by layer in reverse. ReLU subgradient at 0
// is taken as 0.
class MlpModel : public Model {
public:
    MlpModel(std::vector<std::size_t> layer_sizes, Activation act);
    MlpModel(std::vector<Tensor> weights, std::vector<Tensor> biases, Activation act);

    std::string kind() const override { return "mlp"; }
    std::size_t input_dim() const override { return weights_.front().cols(); }
    int num_classes() const override {
        return static_cast<int>(weights_.back().rows());
    }
    std::unique_ptr<Model> clone() const override;

    Activation activation() const { return act_; }
    std::vector<std::size_t> layer_sizes() const;
    const std::vector<Tensor>& weights() const { return weights_; }
    const std::vector<Tensor>& biases() const { return biases_; }

    // Sign pattern of every hidden pre-activation (1 = active). Lets callers
    // detect when x sits close enough to a ReLU kink that finite differences
    // stop being a valid oracle.
    std::vector<char> activation_pattern(const Tensor& x) const;

    std::vector<Tensor*> parameter_views() override;
    std::vector<std::string> parameter_names() const override;
    void init_parameters(Rng& rng) override;
    double accumulate_loss_gradients(const Tensor& x, int label,
                                     std::vector<Tensor>& grads) const override;

protected:
    double forward_impl(const Tensor& x, int cls) const override;
    Tensor gradient_impl(const Tensor& x, int cls) const override;
    std::vector<double> logits_impl(const Tensor& x) const override;

private:
    std::vector<std::vector<double>> run_forward(const Tensor& x) const;

    std::vector<Tensor> weights_;  // per layer, [out, in]
    std::vector<Tensor> biases_;   // per layer, [out]
    Activation act_;
};

// Smooth surrogate of "count the pixels at target_value": a Gaussian bump
// exp(-((x_i - target)/tolerance)^2) per pixel, summed. Exact counting is the
// tolerance -> 0 limit; the smoothing keeps the model differentiable.
class CountingModel : public Model {
public:
    CountingModel(std::vector<std::size_t> input_layout, double target_value,
                  double tolerance);

    std::string kind() const override { return "counting"; }
    std::size_t input_dim() const override;
    int num_classes() const override { return 1; }
    std::unique_ptr<Model> clone() const override;

    const std::vector<std::size_t>& input_layout() const { return layout_; }
    double target_value() const { return target_; }
    double tolerance() const { return tolerance_; }

protected:
    double forward_impl(const Tensor& x, int cls) const override;
    Tensor gradient_impl(const Tensor& x, int cls) const override;

private:
    std::vector<std::size_t> layout_;
    double target_;
    double tolerance_;
};

// Central differences with per-coordinate step h * (1 + |x_i|). Verification
// oracle for the exact gradients; independent of the reverse-mode path.
Tensor finite_diff_gradient(const Model& model, const Tensor& x, int cls, double h);

}  // namespace samp
