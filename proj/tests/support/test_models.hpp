#pragma once

// Hand-rolled model fixtures for exercising the attribution machinery against
// closed-form answers.

#include <memory>
#include <utility>
#include <vector>

#include "samp/model.hpp"
#include "samp/rng.hpp"
#include "samp/tensor.hpp"

namespace samp::testing {

// f(x) = sum_i x_i^2, gradient 2x. One dim gives the classic f(x) = x^2.
class QuadraticModel : public Model {
public:
    explicit QuadraticModel(std::size_t dim) : dim_(dim) {}
    std::string kind() const override { return "quadratic"; }
    std::size_t input_dim() const override { return dim_; }
    int num_classes() const override { return 1; }
    std::unique_ptr<Model> clone() const override {
        return std::make_unique<QuadraticModel>(*this);
    }

protected:
    double forward_impl(const Tensor& x, int) const override {
        double acc = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * x[i];
        return acc;
    }
    Tensor gradient_impl(const Tensor& x, int) const override {
        Tensor g = Tensor::zeros(x.shape());
        for (std::size_t i = 0; i < x.size(); ++i) g[i] = 2.0 * x[i];
        return g;
    }

private:
    std::size_t dim_;
};

// f(x) = x_0 * x_1; path-dependent attributions with two-step closed forms.
class BilinearModel : public Model {
public:
    std::string kind() const override { return "bilinear"; }
    std::size_t input_dim() const override { return 2; }
    int num_classes() const override { return 1; }
    std::unique_ptr<Model> clone() const override {
        return std::make_unique<BilinearModel>(*this);
    }

protected:
    double forward_impl(const Tensor& x, int) const override { return x[0] * x[1]; }
    Tensor gradient_impl(const Tensor& x, int) const override {
        return Tensor(x.shape(), {x[1], x[0]});
    }
};

// f = f1 + f2 on a shared input; for the additivity and gradient-linearity
// checks.
class SumModel : public Model {
public:
    SumModel(const Model& a, const Model& b) : a_(a.clone()), b_(b.clone()) {}
    SumModel(const SumModel& other) : a_(other.a_->clone()), b_(other.b_->clone()) {}
    std::string kind() const override { return "sum"; }
    std::size_t input_dim() const override { return a_->input_dim(); }
    int num_classes() const override { return a_->num_classes(); }
    std::unique_ptr<Model> clone() const override { return std::make_unique<SumModel>(*this); }

protected:
    double forward_impl(const Tensor& x, int cls) const override {
        return a_->forward(x, cls) + b_->forward(x, cls);
    }
    Tensor gradient_impl(const Tensor& x, int cls) const override {
        return a_->gradient(x, cls) + b_->gradient(x, cls);
    }

private:
    std::unique_ptr<Model> a_;
    std::unique_ptr<Model> b_;
};

// The 2-2-2 ReLU net whose forwards and gradients were worked out by hand:
// W1 = [[1,2],[0,1]], b1 = (0.5, 0.25), W2 = [[1,-1],[2,0.5]], b2 = 0.
// At x = (1,1): hidden pre-acts (3.5, 1.25), both active;
// f0 = 3.5 - 1.25 = 2.25, f1 = 7 + 0.625 = 7.625;
// grad f0 = (1*1+(-1)*0, 1*2+(-1)*1) = (1, 1); grad f1 = (2, 4.5).
inline MlpModel hand_mlp() {
    std::vector<Tensor> W{Tensor({2, 2}, {1, 2, 0, 1}), Tensor({2, 2}, {1, -1, 2, 0.5})};
    std::vector<Tensor> b{Tensor({2}, {0.5, 0.25}), Tensor({2}, {0, 0})};
    return MlpModel(std::move(W), std::move(b), Activation::ReLU);
}

inline MlpModel random_mlp(std::vector<std::size_t> layers, Activation act,
                           std::uint64_t seed) {
    MlpModel m(std::move(layers), act);
    Rng rng(seed);
    m.init_parameters(rng);
    return m;
}

inline Tensor random_tensor(std::vector<std::size_t> shape, Rng& rng, double lo = 0.0,
                            double hi = 1.0) {
    Tensor t = Tensor::zeros(std::move(shape));
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = rng.uniform(lo, hi);
    return t;
}

}  // namespace samp::testing
