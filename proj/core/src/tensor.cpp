#include "samp/tensor.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "samp/errors.hpp"

namespace samp {

namespace {

std::size_t shape_product(const std::vector<std::size_t>& shape) {
    std::size_t n = 1;
    for (std::size_t s : shape) {
        if (s == 0) throw InputError("tensor shape entries must be positive");
        n *= s;
    }
    return n;
}

void require_same_shape(const Tensor& a, const Tensor& b) {
    if (!a.same_shape(b)) throw InputError("tensor shape mismatch");
}

}  // namespace

Tensor::Tensor(std::vector<std::size_t> shape, std::vector<double> data)
    : shape_(std::move(shape)), data_(std::move(data)) {
    if (shape_.empty()) throw InputError("tensor shape must be non-empty");
    if (shape_product(shape_) != data_.size()) {
        throw InputError("tensor shape does not match data length (" +
                         std::to_string(data_.size()) + " values)");
    }
    for (double v : data_) {
        if (!std::isfinite(v)) throw InputError("tensor entries must be finite");
    }
}

Tensor Tensor::zeros(std::vector<std::size_t> shape) {
    return full(std::move(shape), 0.0);
}

Tensor Tensor::full(std::vector<std::size_t> shape, double value) {
    std::size_t n = shape_product(shape);
    return Tensor(std::move(shape), std::vector<double>(n, value));
}

std::size_t Tensor::rows() const {
    if (shape_.size() != 2) throw InputError("tensor is not 2-D");
    return shape_[0];
}

std::size_t Tensor::cols() const {
    if (shape_.size() != 2) throw InputError("tensor is not 2-D");
    return shape_[1];
}

double Tensor::at(std::size_t r, std::size_t c) const {
    return data_[r * cols() + c];
}

double& Tensor::at(std::size_t r, std::size_t c) {
    return data_[r * cols() + c];
}

double sum(const Tensor& t) {
    double acc = 0.0;
    for (double v : t.data()) acc += v;
    return acc;
}

double mean(const Tensor& t) {
    return sum(t) / static_cast<double>(t.size());
}

double l1_norm(const Tensor& t) {
    double acc = 0.0;
    for (double v : t.data()) acc += std::abs(v);
    return acc;
}

double l1_distance(const Tensor& a, const Tensor& b) {
    require_same_shape(a, b);
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += std::abs(a[i] - b[i]);
    return acc;
}

double dot(const Tensor& a, const Tensor& b) {
    require_same_shape(a, b);
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

Tensor operator+(const Tensor& a, const Tensor& b) {
    require_same_shape(a, b);
    Tensor out = a;
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

Tensor operator-(const Tensor& a, const Tensor& b) {
    require_same_shape(a, b);
    Tensor out = a;
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

Tensor operator*(double s, const Tensor& a) {
    Tensor out = a;
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = s * a[i];
    return out;
}

Tensor hadamard(const Tensor& a, const Tensor& b) {
    require_same_shape(a, b);
    Tensor out = a;
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
    return out;
}

}  // namespace samp
