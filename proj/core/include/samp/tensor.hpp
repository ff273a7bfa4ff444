#pragma once

#include <cstddef>
#include <vector>

namespace samp {

// Dense row-major float64 array. Carrier for inputs, gradients and
// attribution vectors. Entries are validated finite on construction.
class Tensor {
public:
    Tensor() = default;
    Tensor(std::vector<std::size_t> shape, std::vector<double> data);

    static Tensor zeros(std::vector<std::size_t> shape);
    static Tensor full(std::vector<std::size_t> shape, double value);

    std::size_t size() const { return data_.size(); }
    const std::vector<std::size_t>& shape() const { return shape_; }
    bool same_shape(const Tensor& other) const { return shape_ == other.shape_; }

    double operator[](std::size_t i) const { return data_[i]; }
    double& operator[](std::size_t i) { return data_[i]; }

    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }

    // 2-D accessors; valid only when shape is [rows, cols].
    std::size_t rows() const;
    std::size_t cols() const;
    double at(std::size_t r, std::size_t c) const;
    double& at(std::size_t r, std::size_t c);

private:
    std::vector<std::size_t> shape_;
    std::vector<double> data_;
};

double sum(const Tensor& t);
double mean(const Tensor& t);
double l1_norm(const Tensor& t);
double l1_distance(const Tensor& a, const Tensor& b);
double dot(const Tensor& a, const Tensor& b);

Tensor operator+(const Tensor& a, const Tensor& b);
Tensor operator-(const Tensor& a, const Tensor& b);
Tensor operator*(double s, const Tensor& a);
Tensor hadamard(const Tensor& a, const Tensor& b);

}  // namespace samp
