#pragma once

#include <optional>
#include <string>
#include <vector>

#include "samp/model.hpp"
#include "samp/tensor.hpp"

namespace samp {

// A piecewise-linear path x^0 .. x^n through input space, stored as the two
// endpoints plus the ordered step vectors dx^k. Intermediate points are
// prefix sums; telescoping (start + sum of steps == end) is an invariant,
// checked by validate().
struct PathSegments {
    Tensor start;
    Tensor end;
    std::vector<Tensor> steps;

    std::size_t num_steps() const { return steps.size(); }

    // Materialised points x^0 .. x^n (n+1 entries).
    std::vector<Tensor> points() const;

    // InputError if shapes disagree or telescoping is off by more than tol
    // in any coordinate.
    void validate(double tol = 1e-9) const;
};

struct Attribution {
    Tensor values;                 // a_i, same shape as the input
    double delta_y = 0.0;          // f(end) - f(start)
    double variance = 0.0;         // population variance of values
    double completeness_gap = 0.0; // |sum(values) - delta_y|
};

struct PathAttribution {
    Attribution attribution;
    PathSegments path;
};

// Spread objective the path search maximises: (1/d) * sum_i (a_i - mean)^2.
double variance_objective(const Tensor& values);
double variance_objective(const Attribution& a);

// n equal steps from x0 to xT; the classic straight-line baseline path.
PathSegments straight_line_path(const Tensor& x0, const Tensor& xT, std::size_t n);

// Left-Riemann attribution along a fixed path: a_i = sum_k g^k_i (dx^k)_i
// with g^k the gradient at the point *before* step k. When `momentum` is
// given, g^k = lambda*g^{k-1} + (1-lambda)*grad(x^k) with g^0 = grad(start).
Attribution integrate_path(const Model& model, int cls, const PathSegments& path,
                           std::optional<double> momentum = std::nullopt);

// Straight-line path + integrator in one call (integrated gradients).
PathAttribution integrated_gradients(const Model& model, int cls, const Tensor& x0,
                                     const Tensor& xT, std::size_t n);

// True when the path manipulates coordinates block-by-block: every step
// moves min(s, remaining) still-unfinished coordinates all the way to their
// end values, blocks are disjoint, and together they cover every coordinate
// that differs between the endpoints. `why` (optional) receives the first
// violated condition.
bool is_manipulation_path(const PathSegments& path, std::size_t s, double tol = 1e-9,
                          std::string* why = nullptr);

}  // namespace samp
