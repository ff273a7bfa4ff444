#include "samp/path.hpp"

#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

#include "samp/errors.hpp"

namespace samp {

std::vector<Tensor> PathSegments::points() const {
    std::vector<Tensor> pts;
    pts.reserve(steps.size() + 1);
    pts.push_back(start);
    for (const Tensor& dx : steps) pts.push_back(pts.back() + dx);
    return pts;
}

void PathSegments::validate(double tol) const {
    if (!start.same_shape(end))
        throw InputError("path endpoints have different shapes");
    for (const Tensor& dx : steps)
        if (!dx.same_shape(start))
            throw InputError("path step shape differs from endpoints");
    Tensor acc = start;
    for (const Tensor& dx : steps) acc = acc + dx;
    for (std::size_t i = 0; i < acc.size(); ++i)
        if (std::abs(acc[i] - end[i]) > tol)
            throw InputError("path does not telescope to its end point (coordinate " +
                             std::to_string(i) + " off by " +
                             std::to_string(std::abs(acc[i] - end[i])) + ")");
}

double variance_objective(const Tensor& values) {
    double m = mean(values);
    double acc = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        double d = values[i] - m;
        acc += d * d;
    }
    return acc / static_cast<double>(values.size());
}

double variance_objective(const Attribution& a) { return variance_objective(a.values); }

PathSegments straight_line_path(const Tensor& x0, const Tensor& xT, std::size_t n) {
    if (!x0.same_shape(xT)) throw InputError("path endpoints have different shapes");
    if (n == 0) throw InputError("straight-line path needs at least one step");
    PathSegments path{x0, xT, {}};
    Tensor dx = (1.0 / static_cast<double>(n)) * (xT - x0);
    path.steps.assign(n, dx);
    // The last step absorbs rounding from the n-fold division so the path
    // telescopes onto xT instead of drifting an ulp short of it.
    Tensor reached = x0;
    for (std::size_t k = 0; k + 1 < n; ++k) reached = reached + dx;
    path.steps.back() = xT - reached;
    return path;
}

Attribution integrate_path(const Model& model, int cls, const PathSegments& path,
                           std::optional<double> momentum) {
    path.validate();
    if (momentum && (*momentum < 0.0 || *momentum >= 1.0))
        throw InputError("momentum must lie in [0, 1)");
    Attribution out;
    out.values = Tensor::zeros(path.start.shape());
    Tensor x = path.start;
    Tensor g = Tensor::zeros(path.start.shape());
    for (std::size_t k = 0; k < path.steps.size(); ++k) {
        Tensor raw = model.gradient(x, cls);
        if (k == 0 || !momentum)
            g = raw;
        else
            g = *momentum * g + (1.0 - *momentum) * raw;
        const Tensor& dx = path.steps[k];
        for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] += g[i] * dx[i];
        x = x + dx;
    }
    out.delta_y = model.forward(path.end, cls) - model.forward(path.start, cls);
    out.variance = variance_objective(out.values);
    out.completeness_gap = std::abs(sum(out.values) - out.delta_y);
    return out;
}

PathAttribution integrated_gradients(const Model& model, int cls, const Tensor& x0,
                                     const Tensor& xT, std::size_t n) {
    PathAttribution res;
    res.path = straight_line_path(x0, xT, n);
    res.attribution = integrate_path(model, cls, res.path);
    return res;
}

bool is_manipulation_path(const PathSegments& path, std::size_t s, double tol,
                          std::string* why) {
    auto fail = [&](const std::string& reason) {
        if (why) *why = reason;
        return false;
    };
    if (s == 0) throw InputError("block size s must be positive");
    path.validate(tol);

    std::size_t d = path.start.size();
    std::vector<char> finished(d, 0), touched(d, 0);
    std::size_t remaining = 0;
    for (std::size_t i = 0; i < d; ++i) {
        finished[i] = std::abs(path.end[i] - path.start[i]) <= tol;
        if (!finished[i]) ++remaining;
    }

    Tensor x = path.start;
    for (std::size_t k = 0; k < path.steps.size(); ++k) {
        const Tensor& dx = path.steps[k];
        std::size_t moved = 0;
        for (std::size_t i = 0; i < d; ++i) {
            if (std::abs(dx[i]) <= tol) continue;
            ++moved;
            if (touched[i])
                return fail("step " + std::to_string(k) + " re-touches coordinate " +
                            std::to_string(i));
            touched[i] = 1;
            if (std::abs(x[i] + dx[i] - path.end[i]) > tol)
                return fail("step " + std::to_string(k) + " leaves coordinate " +
                            std::to_string(i) + " short of its end value");
        }
        std::size_t expect = std::min(s, remaining);
        if (moved != expect)
            return fail("step " + std::to_string(k) + " moves " + std::to_string(moved) +
                        " coordinates, expected " + std::to_string(expect));
        remaining -= moved;
        x = x + dx;
    }
    if (remaining != 0)
        return fail(std::to_string(remaining) + " coordinates never reach their end values");
    return true;
}

}  // namespace samp
