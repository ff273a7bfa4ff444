#include "samp/samp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "samp/errors.hpp"

namespace samp {

std::string direction_name(Direction d) {
    switch (d) {
        case Direction::ToBaseline: return "to_baseline";
        case Direction::ToTarget: return "to_target";
        case Direction::Both: return "both";
    }
    throw InputError("unhandled direction value");
}

Direction direction_from_name(const std::string& name) {
    if (name == "to_baseline") return Direction::ToBaseline;
    if (name == "to_target") return Direction::ToTarget;
    if (name == "both") return Direction::Both;
    throw InputError("unknown direction '" + name +
                     "' (expected to_baseline, to_target or both)");
}

void SampConfig::validate() const {
    if (step_pixels == 0) throw InputError("step_pixels must be positive");
    if (eta_ratio && !(*eta_ratio > 0.0 && *eta_ratio <= 1.0))
        throw InputError("eta_ratio must lie in (0, 1] or be unbounded");
    if (momentum < 0.0 || momentum >= 1.0) throw InputError("momentum must lie in [0, 1)");
    if (termination_epsilon &&
        !(std::isfinite(*termination_epsilon) && *termination_epsilon >= 0.0))
        throw InputError("termination_epsilon must be finite and non-negative");
}

SelectResult samp_select(const Tensor& grad, const Tensor& x_k, const Tensor& x_E,
                         std::size_t s, SelectionObjective objective) {
    if (s == 0) throw InputError("selection size s must be positive");
    if (!grad.same_shape(x_k) || !x_k.same_shape(x_E))
        throw InputError("samp_select arguments must share one shape");

    // (alpha, index) over unfinished coordinates only; finished ones would
    // carry alpha = -inf and can simply be left out. Drop negates alpha so
    // one descending sort serves both objectives.
    const double sign = objective == SelectionObjective::Gain ? 1.0 : -1.0;
    std::vector<std::pair<double, std::size_t>> alpha;
    alpha.reserve(x_k.size());
    for (std::size_t j = 0; j < x_k.size(); ++j)
        if (x_k[j] != x_E[j]) alpha.emplace_back(sign * grad[j] * (x_E[j] - x_k[j]), j);
    if (alpha.empty())
        throw InputError("samp_select: every coordinate already sits at its end value");

    std::size_t take = std::min(s, alpha.size());
    std::partial_sort(alpha.begin(), alpha.begin() + static_cast<std::ptrdiff_t>(take),
                      alpha.end(), [](const auto& a, const auto& b) {
                          if (a.first != b.first) return a.first > b.first;
                          return a.second < b.second;
                      });

    SelectResult res;
    res.indices.reserve(take);
    for (std::size_t r = 0; r < take; ++r) res.indices.push_back(alpha[r].second);
    std::sort(res.indices.begin(), res.indices.end());
    res.step = Tensor::zeros(x_k.shape());
    for (std::size_t j : res.indices) res.step[j] = x_E[j] - x_k[j];
    return res;
}

Tensor apply_infinitesimal_constraint(const Tensor& step, double eta) {
    if (!(eta > 0.0)) throw InputError("eta must be positive");
    double len = l1_norm(step);
    if (len <= eta) return step;
    return (eta / len) * step;
}

Tensor momentum_update(const Tensor& g_prev, const Tensor& grad, double lambda) {
    if (lambda < 0.0 || lambda >= 1.0) throw InputError("momentum must lie in [0, 1)");
    if (!g_prev.same_shape(grad)) throw InputError("momentum tensors must share one shape");
    return lambda * g_prev + (1.0 - lambda) * grad;
}

PathAttribution samp_attribute(const Model& model, int cls, const Tensor& xS,
                               const Tensor& xE, const SampConfig& cfg,
                               SelectionObjective objective) {
    cfg.validate();
    if (!xS.same_shape(xE)) throw InputError("path endpoints have different shapes");

    const std::size_t d = xS.size();
    const double mass0 = l1_distance(xS, xE);
    const double eps = cfg.termination_epsilon ? *cfg.termination_epsilon : 1e-8 * mass0;
    const double eta =
        cfg.eta_ratio ? *cfg.eta_ratio * mass0 : std::numeric_limits<double>::infinity();

    PathAttribution out;
    out.path.start = xS;
    out.path.end = xE;
    out.attribution.values = Tensor::zeros(xS.shape());

    // Convergence bound from the L1 budget: every iteration either snaps at
    // least one coordinate onto its end value (at most d times) or spends
    // exactly eta of the remaining mass (at most mass0/eta times). Running
    // past the bound means the arithmetic broke.
    double budget_steps = std::isfinite(eta) ? std::ceil(mass0 / eta) : 0.0;
    const std::size_t max_iters =
        static_cast<std::size_t>(budget_steps) + d + 1;

    Tensor x = xS;
    Tensor g = Tensor::zeros(xS.shape());
    bool have_g = false;
    std::size_t iters = 0;

    auto smoothed_gradient = [&](const Tensor& at) {
        Tensor raw = model.gradient(at, cls);
        g = have_g ? momentum_update(g, raw, cfg.momentum) : std::move(raw);
        have_g = true;
    };

    while (true) {
        double mass = l1_distance(x, xE);
        if (mass <= eps) {
            if (mass > 0.0) {
                // Residual snap: one final unconstrained step keeps the
                // telescoping invariant exact instead of asymptotic.
                smoothed_gradient(x);
                Tensor dx = xE - x;
                for (std::size_t i = 0; i < d; ++i)
                    out.attribution.values[i] += g[i] * dx[i];
                out.path.steps.push_back(std::move(dx));
            }
            break;
        }
        if (++iters > max_iters)
            throw NumericError("path search failed to converge within " +
                               std::to_string(max_iters) + " iterations");

        smoothed_gradient(x);
        SelectResult sel = samp_select(g, x, xE, cfg.step_pixels, objective);
        bool clipped = l1_norm(sel.step) > eta;

        Tensor moved = x;
        if (!clipped) {
            // Selected coordinates finish outright; assigning the end value
            // (rather than adding the difference) keeps them exactly equal,
            // which the unfinished-coordinate mask relies on.
            for (std::size_t j : sel.indices) moved[j] = xE[j];
        } else {
            Tensor dx = apply_infinitesimal_constraint(sel.step, eta);
            for (std::size_t j : sel.indices) {
                double v = x[j] + dx[j];
                // Never overshoot the end value; rounding near ratio 1 could.
                if ((dx[j] > 0.0 && v > xE[j]) || (dx[j] < 0.0 && v < xE[j])) v = xE[j];
                moved[j] = v;
            }
        }

        Tensor realized = moved - x;
        for (std::size_t i = 0; i < d; ++i)
            out.attribution.values[i] += g[i] * realized[i];
        out.path.steps.push_back(std::move(realized));
        x = std::move(moved);
    }

    out.attribution.delta_y = model.forward(xE, cls) - model.forward(xS, cls);
    out.attribution.variance = variance_objective(out.attribution.values);
    out.attribution.completeness_gap =
        std::abs(sum(out.attribution.values) - out.attribution.delta_y);
    return out;
}

namespace {

void refresh_derived(Attribution& a) {
    a.variance = variance_objective(a.values);
    a.completeness_gap = std::abs(sum(a.values) - a.delta_y);
}

}  // namespace

BidirectionalResult bidirectional_attribute_detail(const Model& model, int cls,
                                                   const Tensor& x0, const Tensor& xT,
                                                   const SampConfig& cfg, bool halve) {
    BidirectionalResult res;
    res.to_target = samp_attribute(model, cls, x0, xT, cfg, SelectionObjective::Gain);
    res.to_baseline = samp_attribute(model, cls, xT, x0, cfg, SelectionObjective::Drop);
    // The reverse traversal integrates against opposite-signed steps, so its
    // oriented contribution enters with a minus; otherwise the two legs would
    // cancel instead of reinforcing.
    double scale = halve ? 0.5 : 1.0;
    res.combined.values = scale * (res.to_target.attribution.values -
                                   res.to_baseline.attribution.values);
    res.combined.delta_y = res.to_target.attribution.delta_y;
    refresh_derived(res.combined);
    return res;
}

Attribution bidirectional_attribute(const Model& model, int cls, const Tensor& x0,
                                    const Tensor& xT, const SampConfig& cfg, bool halve) {
    if (cfg.direction != Direction::Both)
        throw InputError("bidirectional_attribute requires direction == both");
    return bidirectional_attribute_detail(model, cls, x0, xT, cfg, halve).combined;
}

DirectionalResult directional_attribute(const Model& model, int cls, const Tensor& baseline,
                                        const Tensor& input, const SampConfig& cfg,
                                        bool halve_both) {
    DirectionalResult res;
    switch (cfg.direction) {
        case Direction::ToTarget: {
            PathAttribution run = samp_attribute(model, cls, baseline, input, cfg);
            res.attribution = run.attribution;
            res.legs.push_back(std::move(run));
            break;
        }
        case Direction::ToBaseline: {
            PathAttribution run =
                samp_attribute(model, cls, input, baseline, cfg, SelectionObjective::Drop);
            res.attribution = run.attribution;
            res.attribution.values = -1.0 * run.attribution.values;
            res.attribution.delta_y = -run.attribution.delta_y;
            refresh_derived(res.attribution);
            res.legs.push_back(std::move(run));
            break;
        }
        case Direction::Both: {
            BidirectionalResult both =
                bidirectional_attribute_detail(model, cls, baseline, input, cfg, halve_both);
            res.attribution = std::move(both.combined);
            res.legs.push_back(std::move(both.to_target));
            res.legs.push_back(std::move(both.to_baseline));
            break;
        }
    }
    return res;
}

}  // namespace samp
