#include "methods.hpp"

#include "samp/errors.hpp"

namespace samptool {

using namespace samp;

bool is_known_method(const std::string& name) {
    return name == "ig" || name == "samp" || name == "samp++";
}

SampConfig method_config(const RunConfig& cfg, const std::string& method) {
    SampConfig sc;
    sc.step_pixels = cfg.step_pixels;
    sc.direction = direction_from_name(cfg.direction);
    if (method == "samp") {
        sc.eta_ratio.reset();
        sc.momentum = 0.0;
    } else if (method == "samp++") {
        if (cfg.eta_ratio > 0.0)
            sc.eta_ratio = cfg.eta_ratio;
        else
            sc.eta_ratio.reset();
        sc.momentum = cfg.lambda;
    } else {
        throw InputError("unknown method '" + method + "' (expected ig, samp or samp++)");
    }
    sc.validate();
    return sc;
}

MethodRun run_method(const Model& model, int cls, const Tensor& baseline,
                     const Tensor& input, const std::string& method,
                     const RunConfig& cfg) {
    MethodRun out;
    if (method == "ig") {
        if (cfg.ig_steps == 0) throw InputError("ig_steps must be positive");
        PathAttribution run = integrated_gradients(model, cls, baseline, input, cfg.ig_steps);
        out.attribution = run.attribution;
        out.legs.push_back(std::move(run));
        return out;
    }
    SampConfig sc = method_config(cfg, method);
    DirectionalResult res = directional_attribute(model, cls, baseline, input, sc,
                                                  /*halve_both=*/true);
    out.attribution = std::move(res.attribution);
    out.legs = std::move(res.legs);
    return out;
}

BaselineSpec baseline_spec(const RunConfig& cfg, const std::string& kind_name) {
    BaselineSpec spec;
    spec.kind = baseline_kind_from_name(kind_name);
    spec.seed = cfg.seed;
    if (spec.kind == BaselineKind::GaussianBlur) {
        spec.blur_kernel = cfg.blur_kernel;
        spec.blur_sigma = cfg.blur_sigma;
    }
    spec.validate();
    return spec;
}

}  // namespace samptool
