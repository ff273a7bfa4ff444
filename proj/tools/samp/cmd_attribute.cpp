#include <iostream>

#include "artifacts.hpp"
#include "commands.hpp"
#include "loading.hpp"
#include "methods.hpp"
#include "samp/errors.hpp"
#include "samp/io.hpp"

namespace samptool {

using namespace samp;

namespace {

// Path exports carry the search settings they were produced under.
struct PathMeta {
    std::size_t s = 0;  // 0 for the straight-line method (no block size)
    std::optional<double> eta;
    double lambda = 0.0;
};

PathMeta path_meta(const RunConfig& cfg, const std::string& method, const PathSegments& p) {
    PathMeta meta;
    if (method == "ig") return meta;
    SampConfig sc = method_config(cfg, method);
    meta.s = sc.step_pixels;
    meta.lambda = sc.momentum;
    if (sc.eta_ratio) meta.eta = *sc.eta_ratio * l1_distance(p.start, p.end);
    return meta;
}

}  // namespace

int cmd_attribute(const RunConfig& cfg) {
    if (!is_known_method(cfg.method))
        throw InputError("unknown method '" + cfg.method + "' (expected ig, samp or samp++)");

    std::unique_ptr<Model> model = load_model_checked(cfg);
    Tensor input = load_input_image(cfg);
    if (input.size() != model->input_dim())
        throw InputError("input has " + std::to_string(input.size()) +
                         " pixels but the model expects " +
                         std::to_string(model->input_dim()));

    Tensor baseline = make_baseline(input, baseline_spec(cfg, cfg.baseline));
    const int cls = cfg.cls >= 0 ? cfg.cls : model->predict(input);

    MethodRun run = run_method(*model, cls, baseline, input, cfg.method, cfg);

    ArtifactSink sink(cfg.out_dir);
    write_attribution_csv(sink.path("attribution.csv"), run.attribution.values);
    write_saliency_pgm(sink.path("attribution.pgm"), sink.path("attribution_scale.json"),
                       run.attribution.values);

    for (const PathAttribution& leg : run.legs) {
        // the forward leg starts at the baseline; the reverse leg at the input
        const bool forward = leg.path.start.data() == baseline.data();
        const std::string tag = forward ? "to_target" : "to_baseline";
        PathMeta meta = path_meta(cfg, cfg.method, leg.path);
        save_path_segments(sink.path("path_" + tag + ".json"), leg.path, meta.s, meta.eta,
                           meta.lambda);
        sink.path("path_" + tag + ".bin");  // blob written alongside the header
        if (run.legs.size() > 1)
            write_attribution_csv(sink.path("attribution_" + tag + ".csv"),
                                  leg.attribution.values);
    }

    std::cout << "method = " << cfg.method << "\n"
              << "class = " << cls << "\n"
              << "delta_y = " << run.attribution.delta_y << "\n"
              << "completeness_gap = " << run.attribution.completeness_gap << "\n"
              << "variance_objective = " << variance_objective(run.attribution) << "\n";

    sink.write_manifest("attribute", config_json(cfg));
    return 0;
}

}  // namespace samptool
