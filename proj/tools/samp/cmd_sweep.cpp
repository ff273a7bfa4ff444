#include <cstdio>
#include <fstream>
#include <iostream>

#include "artifacts.hpp"
#include "commands.hpp"
#include "loading.hpp"
#include "methods.hpp"
#include "samp/errors.hpp"
#include "samp/io.hpp"
#include "stats.hpp"

namespace samptool {

using namespace samp;

namespace {

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct AucStats {
    double del_mean = 0, del_median = 0, ins_mean = 0, ins_median = 0;
};

// Deletion/Insertion AUC aggregates for the greedy method under an explicit
// search configuration.
AucStats metric_stats(const Model& model, const Dataset& data, std::size_t n,
                      const RunConfig& cfg, const SampConfig& sc) {
    const BaselineSpec attr_base = baseline_spec(cfg, cfg.baseline);
    const BaselineSpec del_base = baseline_spec(cfg, cfg.deletion_baseline);
    const BaselineSpec ins_base = baseline_spec(cfg, cfg.insertion_baseline);

    std::vector<double> del, ins;
    for (std::size_t i = 0; i < n; ++i) {
        const Tensor& x = data.inputs[i];
        const int cls = cfg.cls >= 0 ? cfg.cls : data.labels[i];
        Tensor baseline = make_baseline(x, attr_base);
        DirectionalResult res =
            directional_attribute(model, cls, baseline, x, sc, /*halve_both=*/true);
        del.push_back(deletion_insertion(model, cls, x, res.attribution,
                                         MetricMode::Deletion, cfg.metric_step, del_base,
                                         cfg.softmax_scores)
                          .auc);
        ins.push_back(deletion_insertion(model, cls, x, res.attribution,
                                         MetricMode::Insertion, cfg.metric_step, ins_base,
                                         cfg.softmax_scores)
                          .auc);
    }
    return {mean_of(del), median_of(del), mean_of(ins), median_of(ins)};
}

}  // namespace

int cmd_sweep(const RunConfig& cfg) {
    std::unique_ptr<Model> model = load_model_checked(cfg);
    Dataset data = load_shaped_dataset(cfg);
    const std::size_t n = std::min<std::size_t>(cfg.sweep_inputs, data.size());
    if (n == 0) throw InputError("dataset holds no inputs to sweep over");

    ArtifactSink sink(cfg.out_dir);
    const std::string& param = cfg.sweep_param;

    if (param == "eta") {
        // Riemann fidelity versus the step budget: relative completeness gap
        // of the capped greedy walk, medians over the input set.
        std::vector<double> grid = cfg.sweep_values.empty()
                                       ? std::vector<double>{0.1, 0.02, 0.01}
                                       : split_numbers(cfg.sweep_values);
        std::ofstream os(sink.path("eta_sweep.csv"));
        os << "eta_ratio,median_gap,mean_gap\n";
        for (double eta : grid) {
            SampConfig sc = method_config(cfg, "samp++");
            if (!(eta > 0.0) || eta > 1.0)
                throw InputError("eta ratios must lie in (0, 1]");
            sc.eta_ratio = eta;
            sc.direction = Direction::ToTarget;  // single oriented leg: the gap
                                                 // measures raw Riemann error
            const BaselineSpec attr_base = baseline_spec(cfg, cfg.baseline);
            std::vector<double> gaps;
            for (std::size_t i = 0; i < n; ++i) {
                const Tensor& x = data.inputs[i];
                const int cls = cfg.cls >= 0 ? cfg.cls : data.labels[i];
                DirectionalResult res =
                    directional_attribute(*model, cls, make_baseline(x, attr_base), x, sc);
                double denom = std::max(std::abs(res.attribution.delta_y), 1e-12);
                gaps.push_back(res.attribution.completeness_gap / denom);
            }
            os << num(eta) << "," << num(median_of(gaps)) << "," << num(mean_of(gaps))
               << "\n";
            std::cout << "eta_ratio = " << eta << ": median_gap = " << median_of(gaps)
                      << "\n";
        }
    } else if (param == "beta") {
        // Sensitivity-N: correlation between total attribution and realised
        // output change as the budget gets finer.
        std::vector<double> grid = cfg.sweep_values.empty()
                                       ? std::vector<double>{10, 50, 100}
                                       : split_numbers(cfg.sweep_values);
        std::vector<Tensor> inputs(data.inputs.begin(),
                                   data.inputs.begin() + static_cast<long>(n));
        const int cls = cfg.cls >= 0 ? cfg.cls : 0;
        SampConfig sc = method_config(cfg, "samp++");
        std::vector<SensitivityPoint> pts = sensitivity_sweep(*model, cls, inputs, grid, sc);
        std::ofstream os(sink.path("beta_sweep.csv"));
        os << "beta,correlation\n";
        for (const SensitivityPoint& p : pts) {
            os << num(p.beta) << "," << num(p.correlation) << "\n";
            std::cout << "beta = " << p.beta << ": correlation = " << p.correlation << "\n";
        }
    } else if (param == "lambda") {
        std::vector<double> grid = cfg.sweep_values.empty()
                                       ? std::vector<double>{0.0, 0.3, 0.5, 0.9}
                                       : split_numbers(cfg.sweep_values);
        std::ofstream os(sink.path("lambda_sweep.csv"));
        os << "lambda,deletion_auc_mean,deletion_auc_median,insertion_auc_mean,"
              "insertion_auc_median\n";
        for (double lambda : grid) {
            SampConfig sc = method_config(cfg, "samp++");
            if (!(lambda >= 0.0) || lambda >= 1.0)
                throw InputError("lambda values must lie in [0, 1)");
            sc.momentum = lambda;
            AucStats st = metric_stats(*model, data, n, cfg, sc);
            os << num(lambda) << "," << num(st.del_mean) << "," << num(st.del_median)
               << "," << num(st.ins_mean) << "," << num(st.ins_median) << "\n";
            std::cout << "lambda = " << lambda << ": deletion_auc = " << st.del_mean
                      << ", insertion_auc = " << st.ins_mean << "\n";
        }
    } else if (param == "direction") {
        std::vector<std::string> grid =
            cfg.sweep_values.empty()
                ? std::vector<std::string>{"to_baseline", "to_target", "both"}
                : split_list(cfg.sweep_values);
        std::ofstream os(sink.path("direction_sweep.csv"));
        os << "direction,deletion_auc_mean,deletion_auc_median,insertion_auc_mean,"
              "insertion_auc_median\n";
        for (const std::string& dir : grid) {
            SampConfig sc = method_config(cfg, "samp++");
            sc.direction = direction_from_name(dir);
            AucStats st = metric_stats(*model, data, n, cfg, sc);
            os << dir << "," << num(st.del_mean) << "," << num(st.del_median) << ","
               << num(st.ins_mean) << "," << num(st.ins_median) << "\n";
            std::cout << "direction = " << dir << ": deletion_auc = " << st.del_mean
                      << ", insertion_auc = " << st.ins_mean << "\n";
        }
    } else {
        throw InputError("unknown sweep parameter '" + param +
                         "' (expected eta, beta, lambda or direction)");
    }

    sink.write_manifest("sweep", config_json(cfg));
    return 0;
}

}  // namespace samptool
