#include <atomic>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

#include "artifacts.hpp"
#include "commands.hpp"
#include "loading.hpp"
#include "methods.hpp"
#include "samp/errors.hpp"
#include "samp/io.hpp"
#include "stats.hpp"

namespace samptool {

using namespace samp;
using nlohmann::json;

namespace {

struct InputResult {
    MetricCurve deletion;
    MetricCurve insertion;
};

// Runs fn(i) for i in [0, n), optionally on a worker pool. Results must be
// written into pre-sized slots so the outcome is identical for any thread
// count; the first exception wins and is rethrown on the caller.
template <typename Fn>
void for_each_index(std::size_t n, std::size_t threads, Fn fn) {
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= n || failed.load()) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!failed.exchange(true)) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < std::min(threads, n); ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

std::string input_tag(std::size_t i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "input_%03zu", i);
    return buf;
}

}  // namespace

int cmd_evaluate(const RunConfig& cfg) {
    std::unique_ptr<Model> model = load_model_checked(cfg);
    Dataset data = load_shaped_dataset(cfg);
    const std::size_t n = std::min<std::size_t>(cfg.num_inputs, data.size());
    if (n == 0) throw InputError("dataset holds no inputs to evaluate");

    std::vector<std::string> methods = split_list(cfg.methods);
    if (methods.empty()) throw InputError("no methods given");
    for (const std::string& m : methods)
        if (!is_known_method(m))
            throw InputError("unknown method '" + m + "' (expected ig, samp or samp++)");

    const BaselineSpec attr_base = baseline_spec(cfg, cfg.baseline);
    const BaselineSpec del_base = baseline_spec(cfg, cfg.deletion_baseline);
    const BaselineSpec ins_base = baseline_spec(cfg, cfg.insertion_baseline);

    ArtifactSink sink(cfg.out_dir);
    json summary;
    summary["num_inputs"] = n;
    summary["metric_step"] = cfg.metric_step;
    summary["seed"] = cfg.seed;
    summary["softmax_scores"] = cfg.softmax_scores;
    summary["methods"] = json::object();

    for (const std::string& method : methods) {
        std::vector<InputResult> results(n);
        for_each_index(n, cfg.threads, [&](std::size_t i) {
            const Tensor& x = data.inputs[i];
            const int cls = cfg.cls >= 0 ? cfg.cls : data.labels[i];
            Tensor baseline = make_baseline(x, attr_base);
            Attribution att = run_method(*model, cls, baseline, x, method, cfg).attribution;
            results[i].deletion = deletion_insertion(*model, cls, x, att,
                                                     MetricMode::Deletion, cfg.metric_step,
                                                     del_base, cfg.softmax_scores);
            results[i].insertion = deletion_insertion(*model, cls, x, att,
                                                      MetricMode::Insertion, cfg.metric_step,
                                                      ins_base, cfg.softmax_scores);
        });

        std::vector<double> del_auc, ins_auc;
        for (std::size_t i = 0; i < n; ++i) {
            del_auc.push_back(results[i].deletion.auc);
            ins_auc.push_back(results[i].insertion.auc);
            const std::string base = "curves/" + method + "/" + input_tag(i);
            write_metric_curve_csv(sink.path(base + "_deletion.csv"), results[i].deletion);
            write_metric_curve_csv(sink.path(base + "_insertion.csv"), results[i].insertion);
        }

        json row;
        row["deletion_auc"] = {{"mean", mean_of(del_auc)},
                               {"std", std_of(del_auc)},
                               {"median", median_of(del_auc)}};
        row["insertion_auc"] = {{"mean", mean_of(ins_auc)},
                                {"std", std_of(ins_auc)},
                                {"median", median_of(ins_auc)}};
        summary["methods"][method] = row;

        std::cout << method << ": deletion_auc = " << mean_of(del_auc) << " +/- "
                  << std_of(del_auc) << " (median " << median_of(del_auc)
                  << "), insertion_auc = " << mean_of(ins_auc) << " +/- "
                  << std_of(ins_auc) << " (median " << median_of(ins_auc) << ")\n";
    }

    {
        std::ofstream os(sink.path("summary.json"));
        os << summary.dump(2) << "\n";
    }
    sink.write_manifest("evaluate", config_json(cfg));
    return 0;
}

}  // namespace samptool
