#include "samp/brownian.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "samp/errors.hpp"
#include "samp/rng.hpp"

namespace samp {

namespace {

void check_sampler_args(std::size_t d, double sigma, std::size_t trials) {
    if (d < 2) throw InputError("allocation sampling needs d >= 2");
    if (!(sigma > 0.0)) throw InputError("sigma must be positive");
    if (trials < 10000)
        throw InputError("need at least 1e4 trials for stable moment estimates");
}

// Streaming first/second moments of the d-1 free coordinates plus partial
// sums. Covariances use the 1/(n-1) normalisation; SEs use the Gaussian
// closed forms (exact here, the sampled law is Gaussian).
struct MomentAccumulator {
    std::size_t m;  // free coordinates
    std::vector<double> sum;         // per coordinate
    std::vector<double> cross;       // upper triangle (i <= j), row-major packed
    std::vector<double> part_sum;    // u_1..u_{d-1}
    std::vector<double> part_sumsq;

    explicit MomentAccumulator(std::size_t free_coords)
        : m(free_coords),
          sum(free_coords, 0.0),
          cross(free_coords * (free_coords + 1) / 2, 0.0),
          part_sum(free_coords, 0.0),
          part_sumsq(free_coords, 0.0) {}

    std::size_t tri(std::size_t i, std::size_t j) const {
        // i <= j; offset of row i plus column displacement.
        return i * m - i * (i - 1) / 2 + (j - i);
    }

    void add(const std::vector<double>& a) {
        double run = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            sum[i] += a[i];
            run += a[i];
            part_sum[i] += run;
            part_sumsq[i] += run * run;
            const double ai = a[i];
            double* row = cross.data() + tri(i, i);
            for (std::size_t j = i; j < m; ++j) row[j - i] += ai * a[j];
        }
    }
};

}  // namespace

BrownianReport sample_conditional_allocation(std::size_t d, double sigma, double C,
                                             std::size_t trials, std::uint64_t seed) {
    check_sampler_args(d, sigma, trials);

    const std::size_t m = d - 1;
    MomentAccumulator acc(m);
    Rng rng(seed);
    const double std_dev = std::sqrt(sigma);
    std::vector<double> z(d), a(m);

    for (std::size_t t = 0; t < trials; ++t) {
        double total = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            z[i] = rng.normal(0.0, std_dev);
            total += z[i];
        }
        double shift = total / static_cast<double>(d) - C / static_cast<double>(d);
        for (std::size_t i = 0; i < m; ++i) a[i] = z[i] - shift;
        acc.add(a);
    }

    const double n = static_cast<double>(trials);
    BrownianReport rep;
    rep.d = d;
    rep.sigma = sigma;
    rep.C = C;
    rep.trials = trials;

    rep.empirical_mean.resize(m);
    for (std::size_t i = 0; i < m; ++i) rep.empirical_mean[i] = acc.sum[i] / n;

    rep.empirical_cov.assign(m, std::vector<double>(m, 0.0));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j) {
            double c = (acc.cross[acc.tri(i, j)] -
                        n * rep.empirical_mean[i] * rep.empirical_mean[j]) /
                       (n - 1.0);
            rep.empirical_cov[i][j] = rep.empirical_cov[j][i] = c;
        }

    rep.mean_se.resize(m);
    for (std::size_t i = 0; i < m; ++i)
        rep.mean_se[i] = std::sqrt(rep.empirical_cov[i][i] / n);

    rep.cov_se.assign(m, std::vector<double>(m, 0.0));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j) {
            double vi = rep.empirical_cov[i][i], vj = rep.empirical_cov[j][j];
            double cij = rep.empirical_cov[i][j];
            double se = std::sqrt((vi * vj + cij * cij) / n);
            rep.cov_se[i][j] = rep.cov_se[j][i] = se;
        }

    rep.partial_sum_means.resize(m);
    rep.partial_sum_se.resize(m);
    for (std::size_t k = 0; k < m; ++k) {
        double mu = acc.part_sum[k] / n;
        double var = (acc.part_sumsq[k] - n * mu * mu) / (n - 1.0);
        rep.partial_sum_means[k] = mu;
        rep.partial_sum_se[k] = std::sqrt(std::max(var, 0.0) / n);
    }
    return rep;
}

IndependenceReport check_asymptotic_independence(const std::vector<std::size_t>& d_list,
                                                 double sigma, std::size_t trials,
                                                 std::uint64_t seed) {
    if (d_list.empty()) throw InputError("empty dimension list");
    for (std::size_t i = 0; i + 1 < d_list.size(); ++i)
        if (d_list[i] >= d_list[i + 1])
            throw InputError("dimension list must be strictly ascending");

    IndependenceReport rep;
    rep.sigma = sigma;
    rep.C = 0.0;
    rep.trials = trials;

    double prev_pair = 0.0;
    bool have_prev = false;
    for (std::size_t idx = 0; idx < d_list.size(); ++idx) {
        std::size_t d = d_list[idx];
        check_sampler_args(d, sigma, trials);
        const std::size_t m = d - 1;
        MomentAccumulator acc(m);
        Rng rng(Rng::derive(seed, idx));
        const double std_dev = std::sqrt(sigma);
        std::vector<double> z(d), a(m);
        for (std::size_t t = 0; t < trials; ++t) {
            double total = 0.0;
            for (std::size_t i = 0; i < d; ++i) {
                z[i] = rng.normal(0.0, std_dev);
                total += z[i];
            }
            double shift = total / static_cast<double>(d);  // C = 0
            for (std::size_t i = 0; i < m; ++i) a[i] = z[i] - shift;
            acc.add(a);
        }

        const double n = static_cast<double>(trials);
        std::vector<double> mean(m), var(m);
        for (std::size_t i = 0; i < m; ++i) mean[i] = acc.sum[i] / n;
        for (std::size_t i = 0; i < m; ++i)
            var[i] = (acc.cross[acc.tri(i, i)] - n * mean[i] * mean[i]) / (n - 1.0);

        IndependenceRow row;
        row.d = d;
        row.analytic = 1.0 / static_cast<double>(d - 1);
        row.has_pairs = m >= 2;
        if (row.has_pairs) {
            double abs_sum = 0.0, abs_max = 0.0;
            std::size_t pairs = 0;
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = i + 1; j < m; ++j) {
                    double cij =
                        (acc.cross[acc.tri(i, j)] - n * mean[i] * mean[j]) / (n - 1.0);
                    double r = cij / std::sqrt(var[i] * var[j]);
                    abs_sum += std::abs(r);
                    abs_max = std::max(abs_max, std::abs(r));
                    ++pairs;
                }
            row.mean_abs_offdiag = abs_sum / static_cast<double>(pairs);
            row.max_abs_offdiag = abs_max;

            double c01 = (acc.cross[acc.tri(0, 1)] - n * mean[0] * mean[1]) / (n - 1.0);
            double r01 = c01 / std::sqrt(var[0] * var[1]);
            row.pair_corr = std::abs(r01);
            row.pair_se = (1.0 - r01 * r01) / std::sqrt(n);
            row.within_3se = std::abs(row.pair_corr - row.analytic) <= 3.0 * row.pair_se;

            if (have_prev && row.pair_corr >= prev_pair) rep.decreasing = false;
            prev_pair = row.pair_corr;
            have_prev = true;
        }
        rep.rows.push_back(row);
    }
    return rep;
}

}  // namespace samp
