#include "samp/enumeration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "samp/errors.hpp"

namespace samp {

namespace {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n - k) k = n - k;
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        // Multiply before dividing stays exact; r * (n-k+i) is divisible by i
        // at every stage of the running product.
        r = r * (n - k + i) / i;
    }
    return r;
}

void check_block_args(std::size_t d, std::size_t s) {
    if (s == 0 || d == 0 || s > d)
        throw InputError("block enumeration needs 1 <= s <= d");
}

}  // namespace

std::uint64_t manipulation_path_count(std::size_t d, std::size_t s) {
    check_block_args(d, s);
    if (d > 20)
        throw InputError("exact path count overflows 64 bits for d > 20");
    // Ordered blocks: pick each block from what remains; the product of
    // binomials equals d!/(s!)^n when s | d.
    std::uint64_t count = 1;
    std::size_t remaining = d;
    while (remaining > 0) {
        std::size_t take = std::min(s, remaining);
        count *= binomial(remaining, take);
        remaining -= take;
    }
    return count;
}

PathEnumeration enumerate_paths(std::size_t d, std::size_t s) {
    check_block_args(d, s);
    if (d > 9) {
        double n_full = std::floor(static_cast<double>(d) / static_cast<double>(s));
        double log_count = std::lgamma(static_cast<double>(d) + 1.0) -
                           n_full * std::lgamma(static_cast<double>(s) + 1.0) -
                           std::lgamma(static_cast<double>(d % s) + 1.0);
        std::ostringstream msg;
        msg << "refusing to enumerate d=" << d << ", s=" << s << ": about "
            << std::scientific << std::exp(log_count) << " paths";
        throw InputError(msg.str());
    }

    PathEnumeration out;
    out.d = d;
    out.s = s;
    out.paths.reserve(manipulation_path_count(d, s));

    std::vector<std::size_t> remaining(d);
    for (std::size_t i = 0; i < d; ++i) remaining[i] = i;
    std::vector<std::vector<std::size_t>> blocks;

    // Depth-first over ordered blocks; each block is an ascending
    // combination of the remaining indices, visited lexicographically.
    auto recurse = [&](auto&& self, std::vector<std::size_t>& rest) -> void {
        if (rest.empty()) {
            out.paths.push_back(blocks);
            return;
        }
        std::size_t take = std::min(s, rest.size());
        std::vector<std::size_t> pick(take);
        for (std::size_t i = 0; i < take; ++i) pick[i] = i;
        while (true) {
            std::vector<std::size_t> block(take);
            for (std::size_t i = 0; i < take; ++i) block[i] = rest[pick[i]];
            std::vector<std::size_t> next;
            next.reserve(rest.size() - take);
            for (std::size_t i = 0, p = 0; i < rest.size(); ++i) {
                if (p < take && pick[p] == i)
                    ++p;
                else
                    next.push_back(rest[i]);
            }
            blocks.push_back(std::move(block));
            self(self, next);
            blocks.pop_back();

            // Advance `pick` to the next combination.
            std::size_t i = take;
            while (i-- > 0) {
                if (pick[i] != i + rest.size() - take) {
                    ++pick[i];
                    for (std::size_t j = i + 1; j < take; ++j) pick[j] = pick[j - 1] + 1;
                    break;
                }
                if (i == 0) return;
            }
        }
    };
    recurse(recurse, remaining);
    return out;
}

PathSegments realize_path(const std::vector<std::vector<std::size_t>>& blocks,
                          const Tensor& x0, const Tensor& xT) {
    if (!x0.same_shape(xT)) throw InputError("path endpoints have different shapes");
    std::vector<char> seen(x0.size(), 0);
    for (const auto& block : blocks)
        for (std::size_t i : block) {
            if (i >= x0.size())
                throw InputError("block index " + std::to_string(i) + " out of range");
            if (seen[i]) throw InputError("block ordering repeats coordinate " +
                                          std::to_string(i));
            seen[i] = 1;
        }
    for (std::size_t i = 0; i < x0.size(); ++i)
        if (!seen[i])
            throw InputError("block ordering misses coordinate " + std::to_string(i));

    PathSegments path{x0, xT, {}};
    Tensor x = x0;
    for (const auto& block : blocks) {
        Tensor moved = x;
        for (std::size_t i : block) moved[i] = xT[i];
        path.steps.push_back(moved - x);
        x = std::move(moved);
    }
    return path;
}

BruteForceResult brute_force_optimal(const Model& model, int cls, const Tensor& x0,
                                     const Tensor& xT, std::size_t s) {
    PathEnumeration en = enumerate_paths(x0.size(), s);
    BruteForceResult res;
    res.best_variance = -std::numeric_limits<double>::infinity();
    res.all_variances.reserve(en.paths.size());
    for (const auto& blocks : en.paths) {
        PathSegments path = realize_path(blocks, x0, xT);
        Attribution a = integrate_path(model, cls, path);
        res.all_variances.push_back(a.variance);
        if (a.variance > res.best_variance) {
            res.best_variance = a.variance;
            res.best_path = std::move(path);
            res.best_blocks = blocks;
        }
    }
    return res;
}

}  // namespace samp
