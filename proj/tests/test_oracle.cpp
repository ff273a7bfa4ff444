#include <doctest.h>

#include <set>
#include <string>

#include "samp/enumeration.hpp"
#include "samp/errors.hpp"
#include "samp/samp.hpp"
#include "test_models.hpp"

using namespace samp;
using namespace samp::testing;

TEST_CASE("path counts match the closed form") {
    CHECK(manipulation_path_count(4, 1) == 24);   // 4!
    CHECK(manipulation_path_count(4, 2) == 6);    // 4!/(2!)^2
    CHECK(manipulation_path_count(4, 4) == 1);
    CHECK(manipulation_path_count(6, 2) == 90);   // 6!/(2!)^3
    CHECK(manipulation_path_count(6, 3) == 20);   // 6!/(3!)^2
    CHECK(manipulation_path_count(5, 2) == 30);   // short last block: C(5,2)C(3,2)
    CHECK(manipulation_path_count(1, 1) == 1);

    // d!/(s!)^(d/s) whenever s divides d
    auto factorial = [](std::size_t n) {
        std::uint64_t f = 1;
        for (std::size_t i = 2; i <= n; ++i) f *= i;
        return f;
    };
    for (std::size_t d = 1; d <= 6; ++d)
        for (std::size_t s = 1; s <= d; ++s) {
            if (d % s != 0) continue;
            std::uint64_t denom = 1;
            for (std::size_t b = 0; b < d / s; ++b) denom *= factorial(s);
            CHECK(manipulation_path_count(d, s) == factorial(d) / denom);
        }

    CHECK_THROWS_AS(manipulation_path_count(4, 0), InputError);
    CHECK_THROWS_AS(manipulation_path_count(3, 4), InputError);
    CHECK_THROWS_AS(manipulation_path_count(21, 1), InputError);
}

TEST_CASE("enumeration lists every block ordering exactly once") {
    for (auto [d, s] : {std::pair<std::size_t, std::size_t>{3, 1},
                        {4, 2},
                        {5, 2},
                        {6, 3},
                        {4, 4}}) {
        PathEnumeration en = enumerate_paths(d, s);
        CHECK(en.paths.size() == manipulation_path_count(d, s));

        std::set<std::vector<std::vector<std::size_t>>> seen;
        for (const auto& blocks : en.paths) {
            CHECK(seen.insert(blocks).second);  // no duplicates
            std::set<std::size_t> covered;
            std::size_t remaining = d;
            for (const auto& block : blocks) {
                CHECK(block.size() == std::min(s, remaining));
                for (std::size_t i = 1; i < block.size(); ++i)
                    CHECK(block[i - 1] < block[i]);  // ascending within a block
                for (std::size_t j : block) {
                    CHECK(j < d);
                    CHECK(covered.insert(j).second);  // disjoint blocks
                }
                remaining -= block.size();
            }
            CHECK(covered.size() == d);  // full coverage
        }
    }
}

TEST_CASE("enumeration order is deterministic and lexicographic") {
    PathEnumeration en = enumerate_paths(3, 1);
    REQUIRE(en.paths.size() == 6);
    CHECK(en.paths[0] ==
          std::vector<std::vector<std::size_t>>{{0}, {1}, {2}});
    CHECK(en.paths[1] ==
          std::vector<std::vector<std::size_t>>{{0}, {2}, {1}});
    CHECK(en.paths.back() ==
          std::vector<std::vector<std::size_t>>{{2}, {1}, {0}});
}

TEST_CASE("enumeration refuses large dimensions with a size estimate") {
    try {
        enumerate_paths(10, 1);
        FAIL("expected a refusal");
    } catch (const InputError& e) {
        std::string what = e.what();
        CHECK(what.find("d=10") != std::string::npos);
        CHECK(what.find("paths") != std::string::npos);
    }
    CHECK_NOTHROW(enumerate_paths(9, 3));  // boundary is allowed
}

TEST_CASE("realized paths are valid manipulation paths") {
    Rng rng(21);
    Tensor x0 = random_tensor({5}, rng);
    Tensor xT = random_tensor({5}, rng);
    PathEnumeration en = enumerate_paths(5, 2);
    for (const auto& blocks : en.paths) {
        PathSegments p = realize_path(blocks, x0, xT);
        p.validate();
        std::string why;
        CHECK_MESSAGE(is_manipulation_path(p, 2, 1e-9, &why), why);
        CHECK(p.num_steps() == blocks.size());
    }
}

TEST_CASE("realize_path rejects malformed partitions") {
    Tensor x0({3}, {0, 0, 0}), xT({3}, {1, 1, 1});
    CHECK_THROWS_AS(realize_path({{0, 5}, {1, 2}}, x0, xT), InputError);  // range
    CHECK_THROWS_AS(realize_path({{0, 1}, {1, 2}}, x0, xT), InputError);  // repeat
    CHECK_THROWS_AS(realize_path({{0}, {2}}, x0, xT), InputError);        // missing
}

TEST_CASE("brute force finds the bilinear optimum") {
    BilinearModel bil;
    Tensor x0({2}, {0, 0}), xT({2}, {1, 1});
    BruteForceResult res = brute_force_optimal(bil, 0, x0, xT, 1);

    REQUIRE(res.all_variances.size() == 2);
    // both orders credit one coordinate with the full delta: values (0,1) or
    // (1,0), variance 0.25 either way; ties keep enumeration order
    CHECK(res.all_variances[0] == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(res.all_variances[1] == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(res.best_variance == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(res.best_blocks == std::vector<std::vector<std::size_t>>{{0}, {1}});
    res.best_path.validate();
}

TEST_CASE("linear models make every path equivalent") {
    LinearModel lin(Tensor({1, 3}, {2, -1, 0.5}), Tensor({1}, {0}));
    Rng rng(9);
    Tensor x0 = random_tensor({3}, rng);
    Tensor xT = random_tensor({3}, rng);
    BruteForceResult res = brute_force_optimal(lin, 0, x0, xT, 1);
    for (double v : res.all_variances)
        CHECK(v == doctest::Approx(res.best_variance).epsilon(1e-9));
}

TEST_CASE("greedy search never beats the exhaustive optimum") {
    // the unconstrained greedy path lies inside the enumerated family, so
    // its objective is bounded by the brute-force maximum
    Rng rng(55);
    for (int t = 0; t < 12; ++t) {
        MlpModel net = random_mlp({5, 12, 2}, Activation::Tanh, 300 + t);
        Tensor x0 = random_tensor({5}, rng);
        Tensor xT = random_tensor({5}, rng);
        std::size_t s = 1 + rng.index(2);

        BruteForceResult res = brute_force_optimal(net, 0, x0, xT, s);

        SampConfig cfg;
        cfg.step_pixels = s;
        cfg.eta_ratio.reset();
        cfg.momentum = 0.0;
        cfg.direction = Direction::ToTarget;
        PathAttribution run = samp_attribute(net, 0, x0, xT, cfg);

        CHECK(run.attribution.variance <= res.best_variance + 1e-9);
    }
}
