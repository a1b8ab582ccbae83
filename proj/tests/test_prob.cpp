#include <catch2/catch_amalgamated.hpp>

#include "syndisc/prob.hpp"

using namespace syndisc;

TEST_CASE("entropy of basic pmfs") {
    CHECK(entropy(ProbVector({1.0})) == 0.0);
    CHECK_THAT(entropy(ProbVector({0.5, 0.5})), Catch::Matchers::WithinAbs(1.0, 1e-12));
    CHECK_THAT(entropy(ProbVector({0.25, 0.25, 0.25, 0.25})),
               Catch::Matchers::WithinAbs(2.0, 1e-12));
    CHECK(entropy(ProbVector({1.0, 0.0})) == 0.0); // 0 log 0 convention
}

TEST_CASE("ProbVector validation") {
    CHECK_THROWS_AS(ProbVector({0.5, 0.6}), input_error);
    CHECK_THROWS_AS(ProbVector({-0.1, 1.1}), input_error);
    CHECK_NOTHROW(ProbVector({0.3, 0.7}));
}

TEST_CASE("SystemDistribution shape checks") {
    CHECK_THROWS_AS(SystemDistribution({2, 2}, 2, {0.5, 0.5}), input_error);
    CHECK_THROWS_AS(SystemDistribution({}, 2, {0.5, 0.5}), input_error);
    CHECK_THROWS_AS(SystemDistribution({2}, 2, {0.5, 0.5, 0.1, 0.0}), input_error);
    CHECK_NOTHROW(SystemDistribution({2}, 2, {0.5, 0.0, 0.25, 0.25}));
}

TEST_CASE("from_file_data renormalizes small rounding but rejects bad totals") {
    auto d = SystemDistribution::from_file_data({2}, 1, {0.5, 0.5 + 2e-10});
    double sum = 0.0;
    for (double p : d.probs()) sum += p;
    CHECK_THAT(sum, Catch::Matchers::WithinAbs(1.0, 1e-15));
    CHECK_THROWS_AS(SystemDistribution::from_file_data({2}, 1, {0.5, 0.6}), input_error);
}

TEST_CASE("marginals of an XOR-shaped joint") {
    // p(x1,x2,y) uniform over the 4 states with y = x1 xor x2
    std::vector<double> probs(8, 0.0);
    for (std::size_t x1 = 0; x1 < 2; ++x1)
        for (std::size_t x2 = 0; x2 < 2; ++x2) probs[(x1 * 2 + x2) * 2 + (x1 ^ x2)] = 0.25;
    SystemDistribution d({2, 2}, 2, probs);

    auto px1 = marginal(d, {0});
    CHECK_THAT(px1[0], Catch::Matchers::WithinAbs(0.5, 1e-15));
    auto py = marginal(d, {SystemDistribution::kTarget});
    CHECK_THAT(py[1], Catch::Matchers::WithinAbs(0.5, 1e-15));
    auto pj = marginal(d, {0, 1});
    for (std::size_t i = 0; i < 4; ++i) CHECK_THAT(pj[i], Catch::Matchers::WithinAbs(0.25, 1e-15));

    SECTION("mutual information") {
        CHECK_THAT(mutual_information(d, {0}, {SystemDistribution::kTarget}),
                   Catch::Matchers::WithinAbs(0.0, 1e-12));
        CHECK_THAT(mutual_information(d, {0, 1}, {SystemDistribution::kTarget}),
                   Catch::Matchers::WithinAbs(1.0, 1e-12));
    }
    SECTION("conditional mutual information: xor makes pairs informative given the third") {
        CHECK_THAT(conditional_mutual_information(d, {0}, {SystemDistribution::kTarget}, {1}),
                   Catch::Matchers::WithinAbs(1.0, 1e-12));
        CHECK_THROWS_AS(conditional_mutual_information(d, {0}, {0}, {1}), input_error);
    }
}

TEST_CASE("decode_source_state round trip") {
    SystemDistribution d({2, 3, 2}, 1,
                         std::vector<double>(12, 1.0 / 12.0));
    for (std::size_t flat = 0; flat < 12; ++flat) {
        auto xs = d.decode_source_state(flat);
        std::size_t again = (xs[0] * 3 + xs[1]) * 2 + xs[2];
        CHECK(again == flat);
    }
}

TEST_CASE("Channel validation") {
    Channel ch;
    ch.input_support = {0, 3};
    ch.output_alphabet = 2;
    ch.matrix = {0.25, 1.0, 0.75, 0.0};
    CHECK_NOTHROW(ch.validate());
    ch.matrix[0] = 0.5;
    CHECK_THROWS_AS(ch.validate(), input_error);
}
