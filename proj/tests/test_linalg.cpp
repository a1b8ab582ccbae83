#include <catch2/catch_amalgamated.hpp>

#include "syndisc/linalg.hpp"

using namespace syndisc;

namespace {

Matrix make(std::size_t r, std::size_t c, std::initializer_list<double> vals) {
    Matrix m(r, c);
    std::size_t i = 0;
    for (double v : vals) m.data[i++] = v;
    return m;
}

} // namespace

TEST_CASE("rank of simple matrices") {
    CHECK(rank(make(2, 2, {1, 0, 0, 1})) == 2);
    CHECK(rank(make(2, 2, {1, 2, 2, 4})) == 1);
    CHECK(rank(make(3, 2, {1, 0, 0, 1, 1, 1})) == 2);
    CHECK(rank(Matrix(2, 2)) == 0);
}

TEST_CASE("reduce_system drops dependent rows and keeps the solution set") {
    Matrix a = make(3, 2, {1, 1, 2, 2, 1, -1});
    std::vector<double> b = {3, 6, 1};
    reduce_system(a, b);
    REQUIRE(a.rows == 2);
    // x = (2, 1) solves the original system; check it solves the reduced one
    for (std::size_t r = 0; r < a.rows; ++r)
        CHECK_THAT(a.at(r, 0) * 2.0 + a.at(r, 1) * 1.0, Catch::Matchers::WithinAbs(b[r], 1e-12));
}

TEST_CASE("reduce_system rejects inconsistent systems") {
    Matrix a = make(2, 2, {1, 1, 1, 1});
    std::vector<double> b = {1, 2};
    CHECK_THROWS_AS(reduce_system(a, b), internal_error);
}

TEST_CASE("solve_subsystem") {
    std::vector<double> x;
    SECTION("square invertible") {
        REQUIRE(solve_subsystem(make(2, 2, {2, 0, 0, 4}), {2, 8}, x));
        CHECK_THAT(x[0], Catch::Matchers::WithinAbs(1.0, 1e-12));
        CHECK_THAT(x[1], Catch::Matchers::WithinAbs(2.0, 1e-12));
    }
    SECTION("overdetermined consistent") {
        REQUIRE(solve_subsystem(make(3, 2, {1, 0, 0, 1, 1, 1}), {1, 2, 3}, x));
        CHECK_THAT(x[0], Catch::Matchers::WithinAbs(1.0, 1e-12));
    }
    SECTION("overdetermined inconsistent") {
        CHECK_FALSE(solve_subsystem(make(3, 2, {1, 0, 0, 1, 1, 1}), {1, 2, 4}, x));
    }
    SECTION("column-rank deficient") {
        CHECK_FALSE(solve_subsystem(make(2, 2, {1, 1, 2, 2}), {1, 2}, x));
    }
}

TEST_CASE("null_space vectors are annihilated") {
    Matrix a = make(2, 4, {1, 1, 1, 1, 1, -1, 1, -1});
    auto basis = null_space(a);
    REQUIRE(basis.size() == 2);
    for (const auto& v : basis)
        for (std::size_t r = 0; r < a.rows; ++r) {
            double s = 0.0;
            for (std::size_t c = 0; c < a.cols; ++c) s += a.at(r, c) * v[c];
            CHECK_THAT(s, Catch::Matchers::WithinAbs(0.0, 1e-12));
        }
    CHECK(null_space(make(2, 2, {1, 0, 0, 1})).empty());
}
