#include <doctest.h>

#include <algorithm>
#include <bit>
#include <cmath>

#include "qpc/construction.hpp"

using namespace qpc;

namespace {
const double kBeta = std::pow(2.0, 0.25);
}

TEST_CASE("beta expansion values") {
    CHECK(beta_expansion(37, 6, kBeta) == doctest::Approx(4.7926277923785365).epsilon(1e-12));
    CHECK(beta_expansion(26, 6, kBeta) == doctest::Approx(4.87099994551015).epsilon(1e-12));
    CHECK(beta_expansion(0, 6, kBeta) == 0.0);
    // beta = 2 recovers the plain binary value.
    CHECK(beta_expansion(37, 6, 2.0) == doctest::Approx(37.0));
}

TEST_CASE("beta expansion argument checks") {
    CHECK_THROWS_AS(beta_expansion(64, 6, kBeta), std::out_of_range);
    CHECK_THROWS_AS(beta_expansion(-1, 6, kBeta), std::out_of_range);
    CHECK_THROWS_AS(beta_expansion(3, 3, 0.0), std::invalid_argument);
}

TEST_CASE("construction scores") {
    CHECK(construction_score(37, 6, ConstructionSpec::hpw()) ==
          doctest::Approx(5.625719178563222).epsilon(1e-12));
    CHECK(construction_score(35, 6, ConstructionSpec::rm()) == doctest::Approx(3.546875));
    CHECK_THROWS_AS(construction_score(1, 6, ConstructionSpec::q1(3)), std::invalid_argument);
}

TEST_CASE("score above beta 2 is the beta 2 ordering") {
    auto hot = ConstructionSpec::pw(5.0);
    auto two = ConstructionSpec::pw(2.0);
    CHECK(rank_rows(5, hot) == rank_rows(5, two));
}

TEST_CASE("row ranking at n=3 and n=4") {
    CHECK(rank_rows(3, ConstructionSpec::pw()) == std::vector<int>{7, 6, 5, 3, 4, 2, 1, 0});
    CHECK(rank_rows(4, ConstructionSpec::pw()) ==
          std::vector<int>{15, 14, 13, 11, 7, 12, 10, 9, 6, 5, 3, 8, 4, 2, 1, 0});
}

TEST_CASE("rm ranking orders by binary weight then index") {
    const auto order = rank_rows(4, ConstructionSpec::rm());
    auto score = [](int i) { return std::popcount(static_cast<unsigned>(i)) + i / 16.0; };
    for (std::size_t k = 1; k < order.size(); ++k) CHECK(score(order[k - 1]) > score(order[k]));
}

TEST_CASE("spec validation") {
    CHECK_THROWS_AS(ConstructionSpec::pw(1.0).validate(4), std::invalid_argument);
    CHECK_THROWS_AS(ConstructionSpec::pw(0.5).validate(4), std::invalid_argument);
    CHECK_NOTHROW(ConstructionSpec::pw(1.1).validate(4));
    CHECK_THROWS_AS(ConstructionSpec::q1(0).validate(3), std::invalid_argument);
    CHECK_THROWS_AS(ConstructionSpec::q1(7).validate(3), std::invalid_argument);
    CHECK_NOTHROW(ConstructionSpec::q1(4).validate(3));
}

TEST_CASE("classical code from a ranking") {
    const auto code = build_classical_code(3, 4, ConstructionSpec::pw());
    CHECK(code.K == 4);
    CHECK(code.info_set == std::vector<int>{3, 5, 6, 7});
    CHECK(code.frozen_set == std::vector<int>{0, 1, 2, 4});
    for (int i : code.info_set) CHECK(code.is_frozen[i] == 0);
    for (int i : code.frozen_set) CHECK(code.is_frozen[i] == 1);
}

TEST_CASE("q1 classical code freezes a prefix") {
    const auto code = build_classical_code(3, 5, ConstructionSpec::q1(3));
    CHECK(code.info_set == std::vector<int>{3, 4, 5, 6, 7});
    CHECK(code.frozen_set == std::vector<int>{0, 1, 2});
}
