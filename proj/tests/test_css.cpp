#include <doctest.h>

#include <algorithm>
#include <random>

#include "qpc/css.hpp"

using namespace qpc;

namespace {

BitBlock random_block(int N, double p, std::mt19937_64& rng) {
    std::bernoulli_distribution flip(p);
    BitBlock e(N);
    for (auto& b : e) b = flip(rng) ? 1 : 0;
    return e;
}

}  // namespace

TEST_CASE("a symmetric code splits rows into frozen-x, frozen-z, and logical") {
    const auto qpc = build_qpc(6, 33, 33, ConstructionSpec::pw());
    CHECK(qpc.N == 64);
    CHECK(qpc.K() == 2);
    CHECK(qpc.logical == std::vector<int>{26, 37});
    CHECK(qpc.frozen_x.size() == 31);
    CHECK(qpc.frozen_z.size() == 31);
    CHECK(verify_css(qpc));
    // Every row lands in exactly one of the three groups.
    std::vector<int> all;
    all.insert(all.end(), qpc.frozen_x.begin(), qpc.frozen_x.end());
    all.insert(all.end(), qpc.frozen_z.begin(), qpc.frozen_z.end());
    all.insert(all.end(), qpc.logical.begin(), qpc.logical.end());
    std::sort(all.begin(), all.end());
    for (int i = 0; i < qpc.N; ++i) CHECK(all[i] == i);
}

TEST_CASE("reference logical pairs for each ranking rule") {
    CHECK(build_qpc(6, 33, 33, ConstructionSpec::hpw()).logical == std::vector<int>{26, 37});
    CHECK(build_qpc(6, 33, 33, ConstructionSpec::rm()).logical == std::vector<int>{28, 35});
    CHECK(build_qpc(8, 129, 129, ConstructionSpec::pw()).logical == std::vector<int>{92, 163});
}

TEST_CASE("asymmetric rates move the logical set") {
    const auto qpc = build_qpc(4, 10, 9, ConstructionSpec::pw());
    CHECK(qpc.Kx == 10);
    CHECK(qpc.Kz == 9);
    CHECK(qpc.K() == 3);
    CHECK(verify_css(qpc));
}

TEST_CASE("rate constraint: Kx + Kz must exceed N") {
    CHECK_THROWS_AS(build_qpc(4, 8, 8, ConstructionSpec::pw()), std::invalid_argument);
}

TEST_CASE("q1 code freezes a prefix in z and a suffix in x") {
    const auto qpc = build_q1_qpc(4, 5);
    CHECK(qpc.Kz == 11);
    CHECK(qpc.Kx == 6);
    CHECK(qpc.logical == std::vector<int>{5});
    CHECK(qpc.frozen_z == std::vector<int>{0, 1, 2, 3, 4});
    CHECK(qpc.frozen_x.front() == 6);
    CHECK(verify_css(qpc));
}

TEST_CASE("explicit frozen sets reject a css violation") {
    CHECK_THROWS_AS(qpc_from_frozen_sets(2, {0, 1}, {1, 2}, ConstructionSpec::pw()),
                    std::invalid_argument);
    const auto ok = qpc_from_frozen_sets(2, {3}, {0, 1}, ConstructionSpec::pw());
    CHECK(ok.logical == std::vector<int>{2});
}

TEST_CASE("stabilizers have zero syndrome and zero label") {
    const auto qpc = build_qpc(5, 17, 17, ConstructionSpec::pw());
    for (int row : qpc.frozen_x) {
        BitBlock u(qpc.N, 0);
        u[row] = 1;
        const BitBlock stab = polar_transform(u);
        CHECK(weight(x_syndrome(qpc, stab)) == 0);
        CHECK(weight(class_label(qpc, stab)) == 0);
    }
}

TEST_CASE("logical rows carry a nonzero label and zero syndrome") {
    const auto qpc = build_qpc(6, 33, 33, ConstructionSpec::pw());
    for (std::size_t j = 0; j < qpc.logical.size(); ++j) {
        BitBlock u(qpc.N, 0);
        u[qpc.logical[j]] = 1;
        const BitBlock op = polar_transform(u);
        CHECK(weight(x_syndrome(qpc, op)) == 0);
        CHECK(label_key(class_label(qpc, op)) == (std::uint64_t{1} << j));
    }
}

TEST_CASE("syndrome and label are additive") {
    const auto qpc = build_qpc(5, 17, 17, ConstructionSpec::pw());
    std::mt19937_64 rng(9);
    for (int t = 0; t < 40; ++t) {
        const BitBlock a = random_block(qpc.N, 0.3, rng);
        const BitBlock b = random_block(qpc.N, 0.3, rng);
        CHECK(x_syndrome(qpc, xor_blocks(a, b)) ==
              xor_blocks(x_syndrome(qpc, a), x_syndrome(qpc, b)));
        CHECK(class_label(qpc, xor_blocks(a, b)) ==
              xor_blocks(class_label(qpc, a), class_label(qpc, b)));
    }
}

TEST_CASE("logical error predicate") {
    const auto qpc = build_qpc(6, 33, 33, ConstructionSpec::pw());
    BitBlock u(qpc.N, 0);
    u[qpc.logical[0]] = 1;
    const BitBlock logical_op = polar_transform(u);
    const BitBlock zero(qpc.N, 0);

    CHECK(!logical_x_error(qpc, zero, zero));
    CHECK(logical_x_error(qpc, logical_op, zero));

    // A stabilizer difference is not a logical error.
    BitBlock v(qpc.N, 0);
    v[qpc.frozen_x[0]] = 1;
    const BitBlock stab = polar_transform(v);
    CHECK(!logical_x_error(qpc, stab, zero));

    // Mismatched syndromes are a decoder fault, not a logical error.
    BitBlock w(qpc.N, 0);
    w[0] = 1;
    CHECK_THROWS_AS(logical_x_error(qpc, w, zero), std::logic_error);
}

TEST_CASE("mirror swaps the bases and is an involution") {
    const auto qpc = build_qpc(5, 18, 17, ConstructionSpec::pw());
    const auto m = mirror(qpc);
    CHECK(m.Kx == qpc.Kz);
    CHECK(m.Kz == qpc.Kx);
    CHECK(m.K() == qpc.K());
    CHECK(verify_css(m));
    for (std::size_t j = 0; j < qpc.logical.size(); ++j)
        CHECK(std::find(m.logical.begin(), m.logical.end(), qpc.N - 1 - qpc.logical[j]) !=
              m.logical.end());
    const auto mm = mirror(m);
    CHECK(mm.frozen_x == qpc.frozen_x);
    CHECK(mm.frozen_z == qpc.frozen_z);
    CHECK(mm.logical == qpc.logical);
}

TEST_CASE("the symmetric construction satisfies the css condition across rates") {
    for (int n : {4, 5, 6, 7}) {
        const int N = 1 << n;
        for (int K = 2; K <= std::min(16, N / 4); K += 2) {
            for (auto spec : {ConstructionSpec::pw(), ConstructionSpec::hpw(), ConstructionSpec::rm()}) {
                const auto qpc = build_qpc(n, (N + K) / 2, (N + K) / 2, spec);
                CHECK(verify_css(qpc));
                CHECK(qpc.K() == K);
            }
        }
    }
}

TEST_CASE("code serialization carries the frozen sets") {
    const auto qpc = build_qpc(4, 9, 9, ConstructionSpec::pw());
    const std::string json = qpc_to_json(qpc);
    CHECK(json.find("\"K_X\": 9") != std::string::npos);
    CHECK(json.find("frozen_x") != std::string::npos);
    CHECK(json.find("logical") != std::string::npos);
}
