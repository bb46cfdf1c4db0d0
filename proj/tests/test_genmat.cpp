#include <random>

#include "doctest.h"
#include "freelin/genmat.hpp"

using namespace freelin;

namespace {
const QRing Q{};
FreePoly z(int i, int n) { return FreePoly::gen(i, n, Q); }
Scalar sc(std::int64_t k) { return Scalar::from_int(k, Q); }

bool comm_zero(const CommMat& m) {
    for (const auto& row : m)
        for (const auto& e : row)
            if (!e.is_zero()) return false;
    return true;
}
}  // namespace

TEST_CASE("reduction at N=1 is the abelianization") {
    Endo phi{2, Q, {z(1, 2) + z(2, 2) * z(1, 2) * z(2, 2), z(2, 2) * z(2, 2)}};
    CoeffMap red = reduce_endo(phi, 1);
    CHECK(red.dim() == 2);
    CHECK(red.images[0] == abelianize(phi.images[0]));
    CHECK(red.images[1] == abelianize(phi.images[1]));
}

TEST_CASE("identity reduces to the identity coefficient map") {
    CHECK(reduce_endo(Endo::identity(2, Q), 2).is_identity());
    CHECK(reduce_endo(Endo::identity(3, Q), 1).is_identity());
}

TEST_CASE("reductions of inverse pairs compose to the identity") {
    Endo phi{2, Q, {z(1, 2) + z(2, 2) * z(2, 2), z(2, 2)}};
    Endo psi{2, Q, {z(1, 2) - z(2, 2) * z(2, 2), z(2, 2)}};
    for (int N : {1, 2}) {
        CoeffMap a = reduce_endo(phi, N), b = reduce_endo(psi, N);
        CHECK(compose(a, b).is_identity());
        CHECK(compose(b, a).is_identity());
    }
}

TEST_CASE("reduction is functorial under composition") {
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        Endo phi = random_tame(2, 2, 2, seed);
        Endo psi = random_tame(2, 2, 2, seed + 50);
        for (int N : {1, 2}) {
            CHECK(reduce_endo(compose(phi, psi), N) ==
                  compose(reduce_endo(phi, N), reduce_endo(psi, N)));
        }
    }
}

TEST_CASE("S_1 and sign bookkeeping") {
    ScalarMat m = {{sc(1), sc(2)}, {sc(3), sc(4)}};
    CHECK(standard_identity(1, std::vector<ScalarMat>{m}) == m);
    // S_2(a,b) = ab - ba on a pair that does not commute
    ScalarMat e12 = {{sc(0), sc(1)}, {sc(0), sc(0)}};
    ScalarMat e21 = {{sc(0), sc(0)}, {sc(1), sc(0)}};
    ScalarMat s2 = standard_identity(2, {e12, e21});
    CHECK(s2[0][0] == sc(1));
    CHECK(s2[1][1] == sc(-1));
}

TEST_CASE("S_4 vanishes identically on 2x2 generic matrices") {
    std::vector<GenericMatrix> gm;
    for (int k = 1; k <= 4; ++k) gm.push_back(generic_matrix(k, 4, 2, Q));
    std::vector<CommMat> mats;
    for (const auto& g : gm) mats.push_back(g.entries);
    CHECK(comm_zero(standard_identity(4, mats)));
}

TEST_CASE("S_3 does not vanish on 2x2 matrix units") {
    ScalarMat e11 = {{sc(1), sc(0)}, {sc(0), sc(0)}};
    ScalarMat e12 = {{sc(0), sc(1)}, {sc(0), sc(0)}};
    ScalarMat e21 = {{sc(0), sc(0)}, {sc(1), sc(0)}};
    ScalarMat s3 = standard_identity(3, {e11, e12, e21});
    CHECK(s3[0][0] == sc(2));
    CHECK(s3[1][1] == sc(1));
    CHECK(s3[0][1].is_zero());
    CHECK(s3[1][0].is_zero());
}

TEST_CASE("S_6 vanishes on random rational 3x3 triples-of-six") {
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<int> e(-3, 3);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<ScalarMat> mats;
        for (int k = 0; k < 6; ++k) {
            ScalarMat m(3, ScalarVec(3, sc(0)));
            for (auto& row : m)
                for (auto& v : row) v = sc(e(rng));
            mats.push_back(m);
        }
        ScalarMat s = standard_identity(6, mats);
        for (const auto& row : s)
            for (const auto& v : row) CHECK(v.is_zero());
    }
}

TEST_CASE("root sign classification") {
    CHECK(positive_root_check(WeightData{{{1, 1}, {1, 2}}, true, {}}));
    CHECK_FALSE(positive_root_check(WeightData{{{1, 0}, {0, 1}}, true, {}}));
    CHECK_FALSE(positive_root_check(WeightData{{{-1, -2}, {-3, -1}}, true, {}}));
    CHECK(negative_root_check(WeightData{{{-1, -2}, {-3, -1}}, true, {}}));
    CHECK_FALSE(negative_root_check(WeightData{{{1, 1}, {1, 2}}, true, {}}));
}

TEST_CASE("positive-root pipeline linearizes the conjugated torus action") {
    // sigma = beta^{-1} o diag(t1 t2, t1 t2^2) o beta, beta = (z1, z2 + z1^2)
    Endo beta{2, Q, {z(1, 2), z(2, 2) + z(1, 2) * z(1, 2)}};
    Endo beta_inv{2, Q, {z(1, 2), z(2, 2) - z(1, 2) * z(1, 2)}};
    ActionSpec sigma =
        conjugate_action(diagonal_action({{1, 1}, {1, 2}}, 2, 2, Q), beta, beta_inv);
    LinearizationReport rep = linearize_positive_root(sigma);
    REQUIRE(rep.verified());
    CHECK(rep.weights->weight_matrix == WeightMatrix{{1, 1}, {1, 2}});
    CHECK(positive_root_check(*rep.weights));
    CHECK(rep.beta->images[1] == z(2, 2) + z(1, 2) * z(1, 2));
}

TEST_CASE("linear positive-root actions need no conjugation") {
    LinearizationReport rep = linearize_positive_root(diagonal_action({{1, 1}, {1, 2}}, 2, 2, Q));
    REQUIRE(rep.verified());
    CHECK(rep.beta->is_identity());
}

TEST_CASE("negative roots are linearized through the group inversion") {
    Endo beta{2, Q, {z(1, 2), z(2, 2) + z(1, 2) * z(1, 2)}};
    Endo beta_inv{2, Q, {z(1, 2), z(2, 2) - z(1, 2) * z(1, 2)}};
    ActionSpec sigma =
        conjugate_action(diagonal_action({{-1, -1}, {-1, -2}}, 2, 2, Q), beta, beta_inv);
    LinearizationReport rep = linearize_positive_root(sigma);
    REQUIRE(rep.verified());
    CHECK(rep.weights->weight_matrix == WeightMatrix{{1, 1}, {1, 2}});
}
