#include <random>

#include "doctest.h"
#include "freelin/endo.hpp"

using namespace freelin;

namespace {
const QRing Q{};
FreePoly z(int i, int n) { return FreePoly::gen(i, n, Q); }
}  // namespace

TEST_CASE("composition is substitution of the outer map") {
    // compose(phi, psi)(z_i) = phi(psi(z_i))
    Endo phi{2, Q, {z(1, 2) + z(2, 2) * z(2, 2), z(2, 2)}};
    Endo psi{2, Q, {z(2, 2), z(1, 2)}};
    Endo c = compose(phi, psi);
    CHECK(c.images[0] == z(2, 2));
    CHECK(c.images[1] == z(1, 2) + z(2, 2) * z(2, 2));
}

TEST_CASE("composition is associative on random tame maps") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        Endo a = random_tame(3, 2, 2, seed);
        Endo b = random_tame(3, 2, 2, seed + 100);
        Endo c = random_tame(3, 2, 2, seed + 200);
        CHECK(compose(compose(a, b), c) == compose(a, compose(b, c)));
    }
}

TEST_CASE("degree of a composition is bounded by the product") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        Endo a = random_tame(2, 2, 3, seed);
        Endo b = random_tame(2, 2, 3, seed * 31 + 7);
        CHECK(compose(a, b).degree() <= a.degree() * b.degree());
    }
}

TEST_CASE("elementary map inverts exactly") {
    Endo phi{2, Q, {z(1, 2) + z(2, 2) * z(2, 2), z(2, 2)}};
    auto rep = invert_truncated(phi, 4);
    CHECK(rep.status == InversionStatus::Exact);
    REQUIRE(rep.inverse.has_value());
    CHECK(rep.inverse->images[0] == z(1, 2) - z(2, 2) * z(2, 2));
    CHECK(compose(phi, *rep.inverse).is_identity());
    CHECK(compose(*rep.inverse, phi).is_identity());
}

TEST_CASE("singular linear part is never invertible") {
    Endo phi{2, Q, {z(1, 2) * z(1, 2), z(2, 2)}};
    for (int cutoff : {1, 3, 8}) {
        CHECK(invert_truncated(phi, cutoff).status == InversionStatus::NotInvertible);
    }
}

TEST_CASE("tame compositions invert exactly and compose to the identity") {
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        Endo phi = random_tame(2, 3, 2, seed);
        auto rep = invert_truncated(phi, phi.degree() * phi.degree());
        REQUIRE(rep.status == InversionStatus::Exact);
        CHECK(compose(phi, *rep.inverse).is_identity());
        CHECK(compose(*rep.inverse, phi).is_identity());
    }
}

TEST_CASE("random_tame is deterministic and inverts at the default escalation") {
    CHECK(random_tame(3, 4, 2, 42) == random_tame(3, 4, 2, 42));
    CHECK_THROWS_AS(random_tame(2, 0, 2, 1), InvalidInput);
    // property sweep: inversion succeeds at cutoff deg^(n-1) * 2
    int exact = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        Endo phi = random_tame(2, 2, 2, seed);
        int cutoff = 1;
        for (int i = 0; i < phi.n - 1; ++i) cutoff *= std::max(phi.degree(), 1);
        auto rep = invert_truncated(phi, cutoff * 2);
        if (rep.status == InversionStatus::Exact) ++exact;
    }
    CHECK(exact == 200);
}

TEST_CASE("affine maps with translation invert") {
    FreePoly c = FreePoly::constant(Scalar::from_int(3, Q), 2);
    Endo phi{2, Q, {z(1, 2) + z(2, 2) + c, z(2, 2) - c}};
    auto rep = invert_auto(phi);
    REQUIRE(rep.status == InversionStatus::Exact);
    CHECK(compose(phi, *rep.inverse).is_identity());
    CHECK(compose(*rep.inverse, phi).is_identity());
}

TEST_CASE("truncation rank: inverse only known modulo the cutoff") {
    // z1 + z2^2 needs degree 2; cutoff 1 can only report a truncated answer
    Endo phi{2, Q, {z(1, 2) + z(2, 2) * z(2, 2), z(2, 2)}};
    auto rep = invert_truncated(phi, 1);
    CHECK(rep.status != InversionStatus::Exact);
    CHECK(rep.status != InversionStatus::NotInvertible);
}
