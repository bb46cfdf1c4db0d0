#include "doctest.h"
#include "freelin/commpoly.hpp"
#include "freelin/freepoly.hpp"

using namespace freelin;

namespace {
const QRing Q{};
FreePoly z(int i, int n = 2) { return FreePoly::gen(i, n, Q); }
}  // namespace

TEST_CASE("product concatenates words in order") {
    auto f = z(1) + z(2);
    auto g = f * z(1);
    CHECK(g == z(1) * z(1) + z(2) * z(1));
    CHECK(g.coeff(Word{1, 1}).is_one());
    CHECK(g.coeff(Word{2, 1}).is_one());
    CHECK((z(1) * z(2)) * (z(2) * z(1)) == FreePoly::monomial(Word{1, 2, 2, 1}, Scalar::one(Q), 2, Q));
}

TEST_CASE("unit and zero behave") {
    auto f = z(1) * z(2) - z(2) * z(1);
    CHECK(f * FreePoly::one(2, Q) == f);
    CHECK(FreePoly::one(2, Q) * f == f);
    CHECK(f - f == FreePoly::zero(2, Q));
    CHECK(FreePoly::zero(2, Q).degree() == std::nullopt);
}

TEST_CASE("substitute is a homomorphism and swaps generators") {
    std::vector<FreePoly> swap = {z(2), z(1)};
    CHECK(substitute(z(1) * z(2), swap) == z(2) * z(1));

    auto f = z(1) * z(1) + z(2);
    auto g = z(2) * z(1) - z(1);
    std::vector<FreePoly> images = {z(1) + z(2) * z(2), z(2) * z(1)};
    CHECK(substitute(f * g, images) == substitute(f, images) * substitute(g, images));
    CHECK(substitute(f + g, images) == substitute(f, images) + substitute(g, images));
}

TEST_CASE("degree and truncation") {
    auto f = z(1) * z(2) * z(1) + z(2) + FreePoly::one(2, Q);
    CHECK(f.degree() == 3);
    CHECK(f.truncated(1) == z(2) + FreePoly::one(2, Q));
    CHECK(f.component(3) == z(1) * z(2) * z(1));
}

TEST_CASE("prime field arithmetic is exact") {
    QRing f5{5};
    Scalar a = Scalar::from_int(3, f5);
    Scalar b = Scalar::from_int(4, f5);
    CHECK((a * b) == Scalar::from_int(2, f5));
    CHECK((a + b) == Scalar::from_int(2, f5));
    CHECK(a.inverse() == Scalar::from_int(2, f5));  // 3*2 = 6 = 1 mod 5
    CHECK((a / b) == a * b.inverse());
}

TEST_CASE("rational canonical strings") {
    CHECK(Scalar(Rat(6, 4), Q).str() == "3/2");
    CHECK(Scalar(Rat(-6, 4), Q).str() == "-3/2");
    CHECK(Scalar(Rat(8, 2), Q).str() == "4");
    CHECK(parse_rational("3/2") == Rat(3, 2));
    CHECK(parse_rational("-7") == Rat(-7));
}

TEST_CASE("abelianization merges reorderings") {
    auto f = z(1) * z(2) - z(2) * z(1);
    CHECK(abelianize(f).is_zero());
    auto g = z(1) * z(2) * z(1);
    CommPoly expect = CommPoly::monomial(Expt{2, 1}, Scalar::one(Q), 2);
    CHECK(abelianize(g) == expect);
}

TEST_CASE("comm_normalize sorts letters inside the free algebra") {
    auto f = z(2) * z(1);
    CHECK(comm_normalize(f) == z(1) * z(2));
    CHECK(comm_normalize(z(1) * z(2) - z(2) * z(1)).is_zero());
}

TEST_CASE("laurent coefficients shift and evaluate") {
    LRing lr{Q, 2};
    auto t1 = LaurentScalar::monomial(ExpVec{1, 0}, Scalar::one(Q), lr);
    auto t2inv = LaurentScalar::monomial(ExpVec{0, -1}, Scalar::one(Q), lr);
    auto prod = t1 * t2inv;
    CHECK(prod.coeff(ExpVec{1, -1}).is_one());
    std::vector<Scalar> pt = {Scalar::from_int(2, Q), Scalar::from_int(3, Q)};
    CHECK(prod.eval(pt) == Scalar(Rat(2, 3), Q));
    CHECK(prod.invert_parameters().coeff(ExpVec{-1, 1}).is_one());
    CHECK((t1 + t2inv).shift(ExpVec{0, 1}).coeff(ExpVec{1, 1}).is_one());
}

TEST_CASE("laurent embed places parameters at an offset") {
    LRing lr{Q, 1};
    auto t = LaurentScalar::monomial(ExpVec{2}, Scalar::from_int(5, Q), lr);
    auto e = t.embed(3, 1);
    CHECK(e.ring().r == 3);
    CHECK(e.coeff(ExpVec{0, 2, 0}) == Scalar::from_int(5, Q));
}
