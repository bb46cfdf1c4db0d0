#pragma once

#include <map>
#include <vector>

#include "freelin/scalar.hpp"

namespace freelin {

/// Exponent vector in Z^r (Laurent monomial t_1^{e_1}...t_r^{e_r}).
using ExpVec = std::vector<std::int64_t>;

/// Descriptor of the Laurent coefficient ring K[t_1^{±1},...,t_r^{±1}]
/// with K given by `base`.
struct LRing {
    QRing base;
    int r = 1;

    bool operator==(const LRing&) const = default;
};

/// Scalar-coefficient Laurent polynomial in r torus parameters. Stored as a
/// sorted association from exponent vectors to nonzero scalars.
class LaurentScalar {
public:
    LaurentScalar() = default;
    explicit LaurentScalar(LRing ring) : ring_(ring) {}

    static LaurentScalar zero(LRing ring) { return LaurentScalar(ring); }
    static LaurentScalar one(LRing ring) {
        return monomial(ExpVec(ring.r, 0), Scalar::one(ring.base), ring);
    }
    static LaurentScalar constant(const Scalar& c, LRing ring);
    static LaurentScalar monomial(const ExpVec& e, const Scalar& c, LRing ring);

    const LRing& ring() const { return ring_; }
    const std::map<ExpVec, Scalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_one() const;
    /// True iff exactly one stored term (a single Laurent monomial).
    bool is_monomial() const { return terms_.size() == 1; }

    LaurentScalar make_zero() const { return zero(ring_); }
    LaurentScalar make_one() const { return one(ring_); }

    void add_term(const ExpVec& e, const Scalar& c);

    LaurentScalar operator-() const;
    LaurentScalar operator+(const LaurentScalar& o) const;
    LaurentScalar operator-(const LaurentScalar& o) const;
    LaurentScalar operator*(const LaurentScalar& o) const;
    bool operator==(const LaurentScalar& o) const {
        return ring_ == o.ring_ && terms_ == o.terms_;
    }
    bool operator!=(const LaurentScalar& o) const { return !(*this == o); }

    /// t_i -> point[i] (all nonzero), exact.
    Scalar eval(const std::vector<Scalar>& point) const;

    /// Coefficient at a given exponent vector (zero scalar if absent).
    Scalar coeff(const ExpVec& e) const;

    /// Multiplies by the character t^e (shifts every exponent vector).
    LaurentScalar shift(const ExpVec& e) const;

    /// Negates every exponent vector (t -> t^{-1}).
    LaurentScalar invert_parameters() const;

    /// Re-embeds into a ring with `new_r` parameters, placing the existing
    /// exponents at `offset`. Requires offset + r <= new_r.
    LaurentScalar embed(int new_r, int offset) const;

    std::string str() const;

private:
    LRing ring_;
    std::map<ExpVec, Scalar> terms_;
};

}  // namespace freelin
