#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>

#include "freelin/errors.hpp"

namespace freelin {

using Rat = boost::multiprecision::cpp_rational;
using Int = boost::multiprecision::cpp_int;

/// Descriptor of a scalar coefficient field: the rationals (p == 0) or the
/// prime field F_p (p > 0).
struct QRing {
    std::int64_t p = 0;

    bool operator==(const QRing&) const = default;
};

/// Exact scalar: an arbitrary-precision rational, or an element of F_p.
/// Values are always kept canonical (lowest terms / reduced mod p).
class Scalar {
public:
    Scalar() = default;
    Scalar(const Rat& value, QRing ring) : ring_(ring), v_(value) { normalize(); }

    static Scalar zero(QRing ring) { return Scalar(Rat(0), ring); }
    static Scalar one(QRing ring) { return Scalar(Rat(1), ring); }
    static Scalar from_int(std::int64_t k, QRing ring) { return Scalar(Rat(k), ring); }

    const QRing& ring() const { return ring_; }
    const Rat& value() const { return v_; }
    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }

    Scalar make_zero() const { return zero(ring_); }
    Scalar make_one() const { return one(ring_); }

    Scalar operator-() const;
    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar inverse() const;
    Scalar operator/(const Scalar& o) const { return *this * o.inverse(); }

    bool operator==(const Scalar& o) const { return ring_ == o.ring_ && v_ == o.v_; }
    bool operator!=(const Scalar& o) const { return !(*this == o); }
    bool operator<(const Scalar& o) const { return v_ < o.v_; }

    /// Canonical "p/q" string with q > 0 and gcd(p, q) = 1; plain integers
    /// print without the denominator.
    std::string str() const;

private:
    void normalize();
    void require_same(const Scalar& o) const;

    QRing ring_;
    Rat v_ = 0;
};

/// Parses a canonical rational string "p/q" or "p".
Rat parse_rational(const std::string& s);

}  // namespace freelin
