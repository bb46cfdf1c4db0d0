#include "freelin/scalar.hpp"

#include <cstdlib>

namespace freelin {

std::size_t max_terms() {
    static const std::size_t cap = [] {
        if (const char* env = std::getenv("FREELIN_MAX_TERMS")) {
            const long long v = std::atoll(env);
            if (v > 0) return static_cast<std::size_t>(v);
        }
        return static_cast<std::size_t>(1000000);
    }();
    return cap;
}

void check_term_budget(std::size_t count) {
    if (count > max_terms()) {
        throw LimitExceeded("term table exceeds FREELIN_MAX_TERMS (" +
                            std::to_string(max_terms()) + ")");
    }
}

void Scalar::normalize() {
    if (ring_.p == 0) return;  // cpp_rational is always reduced
    if (boost::multiprecision::denominator(v_) != 1) {
        // reduce a/b mod p as a * b^{-1}
        Scalar num(Rat(boost::multiprecision::numerator(v_)), ring_);
        Scalar den(Rat(boost::multiprecision::denominator(v_)), ring_);
        v_ = (num * den.inverse()).v_;
        return;
    }
    Int n = boost::multiprecision::numerator(v_) % ring_.p;
    if (n < 0) n += ring_.p;
    v_ = Rat(n);
}

void Scalar::require_same(const Scalar& o) const {
    if (!(ring_ == o.ring_)) throw InvalidInput("scalar ring mismatch");
}

Scalar Scalar::operator-() const { return Scalar(-v_, ring_); }

Scalar Scalar::operator+(const Scalar& o) const {
    require_same(o);
    return Scalar(v_ + o.v_, ring_);
}

Scalar Scalar::operator-(const Scalar& o) const {
    require_same(o);
    return Scalar(v_ - o.v_, ring_);
}

Scalar Scalar::operator*(const Scalar& o) const {
    require_same(o);
    return Scalar(v_ * o.v_, ring_);
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw InvalidInput("division by zero scalar");
    if (ring_.p == 0) return Scalar(Rat(1) / v_, ring_);
    // extended Euclid mod p
    Int a = boost::multiprecision::numerator(v_), p = ring_.p;
    Int t = 0, newt = 1, r = p, newr = a;
    while (newr != 0) {
        Int q = r / newr;
        Int tmp = t - q * newt;
        t = newt;
        newt = tmp;
        tmp = r - q * newr;
        r = newr;
        newr = tmp;
    }
    if (r != 1) throw InvalidInput("non-invertible element mod p (p not prime?)");
    if (t < 0) t += p;
    return Scalar(Rat(t), ring_);
}

std::string Scalar::str() const {
    const Int& num = boost::multiprecision::numerator(v_);
    const Int& den = boost::multiprecision::denominator(v_);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

Rat parse_rational(const std::string& s) {
    const auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den <= 0) throw InvalidInput("rational string must have positive denominator: " + s);
        return Rat(num, den);
    } catch (const std::runtime_error& e) {
        throw InvalidInput("bad rational string: " + s);
    }
}

}  // namespace freelin
