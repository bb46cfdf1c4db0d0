#include "freelin/laurent.hpp"

#include <sstream>

namespace freelin {

LaurentScalar LaurentScalar::constant(const Scalar& c, LRing ring) {
    return monomial(ExpVec(ring.r, 0), c, ring);
}

LaurentScalar LaurentScalar::monomial(const ExpVec& e, const Scalar& c, LRing ring) {
    if (static_cast<int>(e.size()) != ring.r) throw InvalidInput("exponent vector length != r");
    LaurentScalar out(ring);
    out.add_term(e, c);
    return out;
}

bool LaurentScalar::is_one() const {
    if (terms_.size() != 1) return false;
    const auto& [e, c] = *terms_.begin();
    return c.is_one() && e == ExpVec(ring_.r, 0);
}

void LaurentScalar::add_term(const ExpVec& e, const Scalar& c) {
    if (static_cast<int>(e.size()) != ring_.r) throw InvalidInput("exponent vector length != r");
    if (c.is_zero()) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        it->second = it->second + c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

LaurentScalar LaurentScalar::operator-() const {
    LaurentScalar out(ring_);
    for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
    return out;
}

LaurentScalar LaurentScalar::operator+(const LaurentScalar& o) const {
    if (!(ring_ == o.ring_)) throw InvalidInput("Laurent ring mismatch");
    LaurentScalar out = *this;
    for (const auto& [e, c] : o.terms_) out.add_term(e, c);
    return out;
}

LaurentScalar LaurentScalar::operator-(const LaurentScalar& o) const { return *this + (-o); }

LaurentScalar LaurentScalar::operator*(const LaurentScalar& o) const {
    if (!(ring_ == o.ring_)) throw InvalidInput("Laurent ring mismatch");
    LaurentScalar out(ring_);
    for (const auto& [e1, c1] : terms_) {
        for (const auto& [e2, c2] : o.terms_) {
            ExpVec e(ring_.r);
            for (int i = 0; i < ring_.r; ++i) e[i] = e1[i] + e2[i];
            out.add_term(e, c1 * c2);
        }
    }
    return out;
}

Scalar LaurentScalar::eval(const std::vector<Scalar>& point) const {
    if (static_cast<int>(point.size()) != ring_.r) throw InvalidInput("point length != r");
    for (const auto& p : point)
        if (p.is_zero()) throw InvalidInput("Laurent evaluation at zero");
    Scalar acc = Scalar::zero(ring_.base);
    for (const auto& [e, c] : terms_) {
        Scalar m = c;
        for (int i = 0; i < ring_.r; ++i) {
            Scalar base = e[i] >= 0 ? point[i] : point[i].inverse();
            for (std::int64_t k = 0; k < std::abs(e[i]); ++k) m = m * base;
        }
        acc = acc + m;
    }
    return acc;
}

Scalar LaurentScalar::coeff(const ExpVec& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Scalar::zero(ring_.base) : it->second;
}

LaurentScalar LaurentScalar::shift(const ExpVec& e) const {
    LaurentScalar out(ring_);
    for (const auto& [e1, c] : terms_) {
        ExpVec e2(ring_.r);
        for (int i = 0; i < ring_.r; ++i) e2[i] = e1[i] + e[i];
        out.terms_.emplace(e2, c);
    }
    return out;
}

LaurentScalar LaurentScalar::invert_parameters() const {
    LaurentScalar out(ring_);
    for (const auto& [e, c] : terms_) {
        ExpVec e2(ring_.r);
        for (int i = 0; i < ring_.r; ++i) e2[i] = -e[i];
        out.terms_.emplace(e2, c);
    }
    return out;
}

LaurentScalar LaurentScalar::embed(int new_r, int offset) const {
    if (offset < 0 || offset + ring_.r > new_r) throw InvalidInput("bad Laurent embedding");
    LaurentScalar out(LRing{ring_.base, new_r});
    for (const auto& [e, c] : terms_) {
        ExpVec e2(new_r, 0);
        for (int i = 0; i < ring_.r; ++i) e2[offset + i] = e[i];
        out.terms_.emplace(e2, c);
    }
    return out;
}

std::string LaurentScalar::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << c.str();
        for (int i = 0; i < ring_.r; ++i)
            if (e[i] != 0) os << "*t" << (i + 1) << "^" << e[i];
    }
    return os.str();
}

}  // namespace freelin
