#pragma once

#include <map>
#include <sstream>
#include <vector>

#include "freelin/freepoly.hpp"
#include "freelin/scalar.hpp"

namespace freelin {

/// Monomial exponent vector in N^n.
using Expt = std::vector<std::int64_t>;

/// Commutative polynomial in n variables over an exact scalar field.
/// Term tables are sorted lexicographically on exponent vectors.
class CommPoly {
public:
    CommPoly() = default;
    CommPoly(int n, QRing ring) : n_(n), ring_(ring) {}

    static CommPoly zero(int n, QRing ring) { return CommPoly(n, ring); }
    static CommPoly one(int n, QRing ring) {
        return monomial(Expt(n, 0), Scalar::one(ring), n);
    }
    static CommPoly constant(const Scalar& c, int n) {
        return monomial(Expt(n, 0), c, n);
    }
    static CommPoly gen(int i, int n, QRing ring) {
        Expt e(n, 0);
        e[i - 1] = 1;
        return monomial(e, Scalar::one(ring), n);
    }
    static CommPoly monomial(const Expt& e, const Scalar& c, int n) {
        CommPoly out(n, c.ring());
        out.add_term(e, c);
        return out;
    }

    int n() const { return n_; }
    const QRing& ring() const { return ring_; }
    const std::map<Expt, Scalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    std::optional<std::int64_t> degree() const {
        if (terms_.empty()) return std::nullopt;
        std::int64_t best = 0;
        for (const auto& [e, c] : terms_) {
            std::int64_t d = 0;
            for (auto k : e) d += k;
            best = std::max(best, d);
        }
        return best;
    }

    void add_term(const Expt& e, const Scalar& c) {
        if (c.is_zero()) return;
        if (static_cast<int>(e.size()) != n_) throw InvalidInput("exponent vector length != n");
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            check_term_budget(terms_.size() + 1);
            terms_.emplace(e, c);
        } else {
            it->second = it->second + c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    Scalar coeff(const Expt& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Scalar::zero(ring_) : it->second;
    }

    CommPoly operator-() const {
        CommPoly out(n_, ring_);
        for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
        return out;
    }
    CommPoly operator+(const CommPoly& o) const {
        require_same(o);
        CommPoly out = *this;
        for (const auto& [e, c] : o.terms_) out.add_term(e, c);
        return out;
    }
    CommPoly operator-(const CommPoly& o) const { return *this + (-o); }
    CommPoly operator*(const CommPoly& o) const {
        require_same(o);
        CommPoly out(n_, ring_);
        for (const auto& [e1, c1] : terms_) {
            for (const auto& [e2, c2] : o.terms_) {
                Expt e(n_);
                for (int i = 0; i < n_; ++i) e[i] = e1[i] + e2[i];
                out.add_term(e, c1 * c2);
            }
        }
        return out;
    }
    CommPoly scaled(const Scalar& c) const {
        CommPoly out(n_, ring_);
        for (const auto& [e, k] : terms_) out.add_term(e, k * c);
        return out;
    }
    CommPoly pow(std::int64_t k) const {
        CommPoly acc = one(n_, ring_);
        for (std::int64_t i = 0; i < k; ++i) acc = acc * *this;
        return acc;
    }

    bool operator==(const CommPoly& o) const {
        return n_ == o.n_ && ring_ == o.ring_ && terms_ == o.terms_;
    }
    bool operator!=(const CommPoly& o) const { return !(*this == o); }

    /// Top-degree homogeneous part.
    CommPoly leading_form() const {
        CommPoly out(n_, ring_);
        auto d = degree();
        if (!d) return out;
        for (const auto& [e, c] : terms_) {
            std::int64_t s = 0;
            for (auto k : e) s += k;
            if (s == *d) out.terms_.emplace(e, c);
        }
        return out;
    }

    std::string str(const char* letter = "x") const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            if (!first) os << " + ";
            first = false;
            os << "(" << c.str() << ")";
            for (int i = 0; i < n_; ++i)
                if (e[i] != 0) os << "*" << letter << (i + 1) << "^" << e[i];
        }
        return os.str();
    }

private:
    void require_same(const CommPoly& o) const {
        if (n_ != o.n_ || !(ring_ == o.ring_)) throw InvalidInput("CommPoly ring mismatch");
    }

    int n_ = 0;
    QRing ring_;
    std::map<Expt, Scalar> terms_;
};

/// Commutative substitution x_i -> images[i-1]; a ring homomorphism.
CommPoly substitute(const CommPoly& f, const std::vector<CommPoly>& images);

/// Projection onto the commutative quotient: each word maps to its exponent
/// vector.
CommPoly abelianize(const FreePoly& f);

}  // namespace freelin
