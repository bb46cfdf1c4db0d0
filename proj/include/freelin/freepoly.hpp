#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

#include "freelin/laurent.hpp"
#include "freelin/scalar.hpp"

namespace freelin {

/// Monomial of the free algebra: a finite sequence of 1-based generator
/// indices. The empty word is the unit monomial.
using Word = std::vector<int>;

/// Length-lexicographic order on words (shorter first, then lex).
struct LenLex {
    bool operator()(const Word& a, const Word& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    }
};

namespace detail {
template <class C>
struct ring_of;
template <>
struct ring_of<Scalar> {
    using type = QRing;
};
template <>
struct ring_of<LaurentScalar> {
    using type = LRing;
};
template <class C>
typename ring_of<C>::type coeff_ring(const C& c) {
    return c.ring();
}
template <class C>
C coeff_zero(typename ring_of<C>::type ring) {
    return C::zero(ring);
}
template <class C>
C coeff_one(typename ring_of<C>::type ring) {
    return C::one(ring);
}
}  // namespace detail

/// Element of the free associative algebra over n noncommuting generators
/// with coefficients in C (Scalar or LaurentScalar). Term tables are sorted
/// length-lexicographically and never store zero coefficients.
template <class C>
class FreePolyT {
public:
    using Ring = typename detail::ring_of<C>::type;
    using Terms = std::map<Word, C, LenLex>;

    FreePolyT() = default;
    FreePolyT(int n, Ring ring) : n_(n), ring_(ring) {}

    static FreePolyT zero(int n, Ring ring) { return FreePolyT(n, ring); }
    static FreePolyT one(int n, Ring ring) {
        return monomial(Word{}, detail::coeff_one<C>(ring), n, ring);
    }
    static FreePolyT constant(const C& c, int n) {
        return monomial(Word{}, c, n, detail::coeff_ring(c));
    }
    /// The generator z_i (1-based).
    static FreePolyT gen(int i, int n, Ring ring) {
        return monomial(Word{i}, detail::coeff_one<C>(ring), n, ring);
    }
    static FreePolyT monomial(const Word& w, const C& c, int n, Ring ring) {
        FreePolyT out(n, ring);
        out.add_term(w, c);
        return out;
    }

    int n() const { return n_; }
    const Ring& ring() const { return ring_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// Degree as max word length; nullopt is the distinguished marker for
    /// the zero polynomial.
    std::optional<int> degree() const {
        if (terms_.empty()) return std::nullopt;
        return static_cast<int>(terms_.rbegin()->first.size());
    }
    int degree_or(int dflt) const { return degree().value_or(dflt); }

    void add_term(const Word& w, const C& c) {
        if (c.is_zero()) return;
        for (int letter : w)
            if (letter < 1 || letter > n_) throw InvalidInput("word letter out of range");
        auto it = terms_.find(w);
        if (it == terms_.end()) {
            check_term_budget(terms_.size() + 1);
            terms_.emplace(w, c);
        } else {
            it->second = it->second + c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    C coeff(const Word& w) const {
        auto it = terms_.find(w);
        return it == terms_.end() ? detail::coeff_zero<C>(ring_) : it->second;
    }

    FreePolyT operator-() const {
        FreePolyT out(n_, ring_);
        for (const auto& [w, c] : terms_) out.terms_.emplace(w, -c);
        return out;
    }

    FreePolyT operator+(const FreePolyT& o) const {
        require_same(o);
        FreePolyT out = *this;
        for (const auto& [w, c] : o.terms_) out.add_term(w, c);
        return out;
    }
    FreePolyT operator-(const FreePolyT& o) const { return *this + (-o); }

    /// Noncommutative product: word concatenation extended bilinearly.
    FreePolyT operator*(const FreePolyT& o) const {
        require_same(o);
        FreePolyT out(n_, ring_);
        for (const auto& [w1, c1] : terms_) {
            for (const auto& [w2, c2] : o.terms_) {
                Word w = w1;
                w.insert(w.end(), w2.begin(), w2.end());
                out.add_term(w, c1 * c2);
            }
        }
        return out;
    }

    FreePolyT scaled(const C& c) const {
        FreePolyT out(n_, ring_);
        for (const auto& [w, k] : terms_) out.add_term(w, k * c);
        return out;
    }

    bool operator==(const FreePolyT& o) const {
        return n_ == o.n_ && ring_ == o.ring_ && terms_ == o.terms_;
    }
    bool operator!=(const FreePolyT& o) const { return !(*this == o); }

    /// Drops every term of word length > cutoff.
    FreePolyT truncated(int cutoff) const {
        FreePolyT out(n_, ring_);
        for (const auto& [w, c] : terms_) {
            if (static_cast<int>(w.size()) > cutoff) break;  // len-lex order
            out.terms_.emplace(w, c);
        }
        return out;
    }

    /// Homogeneous component of word length d.
    FreePolyT component(int d) const {
        FreePolyT out(n_, ring_);
        for (const auto& [w, c] : terms_)
            if (static_cast<int>(w.size()) == d) out.terms_.emplace(w, c);
        return out;
    }

    std::string str(const char* letter = "z") const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [w, c] : terms_) {
            if (!first) os << " + ";
            first = false;
            os << "(" << c.str() << ")";
            // adjacent equal letters print as powers; storage stays expanded
            for (std::size_t i = 0; i < w.size();) {
                std::size_t j = i;
                while (j < w.size() && w[j] == w[i]) ++j;
                os << "*" << letter << w[i];
                if (j - i > 1) os << "^" << (j - i);
                i = j;
            }
        }
        return os.str();
    }

private:
    void require_same(const FreePolyT& o) const {
        if (n_ != o.n_ || !(ring_ == o.ring_))
            throw InvalidInput("free polynomial ring mismatch");
    }

    int n_ = 0;
    Ring ring_{};
    Terms terms_;
};

using FreePoly = FreePolyT<Scalar>;
using LFreePoly = FreePolyT<LaurentScalar>;

/// Replaces each letter i of every word of f by images[i-1]; a ring
/// homomorphism for any choice of images.
template <class C>
FreePolyT<C> substitute(const FreePolyT<C>& f, const std::vector<FreePolyT<C>>& images) {
    if (static_cast<int>(images.size()) != f.n())
        throw InvalidInput("substitute: expected " + std::to_string(f.n()) + " images");
    int out_n = f.n();
    typename FreePolyT<C>::Ring out_ring = f.ring();
    if (!images.empty()) {
        out_n = images[0].n();
        out_ring = images[0].ring();
        for (const auto& g : images)
            if (g.n() != out_n || !(g.ring() == out_ring))
                throw InvalidInput("substitute: inconsistent image rings");
        if (!(out_ring == f.ring())) throw InvalidInput("substitute: coefficient ring mismatch");
    }
    FreePolyT<C> out(out_n, out_ring);
    for (const auto& [w, c] : f.terms()) {
        FreePolyT<C> prod = FreePolyT<C>::constant(c, out_n);
        for (int letter : w) prod = prod * images[letter - 1];
        out = out + prod;
    }
    return out;
}

/// Lifts a scalar-coefficient free polynomial into the Laurent ring.
inline LFreePoly lift_to_laurent(const FreePoly& f, LRing ring) {
    if (!(f.ring() == ring.base)) throw InvalidInput("lift: base ring mismatch");
    LFreePoly out(f.n(), ring);
    for (const auto& [w, c] : f.terms()) out.add_term(w, LaurentScalar::constant(c, ring));
    return out;
}

/// Evaluates every Laurent coefficient at the given parameter point.
inline FreePoly eval_parameters(const LFreePoly& f, const std::vector<Scalar>& point) {
    FreePoly out(f.n(), f.ring().base);
    for (const auto& [w, c] : f.terms()) out.add_term(w, c.eval(point));
    return out;
}

/// Sorts the letters of every word (the image under the projection onto the
/// commutative quotient, represented inside the free algebra).
template <class C>
FreePolyT<C> comm_normalize(const FreePolyT<C>& f) {
    FreePolyT<C> out(f.n(), f.ring());
    for (const auto& [w, c] : f.terms()) {
        Word s = w;
        std::sort(s.begin(), s.end());
        out.add_term(s, c);
    }
    return out;
}

}  // namespace freelin
