#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "freelin/freepoly.hpp"
#include "freelin/linalg.hpp"

namespace freelin {

/// Endomorphism of the free algebra given by its generator images.
///
/// Composition convention (fixed throughout): compose(phi, psi) is the map
/// z_i -> phi(psi(z_i)), realized by substituting phi's images into the
/// letters of psi's polynomials. Both conventions appear in the literature;
/// this one matches the expansion sigma(t^2)(z) = sigma(t)(sigma(t)(z)).
template <class C>
struct EndoT {
    int n = 0;
    typename FreePolyT<C>::Ring ring{};
    std::vector<FreePolyT<C>> images;

    static EndoT identity(int n, typename FreePolyT<C>::Ring ring) {
        EndoT e{n, ring, {}};
        for (int i = 1; i <= n; ++i) e.images.push_back(FreePolyT<C>::gen(i, n, ring));
        return e;
    }

    FreePolyT<C> apply(const FreePolyT<C>& f) const { return substitute(f, images); }

    int degree() const {
        int d = 0;
        for (const auto& g : images) d = std::max(d, g.degree_or(0));
        return d;
    }

    bool is_identity() const {
        for (int i = 1; i <= n; ++i)
            if (images[i - 1] != FreePolyT<C>::gen(i, n, ring)) return false;
        return true;
    }

    bool operator==(const EndoT& o) const {
        return n == o.n && ring == o.ring && images == o.images;
    }
};

using Endo = EndoT<Scalar>;
using LEndo = EndoT<LaurentScalar>;

template <class C>
EndoT<C> compose(const EndoT<C>& phi, const EndoT<C>& psi) {
    if (phi.n != psi.n || !(phi.ring == psi.ring))
        throw InvalidInput("compose: endomorphism ring mismatch");
    EndoT<C> out{phi.n, phi.ring, {}};
    for (const auto& g : psi.images) out.images.push_back(substitute(g, phi.images));
    return out;
}

/// Lifts a scalar endomorphism into the Laurent coefficient ring.
LEndo lift_to_laurent(const Endo& phi, LRing ring);

/// Degree-1 coefficient matrix of the images (entry [i][j] = coefficient of
/// z_j in images[i]).
ScalarMat linear_part(const Endo& phi);

/// Constant (degree-0) coefficients of the images.
ScalarVec constant_part(const Endo& phi);

enum class InversionStatus { Exact, TruncatedAt, NotInvertible, Inconclusive };

std::string to_string(InversionStatus s);

struct InversionReport {
    InversionStatus status = InversionStatus::Inconclusive;
    std::optional<Endo> inverse;
    int cutoff = 0;
};

/// Degree-by-degree truncated inversion. The inverse power series of a map
/// with invertible linear part is unique, so each homogeneous component is
/// determined directly; no linear-system search is needed.
///   - singular linear part -> NotInvertible (at every cutoff);
///   - residual exactly zero -> Exact;
///   - candidate consistent only modulo the cutoff -> Inconclusive.
InversionReport invert_truncated(const Endo& phi, int cutoff);

/// Escalation policy: tries the aggressive cutoff 2*deg first, then the
/// commutative Bass-Connell-Wright bound deg^(n-1), then max_cutoff.
InversionReport invert_auto(const Endo& phi, int max_cutoff = 0);

/// Deterministic pseudorandom tame automorphism: a composition of invertible
/// affine maps and elementary maps z_i -> z_i + p(other generators).
Endo random_tame(int n, int factors, int max_deg, std::uint64_t seed, QRing ring = {});

}  // namespace freelin
