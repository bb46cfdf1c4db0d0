#pragma once

#include <vector>

#include "freelin/commpoly.hpp"
#include "freelin/endo.hpp"
#include "freelin/linalg.hpp"
#include "freelin/torus.hpp"

namespace freelin {

/// Endomorphism of the plane K[x1,x2] by its two coordinate images.
struct CommEndo {
    QRing ring{};
    std::vector<CommPoly> images;  // size 2, each over 2 variables

    static CommEndo identity(QRing ring) {
        return CommEndo{ring, {CommPoly::gen(1, 2, ring), CommPoly::gen(2, 2, ring)}};
    }
    bool is_identity() const { return *this == identity(ring); }
    bool operator==(const CommEndo& o) const { return ring == o.ring && images == o.images; }
};

/// f o g (f applied after g), matching the free-algebra convention.
CommEndo compose(const CommEndo& f, const CommEndo& g);

/// One tame factor of a plane automorphism.
struct TameFactor {
    enum class Kind { Affine, Elementary };
    Kind kind = Kind::Affine;
    // affine: x -> a x + b
    ScalarMat a;
    ScalarVec b;
    // elementary: x_i -> x_i + p(x_j), other variable fixed; p involves only x_j
    int i = 1;
    CommPoly p;
};

/// Factors stored first-applied-first: the source map is
/// factors[last] o ... o factors[0].
struct TameFactorization {
    QRing ring{};
    std::vector<TameFactor> factors;
};

class NotAnAutomorphism : public std::runtime_error {
public:
    explicit NotAnAutomorphism(const std::string& w) : std::runtime_error(w) {}
};

CommEndo factor_endo(const TameFactor& f, QRing ring);
CommEndo recompose(const TameFactorization& fact);

/// Componentwise abelianization F_2 -> K[x1,x2]; a group homomorphism on
/// automorphisms.
CommEndo abelianize_aut(const Endo& phi);

/// Jung-van der Kulk degree reduction: strips elementary factors (leading
/// form of the higher-degree image proportional to a power of the other's)
/// down to an invertible affine map. Throws NotAnAutomorphism when the
/// reduction stalls or the affine remainder is singular.
TameFactorization jvdk_decompose(const CommEndo& phi);

/// The lifting map: each factor is lifted verbatim to F_2 (affine to affine,
/// p(x_j) to the same polynomial in z_j) and composed in the same order.
Endo lift(const TameFactorization& fact);

/// Linearization of K^x actions on F_2: abelianize, linearize the plane
/// action by zero-weight averaging, decompose and lift the commutative
/// conjugator, then check that it linearizes the free action exactly.
LinearizationReport linearize_kstar_f2(const ActionSpec& spec);

}  // namespace freelin
