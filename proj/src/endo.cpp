#include "freelin/endo.hpp"

#include <random>

namespace freelin {

LEndo lift_to_laurent(const Endo& phi, LRing ring) {
    LEndo out{phi.n, ring, {}};
    for (const auto& g : phi.images) out.images.push_back(lift_to_laurent(g, ring));
    return out;
}

ScalarMat linear_part(const Endo& phi) {
    ScalarMat a(phi.n, ScalarVec(phi.n, Scalar::zero(phi.ring)));
    for (int i = 0; i < phi.n; ++i)
        for (int j = 0; j < phi.n; ++j) a[i][j] = phi.images[i].coeff(Word{j + 1});
    return a;
}

ScalarVec constant_part(const Endo& phi) {
    ScalarVec c(phi.n, Scalar::zero(phi.ring));
    for (int i = 0; i < phi.n; ++i) c[i] = phi.images[i].coeff(Word{});
    return c;
}

std::string to_string(InversionStatus s) {
    switch (s) {
        case InversionStatus::Exact: return "Exact";
        case InversionStatus::TruncatedAt: return "TruncatedAt";
        case InversionStatus::NotInvertible: return "NotInvertible";
        case InversionStatus::Inconclusive: return "Inconclusive";
    }
    return "?";
}

namespace {

/// Translation z_i -> z_i + c_i.
Endo translation(const ScalarVec& c, int n, QRing ring) {
    Endo t = Endo::identity(n, ring);
    for (int i = 0; i < n; ++i) t.images[i].add_term(Word{}, c[i]);
    return t;
}

Endo linear_endo(const ScalarMat& a, QRing ring) {
    const int n = static_cast<int>(a.size());
    Endo e{n, ring, {}};
    for (int i = 0; i < n; ++i) {
        FreePoly g(n, ring);
        for (int j = 0; j < n; ++j) g.add_term(Word{j + 1}, a[i][j]);
        e.images.push_back(g);
    }
    return e;
}

/// Inverts an endomorphism with zero constant terms.
InversionReport invert_origin_fixed(const Endo& phi, int cutoff) {
    const int n = phi.n;
    const QRing ring = phi.ring;
    const auto ainv = mat_inverse(linear_part(phi));
    if (!ainv) return {InversionStatus::NotInvertible, std::nullopt, cutoff};
    const Endo lin_inv = linear_endo(*ainv, ring);

    Endo psi = lin_inv;
    for (int d = 2; d <= cutoff; ++d) {
        // discrepancy at degree d fixes the next homogeneous component:
        // psi_d must satisfy psi_d(A z) = -[psi_{<d}(phi)]_d
        Endo err = compose(phi, psi);
        bool flat = true;
        for (int i = 0; i < n; ++i) {
            FreePoly e = -err.images[i].component(d);
            if (e.is_zero()) continue;
            flat = false;
            psi.images[i] = psi.images[i] + substitute(e, lin_inv.images);
        }
        if (flat) break;
    }

    const Endo id = Endo::identity(n, ring);
    if (compose(phi, psi) == id && compose(psi, phi) == id)
        return {InversionStatus::Exact, psi, cutoff};
    return {InversionStatus::Inconclusive, psi, cutoff};
}

}  // namespace

InversionReport invert_truncated(const Endo& phi, int cutoff) {
    if (cutoff < 1) throw InvalidInput("invert_truncated: cutoff must be >= 1");
    if (static_cast<int>(phi.images.size()) != phi.n)
        throw InvalidInput("invert_truncated: malformed endomorphism");
    const ScalarVec c = constant_part(phi);
    bool shifted = false;
    for (const auto& v : c)
        if (!v.is_zero()) shifted = true;
    if (!shifted) return invert_origin_fixed(phi, cutoff);

    // phi = phi' o T_c with phi' = phi o T_{-c} having zero constant terms,
    // hence phi^{-1} = T_{-c} o phi'^{-1}.
    ScalarVec neg(c.size(), Scalar::zero(phi.ring));
    for (std::size_t i = 0; i < c.size(); ++i) neg[i] = -c[i];
    const Endo shift_back = translation(neg, phi.n, phi.ring);
    const Endo centered = compose(phi, shift_back);
    InversionReport rep = invert_origin_fixed(centered, cutoff);
    if (rep.inverse) {
        Endo inv = compose(shift_back, *rep.inverse);
        const Endo id = Endo::identity(phi.n, phi.ring);
        rep.inverse = inv;
        if (rep.status == InversionStatus::Exact &&
            !(compose(phi, inv) == id && compose(inv, phi) == id))
            rep.status = InversionStatus::Inconclusive;
    }
    return rep;
}

InversionReport invert_auto(const Endo& phi, int max_cutoff) {
    const int d = std::max(1, phi.degree());
    std::int64_t bcw = 1;
    for (int i = 0; i < phi.n - 1; ++i) bcw = std::min<std::int64_t>(bcw * d, 1 << 20);
    std::vector<int> cutoffs{2 * d, static_cast<int>(bcw)};
    if (max_cutoff > 0) cutoffs.push_back(max_cutoff);
    InversionReport rep;
    int tried = 0;
    for (int c : cutoffs) {
        if (c <= tried) continue;
        tried = c;
        rep = invert_truncated(phi, c);
        if (rep.status != InversionStatus::Inconclusive) return rep;
    }
    return rep;
}

Endo random_tame(int n, int factors, int max_deg, std::uint64_t seed, QRing ring) {
    if (n < 1 || factors < 1) throw InvalidInput("random_tame: n and factors must be >= 1");
    std::mt19937_64 rng(seed);
    auto small = [&](int lo, int hi) {
        return static_cast<int>(lo + rng() % static_cast<std::uint64_t>(hi - lo + 1));
    };
    auto nonzero_coeff = [&] {
        int c = small(-2, 2);
        if (c == 0) c = 1;
        return Scalar::from_int(c, ring);
    };

    Endo acc = Endo::identity(n, ring);
    for (int f = 0; f < factors; ++f) {
        Endo factor = Endo::identity(n, ring);
        if (n >= 2 && small(0, 2) != 0) {
            // elementary: z_i -> z_i + p(other generators)
            const int i = small(1, n);
            FreePoly p(n, ring);
            const int terms = small(1, 2);
            for (int t = 0; t < terms; ++t) {
                const int len = std::max(1, small(1, std::max(1, max_deg)));
                Word w;
                for (int k = 0; k < len; ++k) {
                    int letter = small(1, n - 1);
                    if (letter >= i) ++letter;  // avoid z_i itself
                    w.push_back(letter);
                }
                p.add_term(w, nonzero_coeff());
            }
            factor.images[i - 1] = factor.images[i - 1] + p;
        } else {
            // invertible affine: identity plus random shears and a translation
            ScalarMat a = identity_matrix(n, ring);
            const int ops = small(1, 3);
            for (int k = 0; k < ops && n >= 2; ++k) {
                int i = small(0, n - 1), j = small(0, n - 1);
                if (i == j) continue;
                const Scalar c = nonzero_coeff();
                for (int col = 0; col < n; ++col) a[i][col] = a[i][col] + c * a[j][col];
            }
            for (int i = 0; i < n; ++i) {
                FreePoly g(n, ring);
                for (int j = 0; j < n; ++j) g.add_term(Word{j + 1}, a[i][j]);
                if (small(0, 3) == 0) g.add_term(Word{}, Scalar::from_int(small(-1, 1), ring));
                factor.images[i] = g;
            }
        }
        acc = compose(acc, factor);
    }
    return acc;
}

}  // namespace freelin
