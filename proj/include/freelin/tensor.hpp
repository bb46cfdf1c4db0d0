#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "freelin/endo.hpp"
#include "freelin/freepoly.hpp"
#include "freelin/linalg.hpp"

namespace freelin {

/// Element of F_n (x) F_n: a finite sum of scalar-weighted word pairs u(x)v.
/// Carries the enveloping-algebra product (a(x)b)(c(x)d) = ac (x) db — note
/// the reversed right factor.
class TensorPoly {
public:
    struct PairLenLex {
        bool operator()(const std::pair<Word, Word>& a, const std::pair<Word, Word>& b) const {
            LenLex lt;
            if (a.first != b.first) return lt(a.first, b.first);
            return lt(a.second, b.second);
        }
    };
    using Terms = std::map<std::pair<Word, Word>, Scalar, PairLenLex>;

    TensorPoly() = default;
    TensorPoly(int n, QRing ring) : n_(n), ring_(ring) {}

    static TensorPoly zero(int n, QRing ring) { return TensorPoly(n, ring); }
    /// The unit 1 (x) 1.
    static TensorPoly one(int n, QRing ring) {
        return simple(Word{}, Word{}, Scalar::one(ring), n);
    }
    static TensorPoly simple(const Word& u, const Word& v, const Scalar& c, int n) {
        TensorPoly out(n, c.ring());
        out.add_term(u, v, c);
        return out;
    }

    int n() const { return n_; }
    const QRing& ring() const { return ring_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// Tensor degree |u| + |v|, maximized over terms; nullopt for zero.
    std::optional<int> degree() const;

    void add_term(const Word& u, const Word& v, const Scalar& c);
    Scalar coeff(const Word& u, const Word& v) const;

    TensorPoly operator-() const;
    TensorPoly operator+(const TensorPoly& o) const;
    TensorPoly operator-(const TensorPoly& o) const;
    /// Enveloping product, bilinear over (a(x)b)(c(x)d) = ac (x) db.
    TensorPoly operator*(const TensorPoly& o) const;
    TensorPoly scaled(const Scalar& c) const;

    /// Terms of tensor degree exactly d.
    TensorPoly component(int d) const;

    bool operator==(const TensorPoly& o) const {
        return n_ == o.n_ && ring_ == o.ring_ && terms_ == o.terms_;
    }
    bool operator!=(const TensorPoly& o) const { return !(*this == o); }

    std::string str(const char* letter = "z") const;

private:
    int n_ = 0;
    QRing ring_{};
    Terms terms_;
};

inline TensorPoly envelope_mul(const TensorPoly& a, const TensorPoly& b) { return a * b; }

/// Applies a substitution to both tensor legs: u (x) v -> f(u) (x) f(v),
/// expanded bilinearly.
TensorPoly tensor_substitute(const TensorPoly& t, const std::vector<FreePoly>& images);

/// Free partial derivative valued in F_n (x) F_n: every occurrence of letter
/// i in a word contributes prefix (x) suffix.
TensorPoly partial(const FreePoly& f, int i);

struct JacobianMatrix {
    int n = 0;
    QRing ring{};
    std::vector<std::vector<TensorPoly>> entries;

    static JacobianMatrix identity(int n, QRing ring);
    bool operator==(const JacobianMatrix& o) const {
        return n == o.n && ring == o.ring && entries == o.entries;
    }
};

JacobianMatrix jacobian(const Endo& phi);
JacobianMatrix jac_mul(const JacobianMatrix& a, const JacobianMatrix& b);

enum class JacobianStatus { Invertible, NotInvertibleAtCutoff, Inconclusive };

std::string to_string(JacobianStatus s);

struct JacobianInversion {
    JacobianStatus status = JacobianStatus::Inconclusive;
    std::optional<JacobianMatrix> inverse;
    int cutoff = 0;
};

/// Seeks a two-sided inverse of J with entries of tensor degree <= cutoff.
/// The degree-0 block must be invertible over the scalar field (otherwise no
/// inverse exists at any cutoff); higher blocks are then uniquely determined,
/// and the candidate is accepted only if J X = X J = 1 holds exactly.
JacobianInversion jacobian_invert_bounded(const JacobianMatrix& j, int cutoff);

/// The endomorphism of F_2n (generators x_1..x_n, y_1..y_n) sending x_i to
/// the part of phi_i(x+y) that is multilinear (degree exactly one) in the
/// x-letters, and fixing every y_i.
Endo jacobi_endomorphism(const Endo& phi);

/// Subalgebra of M_N (N = m*r*p) of block matrices with one Lambda in
/// M_block repeated r times along the diagonal, zeros right of the blocks,
/// and unconstrained rows below them.
struct SpecialTestAlgebra {
    int m = 1, r = 1, p = 1;
    int block = 1;  // Lambda's block size, kept an explicit parameter
    int N = 1;

    SpecialTestAlgebra(int m, int r, int p, int block_size = -1);
    bool member(const ScalarMat& a) const;
};

/// Substitutes square scalar matrices for the generators of f.
ScalarMat evaluate_matrices(const FreePoly& f, const std::vector<ScalarMat>& mats);

/// True iff f lies outside P^n while its image under phi (evaluated on
/// matrices) lies inside P^n — certifying that phi is not invertible.
bool verify_test_witness(const Endo& phi, const SpecialTestAlgebra& p,
                         const std::vector<ScalarMat>& f);

}  // namespace freelin
