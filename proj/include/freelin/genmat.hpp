#pragma once

#include <vector>

#include "freelin/commpoly.hpp"
#include "freelin/endo.hpp"
#include "freelin/linalg.hpp"
#include "freelin/torus.hpp"

namespace freelin {

using CommMat = std::vector<std::vector<CommPoly>>;

/// The k-th N x N generic matrix: entries are distinct commuting variables
/// from the shared ring in n*N^2 variables, indexed (k,i,j) -> flat.
struct GenericMatrix {
    int N = 1;
    int index = 1;
    CommMat entries;
};

/// Flat variable index of entry (i,j) of the k-th generic matrix (all 1-based).
inline int generic_var(int k, int i, int j, int N) {
    return (k - 1) * N * N + (i - 1) * N + (j - 1) + 1;
}

GenericMatrix generic_matrix(int k, int n, int N, QRing ring);

/// Substitutes the n generic matrices for the generators of f.
CommMat evaluate_generic(const FreePoly& f, const std::vector<GenericMatrix>& mats);

/// The coefficient map phi_N on the n*N^2 entry variables induced by an
/// endomorphism of the free algebra.
struct CoeffMap {
    int n = 0;
    int N = 1;
    QRing ring{};
    std::vector<CommPoly> images;  // n*N^2 polynomials in n*N^2 variables

    int dim() const { return n * N * N; }
    static CoeffMap identity(int n, int N, QRing ring);
    bool is_identity() const;
    bool operator==(const CoeffMap& o) const {
        return n == o.n && N == o.N && ring == o.ring && images == o.images;
    }
};

CoeffMap reduce_endo(const Endo& phi, int N);

/// Functorial composition matching compose on endomorphisms:
/// reduce_endo(compose(phi, psi), N) = compose(reduce(phi), reduce(psi)).
CoeffMap compose(const CoeffMap& phi, const CoeffMap& psi);

/// S_k(M_1..M_k) = sum over permutations of sgn * M_{s(1)} ... M_{s(k)}.
CommMat standard_identity(int k, const std::vector<CommMat>& mats);
ScalarMat standard_identity(int k, const std::vector<ScalarMat>& mats);

/// All weight-matrix entries strictly positive.
bool positive_root_check(const WeightData& w);
/// All entries strictly negative (convertible by composing with the group
/// inversion t -> t^{-1}).
bool negative_root_check(const WeightData& w);

/// The same action run at t^{-1} (negates every coefficient exponent).
ActionSpec invert_action_parameters(const ActionSpec& spec);

/// Positive-root linearization: averages as in average_linearize (after the
/// t -> t^{-1} preprocessing when the roots are all negative), then certifies
/// the conjugator on N x N generic matrices for each N in n_list by composing
/// its reduction with the reduction of the exact inverse.
LinearizationReport linearize_positive_root(const ActionSpec& spec,
                                            const std::vector<int>& n_list = {1, 2},
                                            int cutoff = 0);

}  // namespace freelin
