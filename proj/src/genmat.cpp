#include "freelin/genmat.hpp"

#include <algorithm>
#include <numeric>

namespace freelin {

namespace {

template <class Mat, class Elem>
Mat mat_product_chain(int k, const std::vector<Mat>& mats, const std::vector<int>& order,
                      const Elem& zero, const Elem& one) {
    int size = static_cast<int>(mats[0].size());
    Mat prod = mats[order[0]];
    for (int s = 1; s < k; ++s) {
        const Mat& m = mats[order[s]];
        Mat next(size, std::vector<Elem>(size, zero));
        for (int i = 0; i < size; ++i)
            for (int l = 0; l < size; ++l)
                for (int j = 0; j < size; ++j) next[i][j] = next[i][j] + prod[i][l] * m[l][j];
        prod = next;
    }
    return prod;
}

int permutation_sign(const std::vector<int>& order) {
    int inversions = 0;
    for (std::size_t i = 0; i < order.size(); ++i)
        for (std::size_t j = i + 1; j < order.size(); ++j)
            if (order[i] > order[j]) ++inversions;
    return inversions % 2 == 0 ? 1 : -1;
}

template <class Mat, class Elem>
Mat standard_identity_impl(int k, const std::vector<Mat>& mats, const Elem& zero, const Elem& one) {
    if (k < 1 || static_cast<int>(mats.size()) != k)
        throw InvalidInput("standard_identity: expected k matrices");
    int size = static_cast<int>(mats[0].size());
    for (const auto& m : mats)
        if (static_cast<int>(m.size()) != size) throw InvalidInput("standard_identity: size mismatch");
    Mat acc(size, std::vector<Elem>(size, zero));
    std::vector<int> order(k);
    std::iota(order.begin(), order.end(), 0);
    do {
        Mat prod = mat_product_chain<Mat, Elem>(k, mats, order, zero, one);
        int sign = permutation_sign(order);
        for (int i = 0; i < size; ++i)
            for (int j = 0; j < size; ++j)
                acc[i][j] = sign > 0 ? acc[i][j] + prod[i][j] : acc[i][j] - prod[i][j];
    } while (std::next_permutation(order.begin(), order.end()));
    return acc;
}

}  // namespace

GenericMatrix generic_matrix(int k, int n, int N, QRing ring) {
    if (k < 1 || k > n || N < 1) throw InvalidInput("generic_matrix: bad parameters");
    int dim = n * N * N;
    GenericMatrix g{N, k, {}};
    for (int i = 1; i <= N; ++i) {
        std::vector<CommPoly> row;
        for (int j = 1; j <= N; ++j) row.push_back(CommPoly::gen(generic_var(k, i, j, N), dim, ring));
        g.entries.push_back(row);
    }
    return g;
}

CommMat evaluate_generic(const FreePoly& f, const std::vector<GenericMatrix>& mats) {
    if (static_cast<int>(mats.size()) != f.n())
        throw InvalidInput("evaluate_generic: wrong matrix count");
    int N = mats.empty() ? 1 : mats[0].N;
    int dim = static_cast<int>(f.n()) * N * N;
    CommPoly zero = CommPoly::zero(dim, f.ring());
    CommMat acc(N, std::vector<CommPoly>(N, zero));
    for (const auto& [w, c] : f.terms()) {
        CommMat prod(N, std::vector<CommPoly>(N, zero));
        for (int i = 0; i < N; ++i) prod[i][i] = CommPoly::constant(Scalar::one(f.ring()), dim);
        for (int letter : w) {
            const CommMat& m = mats[letter - 1].entries;
            CommMat next(N, std::vector<CommPoly>(N, zero));
            for (int i = 0; i < N; ++i)
                for (int l = 0; l < N; ++l)
                    for (int j = 0; j < N; ++j) next[i][j] = next[i][j] + prod[i][l] * m[l][j];
            prod = next;
        }
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) acc[i][j] = acc[i][j] + prod[i][j].scaled(c);
    }
    return acc;
}

CoeffMap CoeffMap::identity(int n, int N, QRing ring) {
    CoeffMap out{n, N, ring, {}};
    for (int v = 1; v <= n * N * N; ++v) out.images.push_back(CommPoly::gen(v, n * N * N, ring));
    return out;
}

bool CoeffMap::is_identity() const {
    for (int v = 1; v <= dim(); ++v)
        if (images[v - 1] != CommPoly::gen(v, dim(), ring)) return false;
    return true;
}

CoeffMap reduce_endo(const Endo& phi, int N) {
    if (N < 1) throw InvalidInput("reduce_endo: N must be positive");
    std::vector<GenericMatrix> mats;
    for (int k = 1; k <= phi.n; ++k) mats.push_back(generic_matrix(k, phi.n, N, phi.ring));
    CoeffMap out{phi.n, N, phi.ring, {}};
    for (int k = 1; k <= phi.n; ++k) {
        CommMat m = evaluate_generic(phi.images[k - 1], mats);
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) out.images.push_back(m[i][j]);
    }
    return out;
}

CoeffMap compose(const CoeffMap& phi, const CoeffMap& psi) {
    if (phi.n != psi.n || phi.N != psi.N || !(phi.ring == psi.ring))
        throw InvalidInput("compose: coefficient map shape mismatch");
    CoeffMap out{phi.n, phi.N, phi.ring, {}};
    for (const auto& g : psi.images) out.images.push_back(substitute(g, phi.images));
    return out;
}

CommMat standard_identity(int k, const std::vector<CommMat>& mats) {
    if (mats.empty()) throw InvalidInput("standard_identity: no matrices");
    const CommPoly& sample = mats[0][0][0];
    return standard_identity_impl<CommMat, CommPoly>(
        k, mats, CommPoly::zero(sample.n(), sample.ring()),
        CommPoly::one(sample.n(), sample.ring()));
}

ScalarMat standard_identity(int k, const std::vector<ScalarMat>& mats) {
    if (mats.empty()) throw InvalidInput("standard_identity: no matrices");
    QRing ring = mats[0][0][0].ring();
    return standard_identity_impl<ScalarMat, Scalar>(k, mats, Scalar::zero(ring), Scalar::one(ring));
}

bool positive_root_check(const WeightData& w) {
    for (const auto& row : w.weight_matrix)
        for (auto v : row)
            if (v <= 0) return false;
    return !w.weight_matrix.empty();
}

bool negative_root_check(const WeightData& w) {
    for (const auto& row : w.weight_matrix)
        for (auto v : row)
            if (v >= 0) return false;
    return !w.weight_matrix.empty();
}

ActionSpec invert_action_parameters(const ActionSpec& spec) {
    ActionSpec out{spec.n, spec.r, spec.base, {}};
    for (const auto& g : spec.images) {
        LFreePoly h(spec.n, spec.lring());
        for (const auto& [w, c] : g.terms()) h.add_term(w, c.invert_parameters());
        out.images.push_back(h);
    }
    return out;
}

LinearizationReport linearize_positive_root(const ActionSpec& spec,
                                            const std::vector<int>& n_list, int cutoff) {
    LinearizationReport rep = average_linearize(spec);
    if (rep.verified() && rep.weights && negative_root_check(*rep.weights)) {
        rep = average_linearize(invert_action_parameters(spec));
        if (rep.verified())
            rep.trace.push_back("negative roots: linearized the action composed with t -> t^{-1}");
    }
    if (!rep.verified()) return rep;
    if (!positive_root_check(*rep.weights)) {
        rep.status = LinearizationStatus::Failed;
        rep.reason = "RootsNotPositive";
        rep.trace.push_back("failed: RootsNotPositive");
        return rep;
    }

    auto inv = cutoff > 0 ? invert_truncated(*rep.beta, cutoff) : invert_auto(*rep.beta);
    if (inv.status != InversionStatus::Exact) {
        rep.status = LinearizationStatus::Failed;
        rep.reason = "BetaNotInvertible";
        rep.trace.push_back("failed: BetaNotInvertible");
        return rep;
    }
    for (int N : n_list) {
        CoeffMap red = reduce_endo(*rep.beta, N);
        CoeffMap red_inv = reduce_endo(*inv.inverse, N);
        if (!compose(red, red_inv).is_identity() || !compose(red_inv, red).is_identity()) {
            rep.status = LinearizationStatus::Failed;
            rep.reason = "ReductionNotInvertible(" + std::to_string(N) + ")";
            rep.trace.push_back("failed: " + rep.reason);
            return rep;
        }
        rep.trace.push_back("reduction to " + std::to_string(N) + "x" + std::to_string(N) +
                            " generic matrices certified invertible");
    }
    return rep;
}

}  // namespace freelin
