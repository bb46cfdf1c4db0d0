#include "freelin/torus.hpp"

#include <set>

namespace freelin {

namespace {

ExpVec zero_exp(int r) { return ExpVec(r, 0); }

void check_shape(const ActionSpec& spec) {
    if (spec.n < 1 || spec.r < 1) throw InvalidInput("action: n and r must be positive");
    if (static_cast<int>(spec.images.size()) != spec.n)
        throw InvalidInput("action: expected n generator images");
    for (const auto& g : spec.images)
        if (g.n() != spec.n || !(g.ring() == spec.lring()))
            throw InvalidInput("action: image ring mismatch");
}

// Re-embeds the action's coefficients into 2r parameters, with this copy's
// parameters occupying positions [offset, offset + r).
LEndo embed_params(const ActionSpec& spec, int offset) {
    LRing big{spec.base, 2 * spec.r};
    LEndo out{spec.n, big, {}};
    for (const auto& g : spec.images) {
        LFreePoly h(spec.n, big);
        for (const auto& [w, c] : g.terms()) h.add_term(w, c.embed(2 * spec.r, offset));
        out.images.push_back(h);
    }
    return out;
}

// sigma(s*t) in 2r parameters: each character t^m becomes s^m t^m.
LEndo product_point(const ActionSpec& spec) {
    LRing big{spec.base, 2 * spec.r};
    LEndo out{spec.n, big, {}};
    for (const auto& g : spec.images) {
        LFreePoly h(spec.n, big);
        for (const auto& [w, c] : g.terms()) {
            LaurentScalar lifted(big);
            for (const auto& [e, v] : c.terms()) {
                ExpVec ee = e;
                ee.insert(ee.end(), e.begin(), e.end());
                lifted.add_term(ee, v);
            }
            h.add_term(w, lifted);
        }
        out.images.push_back(h);
    }
    return out;
}

ScalarVec ones_point(const ActionSpec& spec) {
    return ScalarVec(spec.r, Scalar::one(spec.base));
}

// Degree-1 coefficient matrix a_ij(t).
std::vector<std::vector<LaurentScalar>> linear_matrix(const ActionSpec& spec) {
    std::vector<std::vector<LaurentScalar>> a(spec.n);
    for (int i = 0; i < spec.n; ++i)
        for (int j = 1; j <= spec.n; ++j) a[i].push_back(spec.images[i].coeff(Word{j}));
    return a;
}

bool read_monomial_diagonal(const std::vector<std::vector<LaurentScalar>>& a, WeightMatrix& m) {
    int n = static_cast<int>(a.size());
    m.clear();
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j)
            if (j != i && !a[i][j].is_zero()) return false;
        const LaurentScalar& d = a[i][i];
        if (!d.is_monomial() || !d.terms().begin()->second.is_one()) return false;
        m.push_back(d.terms().begin()->first);
    }
    return true;
}

Endo linear_endo(const ScalarMat& p, QRing base) {
    int n = static_cast<int>(p.size());
    Endo e{n, base, {}};
    for (int i = 0; i < n; ++i) {
        FreePoly g(n, base);
        for (int j = 0; j < n; ++j) g.add_term(Word{j + 1}, p[i][j]);
        e.images.push_back(g);
    }
    return e;
}

std::int64_t prime_at(int k) {
    static const std::int64_t primes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37,
                                          41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89};
    return primes[k % (sizeof(primes) / sizeof(primes[0]))];
}

}  // namespace

bool validate_action(const ActionSpec& spec) {
    check_shape(spec);
    // sigma(1) = id
    ScalarVec one = ones_point(spec);
    for (int i = 0; i < spec.n; ++i)
        if (eval_parameters(spec.images[i], one) != FreePoly::gen(i + 1, spec.n, spec.base))
            return false;
    // cocycle with independent symbolic parameter vectors s, t
    LEndo at_s = embed_params(spec, 0);
    LEndo at_t = embed_params(spec, spec.r);
    return compose(at_s, at_t) == product_point(spec);
}

ActionSpec conjugate_action(const ActionSpec& spec, const Endo& u, const Endo& u_inv) {
    if (!compose(u, u_inv).is_identity() || !compose(u_inv, u).is_identity())
        throw InvalidInput("conjugate_action: maps are not mutually inverse");
    LEndo ul = lift_to_laurent(u, spec.lring());
    LEndo uinvl = lift_to_laurent(u_inv, spec.lring());
    return ActionSpec::from_endo(compose(uinvl, compose(spec.to_endo(), ul)));
}

std::pair<ActionSpec, ScalarVec> translate_origin(const ActionSpec& spec) {
    check_shape(spec);
    int n = spec.n;
    auto a = linear_matrix(spec);
    std::vector<LaurentScalar> k;
    for (const auto& g : spec.images) k.push_back(g.coeff(Word{}));

    // Exponent vectors occurring in the affine part; the zero vector carries
    // the -c_i contribution.
    std::set<ExpVec> exps;
    exps.insert(zero_exp(spec.r));
    for (int i = 0; i < n; ++i) {
        for (const auto& [e, v] : k[i].terms()) exps.insert(e);
        for (int j = 0; j < n; ++j)
            for (const auto& [e, v] : a[i][j].terms()) exps.insert(e);
    }

    // Per generator and exponent: sum_j a_ij[e] c_j - [e = 0] c_i = -k_i[e].
    ScalarMat rows;
    ScalarVec rhs;
    for (int i = 0; i < n; ++i) {
        for (const auto& e : exps) {
            ScalarVec row;
            for (int j = 0; j < n; ++j) {
                Scalar v = a[i][j].coeff(e);
                if (j == i && e == zero_exp(spec.r)) v = v - Scalar::one(spec.base);
                row.push_back(v);
            }
            rows.push_back(row);
            rhs.push_back(-k[i].coeff(e));
        }
    }
    auto c = solve_linear(rows, rhs);
    if (!c) throw NoFixedPointFound("constant-term system has no affine solution");

    Endo shift_down{n, spec.base, {}}, shift_up{n, spec.base, {}};
    for (int i = 0; i < n; ++i) {
        FreePoly zi = FreePoly::gen(i + 1, n, spec.base);
        shift_down.images.push_back(zi - FreePoly::constant((*c)[i], n));
        shift_up.images.push_back(zi + FreePoly::constant((*c)[i], n));
    }
    // conjugate by z_i -> z_i - c_i, giving images sigma(t)(z + c) - c
    ActionSpec out = conjugate_action(spec, shift_down, shift_up);
    for (const auto& g : out.images)
        if (!g.coeff(Word{}).is_zero())
            throw NoFixedPointFound("constant terms are nonlinear in the translation");
    return {out, *c};
}

WeightData extract_weights(const ActionSpec& spec) {
    check_shape(spec);
    for (const auto& g : spec.images)
        if (!g.coeff(Word{}).is_zero())
            throw InvalidInput("extract_weights: images must have zero constant term");
    int n = spec.n;
    auto a = linear_matrix(spec);

    WeightData out;
    if (read_monomial_diagonal(a, out.weight_matrix)) {
        out.diagonal = true;
        return out;
    }

    // Candidate weights are the exponent vectors present in the linear part.
    std::set<ExpVec> candidates;
    bool non_monomial = true;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (const auto& [e, v] : a[i][j].terms()) candidates.insert(e);

    for (int attempt = 0; attempt < 3; ++attempt) {
        // Distinct prime coordinates: t^e determines e by unique factorization,
        // so distinct candidates get distinct eigenvalues over Q.
        ScalarVec point;
        for (int j = 0; j < spec.r; ++j)
            point.push_back(Scalar::from_int(prime_at(attempt + j), spec.base));

        ScalarMat ap(n, ScalarVec(n, Scalar::zero(spec.base)));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) ap[i][j] = a[i][j].eval(point);

        std::vector<ScalarVec> columns;
        std::vector<ExpVec> col_weights;
        for (const auto& e : candidates) {
            Scalar lambda = LaurentScalar::monomial(e, Scalar::one(spec.base), spec.lring()).eval(point);
            ScalarMat shifted = ap;
            for (int i = 0; i < n; ++i) shifted[i][i] = shifted[i][i] - lambda;
            for (const auto& v : nullspace(shifted, spec.base)) {
                columns.push_back(v);
                col_weights.push_back(e);
            }
        }
        if (static_cast<int>(columns.size()) != n) continue;

        ScalarMat v_mat(n, ScalarVec(n, Scalar::zero(spec.base)));
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) v_mat[i][j] = columns[j][i];
        auto v_inv = mat_inverse(v_mat);
        if (!v_inv) continue;

        // Symbolic check: P a(t) P^{-1} must be monomial-diagonal, P = V^{-1}.
        LRing lr = spec.lring();
        auto lift_row = [&](const ScalarMat& m, int i, int j) {
            return LaurentScalar::constant(m[i][j], lr);
        };
        std::vector<std::vector<LaurentScalar>> d(n, std::vector<LaurentScalar>(n, LaurentScalar::zero(lr)));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                LaurentScalar s = LaurentScalar::zero(lr);
                for (int k1 = 0; k1 < n; ++k1)
                    for (int k2 = 0; k2 < n; ++k2)
                        s = s + lift_row(*v_inv, i, k1) * a[k1][k2] * lift_row(v_mat, k2, j);
                d[i][j] = s;
            }
        WeightMatrix m;
        if (!read_monomial_diagonal(d, m)) {
            non_monomial = false;  // diagonalized but entries not characters
            continue;
        }
        out.weight_matrix = m;
        out.diagonal = true;
        out.basis_change = *v_inv;
        return out;
    }
    if (!non_monomial)
        throw InvalidInput("NonMonomialEntries: diagonalized linear part is not a character matrix");
    throw InvalidInput("NotDiagonalizable: no eigenbasis over the ground field at sampled points");
}

bool is_effective(const WeightData& w) {
    std::vector<std::vector<Int>> m;
    for (const auto& row : w.weight_matrix) {
        std::vector<Int> r;
        for (auto v : row) r.push_back(Int(v));
        m.push_back(r);
    }
    if (m.empty()) return false;
    int r = static_cast<int>(m[0].size());
    auto factors = smith_invariant_factors(m);
    if (static_cast<int>(factors.size()) != r) return false;
    for (const auto& f : factors)
        if (f != 1) return false;
    return true;
}

ActionSpec diagonal_action(const WeightMatrix& m, int n, int r, QRing base) {
    LRing lr{base, r};
    ActionSpec spec{n, r, base, {}};
    for (int i = 0; i < n; ++i) {
        ExpVec e(m[i].begin(), m[i].end());
        spec.images.push_back(
            LFreePoly::monomial(Word{i + 1}, LaurentScalar::monomial(e, Scalar::one(base), lr), n, lr));
    }
    return spec;
}

LinearizationReport average_linearize(const ActionSpec& spec) {
    LinearizationReport rep;
    auto fail = [&](const std::string& reason) {
        rep.status = LinearizationStatus::Failed;
        rep.reason = reason;
        rep.trace.push_back("failed: " + reason);
        return rep;
    };

    if (!validate_action(spec)) return fail("ActionInvalid");
    rep.trace.push_back("action axioms verified");

    int n = spec.n, r = spec.r;
    QRing base = spec.base;
    Endo shift = Endo::identity(n, base);       // sigma_1 = shift o sigma o shift^{-1}
    Endo shift_inv = Endo::identity(n, base);
    ActionSpec cur = spec;
    bool has_constants = false;
    for (const auto& g : cur.images)
        if (!g.coeff(Word{}).is_zero()) has_constants = true;
    if (has_constants) {
        try {
            auto [translated, c] = translate_origin(cur);
            cur = translated;
            for (int i = 0; i < n; ++i) {
                FreePoly zi = FreePoly::gen(i + 1, n, base);
                shift.images[i] = zi + FreePoly::constant(c[i], n);
                shift_inv.images[i] = zi - FreePoly::constant(c[i], n);
            }
            rep.trace.push_back("origin translated to a fixed point");
        } catch (const NoFixedPointFound&) {
            return fail("NoFixedPointFound");
        }
    }

    WeightData w;
    try {
        w = extract_weights(cur);
    } catch (const InvalidInput& e) {
        std::string msg = e.what();
        return fail(msg.substr(0, msg.find(':')));
    }
    rep.weights = w;
    Endo basis = Endo::identity(n, base), basis_inv = Endo::identity(n, base);
    if (w.basis_change) {
        auto p_inv = mat_inverse(*w.basis_change);
        basis = linear_endo(*w.basis_change, base);
        basis_inv = linear_endo(*p_inv, base);
        cur = conjugate_action(cur, basis, basis_inv);
        rep.trace.push_back("linear part diagonalized by basis change");
    }
    rep.trace.push_back("weights extracted");

    if (r == n) {
        std::vector<std::vector<Int>> m;
        for (const auto& row : w.weight_matrix) m.emplace_back(row.begin(), row.end());
        if (static_cast<int>(smith_invariant_factors(m).size()) != r)
            return fail("WeightMatrixSingular");
    } else {
        rep.trace.push_back("r != n: averaging attempted without the square-case guarantee");
    }

    ActionSpec tau = diagonal_action(w.weight_matrix, n, r, base);
    rep.tau = tau;

    // phi(t) = tau(t^{-1}) o sigma(t); beta = zero-weight component of phi.
    LEndo tau_inv{n, spec.lring(), {}};
    for (int i = 0; i < n; ++i) {
        ExpVec e(w.weight_matrix[i].begin(), w.weight_matrix[i].end());
        for (auto& v : e) v = -v;
        tau_inv.images.push_back(LFreePoly::monomial(
            Word{i + 1}, LaurentScalar::monomial(e, Scalar::one(base), spec.lring()), n, spec.lring()));
    }
    LEndo phi = compose(tau_inv, cur.to_endo());
    Endo beta{n, base, {}};
    for (int i = 0; i < n; ++i) {
        FreePoly g(n, base);
        for (const auto& [word, c] : phi.images[i].terms()) g.add_term(word, c.coeff(zero_exp(r)));
        beta.images.push_back(g);
    }
    rep.trace.push_back("zero-weight averaging computed");

    auto inv = invert_auto(beta);
    if (inv.status != InversionStatus::Exact) return fail("BetaNotInvertible");
    rep.trace.push_back("averaging map inverted exactly");

    // Total conjugator against the original action: sigma_2 = basis^{-1} o
    // shift o sigma o shift^{-1} o basis and tau = beta o sigma_2 o beta^{-1},
    // so tau = B o sigma o B^{-1} with B = beta o basis^{-1} o shift.
    Endo total = compose(beta, compose(basis_inv, shift));
    Endo total_inv = compose(shift_inv, compose(basis, *inv.inverse));
    rep.beta = total;

    LEndo lhs = compose(lift_to_laurent(total, spec.lring()),
                        compose(spec.to_endo(), lift_to_laurent(total_inv, spec.lring())));
    if (!(lhs == tau.to_endo())) return fail("ConjugationMismatch");
    rep.status = LinearizationStatus::Verified;
    rep.reason.clear();
    rep.trace.push_back("conjugation identity verified symbolically");
    return rep;
}

bool verify_action_equivalence(const ActionSpec& phi, const ActionSpec& psi, const Endo& sigma) {
    check_shape(phi);
    check_shape(psi);
    if (phi.r != psi.r || !(phi.base == psi.base))
        throw InvalidInput("equivalence: actions live over different parameter rings");
    if (static_cast<int>(sigma.images.size()) != phi.n)
        throw InvalidInput("equivalence: sigma must give one image per generator of the source");
    std::vector<LFreePoly> sig;
    for (const auto& g : sigma.images) {
        if (g.n() != psi.n) throw InvalidInput("equivalence: sigma images must land in the target");
        sig.push_back(lift_to_laurent(g, psi.lring()));
    }
    for (int i = 0; i < phi.n; ++i) {
        LFreePoly lhs = substitute(phi.images[i], sig);
        LFreePoly rhs = substitute(lift_to_laurent(sigma.images[i], psi.lring()), psi.images);
        if (!(lhs == rhs)) return false;
    }
    return true;
}

}  // namespace freelin
