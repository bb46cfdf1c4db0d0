#include "freelin/lift2.hpp"

namespace freelin {

namespace {

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

std::int64_t deg_or(const CommPoly& f, std::int64_t fallback) {
    auto d = f.degree();
    return d ? *d : fallback;
}

}  // namespace

CommEndo compose(const CommEndo& f, const CommEndo& g) {
    CommEndo out{f.ring, {}};
    for (const auto& gi : g.images) out.images.push_back(substitute(gi, f.images));
    return out;
}

CommEndo factor_endo(const TameFactor& f, QRing ring) {
    CommEndo out{ring, {}};
    if (f.kind == TameFactor::Kind::Affine) {
        for (int i = 0; i < 2; ++i) {
            CommPoly g = CommPoly::constant(f.b[i], 2);
            for (int j = 0; j < 2; ++j)
                g = g + CommPoly::gen(j + 1, 2, ring).scaled(f.a[i][j]);
            out.images.push_back(g);
        }
    } else {
        for (const auto& [e, c] : f.p.terms())
            if (e[f.i - 1] != 0) throw InvalidInput("elementary factor depends on its own variable");
        out.images = {CommPoly::gen(1, 2, ring), CommPoly::gen(2, 2, ring)};
        out.images[f.i - 1] = out.images[f.i - 1] + f.p;
    }
    return out;
}

CommEndo recompose(const TameFactorization& fact) {
    if (fact.factors.empty()) return CommEndo::identity(fact.ring);
    CommEndo acc = factor_endo(fact.factors[0], fact.ring);
    for (std::size_t k = 1; k < fact.factors.size(); ++k)
        acc = compose(factor_endo(fact.factors[k], fact.ring), acc);
    return acc;
}

CommEndo abelianize_aut(const Endo& phi) {
    if (phi.n != 2) throw InvalidInput("abelianize_aut: defined for two generators");
    return CommEndo{phi.ring, {abelianize(phi.images[0]), abelianize(phi.images[1])}};
}

TameFactorization jvdk_decompose(const CommEndo& phi) {
    if (static_cast<int>(phi.images.size()) != 2)
        throw InvalidInput("jvdk_decompose: expected two images");
    for (const auto& g : phi.images)
        if (g.n() != 2 || !(g.ring() == phi.ring))
            throw InvalidInput("jvdk_decompose: image ring mismatch");
    QRing ring = phi.ring;
    CommPoly p = phi.images[0], q = phi.images[1];
    TameFactorization out{ring, {}};

    // Each pass strictly lowers deg p + deg q, so this terminates.
    while (true) {
        std::int64_t d1 = deg_or(p, -1), d2 = deg_or(q, -1);
        if (d1 < 0 || d2 < 0) throw NotAnAutomorphism("an image is zero");
        if (d1 <= 1 && d2 <= 1) break;

        int hi = (d1 > d2) ? 1 : 2;  // on a tie, reduce the second image first
        CommPoly& hp = (hi == 1) ? p : q;
        const CommPoly& lp = (hi == 1) ? q : p;
        std::int64_t dh = (hi == 1) ? d1 : d2;
        std::int64_t dl = (hi == 1) ? d2 : d1;
        if (dl == 0 || dh % dl != 0)
            throw NotAnAutomorphism("leading form is not a power of the other leading form");
        std::int64_t k = dh / dl;

        CommPoly lead_hi = hp.leading_form();
        CommPoly lead_pow = lp.leading_form().pow(k);
        const auto& [e0, c0] = *lead_pow.terms().begin();
        Scalar c = lead_hi.coeff(e0) / c0;
        if (c.is_zero() || lead_hi != lead_pow.scaled(c))
            throw NotAnAutomorphism("leading forms are not proportional");

        hp = hp - lp.pow(k).scaled(c);

        TameFactor f;
        f.kind = TameFactor::Kind::Elementary;
        f.i = hi;
        Expt e(2, 0);
        e[2 - hi] = k;
        f.p = CommPoly::monomial(e, c, 2);
        out.factors.push_back(f);
    }

    // Affine remainder; its matrix must be invertible.
    TameFactor aff;
    aff.kind = TameFactor::Kind::Affine;
    aff.a = ScalarMat(2, ScalarVec(2, Scalar::zero(ring)));
    aff.b = ScalarVec(2, Scalar::zero(ring));
    const CommPoly* imgs[2] = {&p, &q};
    for (int i = 0; i < 2; ++i) {
        aff.b[i] = imgs[i]->coeff(Expt{0, 0});
        aff.a[i][0] = imgs[i]->coeff(Expt{1, 0});
        aff.a[i][1] = imgs[i]->coeff(Expt{0, 1});
    }
    if (!mat_inverse(aff.a)) throw NotAnAutomorphism("singular affine remainder");
    out.factors.push_back(aff);
    return out;
}

Endo lift(const TameFactorization& fact) {
    QRing ring = fact.ring;
    auto lift_factor = [&](const TameFactor& f) {
        if (f.kind == TameFactor::Kind::Affine) {
            Endo e = linear_endo(f.a, ring);
            for (int i = 0; i < 2; ++i)
                e.images[i] = e.images[i] + FreePoly::constant(f.b[i], 2);
            return e;
        }
        int j = 3 - f.i;
        FreePoly add(2, ring);
        for (const auto& [e, c] : f.p.terms()) {
            if (e[f.i - 1] != 0)
                throw InvalidInput("elementary factor depends on its own variable");
            add.add_term(Word(static_cast<std::size_t>(e[j - 1]), j), c);
        }
        Endo e = Endo::identity(2, ring);
        e.images[f.i - 1] = e.images[f.i - 1] + add;
        return e;
    };
    if (fact.factors.empty()) return Endo::identity(2, ring);
    Endo acc = lift_factor(fact.factors[0]);
    for (std::size_t k = 1; k < fact.factors.size(); ++k)
        acc = compose(lift_factor(fact.factors[k]), acc);
    return acc;
}

LinearizationReport linearize_kstar_f2(const ActionSpec& spec) {
    if (spec.n != 2 || spec.r != 1)
        throw InvalidInput("linearize_kstar_f2: defined for one-parameter actions on two generators");
    LinearizationReport rep;
    auto fail = [&](const std::string& reason) {
        rep.status = LinearizationStatus::Failed;
        rep.reason = reason;
        rep.trace.push_back("failed: " + reason);
        return rep;
    };

    if (!validate_action(spec)) return fail("ActionInvalid");
    rep.trace.push_back("action axioms verified");

    QRing base = spec.base;
    Endo shift = Endo::identity(2, base), shift_inv = Endo::identity(2, base);
    ActionSpec cur = spec;
    bool has_constants = false;
    for (const auto& g : cur.images)
        if (!g.coeff(Word{}).is_zero()) has_constants = true;
    if (has_constants) {
        try {
            auto [translated, c] = translate_origin(cur);
            cur = translated;
            for (int i = 0; i < 2; ++i) {
                FreePoly zi = FreePoly::gen(i + 1, 2, base);
                shift.images[i] = zi + FreePoly::constant(c[i], 2);
                shift_inv.images[i] = zi - FreePoly::constant(c[i], 2);
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
    if (!is_effective(w)) return fail("NotEffective");
    rep.trace.push_back("weights extracted, action effective");

    Endo basis = Endo::identity(2, base), basis_inv = Endo::identity(2, base);
    if (w.basis_change) {
        auto p_inv = mat_inverse(*w.basis_change);
        basis = linear_endo(*w.basis_change, base);
        basis_inv = linear_endo(*p_inv, base);
        cur = conjugate_action(cur, basis, basis_inv);
        rep.trace.push_back("linear part diagonalized by basis change");
    }

    ActionSpec tau = diagonal_action(w.weight_matrix, 2, 1, base);
    rep.tau = tau;

    // Zero-weight averaging in the commutative quotient.
    LEndo tau_inv{2, spec.lring(), {}};
    for (int i = 0; i < 2; ++i) {
        ExpVec e{-w.weight_matrix[i][0]};
        tau_inv.images.push_back(LFreePoly::monomial(
            Word{i + 1}, LaurentScalar::monomial(e, Scalar::one(base), spec.lring()), 2, spec.lring()));
    }
    LEndo phi = compose(tau_inv, cur.to_endo());
    CommEndo beta_comm{base, {}};
    for (int i = 0; i < 2; ++i) {
        FreePoly g(2, base);
        for (const auto& [word, c] : phi.images[i].terms()) g.add_term(word, c.coeff(ExpVec{0}));
        beta_comm.images.push_back(abelianize(g));
    }
    rep.trace.push_back("commutative zero-weight averaging computed");

    TameFactorization fact;
    try {
        fact = jvdk_decompose(beta_comm);
    } catch (const NotAnAutomorphism&) {
        return fail("CommLinearizationFailed");
    }
    rep.trace.push_back("plane conjugator decomposed into tame factors");

    Endo beta_hat = lift(fact);
    auto inv = invert_auto(beta_hat);
    if (inv.status != InversionStatus::Exact) return fail("LiftVerificationFailed");
    rep.trace.push_back("tame factorization lifted and inverted");

    Endo total = compose(beta_hat, compose(basis_inv, shift));
    Endo total_inv = compose(shift_inv, compose(basis, *inv.inverse));
    rep.beta = total;

    LEndo lhs = compose(lift_to_laurent(total, spec.lring()),
                        compose(spec.to_endo(), lift_to_laurent(total_inv, spec.lring())));
    if (!(lhs == tau.to_endo())) return fail("LiftVerificationFailed");
    rep.status = LinearizationStatus::Verified;
    rep.reason.clear();
    rep.trace.push_back("lifted conjugation identity verified symbolically");
    return rep;
}

}  // namespace freelin
