#include "freelin/rees.hpp"

#include "freelin/linalg.hpp"

namespace freelin {

namespace {

// Re-embeds a polynomial into a larger generator alphabet (words unchanged).
FreePoly widen(const FreePoly& f, int big_n) {
    FreePoly out(big_n, f.ring());
    for (const auto& [w, c] : f.terms()) out.add_term(w, c);
    return out;
}

std::vector<std::int64_t> word_degree(const Word& w, const GradedPresentation& g) {
    std::vector<std::int64_t> deg(g.d, 0);
    for (int letter : w) {
        const auto& gd = g.gens[letter - 1].degree;
        for (int i = 0; i < g.d; ++i) deg[i] += gd[i];
    }
    return deg;
}

void check_ideal(const IdealPresentation& ideal) {
    if (ideal.ambient_n < 1) throw InvalidInput("ideal: ambient_n must be positive");
    for (const auto& g : ideal.generators) {
        if (g.is_zero()) throw InvalidInput("ideal: generators must be nonzero");
        if (g.n() != ideal.ambient_n || !(g.ring() == ideal.ring))
            throw InvalidInput("ideal: generator ring mismatch");
    }
}

// Oriented rewriting rule: occurrences of `pattern` are replaced by `rest`.
struct RewriteRule {
    Word pattern;
    FreePoly rest;
};

std::vector<RewriteRule> orient(const GradedPresentation& pres) {
    std::vector<RewriteRule> rules;
    for (const auto& rel : pres.relations) {
        if (rel.is_zero()) continue;
        auto lead = rel.terms().rbegin();  // LenLex-largest word
        FreePoly rest =
            FreePoly::monomial(lead->first, lead->second, rel.n(), rel.ring()) - rel;
        rules.push_back({lead->first, rest.scaled(Scalar::one(rel.ring()) / lead->second)});
    }
    return rules;
}

// First position where `pattern` occurs as a subword, or -1.
int find_subword(const Word& w, const Word& pattern) {
    if (pattern.empty() || pattern.size() > w.size()) return -1;
    for (std::size_t i = 0; i + pattern.size() <= w.size(); ++i) {
        bool hit = true;
        for (std::size_t j = 0; j < pattern.size(); ++j)
            if (w[i + j] != pattern[j]) {
                hit = false;
                break;
            }
        if (hit) return static_cast<int>(i);
    }
    return -1;
}

}  // namespace

GradedPresentation free_presentation(int n, QRing ring, int d) {
    GradedPresentation out{ring, d, {}, {}};
    for (int i = 1; i <= n; ++i)
        out.gens.push_back({"z" + std::to_string(i), std::vector<std::int64_t>(d, 0)});
    return out;
}

GradedPresentation rees_presentation(const IdealPresentation& ideal) {
    check_ideal(ideal);
    int n = ideal.ambient_n;
    int k = static_cast<int>(ideal.generators.size());
    int big = n + 1 + k;
    GradedPresentation out{ideal.ring, 1, {}, {}};
    for (int i = 1; i <= n; ++i) out.gens.push_back({"z" + std::to_string(i), {0}});
    out.gens.push_back({"t", {1}});
    for (int j = 1; j <= k; ++j) out.gens.push_back({"u" + std::to_string(j), {-1}});
    // t is central in A[t, t^{-1}]; against the u generators this follows
    // from t*u = g = u*t, so only the ambient letters need explicit relations
    for (int i = 1; i <= n; ++i) {
        FreePoly tz = FreePoly::monomial(Word{n + 1, i}, Scalar::one(ideal.ring), big, ideal.ring);
        FreePoly zt = FreePoly::monomial(Word{i, n + 1}, Scalar::one(ideal.ring), big, ideal.ring);
        out.relations.push_back(tz - zt);
    }
    for (int j = 1; j <= k; ++j) {
        FreePoly g = widen(ideal.generators[j - 1], big);
        FreePoly tu = FreePoly::monomial(Word{n + 1, n + 1 + j}, Scalar::one(ideal.ring), big,
                                         ideal.ring);
        FreePoly ut = FreePoly::monomial(Word{n + 1 + j, n + 1}, Scalar::one(ideal.ring), big,
                                         ideal.ring);
        out.relations.push_back(tu - g);
        out.relations.push_back(ut - g);
    }
    return out;
}

std::vector<LFreePoly> rees_model(const IdealPresentation& ideal, int extra_y) {
    check_ideal(ideal);
    int n = ideal.ambient_n;
    int model_n = n + extra_y;
    LRing lr{ideal.ring, 1};
    LaurentScalar t = LaurentScalar::monomial(ExpVec{1}, Scalar::one(ideal.ring), lr);
    LaurentScalar t_inv = LaurentScalar::monomial(ExpVec{-1}, Scalar::one(ideal.ring), lr);
    std::vector<LFreePoly> model;
    for (int i = 1; i <= n; ++i) model.push_back(LFreePoly::gen(i, model_n, lr));
    model.push_back(LFreePoly::constant(t, model_n));
    for (const auto& g : ideal.generators)
        model.push_back(lift_to_laurent(widen(g, model_n), lr).scaled(t_inv));
    for (int j = 1; j <= extra_y; ++j) model.push_back(LFreePoly::gen(n + j, model_n, lr));
    return model;
}

bool check_grading(const GradedPresentation& g, int max_deg) {
    for (const auto& gen : g.gens)
        if (static_cast<int>(gen.degree.size()) != g.d) return false;
    for (const auto& rel : g.relations) {
        if (rel.n() != g.n()) return false;
        bool first = true;
        std::vector<std::int64_t> deg;
        for (const auto& [w, c] : rel.terms()) {
            auto wd = word_degree(w, g);
            if (first) {
                deg = wd;
                first = false;
            } else if (wd != deg) {
                return false;
            }
        }
    }
    // Degree additivity on words up to max_deg: deg(w . letter) must equal
    // deg(w) + deg(letter). Enumerated literally, with a size cap.
    std::int64_t budget = 2'000'000;
    struct Frame {
        Word w;
        std::vector<std::int64_t> deg;
    };
    std::vector<Frame> layer;
    layer.push_back({Word{}, std::vector<std::int64_t>(g.d, 0)});
    for (int len = 1; len <= max_deg && budget > 0; ++len) {
        std::vector<Frame> next;
        for (const auto& fr : layer) {
            for (int letter = 1; letter <= g.n() && budget > 0; ++letter, --budget) {
                Frame nx = fr;
                nx.w.push_back(letter);
                for (int i = 0; i < g.d; ++i) nx.deg[i] += g.gens[letter - 1].degree[i];
                if (nx.deg != word_degree(nx.w, g)) return false;
                next.push_back(std::move(nx));
            }
        }
        layer = std::move(next);
    }
    return true;
}

FreePoly reduce_mod(const FreePoly& f, const GradedPresentation& pres, int max_passes) {
    auto rules = orient(pres);
    FreePoly cur = widen(f, pres.n());
    for (int pass = 0; pass < max_passes; ++pass) {
        bool changed = false;
        for (const auto& [w, c] : cur.terms()) {
            for (const auto& rule : rules) {
                int pos = find_subword(w, rule.pattern);
                if (pos < 0) continue;
                Word left(w.begin(), w.begin() + pos);
                Word right(w.begin() + pos + rule.pattern.size(), w.end());
                FreePoly replaced =
                    FreePoly::monomial(left, c, pres.n(), pres.ring) * rule.rest *
                    FreePoly::monomial(right, Scalar::one(pres.ring), pres.n(), pres.ring);
                FreePoly original = FreePoly::monomial(w, c, pres.n(), pres.ring);
                cur = cur - original + replaced;
                changed = true;
                break;
            }
            if (changed) break;  // the term table was invalidated; restart scan
        }
        if (!changed) return cur;
    }
    return cur;
}

bool verify_hom(HomWitness& w, int max_passes) {
    w.verified = false;
    if (static_cast<int>(w.images.size()) != w.source.n())
        throw InvalidInput("hom witness: one image per source generator expected");
    for (const auto& rel : w.source.relations) {
        FreePoly img = substitute(rel, w.images);
        if (!reduce_mod(img, w.target, max_passes).is_zero()) return false;
    }
    w.verified = true;
    return true;
}

bool verify_hom_in_model(HomWitness& w, const std::vector<LFreePoly>& target_model) {
    w.verified = false;
    if (static_cast<int>(w.images.size()) != w.source.n())
        throw InvalidInput("hom witness: one image per source generator expected");
    if (static_cast<int>(target_model.size()) != w.target.n())
        throw InvalidInput("hom witness: one model image per target generator expected");
    LRing lr = target_model.empty() ? LRing{w.target.ring, 1} : target_model[0].ring();
    for (const auto& rel : w.source.relations) {
        FreePoly img = substitute(rel, w.images);
        if (!substitute(lift_to_laurent(img, lr), target_model).is_zero()) return false;
    }
    w.verified = true;
    return true;
}

Endo equivalence_from_surjections(const HomWitness& alpha, const HomWitness& gamma,
                                  const std::vector<FreePoly>& f,
                                  const std::vector<FreePoly>& g) {
    int n = static_cast<int>(g.size());
    int m = static_cast<int>(f.size());
    int big = n + m;
    if (alpha.source.n() != big || gamma.source.n() != big)
        throw InvalidInput("equivalence: surjections must share the source K<x,y>");
    if (alpha.target.n() != gamma.target.n() ||
        !(alpha.target.relations == gamma.target.relations))
        throw InvalidInput("equivalence: surjections must share the target");
    QRing ring = alpha.source.ring;

    // f_j may involve only the x block, g_i only the y block
    for (const auto& p : f)
        for (const auto& [w, c] : p.terms())
            for (int letter : w)
                if (letter > n) throw WitnessInvalid("f_j must lie in K<x_1..x_n>");
    for (const auto& p : g)
        for (const auto& [w, c] : p.terms())
            for (int letter : w)
                if (letter <= n) throw WitnessInvalid("g_i must lie in K<y_1..y_m>");

    auto ap = [&](const FreePoly& p) {
        return reduce_mod(substitute(p, alpha.images), alpha.target);
    };
    auto gp = [&](const FreePoly& p) {
        return reduce_mod(substitute(p, gamma.images), gamma.target);
    };
    FreePoly x_i(big, ring), y_j(big, ring);
    for (int j = 1; j <= m; ++j)
        if (!ap(FreePoly::gen(n + j, big, ring)).is_zero())
            throw WitnessInvalid("alpha(y_j) != 0");
    for (int i = 1; i <= n; ++i)
        if (!gp(FreePoly::gen(i, big, ring)).is_zero())
            throw WitnessInvalid("gamma(x_i) != 0");
    for (int i = 1; i <= n; ++i)
        if (!(ap(FreePoly::gen(i, big, ring)) == gp(widen(g[i - 1], big))))
            throw WitnessInvalid("alpha(x_i) != gamma(g_i)");
    for (int j = 1; j <= m; ++j)
        if (!(ap(widen(f[j - 1], big)) == gp(FreePoly::gen(n + j, big, ring))))
            throw WitnessInvalid("alpha(f_j) != gamma(y_j)");

    Endo tau1 = Endo::identity(big, ring), tau2 = Endo::identity(big, ring);
    for (int i = 0; i < n; ++i) tau1.images[i] = tau1.images[i] + widen(g[i], big);
    for (int j = 0; j < m; ++j) tau2.images[n + j] = tau2.images[n + j] - widen(f[j], big);
    Endo tau = compose(tau1, tau2);

    for (int i = 1; i <= big; ++i)
        if (!(gp(tau.images[i - 1]) == ap(FreePoly::gen(i, big, ring))))
            throw WitnessInvalid("alpha != gamma o tau on a generator");
    return tau;
}

HomWitness rees_iso_from_ideal_equiv(const IdealEquivWitness& w) {
    check_ideal(w.source);
    check_ideal(w.target);
    if (!compose(w.theta, w.theta_inv).is_identity() ||
        !compose(w.theta_inv, w.theta).is_identity())
        throw WitnessInvalid("theta and theta_inv are not mutually inverse");
    int ns = w.source.ambient_n, nt = w.target.ambient_n;
    auto combo_value = [](const IdealCombo& combo, const IdealPresentation& ideal) {
        FreePoly acc(ideal.ambient_n, ideal.ring);
        for (const auto& term : combo) {
            if (term.index < 0 || term.index >= static_cast<int>(ideal.generators.size()))
                throw WitnessInvalid("combination refers to a missing ideal generator");
            acc = acc + term.left * ideal.generators[term.index] * term.right;
        }
        return acc;
    };
    if (w.forward.size() != w.source.generators.size() ||
        w.backward.size() != w.target.generators.size())
        throw WitnessInvalid("one combination per ideal generator expected");
    for (std::size_t k = 0; k < w.forward.size(); ++k)
        if (!(substitute(w.source.generators[k], w.theta.images) ==
              combo_value(w.forward[k], w.target)))
            throw WitnessInvalid("theta(g) does not match its combination over J");
    for (std::size_t l = 0; l < w.backward.size(); ++l)
        if (!(substitute(w.target.generators[l], w.theta_inv.images) ==
              combo_value(w.backward[l], w.source)))
            throw WitnessInvalid("theta^{-1}(h) does not match its combination over I");

    HomWitness out;
    out.source = rees_presentation(w.source);
    out.target = rees_presentation(w.target);
    int big = out.target.n();
    // z_i -> theta(z_i), t -> t, u_g -> sum left * u_h * right
    for (int i = 0; i < ns; ++i) out.images.push_back(widen(w.theta.images[i], big));
    out.images.push_back(FreePoly::gen(nt + 1, big, w.target.ring));
    for (const auto& combo : w.forward) {
        FreePoly acc(big, w.target.ring);
        for (const auto& term : combo)
            acc = acc + widen(term.left, big) *
                            FreePoly::gen(nt + 2 + term.index, big, w.target.ring) *
                            widen(term.right, big);
        out.images.push_back(acc);
    }
    if (!verify_hom_in_model(out, rees_model(w.target)))
        throw WitnessInvalid("extended map does not preserve the Rees relations");
    return out;
}

GradedAction build_rees_action(const IdealPresentation& ideal, int m,
                               const std::vector<std::int64_t>& t_degree,
                               const std::vector<std::vector<std::int64_t>>& y_degrees,
                               std::optional<int> s_opt) {
    int r = static_cast<int>(t_degree.size());
    bool t_zero = true;
    for (auto v : t_degree)
        if (v != 0) t_zero = false;
    if (r < 1 || t_zero) throw InvalidInput("rees action: t_degree must be nonzero");
    if (static_cast<int>(y_degrees.size()) != m)
        throw InvalidInput("rees action: one degree per y generator expected");
    for (const auto& d : y_degrees)
        if (static_cast<int>(d.size()) != r)
            throw InvalidInput("rees action: y degree rank mismatch");

    auto in_subgroup = [&](const std::vector<std::int64_t>& v) {
        int pivot = 0;
        while (t_degree[pivot] == 0)
            if (v[pivot] != 0)
                return false;
            else
                ++pivot;
        if (v[pivot] % t_degree[pivot] != 0) return false;
        std::int64_t k = v[pivot] / t_degree[pivot];
        for (int i = 0; i < r; ++i)
            if (v[i] != k * t_degree[i]) return false;
        return true;
    };

    int s;
    if (s_opt) {
        s = *s_opt;
        if (s < 0 || s > m) throw InvalidInput("rees action: s out of range");
    } else {
        s = 0;
        while (s < m && in_subgroup(y_degrees[s])) ++s;
    }
    for (int i = s + 1; i <= m; ++i)
        if (in_subgroup(y_degrees[i - 1]))
            throw SubgroupConditionViolated("degree of y_" + std::to_string(i) +
                                            " lies in Z*t_degree");

    GradedAction act;
    GradedPresentation base = rees_presentation(ideal);
    act.pres.ring = ideal.ring;
    act.pres.d = r;
    int big = base.n() + m;
    for (int i = 0; i < base.n(); ++i) {
        std::vector<std::int64_t> deg(r, 0);
        if (base.gens[i].degree[0] != 0)  // t or a u generator
            for (int j = 0; j < r; ++j) deg[j] = base.gens[i].degree[0] * t_degree[j];
        act.pres.gens.push_back({base.gens[i].name, deg});
    }
    for (int j = 1; j <= m; ++j) act.pres.gens.push_back({"y" + std::to_string(j), y_degrees[j - 1]});
    for (const auto& rel : base.relations) act.pres.relations.push_back(widen(rel, big));
    int t_letter = ideal.ambient_n + 1;
    for (int j = 1; j <= m; ++j) {
        FreePoly ty = FreePoly::monomial(Word{t_letter, base.n() + j}, Scalar::one(ideal.ring),
                                         big, ideal.ring);
        FreePoly yt = FreePoly::monomial(Word{base.n() + j, t_letter}, Scalar::one(ideal.ring),
                                         big, ideal.ring);
        act.pres.relations.push_back(ty - yt);
    }

    act.s = s;
    act.trace.push_back("subgroup condition holds for i > " + std::to_string(s));
    act.trace.push_back(check_grading(act.pres, 4)
                            ? "relations homogeneous: action well-defined on the quotient"
                            : "grading check failed");
    return act;
}

namespace {

// Univariate division with remainder: a = q*b + rem, b monic.
std::pair<CommPoly, CommPoly> divmod_1var(CommPoly a, const CommPoly& b) {
    QRing ring = a.ring();
    auto deg1 = [](const CommPoly& p) { return p.degree().value_or(-1); };
    std::int64_t db = deg1(b);
    CommPoly q(1, ring);
    while (deg1(a) >= db) {
        std::int64_t da = deg1(a);
        Scalar c = a.coeff(Expt{da});
        CommPoly shift = CommPoly::monomial(Expt{da - db}, c, 1);
        q = q + shift;
        a = a - shift * b;
    }
    return {q, a};
}

FreePoly univariate_in_letter(const CommPoly& p, int letter, int big, QRing ring) {
    FreePoly out(big, ring);
    for (const auto& [e, c] : p.terms()) out.add_term(Word(static_cast<std::size_t>(e[0]), letter), c);
    return out;
}

}  // namespace

CancellationPair cancellation_pair(const std::string& d_spec, const std::string& t_elem,
                                   const CommPoly& f, const CommPoly& g,
                                   const CommPoly& quotient_iso_x_image, int degree_bound) {
    if (d_spec != "K[t]" || t_elem != "t")
        throw InvalidInput("cancellation: only the base ring D = K[t] with t itself is supported");
    QRing ring = f.ring();
    auto deg1 = [](const CommPoly& p) { return p.degree().value_or(-1); };
    auto monic = [&](const CommPoly& p) {
        return deg1(p) > 1 && p.coeff(Expt{deg1(p)}).is_one();
    };
    if (f.n() != 1 || g.n() != 1 || !monic(f) || !monic(g))
        throw InvalidInput("cancellation: f and g must be monic univariate of degree > 1");
    if (deg1(f) != deg1(g))
        throw QuotientIsoInvalid("quotients have different dimensions");

    // Well-defined: f(p) must vanish modulo g.
    const CommPoly& p = quotient_iso_x_image;
    if (p.n() != 1) throw InvalidInput("cancellation: iso witness must be univariate");
    auto [s, rem] = divmod_1var(substitute(f, {p}), g);
    if (!rem.is_zero())
        throw QuotientIsoInvalid("f(p(x)) is not a multiple of g(x)");

    // Surjective (hence iso, as the quotients have equal dimension): solve
    // h(p(x)) = x mod g for h of degree < deg g.
    std::int64_t dim = deg1(g);
    ScalarMat cols(dim, ScalarVec(dim, Scalar::zero(ring)));
    CommPoly power = CommPoly::one(1, ring);
    for (std::int64_t j = 0; j < dim; ++j) {
        CommPoly red = divmod_1var(power, g).second;
        for (std::int64_t i = 0; i < dim; ++i) cols[i][j] = red.coeff(Expt{i});
        power = power * p;
    }
    ScalarVec rhs(dim, Scalar::zero(ring));
    rhs[1] = Scalar::one(ring);
    if (!solve_linear(cols, rhs))
        throw QuotientIsoInvalid("x has no preimage: the quotient map is not onto");

    // Presentations of A *_D K<y> and B *_D K<y>, generators (x, y, w, t):
    // t central, t*y = f(x) resp. g(x).
    auto build = [&](const CommPoly& poly) {
        GradedPresentation pres{ring, 1, {}, {}};
        pres.gens = {{"x", {0}}, {"y", {-1}}, {"w", {0}}, {"t", {1}}};
        auto one = Scalar::one(ring);
        auto mono = [&](std::initializer_list<int> w) {
            return FreePoly::monomial(Word(w), one, 4, ring);
        };
        pres.relations.push_back(mono({4, 1}) - mono({1, 4}));
        pres.relations.push_back(mono({4, 3}) - mono({3, 4}));
        pres.relations.push_back(mono({4, 2}) - univariate_in_letter(poly, 1, 4, ring));
        pres.relations.push_back(mono({2, 4}) - univariate_in_letter(poly, 1, 4, ring));
        return pres;
    };

    CancellationPair out;
    out.a = build(f);
    out.b = build(g);

    // D-homomorphism from the proof chain: x -> p(x), y = t^{-1}f(x) ->
    // t^{-1} f(p(x)) = s(x) * y, w -> w, t -> t.
    out.witness.source = out.a;
    out.witness.target = out.b;
    out.witness.images = {
        univariate_in_letter(p, 1, 4, ring),
        univariate_in_letter(s, 1, 4, ring) * FreePoly::gen(2, 4, ring),
        FreePoly::gen(3, 4, ring),
        FreePoly::gen(4, 4, ring),
    };
    int passes = 32 * std::max(1, degree_bound);
    if (!verify_hom(out.witness, passes))
        throw WitnessVerificationFailed("relation images do not reduce to zero", degree_bound);
    return out;
}

}  // namespace freelin
