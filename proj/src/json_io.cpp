#include "freelin/json_io.hpp"

#include <boost/multiprecision/cpp_int.hpp>

namespace freelin::io {

namespace {

std::string at(const std::string& path, const std::string& key) { return path + "/" + key; }
std::string at(const std::string& path, std::size_t idx) {
    return path + "/" + std::to_string(idx);
}

const json& field(const json& j, const char* key, const std::string& path) {
    if (!j.is_object()) throw SchemaError(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw SchemaError(path, std::string("missing field \"") + key + "\"");
    return *it;
}

int get_int(const json& j, const std::string& path) {
    if (!j.is_number_integer()) throw SchemaError(path, "expected an integer");
    return j.get<int>();
}

std::int64_t get_i64(const json& j, const std::string& path) {
    if (!j.is_number_integer()) throw SchemaError(path, "expected an integer");
    return j.get<std::int64_t>();
}

const json& get_array(const json& j, const std::string& path) {
    if (!j.is_array()) throw SchemaError(path, "expected an array");
    return j;
}

std::vector<int> get_word(const json& j, const std::string& path) {
    get_array(j, path);
    std::vector<int> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(get_int(j[i], at(path, i)));
    return out;
}

std::vector<std::int64_t> get_i64_vec(const json& j, const std::string& path) {
    get_array(j, path);
    std::vector<std::int64_t> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(get_i64(j[i], at(path, i)));
    return out;
}

Rat get_rational(const json& j, const std::string& path) {
    if (!j.is_string()) throw SchemaError(path, "expected a rational string \"p/q\"");
    try {
        return parse_rational(j.get<std::string>());
    } catch (const std::exception& e) {
        throw SchemaError(path, e.what());
    }
}

/// Reads the coefficient-ring tag off an object holding "ring" (and "p" for
/// prime fields). Returns the scalar base ring; laurent is flagged separately.
QRing get_base_ring(const json& j, const std::string& path, bool* laurent = nullptr) {
    const json& tag = field(j, "ring", path);
    if (!tag.is_string()) throw SchemaError(at(path, "ring"), "expected a ring tag string");
    std::string s = tag.get<std::string>();
    bool lau = s == "LaurentQ" || s == "LaurentFp";
    if (laurent) *laurent = lau;
    if (s == "Q" || s == "LaurentQ") return QRing{0};
    if (s == "Fp" || s == "LaurentFp") {
        std::int64_t p = get_i64(field(j, "p", path), at(path, "p"));
        if (p < 2) throw SchemaError(at(path, "p"), "characteristic must be >= 2");
        return QRing{p};
    }
    throw SchemaError(at(path, "ring"), "unknown ring tag \"" + s + "\"");
}

void emit_ring(json& out, QRing ring, bool laurent) {
    if (ring.p == 0)
        out["ring"] = laurent ? "LaurentQ" : "Q";
    else {
        out["ring"] = laurent ? "LaurentFp" : "Fp";
        out["p"] = ring.p;
    }
}

json word_json(const Word& w) { return json(w); }

}  // namespace

std::string rational_str(const Rat& v) {
    // cpp_rational is stored canonically (q > 0, lowest terms)
    return boost::multiprecision::numerator(v).str() + "/" +
           boost::multiprecision::denominator(v).str();
}

json to_json(const Scalar& c) { return rational_str(c.value()); }

json to_json(const LaurentScalar& c) {
    json out = json::array();
    for (const auto& [e, v] : c.terms()) {
        json term;
        term["tpow"] = json(e);
        term["value"] = to_json(v);
        out.push_back(std::move(term));
    }
    return out;
}

json to_json(const FreePoly& f) {
    json out;
    out["n"] = f.n();
    emit_ring(out, f.ring(), false);
    json terms = json::array();
    for (const auto& [w, c] : f.terms()) {
        json term;
        term["coeff"] = to_json(c);
        term["word"] = word_json(w);
        terms.push_back(std::move(term));
    }
    out["terms"] = std::move(terms);
    return out;
}

json to_json(const LFreePoly& f) {
    json out;
    out["n"] = f.n();
    emit_ring(out, f.ring().base, true);
    out["r"] = f.ring().r;
    json terms = json::array();
    for (const auto& [w, c] : f.terms()) {
        json term;
        term["coeff"] = to_json(c);
        term["word"] = word_json(w);
        terms.push_back(std::move(term));
    }
    out["terms"] = std::move(terms);
    return out;
}

json to_json(const Endo& e) {
    json out;
    out["n"] = e.n;
    json images = json::array();
    for (const auto& g : e.images) images.push_back(to_json(g));
    out["images"] = std::move(images);
    return out;
}

json to_json(const ActionSpec& a) {
    json out;
    out["n"] = a.n;
    out["r"] = a.r;
    json images = json::array();
    for (const auto& g : a.images) images.push_back(to_json(g));
    out["images"] = std::move(images);
    return out;
}

json to_json(const CommPoly& f) {
    json out;
    out["n"] = f.n();
    emit_ring(out, f.ring(), false);
    json terms = json::array();
    for (const auto& [e, c] : f.terms()) {
        json term;
        term["exps"] = json(e);
        term["coeff"] = to_json(c);
        terms.push_back(std::move(term));
    }
    out["terms"] = std::move(terms);
    return out;
}

json to_json(const CommEndo& e) {
    json out;
    out["n"] = 2;
    emit_ring(out, e.ring, false);
    json images = json::array();
    for (const auto& g : e.images) images.push_back(to_json(g));
    out["images"] = std::move(images);
    return out;
}

json to_json(const ScalarMat& m) {
    json rows = json::array();
    for (const auto& row : m) {
        json r = json::array();
        for (const auto& c : row) r.push_back(to_json(c));
        rows.push_back(std::move(r));
    }
    return rows;
}

json to_json(const TameFactorization& f) {
    json out;
    emit_ring(out, f.ring, false);
    json factors = json::array();
    for (const auto& fac : f.factors) {
        json entry;
        if (fac.kind == TameFactor::Kind::Affine) {
            entry["kind"] = "affine";
            entry["a"] = to_json(fac.a);
            json b = json::array();
            for (const auto& c : fac.b) b.push_back(to_json(c));
            entry["b"] = std::move(b);
        } else {
            entry["kind"] = "elementary";
            entry["i"] = fac.i;
            entry["p"] = to_json(fac.p);
        }
        factors.push_back(std::move(entry));
    }
    out["factors"] = std::move(factors);
    return out;
}

json to_json(const TensorPoly& t) {
    json out;
    out["n"] = t.n();
    emit_ring(out, t.ring(), false);
    json terms = json::array();
    for (const auto& [uv, c] : t.terms()) {
        json term;
        term["coeff"] = to_json(c);
        term["left"] = word_json(uv.first);
        term["right"] = word_json(uv.second);
        terms.push_back(std::move(term));
    }
    out["terms"] = std::move(terms);
    return out;
}

json to_json(const JacobianMatrix& j) {
    json out;
    out["n"] = j.n;
    emit_ring(out, j.ring, false);
    json rows = json::array();
    for (const auto& row : j.entries) {
        json r = json::array();
        for (const auto& e : row) r.push_back(to_json(e));
        rows.push_back(std::move(r));
    }
    out["entries"] = std::move(rows);
    return out;
}

json to_json(const CoeffMap& m) {
    json out;
    out["n"] = m.n;
    out["N"] = m.N;
    emit_ring(out, m.ring, false);
    json images = json::array();
    for (const auto& g : m.images) images.push_back(to_json(g));
    out["images"] = std::move(images);
    return out;
}

json to_json(const IdealPresentation& p) {
    json out;
    out["n"] = p.ambient_n;
    emit_ring(out, p.ring, false);
    json gens = json::array();
    for (const auto& g : p.generators) gens.push_back(to_json(g));
    out["generators"] = std::move(gens);
    return out;
}

json to_json(const GradedPresentation& p) {
    json out;
    emit_ring(out, p.ring, false);
    out["d"] = p.d;
    json gens = json::array();
    for (const auto& g : p.gens) {
        json entry;
        entry["name"] = g.name;
        entry["degree"] = json(g.degree);
        gens.push_back(std::move(entry));
    }
    out["gens"] = std::move(gens);
    json rels = json::array();
    for (const auto& rel : p.relations) rels.push_back(to_json(rel));
    out["relations"] = std::move(rels);
    return out;
}

json to_json(const HomWitness& w) {
    json out;
    out["source"] = to_json(w.source);
    out["target"] = to_json(w.target);
    json images = json::array();
    for (const auto& g : w.images) images.push_back(to_json(g));
    out["images"] = std::move(images);
    out["verified"] = w.verified;
    return out;
}

json to_json(const InversionReport& r) {
    json out;
    out["status"] = to_string(r.status);
    out["cutoff"] = r.cutoff;
    out["inverse"] = r.inverse ? to_json(*r.inverse) : json(nullptr);
    return out;
}

json to_json(const JacobianInversion& r) {
    json out;
    out["status"] = to_string(r.status);
    out["cutoff"] = r.cutoff;
    out["inverse"] = r.inverse ? to_json(*r.inverse) : json(nullptr);
    return out;
}

json to_json(const WeightData& w) {
    json out;
    json rows = json::array();
    for (const auto& row : w.weight_matrix) rows.push_back(json(row));
    out["weight_matrix"] = std::move(rows);
    out["diagonal"] = w.diagonal;
    out["basis_change"] = w.basis_change ? to_json(*w.basis_change) : json(nullptr);
    return out;
}

json to_json(const LinearizationReport& r) {
    json out;
    out["status"] = r.verified() ? "Verified" : "Failed";
    out["reason"] = r.reason;
    out["beta"] = r.beta ? to_json(*r.beta) : json(nullptr);
    out["tau"] = r.tau ? to_json(*r.tau) : json(nullptr);
    out["weights"] = r.weights ? to_json(*r.weights) : json(nullptr);
    out["trace"] = json(r.trace);
    return out;
}

json to_json(const GradedAction& a) {
    json out;
    out["presentation"] = to_json(a.pres);
    out["s"] = a.s;
    out["trace"] = json(a.trace);
    return out;
}

json to_json(const CancellationPair& c) {
    json out;
    out["a"] = to_json(c.a);
    out["b"] = to_json(c.b);
    out["witness"] = to_json(c.witness);
    return out;
}

Scalar parse_scalar(const json& j, QRing ring, const std::string& path) {
    return Scalar(get_rational(j, path), ring);
}

namespace {

LaurentScalar parse_laurent_coeff(const json& j, LRing ring, const std::string& path) {
    get_array(j, path);
    LaurentScalar out(ring);
    for (std::size_t i = 0; i < j.size(); ++i) {
        const json& term = j[i];
        std::string p = at(path, i);
        ExpVec e = get_i64_vec(field(term, "tpow", p), at(p, "tpow"));
        if (static_cast<int>(e.size()) != ring.r)
            throw SchemaError(at(p, "tpow"), "expected " + std::to_string(ring.r) + " exponents");
        out.add_term(e, parse_scalar(field(term, "value", p), ring.base, at(p, "value")));
    }
    return out;
}

template <class Poly, class ParseCoeff>
Poly parse_poly_terms(const json& j, Poly out, ParseCoeff&& coeff, const std::string& path) {
    const json& terms = get_array(field(j, "terms", path), at(path, "terms"));
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const json& term = terms[i];
        std::string p = at(at(path, "terms"), i);
        Word w = get_word(field(term, "word", p), at(p, "word"));
        for (int letter : w)
            if (letter < 1 || letter > out.n())
                throw SchemaError(at(p, "word"), "letter out of range 1.." +
                                                     std::to_string(out.n()));
        out.add_term(w, coeff(field(term, "coeff", p), at(p, "coeff")));
    }
    return out;
}

}  // namespace

FreePoly parse_free_poly(const json& j, const std::string& path) {
    bool laurent = false;
    QRing ring = get_base_ring(j, path, &laurent);
    if (laurent) throw SchemaError(at(path, "ring"), "expected a scalar-coefficient polynomial");
    int n = get_int(field(j, "n", path), at(path, "n"));
    if (n < 0) throw SchemaError(at(path, "n"), "n must be >= 0");
    return parse_poly_terms(
        j, FreePoly(n, ring),
        [&](const json& c, const std::string& p) { return parse_scalar(c, ring, p); }, path);
}

LFreePoly parse_lfree_poly(const json& j, const std::string& path) {
    bool laurent = false;
    QRing base = get_base_ring(j, path, &laurent);
    if (!laurent)
        throw SchemaError(at(path, "ring"), "expected a Laurent-coefficient polynomial");
    int n = get_int(field(j, "n", path), at(path, "n"));
    int r = get_int(field(j, "r", path), at(path, "r"));
    if (n < 0) throw SchemaError(at(path, "n"), "n must be >= 0");
    if (r < 1) throw SchemaError(at(path, "r"), "r must be >= 1");
    LRing ring{base, r};
    return parse_poly_terms(
        j, LFreePoly(n, ring),
        [&](const json& c, const std::string& p) { return parse_laurent_coeff(c, ring, p); },
        path);
}

Endo parse_endo(const json& j, const std::string& path) {
    int n = get_int(field(j, "n", path), at(path, "n"));
    if (n < 1) throw SchemaError(at(path, "n"), "n must be >= 1");
    const json& images = get_array(field(j, "images", path), at(path, "images"));
    if (static_cast<int>(images.size()) != n)
        throw SchemaError(at(path, "images"), "expected " + std::to_string(n) + " images");
    Endo out;
    out.n = n;
    for (std::size_t i = 0; i < images.size(); ++i) {
        FreePoly g = parse_free_poly(images[i], at(at(path, "images"), i));
        if (g.n() != n)
            throw SchemaError(at(at(path, "images"), i), "image n mismatch");
        if (i > 0 && !(g.ring() == out.ring))
            throw SchemaError(at(at(path, "images"), i), "image ring mismatch");
        out.ring = g.ring();
        out.images.push_back(std::move(g));
    }
    return out;
}

ActionSpec parse_action(const json& j, const std::string& path) {
    int n = get_int(field(j, "n", path), at(path, "n"));
    int r = get_int(field(j, "r", path), at(path, "r"));
    if (n < 1) throw SchemaError(at(path, "n"), "n must be >= 1");
    if (r < 1) throw SchemaError(at(path, "r"), "r must be >= 1");
    const json& images = get_array(field(j, "images", path), at(path, "images"));
    if (static_cast<int>(images.size()) != n)
        throw SchemaError(at(path, "images"), "expected " + std::to_string(n) + " images");
    ActionSpec out;
    out.n = n;
    out.r = r;
    for (std::size_t i = 0; i < images.size(); ++i) {
        LFreePoly g = parse_lfree_poly(images[i], at(at(path, "images"), i));
        if (g.n() != n || g.ring().r != r)
            throw SchemaError(at(at(path, "images"), i), "image shape mismatch");
        if (i > 0 && !(g.ring().base == out.base))
            throw SchemaError(at(at(path, "images"), i), "image ring mismatch");
        out.base = g.ring().base;
        out.images.push_back(std::move(g));
    }
    return out;
}

CommPoly parse_comm_poly(const json& j, const std::string& path) {
    QRing ring = get_base_ring(j, path);
    int n = get_int(field(j, "n", path), at(path, "n"));
    if (n < 0) throw SchemaError(at(path, "n"), "n must be >= 0");
    CommPoly out(n, ring);
    const json& terms = get_array(field(j, "terms", path), at(path, "terms"));
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const json& term = terms[i];
        std::string p = at(at(path, "terms"), i);
        Expt e = get_i64_vec(field(term, "exps", p), at(p, "exps"));
        if (static_cast<int>(e.size()) != n)
            throw SchemaError(at(p, "exps"), "expected " + std::to_string(n) + " exponents");
        for (auto k : e)
            if (k < 0) throw SchemaError(at(p, "exps"), "exponents must be >= 0");
        out.add_term(e, parse_scalar(field(term, "coeff", p), ring, at(p, "coeff")));
    }
    return out;
}

CommEndo parse_comm_endo(const json& j, const std::string& path) {
    const json& images = get_array(field(j, "images", path), at(path, "images"));
    if (images.size() != 2)
        throw SchemaError(at(path, "images"), "expected exactly 2 images (plane endomorphism)");
    CommEndo out;
    for (std::size_t i = 0; i < 2; ++i) {
        CommPoly g = parse_comm_poly(images[i], at(at(path, "images"), i));
        if (g.n() != 2) throw SchemaError(at(at(path, "images"), i), "images must use 2 variables");
        if (i > 0 && !(g.ring() == out.ring))
            throw SchemaError(at(at(path, "images"), i), "image ring mismatch");
        out.ring = g.ring();
        out.images.push_back(std::move(g));
    }
    return out;
}

namespace {

ScalarMat parse_matrix(const json& j, QRing ring, const std::string& path) {
    get_array(j, path);
    ScalarMat out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const json& row = get_array(j[i], at(path, i));
        ScalarVec r;
        for (std::size_t k = 0; k < row.size(); ++k)
            r.push_back(parse_scalar(row[k], ring, at(at(path, i), k)));
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace

TameFactorization parse_factorization(const json& j, const std::string& path) {
    QRing ring = get_base_ring(j, path);
    TameFactorization out{ring, {}};
    const json& factors = get_array(field(j, "factors", path), at(path, "factors"));
    for (std::size_t i = 0; i < factors.size(); ++i) {
        const json& entry = factors[i];
        std::string p = at(at(path, "factors"), i);
        const json& kind = field(entry, "kind", p);
        if (!kind.is_string()) throw SchemaError(at(p, "kind"), "expected a kind tag string");
        TameFactor f;
        if (kind.get<std::string>() == "affine") {
            f.kind = TameFactor::Kind::Affine;
            f.a = parse_matrix(field(entry, "a", p), ring, at(p, "a"));
            const json& b = get_array(field(entry, "b", p), at(p, "b"));
            for (std::size_t k = 0; k < b.size(); ++k)
                f.b.push_back(parse_scalar(b[k], ring, at(at(p, "b"), k)));
        } else if (kind.get<std::string>() == "elementary") {
            f.kind = TameFactor::Kind::Elementary;
            f.i = get_int(field(entry, "i", p), at(p, "i"));
            if (f.i < 1 || f.i > 2) throw SchemaError(at(p, "i"), "i must be 1 or 2");
            f.p = parse_comm_poly(field(entry, "p", p), at(p, "p"));
        } else {
            throw SchemaError(at(p, "kind"), "unknown factor kind");
        }
        out.factors.push_back(std::move(f));
    }
    return out;
}

IdealPresentation parse_ideal(const json& j, const std::string& path) {
    QRing ring = get_base_ring(j, path);
    int n = get_int(field(j, "n", path), at(path, "n"));
    if (n < 1) throw SchemaError(at(path, "n"), "n must be >= 1");
    IdealPresentation out{n, ring, {}};
    const json& gens = get_array(field(j, "generators", path), at(path, "generators"));
    for (std::size_t i = 0; i < gens.size(); ++i) {
        FreePoly g = parse_free_poly(gens[i], at(at(path, "generators"), i));
        if (g.n() != n || !(g.ring() == ring))
            throw SchemaError(at(at(path, "generators"), i), "generator ring mismatch");
        if (g.is_zero())
            throw SchemaError(at(at(path, "generators"), i), "zero ideal generator");
        out.generators.push_back(std::move(g));
    }
    return out;
}

GradedPresentation parse_presentation(const json& j, const std::string& path) {
    QRing ring = get_base_ring(j, path);
    GradedPresentation out;
    out.ring = ring;
    out.d = get_int(field(j, "d", path), at(path, "d"));
    if (out.d < 1) throw SchemaError(at(path, "d"), "d must be >= 1");
    const json& gens = get_array(field(j, "gens", path), at(path, "gens"));
    for (std::size_t i = 0; i < gens.size(); ++i) {
        std::string p = at(at(path, "gens"), i);
        const json& name = field(gens[i], "name", p);
        if (!name.is_string()) throw SchemaError(at(p, "name"), "expected a string");
        std::vector<std::int64_t> deg = get_i64_vec(field(gens[i], "degree", p), at(p, "degree"));
        if (static_cast<int>(deg.size()) != out.d)
            throw SchemaError(at(p, "degree"), "expected " + std::to_string(out.d) + " entries");
        out.gens.push_back(GradedGen{name.get<std::string>(), std::move(deg)});
    }
    const json& rels = get_array(field(j, "relations", path), at(path, "relations"));
    for (std::size_t i = 0; i < rels.size(); ++i) {
        FreePoly rel = parse_free_poly(rels[i], at(at(path, "relations"), i));
        if (rel.n() != out.n() || !(rel.ring() == ring))
            throw SchemaError(at(at(path, "relations"), i), "relation ring mismatch");
        out.relations.push_back(std::move(rel));
    }
    return out;
}

}  // namespace freelin::io
