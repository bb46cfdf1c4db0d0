#include "freelin/tensor.hpp"

#include <sstream>

namespace freelin {

std::optional<int> TensorPoly::degree() const {
    if (terms_.empty()) return std::nullopt;
    int d = 0;
    for (const auto& [uv, c] : terms_)
        d = std::max(d, static_cast<int>(uv.first.size() + uv.second.size()));
    return d;
}

void TensorPoly::add_term(const Word& u, const Word& v, const Scalar& c) {
    if (c.is_zero()) return;
    for (int letter : u)
        if (letter < 1 || letter > n_) throw InvalidInput("tensor word letter out of range");
    for (int letter : v)
        if (letter < 1 || letter > n_) throw InvalidInput("tensor word letter out of range");
    auto key = std::make_pair(u, v);
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        check_term_budget(terms_.size() + 1);
        terms_.emplace(std::move(key), c);
    } else {
        it->second = it->second + c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Scalar TensorPoly::coeff(const Word& u, const Word& v) const {
    auto it = terms_.find(std::make_pair(u, v));
    return it == terms_.end() ? Scalar::zero(ring_) : it->second;
}

TensorPoly TensorPoly::operator-() const {
    TensorPoly out(n_, ring_);
    for (const auto& [uv, c] : terms_) out.terms_.emplace(uv, -c);
    return out;
}

TensorPoly TensorPoly::operator+(const TensorPoly& o) const {
    if (n_ != o.n_ || !(ring_ == o.ring_)) throw InvalidInput("tensor ring mismatch");
    TensorPoly out = *this;
    for (const auto& [uv, c] : o.terms_) out.add_term(uv.first, uv.second, c);
    return out;
}

TensorPoly TensorPoly::operator-(const TensorPoly& o) const { return *this + (-o); }

TensorPoly TensorPoly::operator*(const TensorPoly& o) const {
    if (n_ != o.n_ || !(ring_ == o.ring_)) throw InvalidInput("tensor ring mismatch");
    TensorPoly out(n_, ring_);
    for (const auto& [ab, c1] : terms_) {
        for (const auto& [cd, c2] : o.terms_) {
            Word left = ab.first;
            left.insert(left.end(), cd.first.begin(), cd.first.end());
            // right legs multiply in reverse: (a(x)b)(c(x)d) = ac (x) db
            Word right = cd.second;
            right.insert(right.end(), ab.second.begin(), ab.second.end());
            out.add_term(left, right, c1 * c2);
        }
    }
    return out;
}

TensorPoly TensorPoly::scaled(const Scalar& c) const {
    TensorPoly out(n_, ring_);
    for (const auto& [uv, k] : terms_) out.add_term(uv.first, uv.second, k * c);
    return out;
}

TensorPoly TensorPoly::component(int d) const {
    TensorPoly out(n_, ring_);
    for (const auto& [uv, c] : terms_)
        if (static_cast<int>(uv.first.size() + uv.second.size()) == d)
            out.terms_.emplace(uv, c);
    return out;
}

std::string TensorPoly::str(const char* letter) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    auto word_str = [&](const Word& w) {
        if (w.empty()) return std::string("1");
        std::string s;
        for (int l : w) s += std::string(letter) + std::to_string(l);
        return s;
    };
    for (const auto& [uv, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str() << ")*" << word_str(uv.first) << "(x)" << word_str(uv.second);
    }
    return os.str();
}

TensorPoly tensor_substitute(const TensorPoly& t, const std::vector<FreePoly>& images) {
    if (static_cast<int>(images.size()) != t.n())
        throw InvalidInput("tensor_substitute: wrong image count");
    int out_n = images.empty() ? t.n() : images[0].n();
    TensorPoly out(out_n, t.ring());
    for (const auto& [uv, c] : t.terms()) {
        FreePoly left = substitute(FreePoly::monomial(uv.first, c, t.n(), t.ring()), images);
        FreePoly right =
            substitute(FreePoly::monomial(uv.second, Scalar::one(t.ring()), t.n(), t.ring()), images);
        for (const auto& [wl, cl] : left.terms())
            for (const auto& [wr, cr] : right.terms()) out.add_term(wl, wr, cl * cr);
    }
    return out;
}

TensorPoly partial(const FreePoly& f, int i) {
    if (i < 1 || i > f.n()) throw InvalidInput("partial: index out of range");
    TensorPoly out(f.n(), f.ring());
    for (const auto& [w, c] : f.terms()) {
        for (std::size_t k = 0; k < w.size(); ++k) {
            if (w[k] != i) continue;
            Word prefix(w.begin(), w.begin() + k);
            Word suffix(w.begin() + k + 1, w.end());
            out.add_term(prefix, suffix, c);
        }
    }
    return out;
}

JacobianMatrix JacobianMatrix::identity(int n, QRing ring) {
    JacobianMatrix j{n, ring, {}};
    for (int i = 0; i < n; ++i) {
        std::vector<TensorPoly> row(n, TensorPoly::zero(n, ring));
        row[i] = TensorPoly::one(n, ring);
        j.entries.push_back(row);
    }
    return j;
}

JacobianMatrix jacobian(const Endo& phi) {
    JacobianMatrix j{phi.n, phi.ring, {}};
    for (int i = 0; i < phi.n; ++i) {
        std::vector<TensorPoly> row;
        for (int k = 1; k <= phi.n; ++k) row.push_back(partial(phi.images[i], k));
        j.entries.push_back(row);
    }
    return j;
}

JacobianMatrix jac_mul(const JacobianMatrix& a, const JacobianMatrix& b) {
    if (a.n != b.n || !(a.ring == b.ring)) throw InvalidInput("jacobian size mismatch");
    JacobianMatrix out{a.n, a.ring, {}};
    for (int i = 0; i < a.n; ++i) {
        std::vector<TensorPoly> row;
        for (int j = 0; j < a.n; ++j) {
            TensorPoly s = TensorPoly::zero(a.n, a.ring);
            for (int k = 0; k < a.n; ++k) s = s + a.entries[i][k] * b.entries[k][j];
            row.push_back(s);
        }
        out.entries.push_back(row);
    }
    return out;
}

std::string to_string(JacobianStatus s) {
    switch (s) {
        case JacobianStatus::Invertible: return "Invertible";
        case JacobianStatus::NotInvertibleAtCutoff: return "NotInvertibleAtCutoff";
        default: return "Inconclusive";
    }
}

JacobianInversion jacobian_invert_bounded(const JacobianMatrix& j, int cutoff) {
    JacobianInversion rep;
    rep.cutoff = cutoff;
    int n = j.n;
    ScalarMat j0(n, ScalarVec(n, Scalar::zero(j.ring)));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) j0[a][b] = j.entries[a][b].coeff(Word{}, Word{});
    auto j0_inv = mat_inverse(j0);
    if (!j0_inv) {
        // no candidate exists at any cutoff: the degree-0 block of any
        // two-sided inverse would have to invert j0
        rep.status = JacobianStatus::NotInvertibleAtCutoff;
        return rep;
    }

    auto scale_left = [&](const ScalarMat& m, const std::vector<TensorPoly>& col) {
        std::vector<TensorPoly> out(n, TensorPoly::zero(n, j.ring));
        for (int a = 0; a < n; ++a)
            for (int k = 0; k < n; ++k) out[a] = out[a] + col[k].scaled(m[a][k]);
        return out;
    };

    // X_0 = j0^{-1}; X_d = -X_0 * sum_{k=1..d} J_k X_{d-k} (degrees are
    // graded, so each block is determined uniquely)
    std::vector<std::vector<std::vector<TensorPoly>>> x;  // x[d][row][col]
    std::vector<std::vector<TensorPoly>> x0(n, std::vector<TensorPoly>(n, TensorPoly::zero(n, j.ring)));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            x0[a][b] = TensorPoly::simple(Word{}, Word{}, (*j0_inv)[a][b], n);
    x.push_back(x0);

    std::vector<JacobianMatrix> j_comp;
    int jdeg = 0;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) jdeg = std::max(jdeg, j.entries[a][b].degree().value_or(0));
    for (int d = 0; d <= jdeg; ++d) {
        JacobianMatrix jc{n, j.ring, {}};
        for (int a = 0; a < n; ++a) {
            std::vector<TensorPoly> row;
            for (int b = 0; b < n; ++b) row.push_back(j.entries[a][b].component(d));
            jc.entries.push_back(row);
        }
        j_comp.push_back(jc);
    }

    for (int d = 1; d <= cutoff; ++d) {
        std::vector<std::vector<TensorPoly>> xd(n, std::vector<TensorPoly>(n, TensorPoly::zero(n, j.ring)));
        for (int b = 0; b < n; ++b) {  // column b
            std::vector<TensorPoly> acc(n, TensorPoly::zero(n, j.ring));
            for (int k = 1; k <= std::min(d, jdeg); ++k)
                for (int a = 0; a < n; ++a)
                    for (int c = 0; c < n; ++c)
                        acc[a] = acc[a] + j_comp[k].entries[a][c] * x[d - k][c][b];
            auto col = scale_left(*j0_inv, acc);
            for (int a = 0; a < n; ++a) xd[a][b] = -col[a];
        }
        x.push_back(xd);
    }

    JacobianMatrix cand{n, j.ring, std::vector<std::vector<TensorPoly>>(
                                       n, std::vector<TensorPoly>(n, TensorPoly::zero(n, j.ring)))};
    for (const auto& xd : x)
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) cand.entries[a][b] = cand.entries[a][b] + xd[a][b];

    JacobianMatrix id = JacobianMatrix::identity(n, j.ring);
    if (jac_mul(j, cand) == id && jac_mul(cand, j) == id) {
        rep.status = JacobianStatus::Invertible;
        rep.inverse = cand;
    } else {
        rep.status = JacobianStatus::Inconclusive;
    }
    return rep;
}

Endo jacobi_endomorphism(const Endo& phi) {
    int n = phi.n;
    QRing ring = phi.ring;
    std::vector<FreePoly> xy;  // z_k -> x_k + y_k in F_2n
    for (int k = 1; k <= n; ++k)
        xy.push_back(FreePoly::gen(k, 2 * n, ring) + FreePoly::gen(n + k, 2 * n, ring));
    Endo out{2 * n, ring, {}};
    for (int i = 0; i < n; ++i) {
        FreePoly expanded = substitute(phi.images[i], xy);
        FreePoly hat(2 * n, ring);
        for (const auto& [w, c] : expanded.terms()) {
            int xcount = 0;
            for (int letter : w)
                if (letter <= n) ++xcount;
            if (xcount == 1) hat.add_term(w, c);
        }
        out.images.push_back(hat);
    }
    for (int i = 1; i <= n; ++i) out.images.push_back(FreePoly::gen(n + i, 2 * n, ring));
    return out;
}

SpecialTestAlgebra::SpecialTestAlgebra(int m_, int r_, int p_, int block_size)
    : m(m_), r(r_), p(p_), block(block_size < 0 ? m_ : block_size), N(m_ * r_ * p_) {
    if (m < 1 || r < 1 || p < 1 || block < 1) throw InvalidInput("test algebra: parameters must be positive");
    if (block * r > N) throw InvalidInput("test algebra: diagonal blocks exceed the matrix size");
}

bool SpecialTestAlgebra::member(const ScalarMat& a) const {
    if (static_cast<int>(a.size()) != N) throw InvalidInput("test algebra: wrong matrix size");
    for (const auto& row : a)
        if (static_cast<int>(row.size()) != N) throw InvalidInput("test algebra: wrong matrix size");
    int top = block * r;
    for (int i = 0; i < top; ++i) {
        for (int j = 0; j < N; ++j) {
            if (j >= top) {
                if (!a[i][j].is_zero()) return false;
                continue;
            }
            if (i / block != j / block) {
                if (!a[i][j].is_zero()) return false;
            } else if (!(a[i][j] == a[i % block][j % block])) {
                return false;  // every diagonal block must equal Lambda
            }
        }
    }
    return true;  // rows below the blocks are unconstrained
}

ScalarMat evaluate_matrices(const FreePoly& f, const std::vector<ScalarMat>& mats) {
    if (static_cast<int>(mats.size()) != f.n())
        throw InvalidInput("evaluate_matrices: wrong matrix count");
    int size = mats.empty() ? 1 : static_cast<int>(mats[0].size());
    for (const auto& m : mats)
        if (static_cast<int>(m.size()) != size) throw InvalidInput("evaluate_matrices: size mismatch");
    ScalarMat acc(size, ScalarVec(size, Scalar::zero(f.ring())));
    for (const auto& [w, c] : f.terms()) {
        ScalarMat prod = identity_matrix(size, f.ring());
        for (int letter : w) prod = mat_mul(prod, mats[letter - 1]);
        for (int i = 0; i < size; ++i)
            for (int j = 0; j < size; ++j) acc[i][j] = acc[i][j] + prod[i][j] * c;
    }
    return acc;
}

bool verify_test_witness(const Endo& phi, const SpecialTestAlgebra& p,
                         const std::vector<ScalarMat>& f) {
    if (static_cast<int>(f.size()) != phi.n)
        throw InvalidInput("verify_test_witness: expected one matrix per generator");
    bool outside = false;
    for (const auto& m : f)
        if (!p.member(m)) outside = true;
    if (!outside) return false;
    for (const auto& g : phi.images)
        if (!p.member(evaluate_matrices(g, f))) return false;
    return true;
}

}  // namespace freelin
