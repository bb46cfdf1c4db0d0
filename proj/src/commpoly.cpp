#include "freelin/commpoly.hpp"

namespace freelin {

CommPoly substitute(const CommPoly& f, const std::vector<CommPoly>& images) {
    if (static_cast<int>(images.size()) != f.n())
        throw InvalidInput("substitute: expected " + std::to_string(f.n()) + " images");
    int out_n = f.n();
    QRing out_ring = f.ring();
    if (!images.empty()) {
        out_n = images[0].n();
        for (const auto& g : images)
            if (g.n() != out_n || !(g.ring() == out_ring))
                throw InvalidInput("substitute: inconsistent image rings");
    }
    CommPoly out(out_n, out_ring);
    for (const auto& [e, c] : f.terms()) {
        CommPoly prod = CommPoly::constant(c, out_n);
        for (int i = 0; i < f.n(); ++i)
            if (e[i] > 0) prod = prod * images[i].pow(e[i]);
        out = out + prod;
    }
    return out;
}

CommPoly abelianize(const FreePoly& f) {
    CommPoly out(f.n(), f.ring());
    for (const auto& [w, c] : f.terms()) {
        Expt e(f.n(), 0);
        for (int letter : w) ++e[letter - 1];
        out.add_term(e, c);
    }
    return out;
}

}  // namespace freelin
