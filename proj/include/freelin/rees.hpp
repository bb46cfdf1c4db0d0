#pragma once

#include <optional>
#include <string>
#include <vector>

#include "freelin/commpoly.hpp"
#include "freelin/endo.hpp"

namespace freelin {

/// Finitely generated two-sided ideal of K<z_1..z_n>, given by generators.
/// No membership decision is attempted anywhere in this module: equivalences
/// and isomorphisms are established only through supplied, machine-checked
/// witnesses.
struct IdealPresentation {
    int ambient_n = 0;
    QRing ring{};
    std::vector<FreePoly> generators;  // nonzero
};

struct GradedGen {
    std::string name;
    std::vector<std::int64_t> degree;  // in Z^d
};

/// Presentation of a Z^d-graded algebra: named generators with degrees and
/// relations written over those generators (letter i = gens[i-1]).
struct GradedPresentation {
    QRing ring{};
    int d = 1;
    std::vector<GradedGen> gens;
    std::vector<FreePoly> relations;

    int n() const { return static_cast<int>(gens.size()); }
};

/// Algebra map between presented algebras, given on generators; images are
/// written over the target's generators. verified is set by the checker that
/// produced the witness.
struct HomWitness {
    GradedPresentation source, target;
    std::vector<FreePoly> images;
    bool verified = false;
};

class WitnessInvalid : public std::runtime_error {
public:
    explicit WitnessInvalid(const std::string& w) : std::runtime_error(w) {}
};
class SubgroupConditionViolated : public std::runtime_error {
public:
    explicit SubgroupConditionViolated(const std::string& w) : std::runtime_error(w) {}
};
class QuotientIsoInvalid : public std::runtime_error {
public:
    explicit QuotientIsoInvalid(const std::string& w) : std::runtime_error(w) {}
};
class WitnessVerificationFailed : public std::runtime_error {
public:
    WitnessVerificationFailed(const std::string& w, int degree_bound)
        : std::runtime_error(w + " (degree bound " + std::to_string(degree_bound) + ")"),
          degree_bound(degree_bound) {}
    int degree_bound;
};

/// The free algebra on n generators as a presentation without relations.
GradedPresentation free_presentation(int n, QRing ring, int d = 1);

/// Extended Rees algebra R_A(I) = A[t, t^{-1}I]: generators z_1..z_n of
/// degree 0, t of degree 1 and u_g := t^{-1}g of degree -1 per ideal
/// generator, with relations t*u_g = g and u_g*t = g.
GradedPresentation rees_presentation(const IdealPresentation& ideal);

/// Canonical embedding of the rees_presentation generators (extended by
/// extra_y free letters of degree 0) into A[t, t^{-1}]: z_i and the y letters
/// map to themselves, t to the central Laurent parameter, u_g to t^{-1}g.
std::vector<LFreePoly> rees_model(const IdealPresentation& ideal, int extra_y = 0);

/// True iff every relation is homogeneous for the declared degrees and word
/// degrees are additive on products up to word length max_deg.
bool check_grading(const GradedPresentation& g, int max_deg);

/// One bounded pass structure: rewrites with each relation oriented from its
/// largest word (LenLex) to the rest, until a fixed point or the pass budget.
FreePoly reduce_mod(const FreePoly& f, const GradedPresentation& pres, int max_passes = 64);

/// Checks that every source relation maps to zero in the target, modulo the
/// target's relations via bounded rewriting; sets and returns w.verified.
bool verify_hom(HomWitness& w, int max_passes = 64);

/// Same check against an explicit model of the target inside a Laurent free
/// algebra; exact, with no rewriting bound.
bool verify_hom_in_model(HomWitness& w, const std::vector<LFreePoly>& target_model);

/// Given two surjections alpha, gamma from K<x_1..x_n, y_1..y_m> onto the
/// same presented algebra with alpha(y_j) = 0 and gamma(x_i) = 0, and
/// witnesses g_i in K<y> with alpha(x_i) = gamma(g_i), f_j in K<x> with
/// alpha(f_j) = gamma(y_j), returns the automorphism tau = tau_1 o tau_2
/// (x_i -> x_i + g_i, then y_j -> y_j - f_j) and certifies alpha = gamma o
/// tau on all generators. Throws WitnessInvalid when any identity fails.
Endo equivalence_from_surjections(const HomWitness& alpha, const HomWitness& gamma,
                                  const std::vector<FreePoly>& f,
                                  const std::vector<FreePoly>& g);

/// left * generator[index] * right; a term of a two-sided combination.
struct IdealTerm {
    FreePoly left;
    int index = 0;  // 0-based into the ideal's generator list
    FreePoly right;
};
using IdealCombo = std::vector<IdealTerm>;

/// Certificate that the ambient isomorphism theta carries I onto J: each
/// theta(g) is expressed over J's generators and each theta^{-1}(h) over I's.
struct IdealEquivWitness {
    IdealPresentation source, target;
    Endo theta, theta_inv;
    std::vector<IdealCombo> forward;   // one per source generator
    std::vector<IdealCombo> backward;  // one per target generator
};

/// Extends a verified ideal equivalence to the graded K[t]-isomorphism
/// R_A(I) -> R_B(J) fixing t, verified on all presentation generators and
/// relations in the target's Laurent model. Throws WitnessInvalid.
HomWitness rees_iso_from_ideal_equiv(const IdealEquivWitness& w);

/// Diagonal graded torus action on R_A(I)<y_1..y_m>: everything from A in
/// degree zero, t in degree t_degree, u_g in -t_degree, y_i as declared.
/// For i > s the degree of y_i must lie outside Z*t_degree; s defaults to the
/// longest prefix of y_degrees inside that subgroup.
struct GradedAction {
    GradedPresentation pres;
    int s = 0;
    std::vector<std::string> trace;
};
GradedAction build_rees_action(const IdealPresentation& ideal, int m,
                               const std::vector<std::int64_t>& t_degree,
                               const std::vector<std::vector<std::int64_t>>& y_degrees,
                               std::optional<int> s = std::nullopt);

/// Cancellation pair over D = K[t]: presentations of A *_D K<y> and
/// B *_D K<y> for A = D<x,y>/(ty - f(x)), B likewise with g, plus a verified
/// D-homomorphism witness between them. The isomorphism K[x]/(f) -> K[x]/(g)
/// must be supplied as the image of x and is verified (well-defined and
/// surjective) before anything is built.
struct CancellationPair {
    GradedPresentation a, b;
    HomWitness witness;
};
CancellationPair cancellation_pair(const std::string& d_spec, const std::string& t_elem,
                                   const CommPoly& f, const CommPoly& g,
                                   const CommPoly& quotient_iso_x_image, int degree_bound = 4);

}  // namespace freelin
