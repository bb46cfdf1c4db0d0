#pragma once

#include <optional>
#include <string>
#include <vector>

#include "freelin/endo.hpp"

namespace freelin {

/// Torus action on F_n: generator images with Laurent-character coefficients
/// in r parameters. sigma(t) for concrete t is recovered by evaluating the
/// coefficients.
struct ActionSpec {
    int n = 0;
    int r = 1;
    QRing base{};
    std::vector<LFreePoly> images;

    LRing lring() const { return LRing{base, r}; }
    LEndo to_endo() const { return LEndo{n, lring(), images}; }

    static ActionSpec from_endo(const LEndo& e) {
        return ActionSpec{e.n, e.ring.r, e.ring.base, e.images};
    }
};

/// Integer weight matrix of a (diagonalized) linear part: row i is the
/// exponent vector of the character scaling z_i.
using WeightMatrix = std::vector<std::vector<std::int64_t>>;

struct WeightData {
    WeightMatrix weight_matrix;  // n x r
    bool diagonal = false;
    /// When present, conjugating the action by the linear map with this
    /// matrix (z -> P z) makes the linear part monomial-diagonal.
    std::optional<ScalarMat> basis_change;
};

enum class LinearizationStatus { Verified, Failed };

struct LinearizationReport {
    LinearizationStatus status = LinearizationStatus::Failed;
    std::string reason;  // failing stage when status == Failed
    std::optional<Endo> beta;
    std::optional<ActionSpec> tau;
    std::optional<WeightData> weights;
    std::vector<std::string> trace;

    bool verified() const { return status == LinearizationStatus::Verified; }
};

/// Thrown by translate_origin when the constant-term system is not
/// affine-solvable (a fixed point always exists, but the existence argument
/// is non-constructive in the nonlinear case).
class NoFixedPointFound : public std::runtime_error {
public:
    explicit NoFixedPointFound(const std::string& w) : std::runtime_error(w) {}
};

/// True iff sigma(1) = id and sigma(s) o sigma(t) = sigma(s*t) as an
/// identity in 2r fresh symbolic parameters.
bool validate_action(const ActionSpec& spec);

/// Conjugates the action by the endomorphism u: returns u^{-1} o sigma(t) o u.
/// u_inv must be the exact inverse of u.
ActionSpec conjugate_action(const ActionSpec& spec, const Endo& u, const Endo& u_inv);

/// Finds a translation c with sigma(t)(z_i + c_i) - c_i free of constant
/// terms, by exact linear solve on the affine part; the conjugated action and
/// c are returned. Throws NoFixedPointFound outside the affine-solvable case.
std::pair<ActionSpec, ScalarVec> translate_origin(const ActionSpec& spec);

/// Reads the weight matrix off the degree-1 coefficient matrix, attempting
/// simultaneous diagonalization over K at deterministic prime sample points
/// when the linear part is not already monomial-diagonal.
WeightData extract_weights(const ActionSpec& spec);

/// Effectiveness via the Smith normal form of the weight matrix: the
/// character map T_r -> T_n is injective iff rank = r and all invariant
/// factors are 1 (algebraically closed ground-field semantics).
bool is_effective(const WeightData& w);

/// The linear diagonal action tau(t): z_i -> t^{m_i} z_i.
ActionSpec diagonal_action(const WeightMatrix& m, int n, int r, QRing base);

/// Zero-weight-averaging linearization: computes phi(t) = tau(t^{-1}) o
/// sigma(t), takes the zero-weight component G as the conjugator beta, and
/// verifies tau(t) = beta o sigma(t) o beta^{-1} symbolically (equivalently
/// sigma(t) = beta^{-1} o tau(t) o beta). Handles nonzero constant terms and
/// non-diagonal linear parts by conjugating first; the reported beta is the
/// total conjugator against the original input action.
LinearizationReport average_linearize(const ActionSpec& spec);

/// Checks (sigma ⊗ Id) o phi = psi o sigma on generators.
bool verify_action_equivalence(const ActionSpec& phi, const ActionSpec& psi, const Endo& sigma);

}  // namespace freelin
