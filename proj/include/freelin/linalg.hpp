#pragma once

#include <optional>
#include <vector>

#include "freelin/scalar.hpp"

namespace freelin {

/// Dense matrix over an exact scalar field, row-major.
using ScalarMat = std::vector<std::vector<Scalar>>;
using ScalarVec = std::vector<Scalar>;

ScalarMat identity_matrix(int n, QRing ring);
ScalarMat mat_mul(const ScalarMat& a, const ScalarMat& b);
ScalarVec mat_apply(const ScalarMat& a, const ScalarVec& v);

/// Exact Gauss-Jordan inverse; nullopt when singular.
std::optional<ScalarMat> mat_inverse(const ScalarMat& a);

bool mat_is_singular(const ScalarMat& a);

/// Solves A x = b exactly (A may be rectangular); nullopt when inconsistent.
/// Free variables, if any, are set to zero.
std::optional<ScalarVec> solve_linear(ScalarMat a, ScalarVec b);

/// Basis of the right null space of A.
std::vector<ScalarVec> nullspace(ScalarMat a, QRing ring);

/// Smith normal form over Z. Returns the invariant factors (diagonal of the
/// normal form, nonnegative, each dividing the next; trailing zeros dropped).
std::vector<Int> smith_invariant_factors(std::vector<std::vector<Int>> m);

}  // namespace freelin
