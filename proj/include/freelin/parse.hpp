#pragma once

#include <string>

#include "freelin/freepoly.hpp"

namespace freelin {

/// Result of parsing surface syntax such as "t^2*z1*z2 - z2*z1".
struct ParsedPoly {
    LFreePoly poly;
    bool uses_parameters = false;  // true iff some t_k appeared in the text

    /// Scalar-coefficient view; requires uses_parameters == false.
    FreePoly as_free() const;
};

/// Parses an expression in generators z1..zn (x1..xn also accepted) and
/// parameters t1..tr (t = t1), with +, -, *, ^, parentheses and rational
/// literals. n and r are inferred from the largest indices used; negative
/// exponents are allowed on parameter monomials only.
ParsedPoly parse_surface(const std::string& text, QRing base = QRing{});

}  // namespace freelin
