#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "freelin/endo.hpp"
#include "freelin/genmat.hpp"
#include "freelin/lift2.hpp"
#include "freelin/rees.hpp"
#include "freelin/tensor.hpp"
#include "freelin/torus.hpp"

namespace freelin::io {

// Field order is fixed everywhere so serialized output is byte-reproducible.
using json = nlohmann::ordered_json;

/// Schema violation carrying a JSON-pointer-style path to the offending node.
class SchemaError : public std::runtime_error {
public:
    SchemaError(std::string path, const std::string& what)
        : std::runtime_error(path + ": " + what), path_(std::move(path)) {}
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

/// Canonical rational string "p/q" with q > 0 and gcd(p, q) = 1; the
/// denominator is always written, so integers read "k/1".
std::string rational_str(const Rat& v);

json to_json(const Scalar& c);
json to_json(const LaurentScalar& c);
json to_json(const FreePoly& f);
json to_json(const LFreePoly& f);
json to_json(const Endo& e);
json to_json(const ActionSpec& a);
json to_json(const CommPoly& f);
json to_json(const CommEndo& e);
json to_json(const TameFactorization& f);
json to_json(const TensorPoly& t);
json to_json(const JacobianMatrix& j);
json to_json(const CoeffMap& m);
json to_json(const ScalarMat& m);
json to_json(const IdealPresentation& p);
json to_json(const GradedPresentation& p);
json to_json(const HomWitness& w);
json to_json(const InversionReport& r);
json to_json(const JacobianInversion& r);
json to_json(const WeightData& w);
json to_json(const LinearizationReport& r);
json to_json(const GradedAction& a);
json to_json(const CancellationPair& c);

Scalar parse_scalar(const json& j, QRing ring, const std::string& path);
FreePoly parse_free_poly(const json& j, const std::string& path = "");
LFreePoly parse_lfree_poly(const json& j, const std::string& path = "");
Endo parse_endo(const json& j, const std::string& path = "");
ActionSpec parse_action(const json& j, const std::string& path = "");
CommPoly parse_comm_poly(const json& j, const std::string& path = "");
CommEndo parse_comm_endo(const json& j, const std::string& path = "");
TameFactorization parse_factorization(const json& j, const std::string& path = "");
IdealPresentation parse_ideal(const json& j, const std::string& path = "");
GradedPresentation parse_presentation(const json& j, const std::string& path = "");

}  // namespace freelin::io
