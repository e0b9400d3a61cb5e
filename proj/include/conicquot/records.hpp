#pragma once

// JSON records shared by the CLI and the acceptance runner.
//
// Numbers: a rational is a "p/q" string (or "p"); any other cyclotomic number is
// {"conductor": N, "coeffs": [...]} in the power basis of xi_N. Points of P^1 are
// [t1, t0]; matrices are [[a, b], [c, d]]. Decoding errors are ParseError with
// the JSON path of the offending field.

#include <string>
#include <vector>

#include <json.hpp>

#include "conicquot/birational_compare.hpp"

namespace conicquot {

using Json = nlohmann::ordered_json;

Json to_json(const Rational& q);
Json to_json(const CycloNum& x);
Json to_json(const P1Point& p);
Json to_json(const Pgl2Elem& g);
Json to_json(const FieldSpec& k);
Json to_json(const HJFraction& f);
Json to_json(const FibreChain& c);
Json to_json(const FibreFate& f);
Json to_json(const OrbitDatum& o);
Json to_json(const HomogeneousForm& f);
Json to_json(const EquationPayload& p);
Json to_json(const SurfaceModel& s);
Json to_json(const Violation& v);
Json to_json(const Table1Counts& c);
Json to_json(const QuotientReport& r);
Json to_json(const ScanReport& r);
Json to_json(const ExampleVerification& v);
Json to_json(const StabilizedExample& e);
Json to_json(const std::vector<std::vector<PairVerdict>>& matrix);

Rational rational_from_json(const Json& j, const std::string& path);
/// Rational strings land in `conductor`; explicit records are embedded into it.
CycloNum cyclo_from_json(const Json& j, int conductor, const std::string& path);
P1Point point_from_json(const Json& j, int conductor, const std::string& path);
Pgl2Elem matrix_from_json(const Json& j, int conductor, const std::string& path);
/// {"label": "Q(i)", "conductor": 8} or with explicit "generators".
FieldSpec field_from_json(const Json& j, const std::string& path);
OrbitDatum orbit_from_json(const Json& j, int conductor, const std::string& path);
SurfaceModel model_from_json(const Json& j, const std::string& path = "$");
std::vector<SurfaceModel> models_from_json(const Json& j, const std::string& path = "$");

/// "-" reads standard input.
Json read_json(const std::string& file);
/// Pretty-printed with a trailing newline.
std::string dump(const Json& j);

}  // namespace conicquot
