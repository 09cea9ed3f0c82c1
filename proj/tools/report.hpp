#pragma once

#include <string>

#include "json.hpp"

#include "garnier/linear_ode.hpp"
#include "garnier/monodromy.hpp"
#include "garnier/params.hpp"
#include "garnier/solutions.hpp"

namespace garnier::report {

using json = nlohmann::json;

json to_json(cplx z);
json to_json(const Matrix2& m);
json to_json(const Params& p);
json to_json(const BiSeries& s);
json to_json(const SolutionExpansion& e);
json to_json(const ResidualReport& r);
json to_json(const MonodromyTuple& t);
json to_json(const IdentityReport& r);
json to_json(const CompareReport& r);
json to_json(const LocalExponents& e);
json to_json(const RationalODE& ode);

/// Accepts a number or [re, im].
cplx complex_from(const json& j);
/// Object with alpha0, alpha1, alpha2, nu, eta; alphaInf is optional and, if
/// present, must satisfy the Fuchs relation (NonGenericParams otherwise).
Params params_from(const json& j);
/// Inline JSON when the text starts with '{', else a file path.
Params params_from_text(const std::string& text);

/// Serialises with every number printed as %.17g, keys in sorted order.
std::string dump(const json& j, int indent = 2);

}  // namespace garnier::report
