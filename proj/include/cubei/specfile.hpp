#pragma once

#include <string>

#include <json.hpp>

#include "cubei/expression.hpp"
#include "cubei/function_spec.hpp"

namespace cubei {

// Spec-file JSON schema:
//   { "n": 2, "function": { "kind": "...", ...payload } }
// kinds: multilinear | choquet | pseudo_multilinear | multiplicative |
//        geometric_mean | expression.
// Subset arrays are strictly increasing 1-based indices; rational scalars
// are strings like "-3/4" (or bare integers). Expression payloads carry the
// formula text and an optional "smooth" hint (default false).
FunctionSpec parse_spec_json(const nlohmann::json& doc);

FunctionSpec load_spec_file(const std::string& path);

// Serializations that re-load as multilinear spec files; rationals are
// written as exact "p/q" strings, doubles in round-trip form.
nlohmann::json poly_spec_json(const MultilinearPoly<Rational>& poly);
nlohmann::json poly_spec_json(const MultilinearPoly<double>& poly);

}  // namespace cubei
