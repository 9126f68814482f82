#pragma once

#include <string>
#include <vector>

#include "latticebm/search.hpp"

namespace latticebm {

// JSON text forms for the public data types. Every rational travels as a
// string ("7/3", "-2"), exponents as a rational string or "inf"/"-inf", so
// values never pass through binary floating point. Keys keep insertion
// order, so equal values serialize to identical bytes.
//
// Shapes:
//   set          {"dim": 2, "boxes": [[{"lo","hi","lo_open","hi_open"}, ..], ..],
//                 "points": [["0","1"], ..]}
//   function     {"dim": 1, "atoms": [{"x": ["0"], "value": "2"}, ..], "char": <set>?}
//   basis        {"rows": [["2","0"], ["0","2"]]}
//   certificate  {"theorem", "verdict", "lhs": {"degree", "terms": [["coeff","radicand"], ..]},
//                 "rhs": .., "witness": {"note", "x"?, "y"?}?}
// The open flags of a factor may be omitted on input and default to closed.

std::string to_json(const SetExpr& s);
std::string to_json(const PointMassFunction& f);
std::string to_json(const LatticeBasis& basis);
std::string to_json(const Certificate& cert);
std::string to_json(const ScanReport& report);
std::string to_json(const std::vector<ReproCheck>& checks);
std::string to_json(const std::vector<RiemannStep>& steps);

SetExpr set_from_json(const std::string& text);
PointMassFunction function_from_json(const std::string& text);
LatticeBasis basis_from_json(const std::string& text);

// File loaders for the CLI; failures name the path.
SetExpr load_set(const std::string& path);
PointMassFunction load_function(const std::string& path);
LatticeBasis load_basis(const std::string& path);

}  // namespace latticebm
