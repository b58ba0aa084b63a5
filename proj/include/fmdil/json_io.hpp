#pragma once

#include <json.hpp>

#include "fmdil/crossed.hpp"
#include "fmdil/verify.hpp"

namespace fmdil {

using Json = nlohmann::ordered_json;

// {"kind":"cyclic"|"dihedral"|"hypercube"|"symmetric","n":int}
// or {"kind":"table","mult":[[int]]}
FiniteGroup group_from_json(const Json& j);

// {"kind":"table","values":[real]} | {"kind":"delta","scale":real} | {"kind":"hamming"}
CndFunction psi_from_json(const Json& j, const FiniteGroup& g);

struct ProblemInput {
    FiniteGroup group;
    CndFunction psi;
};

// {"group": <descriptor>, "psi": <descriptor>}
ProblemInput input_from_json(const Json& j);
ProblemInput load_input_file(const std::string& path);

Json to_json(const StepVector& h);
Json to_json(const WeylPolynomial& x);
Json to_json(const CrossedElement& x);
Json to_json(const CheckRecord& r);
Json to_json(const DilationReport& r);

} // namespace fmdil
