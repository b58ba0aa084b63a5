#include "fmdil/json_io.hpp"

#include <fstream>

#include "fmdil/errors.hpp"

namespace fmdil {

namespace {

const Json& require(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        throw UsageError(std::string("descriptor is missing key '") + key + "'");
    return j.at(key);
}

int require_int(const Json& j, const char* key) {
    const Json& v = require(j, key);
    if (!v.is_number_integer()) throw UsageError(std::string("key '") + key + "' must be an integer");
    return v.get<int>();
}

} // namespace

FiniteGroup group_from_json(const Json& j) {
    std::string kind = require(j, "kind").get<std::string>();
    if (kind == "cyclic") return make_cyclic(require_int(j, "n"));
    if (kind == "dihedral") return make_dihedral(require_int(j, "n"));
    if (kind == "hypercube") return make_hypercube(require_int(j, "n"));
    if (kind == "symmetric") return make_symmetric(require_int(j, "n"));
    if (kind == "table") {
        const Json& rows = require(j, "mult");
        if (!rows.is_array()) throw UsageError("table group: 'mult' must be an array of rows");
        std::vector<std::vector<int>> table;
        for (const auto& row : rows) {
            if (!row.is_array()) throw UsageError("table group: rows must be arrays");
            table.push_back(row.get<std::vector<int>>());
        }
        return make_from_table(table);
    }
    throw UsageError("unknown group kind '" + kind + "'");
}

CndFunction psi_from_json(const Json& j, const FiniteGroup& g) {
    std::string kind = require(j, "kind").get<std::string>();
    if (kind == "delta") {
        const Json& s = require(j, "scale");
        if (!s.is_number()) throw UsageError("delta psi: 'scale' must be a number");
        return delta_psi(g, s.get<double>());
    }
    if (kind == "hamming") return hamming_psi(g);
    if (kind == "table") {
        const Json& v = require(j, "values");
        if (!v.is_array()) throw UsageError("table psi: 'values' must be an array");
        return table_psi(g, v.get<std::vector<double>>());
    }
    throw UsageError("unknown psi kind '" + kind + "'");
}

ProblemInput input_from_json(const Json& j) {
    FiniteGroup g = group_from_json(require(j, "group"));
    CndFunction psi = psi_from_json(require(j, "psi"), g);
    return ProblemInput{std::move(g), std::move(psi)};
}

ProblemInput load_input_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open input file '" + path + "'");
    Json j;
    try {
        in >> j;
    } catch (const Json::parse_error& e) {
        throw UsageError("malformed JSON in '" + path + "': " + e.what());
    }
    return input_from_json(j);
}

Json to_json(const StepVector& h) {
    Json j;
    j["breakpoints"] = Json::array();
    j["pieces"] = Json::array();
    for (int k = 0; k < h.piece_count(); ++k) {
        j["breakpoints"].push_back(to_string(h.breakpoints()[std::size_t(k)]));
        std::vector<double> piece(h.pieces()[std::size_t(k)].begin(), h.pieces()[std::size_t(k)].end());
        j["pieces"].push_back(piece);
    }
    return j;
}

Json to_json(const WeylPolynomial& x) {
    Json j = Json::array();
    for (const auto& t : x.terms()) {
        Json term = to_json(t.exponent);
        Json entry;
        entry["coeff"] = {t.coeff.real(), t.coeff.imag()};
        entry["breakpoints"] = term["breakpoints"];
        entry["pieces"] = term["pieces"];
        j.push_back(entry);
    }
    return j;
}

Json to_json(const CrossedElement& x) {
    Json j = Json::object();
    for (const auto& [s, f] : x.comps) j[std::to_string(s)] = to_json(f);
    return j;
}

Json to_json(const CheckRecord& r) {
    Json j;
    j["kind"] = r.kind;
    j["params"] = r.params;
    j["residual"] = r.residual;
    j["tol"] = r.tol;
    j["pass"] = r.pass;
    return j;
}

Json to_json(const DilationReport& r) {
    Json j;
    j["suite"] = r.suite;
    j["group"] = r.group_name;
    j["psi"] = r.psi_descriptor;
    j["cocycle_dim"] = r.cocycle_dim;
    j["tolerance"] = r.tolerance;
    j["checks"] = Json::array();
    for (const auto& c : r.checks) j["checks"].push_back(to_json(c));
    j["max_residual"] = r.max_residual;
    j["pass"] = r.pass;
    j["wall_time_s"] = r.wall_time_s;
    return j;
}

} // namespace fmdil
