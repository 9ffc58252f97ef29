#include "sepcone/io.hpp"

#include <fstream>

#include "json.hpp"

namespace sepcone {

namespace {

using ordered_json = nlohmann::ordered_json;

Complex parse_entry(const ordered_json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ParseError("state file: complex entries must be [re, im] pairs");
    return Complex(j[0].get<double>(), j[1].get<double>());
}

ordered_json dump_entry(const Complex& z) {
    return ordered_json::array({z.real(), z.imag()});
}

DimSpec parse_dims(const ordered_json& j) {
    if (!j.contains("dims") || !j["dims"].is_array() || j["dims"].empty())
        throw ParseError("state file: missing or empty dims");
    std::vector<int> dims;
    for (const auto& d : j["dims"]) {
        if (!d.is_number_integer() || d.get<int>() < 1)
            throw ParseError("state file: dims must be positive integers");
        dims.push_back(d.get<int>());
    }
    return make_dims(dims);
}

void write_json(const std::string& path, const ordered_json& j) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << j.dump(2) << "\n";
    if (!out) throw IoError("write failed: " + path);
}

}  // namespace

AnyState read_state_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open state file: " + path);
    ordered_json j;
    try {
        j = ordered_json::parse(in);
    } catch (const std::exception& e) {
        throw ParseError(std::string("state file: invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("state file: top level must be an object");

    const DimSpec dims = parse_dims(j);
    if (!j.contains("kind") || !j["kind"].is_string())
        throw ParseError("state file: missing kind");
    const std::string kind = j["kind"].get<std::string>();
    if (!j.contains("data") || !j["data"].is_array())
        throw ParseError("state file: missing data");
    const ordered_json& data = j["data"];
    const Index total = dims.total();

    try {
        if (kind == "pure") {
            if (static_cast<Index>(data.size()) != total)
                throw ParseError("state file: data length does not match dims");
            CVector v(total);
            for (Index i = 0; i < total; ++i) v(i) = parse_entry(data[i]);
            return make_pure(dims, v);
        }
        if (kind == "mixed") {
            if (static_cast<Index>(data.size()) != total)
                throw ParseError("state file: row count does not match dims");
            CMatrix m(total, total);
            for (Index i = 0; i < total; ++i) {
                const ordered_json& row = data[i];
                if (!row.is_array() || static_cast<Index>(row.size()) != total)
                    throw ParseError("state file: row length does not match dims");
                for (Index k = 0; k < total; ++k) m(i, k) = parse_entry(row[k]);
            }
            const MixedState state = make_mixed(dims, m);
            Eigen::SelfAdjointEigenSolver<CMatrix> es(state.matrix, Eigen::EigenvaluesOnly);
            if (es.eigenvalues().minCoeff() < -1e-8)
                throw ParseError("state file: matrix is not positive semidefinite");
            return state;
        }
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception& e) {
        throw ParseError(std::string("state file: invalid state: ") + e.what());
    }
    throw ParseError("state file: kind must be \"pure\" or \"mixed\"");
}

void write_state_file(const std::string& path, const PureState& state) {
    ordered_json j;
    j["dims"] = state.dims.dims;
    j["kind"] = "pure";
    ordered_json data = ordered_json::array();
    for (Index i = 0; i < state.amplitudes.size(); ++i)
        data.push_back(dump_entry(state.amplitudes(i)));
    j["data"] = std::move(data);
    j["metadata"] = ordered_json::object();
    write_json(path, j);
}

void write_state_file(const std::string& path, const MixedState& state) {
    ordered_json j;
    j["dims"] = state.dims.dims;
    j["kind"] = "mixed";
    ordered_json data = ordered_json::array();
    for (Index i = 0; i < state.matrix.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (Index k = 0; k < state.matrix.cols(); ++k)
            row.push_back(dump_entry(state.matrix(i, k)));
        data.push_back(std::move(row));
    }
    j["data"] = std::move(data);
    j["metadata"] = ordered_json::object();
    write_json(path, j);
}

}  // namespace sepcone
