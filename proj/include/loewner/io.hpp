#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "loewner/certify.hpp"
#include "loewner/gaps.hpp"
#include "loewner/hermitian.hpp"
#include "loewner/maps.hpp"

namespace loewner::io {

using json = nlohmann::json;

namespace detail {

inline Eigen::MatrixXd real_block(const json& rows, Index nrows, Index ncols, const char* name) {
    if (!rows.is_array() || static_cast<Index>(rows.size()) != nrows)
        throw ParseError(std::string("'") + name + "' must be an array of " + std::to_string(nrows) + " rows");
    Eigen::MatrixXd out(nrows, ncols);
    for (Index i = 0; i < nrows; ++i) {
        const json& row = rows[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Index>(row.size()) != ncols)
            throw ParseError(std::string("row ") + std::to_string(i) + " of '" + name + "' must have " +
                             std::to_string(ncols) + " numbers");
        for (Index j = 0; j < ncols; ++j) {
            const json& v = row[static_cast<std::size_t>(j)];
            if (!v.is_number()) throw ParseError(std::string("non-numeric entry in '") + name + "'");
            out(i, j) = v.get<double>();
        }
    }
    return out;
}

inline json rows_of(const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline ComplexMatrix complex_from(const json& j, const char* re_key, const char* im_key, Index nrows, Index ncols) {
    if (!j.contains(re_key)) throw ParseError(std::string("missing '") + re_key + "'");
    ComplexMatrix m = real_block(j.at(re_key), nrows, ncols, re_key).cast<Complex>();
    if (j.contains(im_key)) m += Complex(0, 1) * real_block(j.at(im_key), nrows, ncols, im_key).cast<Complex>();
    return m;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Matrices: {"dim": n, "re": [[...]], "im": [[...]]}, "im" optional.

inline HermitianMatrix matrix_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("matrix must be a JSON object");
    Index n;
    if (j.contains("dim")) {
        if (!j.at("dim").is_number_integer() || j.at("dim").get<Index>() < 1)
            throw ParseError("'dim' must be a positive integer");
        n = j.at("dim").get<Index>();
    } else if (j.contains("re") && j.at("re").is_array()) {
        n = static_cast<Index>(j.at("re").size());
    } else {
        throw ParseError("matrix needs 'dim' and 're'");
    }
    return HermitianMatrix(detail::complex_from(j, "re", "im", n, n));
}

inline json to_json(const HermitianMatrix& m) {
    json j;
    j["dim"] = m.dim();
    j["re"] = detail::rows_of(m.matrix().real());
    if (m.matrix().imag().cwiseAbs().maxCoeff() > 0.0) j["im"] = detail::rows_of(m.matrix().imag());
    return j;
}

/// One matrix object, or an array of them.
inline std::vector<HermitianMatrix> matrices_from_json(const json& j) {
    std::vector<HermitianMatrix> out;
    if (j.is_array())
        for (const auto& e : j) out.push_back(matrix_from_json(e));
    else
        out.push_back(matrix_from_json(j));
    return out;
}

// ---------------------------------------------------------------------------
// Maps: {"variant":"conjugation","V_re":[[...]],"V_im":[[...]]}
//       {"variant":"pinch","dim":n,"blocks":[[0,1],[2]]}
//       {"variant":"diag","dim":n}
// Families are arrays of maps.

inline PositiveLinearMap map_from_json(const json& j) {
    if (!j.is_object() || !j.contains("variant")) throw ParseError("map needs a 'variant'");
    const std::string variant = j.at("variant").get<std::string>();
    if (variant == "conjugation") {
        const json& re = j.at("V_re");
        if (!re.is_array() || re.empty() || !re[0].is_array()) throw ParseError("'V_re' must be a non-empty matrix");
        return PositiveLinearMap::conjugation(detail::complex_from(j, "V_re", "V_im", static_cast<Index>(re.size()),
                                                                   static_cast<Index>(re[0].size())));
    }
    if (variant == "pinch") {
        std::vector<std::vector<Index>> blocks = j.at("blocks").get<std::vector<std::vector<Index>>>();
        return PositiveLinearMap::pinch(j.at("dim").get<Index>(), std::move(blocks));
    }
    if (variant == "diag") return PositiveLinearMap::diagonal(j.at("dim").get<Index>());
    throw ParseError("unknown map variant '" + variant + "'");
}

inline json to_json(const PositiveLinearMap& phi) {
    json j;
    j["variant"] = phi.variant_name();
    std::visit(
        [&](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, Conjugation>) {
                j["V_re"] = detail::rows_of(m.v.real());
                j["V_im"] = detail::rows_of(m.v.imag());
            } else if constexpr (std::is_same_v<T, Pinch>) {
                j["dim"] = m.dim;
                j["blocks"] = m.blocks;
            } else {
                j["dim"] = m.dim;
            }
        },
        phi.variant());
    return j;
}

inline MapFamily family_from_json(const json& j) {
    std::vector<PositiveLinearMap> maps;
    if (j.is_array())
        for (const auto& e : j) maps.push_back(map_from_json(e));
    else
        maps.push_back(map_from_json(j));
    return MapFamily(std::move(maps));
}

inline json to_json(const MapFamily& family) {
    json arr = json::array();
    for (const auto& m : family.maps()) arr.push_back(to_json(m));
    return arr;
}

// ---------------------------------------------------------------------------
// Reports

inline json to_json(const Certificate& c) {
    json j;
    j["statement"] = c.statement;
    j["pass"] = c.pass;
    j["slack"] = c.slack;
    j["tol"] = c.tol;
    j["base_tol"] = c.base_tol;
    json consts = json::object();
    for (const auto& [k, v] : c.constants) consts[k] = v;
    j["constants"] = consts;
    j["inputs"] = {{"dims", c.inputs.dims}, {"function", c.inputs.function}, {"digests", c.inputs.matrices}};
    if (c.solver)
        j["solver"] = {{"name", c.solver->solver},
                       {"seed", c.solver->seed},
                       {"restarts", c.solver->restarts},
                       {"iterations", c.solver->iterations},
                       {"converged", c.solver->converged}};
    return j;
}

inline json to_json(const GapResult& r) {
    std::vector<double> re, im;
    for (Index i = 0; i < r.maximizer.size(); ++i) {
        re.push_back(r.maximizer(i).real());
        im.push_back(r.maximizer(i).imag());
    }
    return {{"value", r.value},          {"maximizer_re", re},         {"maximizer_im", im},
            {"solver", r.solver},        {"iterations", r.iterations}, {"restarts", r.restarts},
            {"converged", r.converged}};
}

// ---------------------------------------------------------------------------
// Files

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError("'" + path + "': " + e.what());
    }
}

inline std::vector<HermitianMatrix> read_matrices(const std::string& path) {
    return matrices_from_json(read_json_file(path));
}

inline MapFamily read_family(const std::string& path) { return family_from_json(read_json_file(path)); }

} // namespace loewner::io
