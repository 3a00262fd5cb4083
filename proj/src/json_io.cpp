#include "starrel/json_io.hpp"

#include <fstream>
#include <sstream>

namespace starrel {

Json matrix_to_json(const CMatrix& m) {
    Json entries = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
        entries.push_back(std::move(row));
    }
    return Json{{"dim", m.rows()}, {"entries", std::move(entries)}};
}

CMatrix matrix_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("entries"))
        throw Error(Errc::InvalidArgument, "matrix JSON needs dim and entries");
    const Eigen::Index n = j.at("dim").get<Eigen::Index>();
    if (n < 0) throw Error(Errc::BadDimension, "negative dim");
    const Json& entries = j.at("entries");
    if (static_cast<Eigen::Index>(entries.size()) != n)
        throw Error(Errc::BadDimension, "row count != dim");
    CMatrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const Json& row = entries.at(i);
        if (static_cast<Eigen::Index>(row.size()) != n)
            throw Error(Errc::BadDimension, "column count != dim");
        for (Eigen::Index c = 0; c < n; ++c) {
            const Json& cell = row.at(c);
            if (!cell.is_array() || cell.size() != 2)
                throw Error(Errc::InvalidArgument, "matrix entries are [re, im] pairs");
            m(i, c) = Complex(cell.at(0).get<double>(), cell.at(1).get<double>());
        }
    }
    return m;
}

Json reptuple_to_json(const RepTuple& rho) {
    Json gens = Json::object();
    for (const auto& [g, m] : rho.assignment) gens[g.token()] = matrix_to_json(m);
    return Json{{"dim", rho.dim}, {"gens", std::move(gens)}};
}

RepTuple reptuple_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("gens"))
        throw Error(Errc::InvalidArgument, "tuple JSON needs dim and gens");
    RepTuple rho(j.at("dim").get<Eigen::Index>());
    if (rho.dim < 0) throw Error(Errc::BadDimension, "negative dim");
    for (const auto& [name, mj] : j.at("gens").items()) {
        CMatrix m = matrix_from_json(mj);
        if (m.rows() != rho.dim) throw Error(Errc::DimMismatch, name);
        rho.assignment[GeneratorId(name)] = std::move(m);
    }
    return rho;
}

Json check_report_to_json(const CheckReport& rep) {
    return Json{{"satisfied", rep.satisfied},
                {"residuals", rep.residuals},
                {"flags", rep.flags},
                {"tolerance", rep.tolerance}};
}

Json fdalgebra_to_json(const FDAlgebra& a) { return Json{{"blocks", a.blocks}}; }

FDAlgebra fdalgebra_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("blocks"))
        throw Error(Errc::InvalidArgument, "algebra JSON needs blocks");
    return FDAlgebra(j.at("blocks").get<std::vector<Eigen::Index>>());
}

Json fdelement_to_json(const FDElement& e) {
    Json out = Json::array();
    for (const auto& m : e.mats) out.push_back(matrix_to_json(m));
    return out;
}

FDElement fdelement_from_json(const Json& j) {
    if (!j.is_array()) throw Error(Errc::InvalidArgument, "element JSON is a matrix list");
    FDElement e;
    for (const auto& mj : j) e.mats.push_back(matrix_from_json(mj));
    return e;
}

Json search_result_to_json(const SearchResult& r) {
    Json history = Json::array();
    for (const auto& [it, res] : r.history) history.push_back(Json::array({it, res}));
    return Json{{"converged", r.converged},
                {"residual", r.residual},
                {"iterations", r.iterations},
                {"best", reptuple_to_json(r.best)},
                {"history", std::move(history)}};
}

Json evidence_to_json(const EvidenceReport& rep) {
    Json gens = Json::array();
    for (const auto& ev : rep.per_generator) {
        Json witnesses = Json::array();
        for (const auto& w : ev.witnesses) witnesses.push_back(reptuple_to_json(w));
        gens.push_back(Json{{"generator", ev.gen.token()},
                            {"evidence", ev.unbounded ? "unbounded" : "bounded"},
                            {"max_norm_found", ev.max_norm_found},
                            {"targets_hit", ev.targets_hit},
                            {"witnesses", std::move(witnesses)}});
    }
    return Json{{"targets", rep.targets},
                {"per_generator", std::move(gens)},
                {"note", "norm-probe evidence only; no compactness decision"}};
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::InvalidArgument, "cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

} // namespace starrel
