#ifndef STARREL_JSON_IO_HPP
#define STARREL_JSON_IO_HPP

#include <json.hpp>
#include <string>

#include "starrel/fdca.hpp"
#include "starrel/relations.hpp"
#include "starrel/search_config.hpp"

namespace starrel {

using Json = nlohmann::json;

// Matrix wire format: {"dim": n, "entries": [[[re, im], ...], ...]} row-major.
Json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const Json& j);

// RepTuple: {"dim": n, "gens": {"x": <matrix>, ...}}.
Json reptuple_to_json(const RepTuple& rho);
RepTuple reptuple_from_json(const Json& j);

// CheckReport: {"satisfied": ..., "residuals": [...], "flags": [...],
// "tolerance": ...}.
Json check_report_to_json(const CheckReport& rep);

// FDAlgebra: {"blocks": [2, 3, 4]}; FDElement: a list of matrix objects.
Json fdalgebra_to_json(const FDAlgebra& a);
FDAlgebra fdalgebra_from_json(const Json& j);
Json fdelement_to_json(const FDElement& e);
FDElement fdelement_from_json(const Json& j);

Json search_result_to_json(const SearchResult& r);
Json evidence_to_json(const EvidenceReport& rep);

std::string read_text_file(const std::string& path);

} // namespace starrel

#endif
