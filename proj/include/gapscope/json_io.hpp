#pragma once

#include "gapscope/census.hpp"
#include "gapscope/families.hpp"
#include "gapscope/jacobi.hpp"
#include "gapscope/spectrum.hpp"

#include <json.hpp>

#include <string>

namespace gapscope {

/// {"model": "...", "a": [...], "v": [...], "backend": "exact"|"float"}.
/// Exact scalars are "n"/"n/d" strings, float scalars plain numbers.
nlohmann::json vector_to_json(const VectorQ& c);
nlohmann::json vector_to_json(const VectorD& c);
nlohmann::json vector_to_json(const AnyVector& c);
AnyVector vector_from_json(const nlohmann::json& j);

nlohmann::json certificate_to_json(const ClosedGapCertificate& cert);
nlohmann::json report_to_json(const SpectrumReport& rep);
std::string report_to_csv(const SpectrumReport& rep);

template <class S>
nlohmann::json family_to_json(const FamilyInstance<S>& inst);

nlohmann::json census_to_json(const CensusResult& res);

} // namespace gapscope
