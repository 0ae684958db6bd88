#pragma once

#include <string>

#include <json.hpp>

#include "markoff_teich/identities.hpp"

namespace mkt::io {

// JSON schema (versioned, "schema": 1). High-precision values are decimal
// strings so a report round-trips without passing through doubles.

nlohmann::json report_to_json(const identities::IdentityReport& report);
identities::IdentityReport report_from_json(const nlohmann::json& j);

std::string report_to_csv(const identities::IdentityReport& report);

// Fixed CSV columns shared by all emissions:
// curve_p,curve_q,sector,height,trace,length,value,aux1,aux2
extern const char* const kCsvHeader;

std::string f_rows_to_csv(const std::vector<identities::FRow>& rows, const char* sector);
nlohmann::json f_rows_to_json(const std::vector<identities::FRow>& rows, const char* sector);

std::string small_f_rows_to_csv(const std::vector<identities::SmallFRow>& rows, const char* sector);
nlohmann::json small_f_rows_to_json(const std::vector<identities::SmallFRow>& rows, const char* sector);

std::string unit_ball_rows_to_csv(const std::vector<identities::UnitBallRow>& rows);
nlohmann::json unit_ball_rows_to_json(const std::vector<identities::UnitBallRow>& rows);

std::string markoff_to_csv(const std::vector<traces::MarkoffTriple>& triples);
nlohmann::json markoff_to_json(const std::vector<traces::MarkoffTriple>& triples);

} // namespace mkt::io
