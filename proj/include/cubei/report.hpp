#pragma once

#include <string>

#include <json.hpp>

#include "cubei/interaction.hpp"
#include "cubei/stats.hpp"

namespace cubei {

// Round-trip formatting for doubles ("%.17g"); used wherever values must be
// byte-stable across runs.
std::string format_double(double v);

const char* method_name(ValueMethod m);

// Rows sorted by (order, subset lexicographic). JSON entries additionally
// carry the exact rational when one exists.
nlohmann::json table_to_json(const InteractionTable& table);

// CSV columns: subset,order,value,method,stderr (stderr blank unless Monte
// Carlo). Same ordering and the same numeric values as the JSON form.
std::string table_to_csv(const InteractionTable& table);

nlohmann::json fit_report_to_json(const FitReport& report, int n);
std::string fit_report_to_csv(const FitReport& report, int n);

}  // namespace cubei
