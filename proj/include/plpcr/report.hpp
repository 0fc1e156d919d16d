#pragma once

#include <iosfwd>

#include <json.hpp>

#include "plpcr/inference.hpp"
#include "plpcr/montecarlo.hpp"

namespace plpcr {

/// Negative `decimals` prints full round-trip precision.
void write_table_csv(std::ostream& out, const EstimateTable& table, int decimals = 3);
nlohmann::ordered_json to_json(const EstimateTable& table);

void write_report_csv(std::ostream& out, const McReport& report, int decimals = 4);
nlohmann::ordered_json to_json(const McReport& report);

}  // namespace plpcr
