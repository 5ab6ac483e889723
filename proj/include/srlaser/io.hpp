#pragma once
#include "srlaser/params.hpp"
#include <nlohmann/json.hpp>
#include <ostream>
#include <string>
#include <vector>

namespace srl {

// Tabular output: one '#'-prefixed single-line JSON metadata header, a
// column-name row, then data rows at 17 significant digits.  No timestamps
// anywhere, so reruns are byte-identical.  Cells are typed (number or string).
struct Table {
    nlohmann::json meta;
    std::vector<std::string> columns;
    std::vector<std::vector<nlohmann::json>> rows;

    void add_row(std::vector<nlohmann::json> cells) { rows.push_back(std::move(cells)); }
};

void write_csv(std::ostream& os, const Table& t);
// Same payload as JSON: {"meta": ..., "columns": [...], "rows": [[...], ...]}.
void write_json(std::ostream& os, const Table& t);
// Dispatch on format ("csv" or "json"); path "-" writes to stdout.
void write_table(const std::string& path, const std::string& format, const Table& t);

// Parse a config file holding exactly one of a "physical" or "dimensionless"
// block (plus optional "pump").  Unknown keys are rejected by name.
LaserParams load_config(const std::string& path);
LaserParams params_from_json(const nlohmann::json& j);

// Serialize params into table metadata.
nlohmann::json params_to_json(const LaserParams& p);

// One double at 17 significant digits.
std::string format_sig(double v);

} // namespace srl
