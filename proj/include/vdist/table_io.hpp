#pragma once

#include <string>

#include "json.hpp"
#include "vdist/distributions.hpp"
#include "vdist/interval.hpp"
#include "vdist/tables.hpp"

namespace vdist {

// CSV: header "y,count" or "y,count,lo,hi", one row per support point.
FrequencyTable read_table_csv(const std::string& path);
std::string table_to_csv(const FrequencyTable& table);
void write_table_csv(const FrequencyTable& table, const std::string& path);

// JSON mirror: {"support": [...], "counts": [...], "intervals": [[lo,hi],...]?}
FrequencyTable table_from_json(const nlohmann::json& j);
nlohmann::json table_to_json(const FrequencyTable& table);

// "[a,b),[c,d)" (b may be "inf", a "-inf") or a value set "{0,1,2,3}".
Region parse_region(const std::string& text);
std::string region_to_string(const Region& region);

// "family:p1[,p2]" with lowercase family names, e.g. "exponential:1",
// "binomial:8,0.1", "gamma:2,0.5" (gamma read as shape,rate).
ParametricModel parse_model(const std::string& text);

}  // namespace vdist
