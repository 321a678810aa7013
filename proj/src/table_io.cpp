#include "vdist/table_io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "vdist/errors.hpp"

namespace vdist {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.push_back("");
  return out;
}

double parse_number(const std::string& raw, const char* what, bool allow_infinite = false) {
  const std::string s = trim(raw);
  if (allow_infinite) {
    if (s == "inf" || s == "+inf") return INFINITY;
    if (s == "-inf") return -INFINITY;
  }
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw ParseError(std::string(what) + ": trailing characters in '" + s + "'");
    if (!allow_infinite && !std::isfinite(v))
      throw ParseError(std::string(what) + ": non-finite value '" + s + "'");
    return v;
  } catch (const std::invalid_argument&) {
    throw ParseError(std::string(what) + ": not a number: '" + s + "'");
  } catch (const std::out_of_range&) {
    throw ParseError(std::string(what) + ": out of range: '" + s + "'");
  }
}

std::string format12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

FrequencyTable read_table_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open table file: " + path);
  std::string line;
  if (!std::getline(in, line)) throw ParseError(path + ": empty file");
  std::string header = trim(line);
  if (!header.empty() && header.back() == '\r') header.pop_back();
  const bool with_intervals = header == "y,count,lo,hi";
  if (!with_intervals && header != "y,count")
    throw ParseError(path + ": expected header 'y,count' or 'y,count,lo,hi'");

  std::vector<double> support, counts;
  std::vector<Interval> cells;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    std::string row = trim(line);
    if (!row.empty() && row.back() == '\r') row.pop_back();
    if (row.empty()) continue;
    const auto fields = split(row, ',');
    const std::size_t expected = with_intervals ? 4 : 2;
    if (fields.size() != expected)
      throw ParseError(path + ":" + std::to_string(lineno) + ": expected " +
                       std::to_string(expected) + " fields");
    support.push_back(parse_number(fields[0], "y"));
    counts.push_back(parse_number(fields[1], "count"));
    if (with_intervals)
      cells.push_back({parse_number(fields[2], "lo"), parse_number(fields[3], "hi")});
  }
  try {
    if (with_intervals) return {std::move(support), std::move(counts), std::move(cells)};
    return {std::move(support), std::move(counts)};
  } catch (const Error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::string table_to_csv(const FrequencyTable& table) {
  std::ostringstream out;
  const bool with_intervals = table.intervals().has_value();
  out << (with_intervals ? "y,count,lo,hi" : "y,count") << "\n";
  for (std::size_t i = 0; i < table.size(); ++i) {
    out << format12(table.support()[i]) << "," << format12(table.counts()[i]);
    if (with_intervals)
      out << "," << format12((*table.intervals())[i].lo) << ","
          << format12((*table.intervals())[i].hi);
    out << "\n";
  }
  return out.str();
}

void write_table_csv(const FrequencyTable& table, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write table file: " + path);
  out << table_to_csv(table);
}

FrequencyTable table_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("support") || !j.contains("counts"))
    throw ParseError("table JSON needs 'support' and 'counts' arrays");
  std::vector<double> support, counts;
  try {
    support = j.at("support").get<std::vector<double>>();
    counts = j.at("counts").get<std::vector<double>>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("table JSON: ") + e.what());
  }
  std::optional<std::vector<Interval>> cells;
  if (j.contains("intervals") && !j.at("intervals").is_null()) {
    cells.emplace();
    for (const auto& pair : j.at("intervals")) {
      if (!pair.is_array() || pair.size() != 2)
        throw ParseError("table JSON: each interval must be [lo, hi]");
      cells->push_back({pair[0].get<double>(), pair[1].get<double>()});
    }
  }
  try {
    return {std::move(support), std::move(counts), std::move(cells)};
  } catch (const Error& e) {
    throw ParseError(std::string("table JSON: ") + e.what());
  }
}

nlohmann::json table_to_json(const FrequencyTable& table) {
  nlohmann::json j;
  j["support"] = table.support();
  j["counts"] = table.counts();
  if (table.intervals()) {
    auto arr = nlohmann::json::array();
    for (const auto& c : *table.intervals()) arr.push_back({c.lo, c.hi});
    j["intervals"] = arr;
  }
  return j;
}

Region parse_region(const std::string& text) {
  const std::string s = trim(text);
  if (s.empty()) throw ParseError("region: empty specification");
  Region region;

  if (s.front() == '{') {
    if (s.back() != '}') throw ParseError("region: value set must end with '}'");
    for (const auto& item : split(s.substr(1, s.size() - 2), ','))
      region.values.push_back(parse_number(item, "region value"));
    if (region.values.empty()) throw ParseError("region: empty value set");
    return region;
  }

  // comma-separated "[a,b)" intervals; split on the commas between ')' and '['
  std::size_t pos = 0;
  while (pos < s.size()) {
    if (s[pos] == ',') {
      ++pos;
      continue;
    }
    if (s[pos] != '[') throw ParseError("region: expected '[' at position " + std::to_string(pos));
    const std::size_t close = s.find(')', pos);
    if (close == std::string::npos) throw ParseError("region: missing ')'");
    const std::string body = s.substr(pos + 1, close - pos - 1);
    const auto parts = split(body, ',');
    if (parts.size() != 2) throw ParseError("region: interval needs exactly two endpoints");
    const double lo = parse_number(parts[0], "region lo", true);
    const double hi = parse_number(parts[1], "region hi", true);
    if (!(lo < hi)) throw ParseError("region: interval endpoints must satisfy lo < hi");
    region.intervals.push_back({lo, hi});
    pos = close + 1;
  }
  if (region.intervals.empty()) throw ParseError("region: no intervals found");
  return region;
}

std::string region_to_string(const Region& region) {
  std::ostringstream out;
  if (!region.values.empty()) {
    out << "{";
    for (std::size_t i = 0; i < region.values.size(); ++i) {
      if (i) out << ",";
      out << format12(region.values[i]);
    }
    out << "}";
    return out.str();
  }
  for (std::size_t i = 0; i < region.intervals.size(); ++i) {
    if (i) out << ",";
    out << "[" << format12(region.intervals[i].lo) << "," << format12(region.intervals[i].hi)
        << ")";
  }
  return out.str();
}

ParametricModel parse_model(const std::string& text) {
  const std::string s = trim(text);
  const std::size_t colon = s.find(':');
  if (colon == std::string::npos)
    throw ParseError("model: expected 'family:p1[,p2]', got '" + s + "'");
  const auto family = family_from_name(trim(s.substr(0, colon)));
  if (!family)
    throw ParseError("model: unknown family '" + trim(s.substr(0, colon)) + "'");
  std::vector<double> params;
  for (const auto& item : split(s.substr(colon + 1), ','))
    params.push_back(parse_number(item, "model parameter"));
  try {
    return {*family, std::move(params)};
  } catch (const Error& e) {
    throw ParseError(std::string("model: ") + e.what());
  }
}

}  // namespace vdist
