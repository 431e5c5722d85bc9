#include "permutangle/records.hpp"

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>

#include "permutangle/error.hpp"

namespace permutangle {
namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur.push_back(ch);
    }
  }
  fields.push_back(cur);
  return fields;
}

double parse_double(const std::string& s, std::size_t line_no) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw DomainError("records csv line " + std::to_string(line_no) + ": bad number '" + s + "'");
  return v;
}

std::optional<double> parse_optional(const std::string& s, std::size_t line_no) {
  if (s.empty()) return std::nullopt;
  return parse_double(s, line_no);
}

template <typename Int>
Int parse_int(const std::string& s, std::size_t line_no) {
  Int v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw DomainError("records csv line " + std::to_string(line_no) + ": bad integer '" + s + "'");
  return v;
}

void put_optional(std::ostream& out, const std::optional<double>& v) {
  if (v) out << format_double(*v);
}

void json_optional(nlohmann::json& j, const char* key, const std::optional<double>& v) {
  j[key] = v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

std::optional<double> json_get_optional(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<double>();
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_records_csv(std::ostream& out, const std::vector<MeasureRecord>& records) {
  out << kRecordCsvHeader << '\n';
  for (const auto& r : records) {
    out << r.index << ',' << r.rank << ',';
    put_optional(out, r.c12);
    out << ',';
    put_optional(out, r.n12);
    out << ',';
    put_optional(out, r.r12);
    out << ',';
    put_optional(out, r.tau);
    out << ',' << r.family << '\n';
  }
}

std::vector<MeasureRecord> read_records_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw DomainError("records csv: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kRecordCsvHeader) throw DomainError("records csv: unexpected header '" + line + "'");
  std::vector<MeasureRecord> out;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto f = split_csv(line);
    if (f.size() != 7) throw DomainError("records csv line " + std::to_string(line_no) + ": expected 7 fields");
    MeasureRecord r;
    r.index = parse_int<std::size_t>(f[0], line_no);
    r.rank = parse_int<int>(f[1], line_no);
    r.c12 = parse_optional(f[2], line_no);
    r.n12 = parse_optional(f[3], line_no);
    r.r12 = parse_optional(f[4], line_no);
    r.tau = parse_optional(f[5], line_no);
    r.family = f[6];
    out.push_back(std::move(r));
  }
  return out;
}

nlohmann::json to_json(const MeasureRecord& r) {
  nlohmann::json j;
  j["index"] = r.index;
  j["rank"] = r.rank;
  json_optional(j, "c12", r.c12);
  json_optional(j, "n12", r.n12);
  json_optional(j, "r12", r.r12);
  json_optional(j, "tau", r.tau);
  j["family"] = r.family;
  return j;
}

MeasureRecord record_from_json(const nlohmann::json& j) {
  try {
    MeasureRecord r;
    r.index = j.at("index").get<std::size_t>();
    r.rank = j.at("rank").get<int>();
    r.c12 = json_get_optional(j, "c12");
    r.n12 = json_get_optional(j, "n12");
    r.r12 = json_get_optional(j, "r12");
    r.tau = json_get_optional(j, "tau");
    r.family = j.at("family").get<std::string>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("records json: ") + e.what());
  }
}

nlohmann::json records_to_json(const std::vector<MeasureRecord>& records) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : records) arr.push_back(to_json(r));
  return arr;
}

std::vector<MeasureRecord> records_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw DomainError("records json: expected an array");
  std::vector<MeasureRecord> out;
  for (const auto& item : j) out.push_back(record_from_json(item));
  return out;
}

}  // namespace permutangle
