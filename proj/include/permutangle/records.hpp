#pragma once

// Per-state measure records and their CSV / JSON forms.
//
// CSV header: index,rank,c12,n12,r12,tau,family
// Floats use 17 significant digits so a parse of the output reproduces the
// doubles bit for bit. An absent measure is an empty field.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace permutangle {

struct MeasureRecord {
  std::size_t index = 0;
  int rank = 0;
  std::optional<double> c12;
  std::optional<double> n12;
  std::optional<double> r12;
  std::optional<double> tau;
  std::string family;

  friend bool operator==(const MeasureRecord&, const MeasureRecord&) = default;
};

inline constexpr const char* kRecordCsvHeader = "index,rank,c12,n12,r12,tau,family";

/// "%.17g"
std::string format_double(double v);

void write_records_csv(std::ostream& out, const std::vector<MeasureRecord>& records);
/// Throws DomainError on a malformed header or row.
std::vector<MeasureRecord> read_records_csv(std::istream& in);

nlohmann::json to_json(const MeasureRecord& r);
MeasureRecord record_from_json(const nlohmann::json& j);
nlohmann::json records_to_json(const std::vector<MeasureRecord>& records);
std::vector<MeasureRecord> records_from_json(const nlohmann::json& j);

}  // namespace permutangle
