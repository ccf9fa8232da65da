#include "fskellam/csv.hpp"

#include <cmath>
#include <cstdio>

#include "fskellam/errors.hpp"

namespace fskellam::csv {

std::string format_double(double value) {
  if (std::isinf(value)) return value > 0 ? "+inf" : "-inf";
  if (std::isnan(value)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string format_double(const ExtendedReal& value) { return format_double(value.as_double()); }

std::string escape(std::string_view field) {
  if (field.find_first_of(",\"\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string metadata_line(std::string_view command, const Metadata& entries) {
  std::string line = "# command=" + escape(command);
  for (const auto& [key, value] : entries) line += "," + key + "=" + escape(value);
  line += ",version=";
  line += kVersion;
  return line;
}

Writer::Writer(std::ostream& out, std::string_view command, const Metadata& metadata,
               const std::vector<std::string>& header)
    : out_(out), columns_(header.size()) {
  out_ << metadata_line(command, metadata) << '\n';
  row(header);
}

void Writer::row(const std::vector<std::string>& fields) {
  if (fields.size() != columns_) {
    throw DomainError("csv row has " + std::to_string(fields.size()) + " fields, expected " +
                      std::to_string(columns_));
  }
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out_ << ',';
    out_ << escape(fields[i]);
  }
  out_ << '\n';
}

}  // namespace fskellam::csv
