#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fskellam/extended_real.hpp"

namespace fskellam::csv {

inline constexpr std::string_view kVersion = "1.0.0";

/// 17 significant digits; +inf prints as the literal token "+inf".
std::string format_double(double value);
std::string format_double(const ExtendedReal& value);

/// Quotes a field when it contains a comma, quote or newline.
std::string escape(std::string_view field);

using Metadata = std::vector<std::pair<std::string, std::string>>;

/// "# command=<c>,<k>=<v>,...,version=<v>" (values escaped like fields).
std::string metadata_line(std::string_view command, const Metadata& entries);

class Writer {
 public:
  Writer(std::ostream& out, std::string_view command, const Metadata& metadata,
         const std::vector<std::string>& header);

  void row(const std::vector<std::string>& fields);

 private:
  std::ostream& out_;
  std::size_t columns_;
};

}  // namespace fskellam::csv
