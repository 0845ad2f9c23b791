#pragma once

#include <cstdint>
#include <string>

namespace polarnet {

// JSON string escaping (quotes, backslashes, control characters).
std::string json_escape(const std::string& s);

// XML attribute/text escaping (&, <, >, quotes).
std::string xml_escape(const std::string& s);

// Tab/newline escaping for TSV cells.
std::string tsv_escape(const std::string& s);

// RFC-4180 quoting, applied only when the value needs it.
std::string csv_field(const std::string& s);

// Fixed-precision decimal formatting; keeps golden files byte-stable.
std::string format_fixed(double value, int decimals);

// Writes via a temp file + rename so readers never see partial output.
void atomic_write_file(const std::string& path, const std::string& content);

} // namespace polarnet
