#pragma once
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace roughvol {

// Numeric CSV output: 6 significant digits by default, 17 ("full") on request.
struct NumberFormat {
    int significant_digits = 6;
    static NumberFormat full() { return NumberFormat{17}; }
};

std::string format_number(double value, const NumberFormat& fmt = {});

// Splits one CSV line on commas; no quoting (none of the supported formats
// quote fields).
std::vector<std::string> split_csv_line(const std::string& line);

bool parse_double(const std::string& text, double& out);
bool parse_int64(const std::string& text, std::int64_t& out);

// FNV-1a 64-bit digest of a stream, rendered as 16 hex digits. Used for the
// input fingerprints in run manifests.
std::string fnv1a64_hex(std::istream& in);
std::string fnv1a64_file(const std::string& path);

} // namespace roughvol
