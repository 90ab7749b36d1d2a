#include "roughvol/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>

#include "roughvol/errors.hpp"

namespace roughvol {

std::string format_number(double value, const NumberFormat& fmt) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.*g", fmt.significant_digits, value);
    return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find(',', start);
        if (pos == std::string::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return fields;
}

namespace {

std::string_view trimmed(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return std::string_view(s).substr(b, e - b + 1);
}

} // namespace

bool parse_double(const std::string& text, double& out) {
    auto t = trimmed(text);
    if (t.empty()) return false;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), out);
    return ec == std::errc() && ptr == t.data() + t.size();
}

bool parse_int64(const std::string& text, std::int64_t& out) {
    auto t = trimmed(text);
    if (t.empty()) return false;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), out);
    return ec == std::errc() && ptr == t.data() + t.size();
}

std::string fnv1a64_hex(std::istream& in) {
    std::uint64_t hash = 0xcbf29ce484222325ull;
    char buf[1 << 14];
    while (in) {
        in.read(buf, sizeof(buf));
        std::streamsize got = in.gcount();
        for (std::streamsize i = 0; i < got; ++i) {
            hash ^= static_cast<unsigned char>(buf[i]);
            hash *= 0x100000001b3ull;
        }
    }
    char out[17];
    std::snprintf(out, sizeof(out), "%016llx", static_cast<unsigned long long>(hash));
    return out;
}

std::string fnv1a64_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw data_error("cannot open '" + path + "'");
    return fnv1a64_hex(in);
}

} // namespace roughvol
