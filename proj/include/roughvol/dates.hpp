#pragma once
#include <cstdint>
#include <string>

namespace roughvol {

// Calendar days are carried as days since the Unix epoch (UTC).

constexpr std::int64_t seconds_per_day = 86400;

inline int epoch_day_of(std::int64_t unix_seconds) {
    // Floor division; tick feeds can in principle predate 1970.
    std::int64_t d = unix_seconds / seconds_per_day;
    if (unix_seconds % seconds_per_day < 0) --d;
    return static_cast<int>(d);
}

std::string iso_date(int epoch_day);
int parse_iso_date(const std::string& text);

} // namespace roughvol
