#include "roughvol/dates.hpp"

#include <chrono>
#include <cstdio>

#include "roughvol/errors.hpp"

namespace roughvol {

std::string iso_date(int epoch_day) {
    using namespace std::chrono;
    year_month_day ymd{sys_days{days{epoch_day}}};
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", int(ymd.year()),
                  unsigned(ymd.month()), unsigned(ymd.day()));
    return buf;
}

int parse_iso_date(const std::string& text) {
    int y = 0;
    unsigned m = 0, d = 0;
    if (std::sscanf(text.c_str(), "%d-%u-%u", &y, &m, &d) != 3)
        throw data_error("bad date '" + text + "' (expected YYYY-MM-DD)");
    using namespace std::chrono;
    year_month_day ymd{year{y}, month{m}, day{d}};
    if (!ymd.ok())
        throw data_error("bad date '" + text + "'");
    return static_cast<int>(sys_days{ymd}.time_since_epoch().count());
}

} // namespace roughvol
