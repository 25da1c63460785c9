#include "pitchguard/types.hpp"

#include <cstdio>

#include "pitchguard/error.hpp"

namespace pitchguard {

std::vector<double> ExposureRecord::training_series() const {
    std::vector<double> out;
    out.reserve(days.size());
    for (const auto& d : days) out.push_back(d.training_minutes);
    return out;
}

std::vector<double> ExposureRecord::match_series() const {
    std::vector<double> out;
    out.reserve(days.size());
    for (const auto& d : days) out.push_back(d.match_minutes);
    return out;
}

namespace {

bool is_leap(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

int days_in_month(int y, int m) {
    static const int lengths[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (m == 2 && is_leap(y)) return 29;
    return lengths[m - 1];
}

// Howard Hinnant's civil-date algorithms.
long days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const long era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2u) / 5u +
                         static_cast<unsigned>(d) - 1u;
    const unsigned doe = yoe * 365u + yoe / 4u - yoe / 100u + doy;
    return era * 146097 + static_cast<long>(doe) - 719468;
}

void civil_from_days(long z, int& y, int& m, int& d) {
    z += 719468;
    const long era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const long yy = static_cast<long>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
    m = static_cast<int>(mp + (mp < 10 ? 3 : -9));
    y = static_cast<int>(yy + (m <= 2));
}

} // namespace

CalendarDate CalendarDate::parse(const std::string& iso, std::size_t line) {
    int y = 0, m = 0, d = 0;
    char extra = 0;
    if (std::sscanf(iso.c_str(), "%d-%d-%d%c", &y, &m, &d, &extra) != 3 || iso.size() != 10 ||
        iso[4] != '-' || iso[7] != '-')
        throw MalformedRowError(line, "not an ISO date (YYYY-MM-DD): '" + iso + "'");
    if (m < 1 || m > 12 || d < 1 || d > days_in_month(y, m))
        throw MalformedRowError(line, "invalid calendar date: '" + iso + "'");
    return CalendarDate{y, m, d};
}

std::string CalendarDate::to_string() const {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", year, month, day);
    return buf;
}

long CalendarDate::serial() const { return days_from_civil(year, month, day); }

CalendarDate CalendarDate::from_serial(long s) {
    CalendarDate d;
    civil_from_days(s, d.year, d.month, d.day);
    return d;
}

int CalendarDate::iso_weekday() const {
    // 1970-01-01 was a Thursday.
    const long s = serial();
    const long wd = ((s + 3) % 7 + 7) % 7; // 0 = Monday
    return static_cast<int>(wd) + 1;
}

int CalendarDate::iso_week_index() const {
    // ISO 8601: week 1 contains the first Thursday of the year.
    const long thursday = serial() - iso_weekday() + 4;
    const CalendarDate th = from_serial(thursday);
    const long jan1 = days_from_civil(th.year, 1, 1);
    const int week = static_cast<int>((thursday - jan1) / 7) + 1;
    return th.year * 100 + week;
}

const char* to_string(SeverityCategory s) {
    switch (s) {
        case SeverityCategory::Transient: return "Transient";
        case SeverityCategory::Mild: return "Mild";
        case SeverityCategory::Moderate: return "Moderate";
        case SeverityCategory::Severe: return "Severe";
    }
    return "?";
}

} // namespace pitchguard
