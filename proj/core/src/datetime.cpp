#include "loadcast/datetime.hpp"

#include <charconv>
#include <cstdio>

#include "loadcast/error.hpp"

namespace loadcast {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) noexcept {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

bool parse_fixed(std::string_view text, std::size_t pos, std::size_t len, int& out) {
    if (pos + len > text.size()) return false;
    for (std::size_t i = pos; i < pos + len; ++i) {
        if (text[i] < '0' || text[i] > '9') return false;
    }
    auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + pos + len, out);
    return ec == std::errc{} && ptr == text.data() + pos + len;
}

}  // namespace

// Howard Hinnant's civil calendar algorithms.
std::int64_t days_from_civil(CivilDate date) noexcept {
    const std::int64_t y = date.year - (date.month <= 2 ? 1 : 0);
    const std::int64_t era = floor_div(y, 400);
    const std::int64_t yoe = y - era * 400;
    const std::int64_t mp = (date.month + 9) % 12;
    const std::int64_t doy = (153 * mp + 2) / 5 + date.day - 1;
    const std::int64_t doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + doe - 719468;
}

CivilDate civil_from_days(std::int64_t days) noexcept {
    days += 719468;
    const std::int64_t era = floor_div(days, 146097);
    const std::int64_t doe = days - era * 146097;
    const std::int64_t yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const std::int64_t mp = (5 * doy + 2) / 153;
    const int day = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
    const int month = static_cast<int>(mp < 10 ? mp + 3 : mp - 9);
    const int year = static_cast<int>(yoe + era * 400 + (month <= 2 ? 1 : 0));
    return {year, month, day};
}

bool is_leap_year(int year) noexcept {
    return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
}

int days_in_month(int year, int month) noexcept {
    static constexpr int kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (month == 2 && is_leap_year(year)) return 29;
    return kDays[month - 1];
}

int day_of_year(CivilDate date) noexcept {
    return static_cast<int>(days_from_civil(date) - days_from_civil({date.year, 1, 1})) + 1;
}

int weekday(std::int64_t days) noexcept {
    // 1970-01-01 was a Thursday (3 with Monday = 0).
    std::int64_t w = (days + 3) % 7;
    if (w < 0) w += 7;
    return static_cast<int>(w);
}

namespace {

int iso_weeks_in_year(int year) noexcept {
    const int jan1 = weekday(days_from_civil({year, 1, 1}));
    // Thursday start, or Wednesday start in a leap year, gives 53 weeks.
    return (jan1 == 3 || (jan1 == 2 && is_leap_year(year))) ? 53 : 52;
}

}  // namespace

IsoWeek iso_week(CivilDate date) noexcept {
    const int iso_wd = weekday(days_from_civil(date)) + 1;  // 1..7
    const int week = (day_of_year(date) - iso_wd + 10) / 7;
    if (week < 1) return {date.year - 1, iso_weeks_in_year(date.year - 1)};
    if (week > iso_weeks_in_year(date.year)) return {date.year + 1, 1};
    return {date.year, week};
}

DateTime DateTime::from_civil(CivilDate date, int hour, int minute) noexcept {
    return DateTime{days_from_civil(date) * kMinutesPerDay + hour * 60 + minute};
}

DateTime DateTime::parse(std::string_view text, bool allow_date_only) {
    auto fail = [&]() -> DataError {
        return DataError("malformed timestamp '" + std::string(text) + "'");
    };
    CivilDate d;
    int hh = 0;
    int mm = 0;
    if (text.size() < 10 || text[4] != '-' || text[7] != '-') throw fail();
    if (!parse_fixed(text, 0, 4, d.year) || !parse_fixed(text, 5, 2, d.month) ||
        !parse_fixed(text, 8, 2, d.day)) {
        throw fail();
    }
    if (text.size() == 10) {
        if (!allow_date_only) throw fail();
    } else {
        if (text.size() != 16 || (text[10] != 'T' && text[10] != ' ') || text[13] != ':') throw fail();
        if (!parse_fixed(text, 11, 2, hh) || !parse_fixed(text, 14, 2, mm)) throw fail();
    }
    if (d.month < 1 || d.month > 12 || d.day < 1 || d.day > days_in_month(d.year, d.month) ||
        hh > 23 || mm > 59) {
        throw fail();
    }
    return from_civil(d, hh, mm);
}

std::int64_t DateTime::days_since_epoch() const noexcept {
    return floor_div(minutes_, kMinutesPerDay);
}

int DateTime::minute_of_day() const noexcept {
    return static_cast<int>(minutes_ - days_since_epoch() * kMinutesPerDay);
}

CivilDate DateTime::date() const noexcept {
    return civil_from_days(days_since_epoch());
}

std::string DateTime::to_string() const {
    const CivilDate d = date();
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d", d.year, d.month, d.day, hour(), minute());
    return buf;
}

}  // namespace loadcast
