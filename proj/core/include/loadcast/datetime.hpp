#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace loadcast {

struct CivilDate {
    int year = 1970;
    int month = 1;  // 1-12
    int day = 1;    // 1-31

    friend auto operator<=>(const CivilDate&, const CivilDate&) = default;
};

/// Days since 1970-01-01 in the proleptic Gregorian calendar.
std::int64_t days_from_civil(CivilDate date) noexcept;
CivilDate civil_from_days(std::int64_t days) noexcept;

bool is_leap_year(int year) noexcept;
int days_in_month(int year, int month) noexcept;
/// 1-based ordinal day within the year.
int day_of_year(CivilDate date) noexcept;
/// Monday = 0 ... Sunday = 6.
int weekday(std::int64_t days) noexcept;

struct IsoWeek {
    int year;
    int week;  // 1-53
};
IsoWeek iso_week(CivilDate date) noexcept;

/// Naive local date-time at minute precision, stored as minutes since
/// 1970-01-01T00:00.  No time zone, no DST.
class DateTime {
public:
    constexpr DateTime() = default;
    constexpr explicit DateTime(std::int64_t minutes_since_epoch) : minutes_(minutes_since_epoch) {}

    static DateTime from_civil(CivilDate date, int hour = 0, int minute = 0) noexcept;

    /// Parses `YYYY-MM-DDTHH:MM`, or `YYYY-MM-DD` when `allow_date_only`.
    /// Throws DataError on anything else.
    static DateTime parse(std::string_view text, bool allow_date_only = false);

    constexpr std::int64_t minutes_since_epoch() const noexcept { return minutes_; }
    std::int64_t days_since_epoch() const noexcept;
    int minute_of_day() const noexcept;

    CivilDate date() const noexcept;
    int hour() const noexcept { return minute_of_day() / 60; }
    int minute() const noexcept { return minute_of_day() % 60; }

    constexpr DateTime plus_minutes(std::int64_t m) const noexcept { return DateTime{minutes_ + m}; }

    /// `YYYY-MM-DDTHH:MM`
    std::string to_string() const;

    friend constexpr auto operator<=>(DateTime, DateTime) = default;

private:
    std::int64_t minutes_ = 0;
};

inline constexpr int kMinutesPerDay = 1440;

}  // namespace loadcast
