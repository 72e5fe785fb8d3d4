#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "loadcast/datetime.hpp"

namespace loadcast {

/// One minute-level meter record; `values[k]` is meter k in kW or null.
struct RawReading {
    DateTime timestamp;
    std::vector<std::optional<double>> values;
};

struct ReadingSeries {
    std::vector<std::string> meter_names;
    std::vector<RawReading> readings;
};

/// Parses `timestamp,<meter_1>,...,<meter_k>` CSV.  Row numbers in error
/// messages count the header as row 1.
ReadingSeries parse_readings(std::string_view csv_text);
ReadingSeries read_readings_file(const std::string& path);

/// Replaces every null by linear interpolation in time between the nearest
/// non-null neighbours; leading and trailing runs copy the nearest value.
/// Throws DataError naming the column if a meter is entirely null.
std::vector<RawReading> interpolate_nulls(std::span<const RawReading> readings);

/// Bucket width in minutes; must tile a day exactly.
class Granularity {
public:
    /// Throws ConfigError unless minutes >= 1 and 1440 % minutes == 0.
    explicit Granularity(int minutes);

    int minutes() const noexcept { return minutes_; }
    int buckets_per_day() const noexcept { return kMinutesPerDay / minutes_; }
    int bucket_index(int minute_of_day) const noexcept { return minute_of_day / minutes_; }

private:
    int minutes_;
};

struct AggregatedRecord {
    DateTime bucket_start;
    int bucket_index = 0;
    double target = 0.0;  // mean kW over the bucket
};

struct AggregateOptions {
    /// Model a single meter instead of the building total.
    std::optional<std::size_t> meter;
};

/// Groups null-free readings by (date, bucket index) and averages the
/// per-minute building totals.  Empty buckets are omitted.
std::vector<AggregatedRecord> aggregate(std::span<const RawReading> readings, Granularity granularity,
                                        const AggregateOptions& options = {});

}  // namespace loadcast
