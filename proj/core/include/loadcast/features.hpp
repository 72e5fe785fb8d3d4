#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "loadcast/datetime.hpp"
#include "loadcast/readings.hpp"

namespace loadcast {

enum class Season { Winter = 0, Spring = 1, Summer = 2, Autumn = 3 };

/// Meteorological (Northern Hemisphere) season of a month.
Season season_of_month(int month) noexcept;
/// December belongs to the winter of the following year.
int season_year(CivilDate date) noexcept;
std::string_view season_name(Season s) noexcept;
/// Throws ConfigError on an unknown name.
Season parse_season(std::string_view name);

struct FeatureVector {
    int year = 1970;
    int month = 1;
    int week_of_year = 1;  // ISO-8601
    int day_of_year = 1;
    int day_of_month = 1;
    int day_of_week = 0;  // Monday = 0
    int hour = 0;
    int half_hour = 0;
    Season season = Season::Winter;
    bool is_weekend = false;
    std::vector<double> lags;
};

FeatureVector calendar_features(DateTime t);

/// Default lag offsets in buckets: 1, 2, 3, one day back, one week back.
std::vector<int> default_lag_offsets(Granularity g);

/// Calendar features of `record`, plus one lag per offset taken from
/// `history` (prior targets, oldest first).  Offsets reaching before the
/// start of history use the earliest known target.
FeatureVector extract_features(const AggregatedRecord& record, std::span<const double> history,
                               std::span<const int> lag_offsets);

struct FeatureOptions {
    bool lags = false;
    /// Empty means default_lag_offsets(granularity).
    std::vector<int> lag_offsets;
};

/// Column layout of encoded feature rows.
struct FeatureSchema {
    std::vector<std::string> names;
    /// False for boolean/enum columns, which scalers pass through.
    std::vector<bool> scalable;

    std::size_t size() const noexcept { return names.size(); }
    friend bool operator==(const FeatureSchema&, const FeatureSchema&) = default;
};

FeatureSchema feature_schema(std::span<const int> lag_offsets);

/// Encodes in schema order; season as 0-3, is_weekend as 0/1.
std::vector<double> encode(const FeatureVector& fv);

struct Sample {
    std::vector<double> features;
    double target = 0.0;
    DateTime origin;
};

/// Featurizes a chronological record series; lags come from actual targets.
std::vector<Sample> build_samples(std::span<const AggregatedRecord> records, std::span<const int> lag_offsets);

/// Inspection CSV: one column per schema field, then `target,bucket_start`.
/// `samples` must be unscaled.
void write_features_csv(std::ostream& out, const FeatureSchema& schema, std::span<const Sample> samples);

}  // namespace loadcast
