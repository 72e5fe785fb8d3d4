#include "loadcast/features.hpp"

#include <algorithm>
#include <ostream>

#include "loadcast/error.hpp"
#include "loadcast/kv.hpp"

namespace loadcast {

Season season_of_month(int month) noexcept {
    switch (month) {
        case 12: case 1: case 2: return Season::Winter;
        case 3: case 4: case 5: return Season::Spring;
        case 6: case 7: case 8: return Season::Summer;
        default: return Season::Autumn;
    }
}

int season_year(CivilDate date) noexcept {
    return date.month == 12 ? date.year + 1 : date.year;
}

std::string_view season_name(Season s) noexcept {
    switch (s) {
        case Season::Winter: return "winter";
        case Season::Spring: return "spring";
        case Season::Summer: return "summer";
        case Season::Autumn: return "autumn";
    }
    return "?";
}

Season parse_season(std::string_view name) {
    for (Season s : {Season::Winter, Season::Spring, Season::Summer, Season::Autumn}) {
        if (season_name(s) == name) return s;
    }
    throw ConfigError("unknown season '" + std::string(name) + "'");
}

FeatureVector calendar_features(DateTime t) {
    const CivilDate d = t.date();
    FeatureVector fv;
    fv.year = d.year;
    fv.month = d.month;
    fv.week_of_year = iso_week(d).week;
    fv.day_of_year = day_of_year(d);
    fv.day_of_month = d.day;
    fv.day_of_week = weekday(t.days_since_epoch());
    fv.hour = t.hour();
    fv.half_hour = t.minute_of_day() / 30;
    fv.season = season_of_month(d.month);
    fv.is_weekend = fv.day_of_week >= 5;
    return fv;
}

std::vector<int> default_lag_offsets(Granularity g) {
    const int day = g.buckets_per_day();
    std::vector<int> offsets{1, 2, 3, day, 7 * day};
    std::sort(offsets.begin(), offsets.end());
    offsets.erase(std::unique(offsets.begin(), offsets.end()), offsets.end());
    return offsets;
}

FeatureVector extract_features(const AggregatedRecord& record, std::span<const double> history,
                               std::span<const int> lag_offsets) {
    FeatureVector fv = calendar_features(record.bucket_start);
    fv.lags.reserve(lag_offsets.size());
    for (int k : lag_offsets) {
        if (k < 1) throw ConfigError("lag offsets must be >= 1");
        if (history.empty()) {
            // Nothing earlier is known; the record itself is the earliest target.
            fv.lags.push_back(record.target);
        } else if (static_cast<std::size_t>(k) <= history.size()) {
            fv.lags.push_back(history[history.size() - static_cast<std::size_t>(k)]);
        } else {
            fv.lags.push_back(history.front());
        }
    }
    return fv;
}

FeatureSchema feature_schema(std::span<const int> lag_offsets) {
    FeatureSchema s;
    s.names = {"year", "month", "week_of_year", "day_of_year", "day_of_month",
               "day_of_week", "hour", "half_hour", "season", "is_weekend"};
    s.scalable = {true, true, true, true, true, true, true, true, false, false};
    for (int k : lag_offsets) {
        s.names.push_back("lag_" + std::to_string(k));
        s.scalable.push_back(true);
    }
    return s;
}

std::vector<double> encode(const FeatureVector& fv) {
    std::vector<double> row{
        static_cast<double>(fv.year),        static_cast<double>(fv.month),
        static_cast<double>(fv.week_of_year), static_cast<double>(fv.day_of_year),
        static_cast<double>(fv.day_of_month), static_cast<double>(fv.day_of_week),
        static_cast<double>(fv.hour),         static_cast<double>(fv.half_hour),
        static_cast<double>(static_cast<int>(fv.season)), fv.is_weekend ? 1.0 : 0.0,
    };
    row.insert(row.end(), fv.lags.begin(), fv.lags.end());
    return row;
}

std::vector<Sample> build_samples(std::span<const AggregatedRecord> records, std::span<const int> lag_offsets) {
    std::vector<Sample> out;
    out.reserve(records.size());
    std::vector<double> history;
    history.reserve(records.size());
    for (const auto& rec : records) {
        out.push_back({encode(extract_features(rec, history, lag_offsets)), rec.target, rec.bucket_start});
        history.push_back(rec.target);
    }
    return out;
}

void write_features_csv(std::ostream& out, const FeatureSchema& schema, std::span<const Sample> samples) {
    for (const auto& name : schema.names) out << name << ',';
    out << "target,bucket_start\n";
    for (const auto& s : samples) {
        if (s.features.size() != schema.size()) throw DataError("features csv: schema mismatch");
        for (std::size_t j = 0; j < s.features.size(); ++j) {
            if (schema.names[j] == "season") {
                out << season_name(static_cast<Season>(static_cast<int>(s.features[j])));
            } else {
                out << format_double(s.features[j]);
            }
            out << ',';
        }
        out << format_double(s.target) << ',' << s.origin.to_string() << '\n';
    }
}

}  // namespace loadcast
