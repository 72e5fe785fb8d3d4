#include "loadcast/readings.hpp"

#include <cmath>

#include "loadcast/error.hpp"
#include "loadcast/kv.hpp"

namespace loadcast {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

template <typename Fn>
void for_each_field(std::string_view line, Fn&& fn) {
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        fn(trim(line.substr(start, comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
}

DataError row_error(std::size_t row, const std::string& what) {
    return DataError("row " + std::to_string(row) + ": " + what);
}

}  // namespace

ReadingSeries parse_readings(std::string_view csv_text) {
    ReadingSeries out;
    std::size_t row = 0;
    bool have_header = false;

    while (!csv_text.empty()) {
        const auto nl = csv_text.find('\n');
        const std::string_view line = trim(csv_text.substr(0, nl));
        csv_text = nl == std::string_view::npos ? std::string_view{} : csv_text.substr(nl + 1);
        ++row;

        if (!have_header) {
            std::vector<std::string> fields;
            for_each_field(line, [&](std::string_view f) { fields.emplace_back(f); });
            if (fields.empty() || fields.front() != "timestamp") {
                throw row_error(row, "header must start with 'timestamp'");
            }
            if (fields.size() < 2) throw row_error(row, "header names no meter columns");
            out.meter_names.assign(fields.begin() + 1, fields.end());
            have_header = true;
            continue;
        }
        if (line.empty()) continue;

        RawReading reading;
        reading.values.reserve(out.meter_names.size());
        std::size_t column = 0;
        for_each_field(line, [&](std::string_view field) {
            if (column++ == 0) {
                try {
                    reading.timestamp = DateTime::parse(field);
                } catch (const DataError&) {
                    throw row_error(row, "malformed timestamp '" + std::string(field) + "'");
                }
                return;
            }
            if (field.empty()) {
                reading.values.emplace_back(std::nullopt);
                return;
            }
            auto value = parse_double(field);
            if (!value || !std::isfinite(*value)) {
                throw row_error(row, "malformed reading '" + std::string(field) + "'");
            }
            if (*value < 0.0) throw row_error(row, "negative reading '" + std::string(field) + "'");
            reading.values.emplace_back(*value);
        });
        if (reading.values.size() != out.meter_names.size()) {
            throw row_error(row, "expected " + std::to_string(out.meter_names.size() + 1) + " columns, got " +
                                     std::to_string(column));
        }
        if (!out.readings.empty() && reading.timestamp <= out.readings.back().timestamp) {
            throw DataError("non-monotonic timestamp at row " + std::to_string(row));
        }
        out.readings.push_back(std::move(reading));
    }
    if (!have_header) throw DataError("row 1: missing header");
    return out;
}

ReadingSeries read_readings_file(const std::string& path) {
    return parse_readings(read_text_file(path));
}

std::vector<RawReading> interpolate_nulls(std::span<const RawReading> readings) {
    std::vector<RawReading> out(readings.begin(), readings.end());
    if (out.empty()) return out;
    const std::size_t meters = out.front().values.size();

    for (std::size_t m = 0; m < meters; ++m) {
        std::optional<std::size_t> prev;  // last non-null row
        for (std::size_t i = 0; i < out.size(); ++i) {
            if (!out[i].values[m]) continue;
            const double v1 = *out[i].values[m];
            if (!prev) {
                for (std::size_t j = 0; j < i; ++j) out[j].values[m] = v1;
            } else if (*prev + 1 < i) {
                const double v0 = *out[*prev].values[m];
                const auto t0 = out[*prev].timestamp.minutes_since_epoch();
                const auto t1 = out[i].timestamp.minutes_since_epoch();
                for (std::size_t j = *prev + 1; j < i; ++j) {
                    const auto t = out[j].timestamp.minutes_since_epoch();
                    const double frac = static_cast<double>(t - t0) / static_cast<double>(t1 - t0);
                    out[j].values[m] = v0 + (v1 - v0) * frac;
                }
            }
            prev = i;
        }
        if (!prev) throw DataError("meter column " + std::to_string(m + 1) + " is entirely null");
        for (std::size_t j = *prev + 1; j < out.size(); ++j) out[j].values[m] = out[*prev].values[m];
    }
    return out;
}

Granularity::Granularity(int minutes) : minutes_(minutes) {
    if (minutes < 1 || kMinutesPerDay % minutes != 0) {
        throw ConfigError("granularity " + std::to_string(minutes) + " minutes does not divide 1440");
    }
}

std::vector<AggregatedRecord> aggregate(std::span<const RawReading> readings, Granularity granularity,
                                        const AggregateOptions& options) {
    std::vector<AggregatedRecord> out;
    std::int64_t current_day = 0;
    int current_bucket = -1;
    double sum = 0.0;
    std::size_t count = 0;

    auto flush = [&] {
        if (count == 0) return;
        AggregatedRecord rec;
        rec.bucket_index = current_bucket;
        rec.bucket_start = DateTime{current_day * kMinutesPerDay +
                                    static_cast<std::int64_t>(current_bucket) * granularity.minutes()};
        rec.target = sum / static_cast<double>(count);
        out.push_back(rec);
        sum = 0.0;
        count = 0;
    };

    for (std::size_t row = 0; row < readings.size(); ++row) {
        const auto& r = readings[row];
        double total = 0.0;
        if (options.meter) {
            if (*options.meter >= r.values.size()) {
                throw ConfigError("meter index " + std::to_string(*options.meter) + " out of range");
            }
            if (!r.values[*options.meter]) throw DataError("aggregate: null reading (interpolate first)");
            total = *r.values[*options.meter];
        } else {
            for (const auto& v : r.values) {
                if (!v) throw DataError("aggregate: null reading (interpolate first)");
                total += *v;
            }
        }
        const std::int64_t day = r.timestamp.days_since_epoch();
        const int bucket = granularity.bucket_index(r.timestamp.minute_of_day());
        if (day != current_day || bucket != current_bucket) {
            flush();
            current_day = day;
            current_bucket = bucket;
        }
        sum += total;
        ++count;
    }
    flush();
    return out;
}

}  // namespace loadcast
