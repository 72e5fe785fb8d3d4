#pragma once

// Reference implementations used only by tests.  Each one takes a different
// route from the library code it checks.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <ctime>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace oracle {

// --- calendar, via libc's own calendar arithmetic -------------------------

struct Calendar {
    int year, month, day, hour, minute;
    int day_of_year;  // 1-366
    int iso_week;     // 1-53
    int weekday;      // Monday = 0
};

inline Calendar calendar(std::int64_t minutes_since_epoch) {
    std::time_t t = static_cast<std::time_t>(minutes_since_epoch * 60);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[16];
    std::strftime(buf, sizeof buf, "%V", &tm);
    Calendar c{};
    c.year = tm.tm_year + 1900;
    c.month = tm.tm_mon + 1;
    c.day = tm.tm_mday;
    c.hour = tm.tm_hour;
    c.minute = tm.tm_min;
    c.day_of_year = tm.tm_yday + 1;
    c.iso_week = std::stoi(buf);
    c.weekday = (tm.tm_wday + 6) % 7;
    return c;
}

inline std::int64_t minutes_of(int year, int month, int day, int hour = 0, int minute = 0) {
    std::tm tm{};
    tm.tm_year = year - 1900;
    tm.tm_mon = month - 1;
    tm.tm_mday = day;
    tm.tm_hour = hour;
    tm.tm_min = minute;
    return static_cast<std::int64_t>(timegm(&tm)) / 60;
}

// --- split search, by exhaustive enumeration -------------------------------

struct Split {
    std::size_t feature;
    double threshold;
    double gain;
};

inline double variance_of(const std::vector<double>& v) {
    if (v.empty()) return 0.0;
    double sum = 0.0;
    for (double a : v) sum += a;
    const double mean = sum / static_cast<double>(v.size());
    double ss = 0.0;
    for (double a : v) ss += (a - mean) * (a - mean);
    return ss / static_cast<double>(v.size());
}

/// Tries every feature and every midpoint of consecutive distinct values;
/// gains within 1e-9 of the best count as ties (first found wins).
inline std::optional<Split> brute_force_split(const std::vector<std::vector<double>>& x,
                                              const std::vector<double>& y) {
    const std::size_t n = y.size();
    if (n < 2) return std::nullopt;
    const double parent = variance_of(y);
    if (parent == 0.0) return std::nullopt;
    std::optional<Split> best;
    for (std::size_t f = 0; f < x.front().size(); ++f) {
        std::vector<double> values;
        for (const auto& row : x) values.push_back(row[f]);
        std::sort(values.begin(), values.end());
        values.erase(std::unique(values.begin(), values.end()), values.end());
        for (std::size_t k = 0; k + 1 < values.size(); ++k) {
            const double thr = (values[k] + values[k + 1]) / 2.0;
            std::vector<double> left, right;
            for (std::size_t i = 0; i < n; ++i) (x[i][f] <= thr ? left : right).push_back(y[i]);
            const double gain = parent - (static_cast<double>(left.size()) / static_cast<double>(n)) * variance_of(left) -
                                (static_cast<double>(right.size()) / static_cast<double>(n)) * variance_of(right);
            if (gain > 0.0 && (!best || gain > best->gain + 1e-9)) best = Split{f, thr, gain};
        }
    }
    return best;
}

// --- metrics, spreadsheet style in long double -----------------------------

struct Metrics {
    double rmse, mae, mad, mape;
};

inline Metrics spreadsheet_metrics(const std::vector<double>& actual, const std::vector<double>& predicted) {
    const std::size_t n = actual.size();
    std::vector<long double> e(n);
    for (std::size_t i = 0; i < n; ++i) e[i] = static_cast<long double>(predicted[i]) - actual[i];
    const long double sq = std::accumulate(e.begin(), e.end(), 0.0L, [](long double a, long double b) { return a + b * b; });
    const long double ab = std::accumulate(e.begin(), e.end(), 0.0L, [](long double a, long double b) { return a + std::fabs(b); });
    const long double mean = std::accumulate(e.begin(), e.end(), 0.0L) / n;
    long double dev = 0.0L;
    for (auto v : e) dev += std::fabs(v - mean);
    long double pct = 0.0L;
    std::size_t m = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (actual[i] == 0.0) continue;
        pct += std::fabs(e[i]) / std::fabs(static_cast<long double>(actual[i]));
        ++m;
    }
    return {static_cast<double>(std::sqrt(sq / n)), static_cast<double>(ab / n), static_cast<double>(dev / n),
            m ? static_cast<double>(100.0L * pct / m) : std::nan("")};
}

// --- random data ------------------------------------------------------------

struct IntDataset {
    std::vector<std::vector<double>> x;
    std::vector<double> y;
};

/// Small integer-valued dataset: n rows, p features in [0, value_range),
/// targets in [0, target_range).
inline IntDataset random_int_dataset(std::mt19937_64& rng, std::size_t n, std::size_t p, int value_range = 8,
                                     int target_range = 21) {
    std::uniform_int_distribution<int> xv(0, value_range - 1);
    std::uniform_int_distribution<int> yv(0, target_range - 1);
    IntDataset d;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> row;
        for (std::size_t j = 0; j < p; ++j) row.push_back(xv(rng));
        d.x.push_back(row);
        d.y.push_back(yv(rng));
    }
    return d;
}

/// Real-valued dataset with distinct rows (first feature strictly increasing).
inline IntDataset random_real_dataset(std::mt19937_64& rng, std::size_t n, std::size_t p) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    IntDataset d;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> row{static_cast<double>(i) + 0.5 * u(rng)};
        for (std::size_t j = 1; j < p; ++j) row.push_back(u(rng));
        d.x.push_back(row);
        d.y.push_back(10.0 * std::sin(row[0] / 3.0) + 5.0 * row.back() + u(rng));
    }
    return d;
}

}  // namespace oracle
