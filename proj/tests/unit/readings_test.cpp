#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "loadcast/error.hpp"
#include "loadcast/readings.hpp"

using namespace loadcast;

namespace {

std::vector<RawReading> column(std::vector<std::optional<double>> values, int step_minutes = 1) {
    std::vector<RawReading> out;
    const auto start = DateTime::parse("2015-01-01T00:00");
    for (std::size_t i = 0; i < values.size(); ++i) {
        out.push_back({start.plus_minutes(static_cast<std::int64_t>(i) * step_minutes), {values[i]}});
    }
    return out;
}

std::vector<double> values_of(const std::vector<RawReading>& r) {
    std::vector<double> v;
    for (const auto& x : r) v.push_back(*x.values[0]);
    return v;
}

}  // namespace

TEST(ParseReadings, EmptyCellsBecomeNull) {
    const auto s = parse_readings("timestamp,a,b,c\n2015-01-01T00:00,10.0,,3.5\n");
    ASSERT_EQ(s.readings.size(), 1u);
    EXPECT_EQ(s.meter_names, (std::vector<std::string>{"a", "b", "c"}));
    const auto& v = s.readings[0].values;
    ASSERT_EQ(v.size(), 3u);
    EXPECT_EQ(*v[0], 10.0);
    EXPECT_FALSE(v[1].has_value());
    EXPECT_EQ(*v[2], 3.5);
}

TEST(ParseReadings, HeaderOnlyIsEmpty) {
    EXPECT_TRUE(parse_readings("timestamp,m1\n").readings.empty());
}

TEST(ParseReadings, NonMonotonicNamesRow) {
    try {
        parse_readings("timestamp,m1\n2015-01-01T00:00,1\n2015-01-01T00:00,2\n");
        FAIL();
    } catch (const DataError& e) {
        EXPECT_STREQ(e.what(), "non-monotonic timestamp at row 3");
    }
}

TEST(ParseReadings, ErrorsNameTheRow) {
    auto message = [](const char* csv) {
        try {
            parse_readings(csv);
        } catch (const DataError& e) {
            return std::string(e.what());
        }
        return std::string("no error");
    };
    EXPECT_EQ(message("timestamp,m\n2015-01-01T00:00,1\n2015-01-01 00:0x,1\n").rfind("row 3:", 0), 0u);
    EXPECT_EQ(message("timestamp,m\n2015-01-01T00:00,1,2\n").rfind("row 2:", 0), 0u);
    EXPECT_EQ(message("timestamp,m,n\n2015-01-01T00:00,1\n").rfind("row 2:", 0), 0u);
    EXPECT_NE(message("timestamp,m\n2015-01-01T00:00,-1\n").find("negative"), std::string::npos);
    EXPECT_NE(message("timestamp,m\n2015-01-01T00:00,abc\n").find("row 2"), std::string::npos);
    EXPECT_NE(message("time,m\n").find("header"), std::string::npos);
}

TEST(Interpolate, Midpoint) {
    EXPECT_EQ(values_of(interpolate_nulls(column({1.0, std::nullopt, 3.0}))), (std::vector<double>{1, 2, 3}));
}

TEST(Interpolate, EdgesCopyNearest) {
    EXPECT_EQ(values_of(interpolate_nulls(column({std::nullopt, 4.0, 4.0, std::nullopt}))),
              (std::vector<double>{4, 4, 4, 4}));
}

TEST(Interpolate, LinearInTime) {
    EXPECT_EQ(values_of(interpolate_nulls(column({0.0, std::nullopt, std::nullopt, 9.0}))),
              (std::vector<double>{0, 3, 6, 9}));
}

TEST(Interpolate, ProportionalToMinuteDistance) {
    // Gap between minute 0 and minute 4 with a null at minute 1.
    std::vector<RawReading> r = column({0.0, std::nullopt});
    r.push_back({r[0].timestamp.plus_minutes(4), {8.0}});
    EXPECT_EQ(values_of(interpolate_nulls(r)), (std::vector<double>{0, 2, 8}));
}

TEST(Interpolate, AllNullColumnIsNamed) {
    std::vector<RawReading> r{{DateTime{0}, {1.0, std::nullopt}}, {DateTime{1}, {2.0, std::nullopt}}};
    try {
        interpolate_nulls(r);
        FAIL();
    } catch (const DataError& e) {
        EXPECT_NE(std::string(e.what()).find("column 2"), std::string::npos);
    }
}

TEST(Interpolate, IdempotentAndBounded) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> val(0.0, 100.0);
    std::bernoulli_distribution drop(0.4);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<std::optional<double>> v(30);
        for (auto& x : v) x = drop(rng) ? std::nullopt : std::optional<double>(val(rng));
        if (std::none_of(v.begin(), v.end(), [](const auto& x) { return x.has_value(); })) v[0] = 1.0;
        const auto in = column(v, 2);
        const auto once = interpolate_nulls(in);
        const auto twice = interpolate_nulls(once);
        ASSERT_EQ(values_of(once), values_of(twice));
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (v[i]) {
                ASSERT_EQ(*once[i].values[0], *v[i]);  // bit-identical
                continue;
            }
            // Anchors: nearest non-null on each side.
            std::optional<double> lo, hi;
            for (std::size_t j = i; j-- > 0;) if (v[j]) { lo = v[j]; break; }
            for (std::size_t j = i + 1; j < v.size(); ++j) if (v[j]) { hi = v[j]; break; }
            const double a = lo.value_or(*hi);
            const double b = hi.value_or(*lo);
            ASSERT_GE(*once[i].values[0], std::min(a, b));
            ASSERT_LE(*once[i].values[0], std::max(a, b));
        }
    }
}

TEST(Granularity, MustDivideDay) {
    EXPECT_THROW(Granularity{7}, ConfigError);
    EXPECT_THROW(Granularity{0}, ConfigError);
    EXPECT_THROW(Granularity{-60}, ConfigError);
    EXPECT_EQ(Granularity{60}.buckets_per_day(), 24);
    EXPECT_EQ(Granularity{1440}.buckets_per_day(), 1);
}

TEST(Granularity, IndexIdentityForEveryMinute) {
    for (int g = 1; g <= 1440; ++g) {
        if (1440 % g) continue;
        const Granularity gran{g};
        for (int m = 0; m < 1440; ++m) {
            const int b = gran.bucket_index(m);
            ASSERT_EQ(b, m / g);
            ASSERT_GE(b, 0);
            ASSERT_LT(b, 1440 / g);
        }
    }
}

TEST(Aggregate, ConstantHourMean) {
    std::vector<RawReading> r;
    const auto t0 = DateTime::parse("2015-01-01T10:00");
    for (int m = 0; m < 60; ++m) r.push_back({t0.plus_minutes(m), {5.0}});
    const auto out = aggregate(r, Granularity{60});
    ASSERT_EQ(out.size(), 1u);
    EXPECT_EQ(out[0].bucket_index, 10);
    EXPECT_EQ(out[0].target, 5.0);
    EXPECT_EQ(out[0].bucket_start.to_string(), "2015-01-01T10:00");
}

TEST(Aggregate, HalfPastGoesToFlooredBucket) {
    std::vector<RawReading> r{{DateTime::parse("2015-01-01T10:30"), {1.0}}};
    const auto out = aggregate(r, Granularity{60});
    ASSERT_EQ(out.size(), 1u);
    EXPECT_EQ(out[0].bucket_index, 10);
}

TEST(Aggregate, SumsMetersThenAverages) {
    std::vector<RawReading> r;
    const auto t0 = DateTime::parse("2015-01-01T00:00");
    for (int m = 0; m < 1440; ++m) r.push_back({t0.plus_minutes(m), {2.0, 3.0}});
    const auto out = aggregate(r, Granularity{1440});
    ASSERT_EQ(out.size(), 1u);
    EXPECT_EQ(out[0].bucket_index, 0);
    EXPECT_EQ(out[0].target, 5.0);

    AggregateOptions one;
    one.meter = 1;
    EXPECT_EQ(aggregate(r, Granularity{1440}, one)[0].target, 3.0);
}

TEST(Aggregate, OmitsEmptyBucketsAndRejectsNulls) {
    std::vector<RawReading> r{{DateTime::parse("2015-01-01T01:10"), {1.0}},
                              {DateTime::parse("2015-01-01T01:20"), {3.0}},
                              {DateTime::parse("2015-01-01T05:00"), {7.0}}};
    const auto out = aggregate(r, Granularity{60});
    ASSERT_EQ(out.size(), 2u);
    EXPECT_EQ(out[0].target, 2.0);
    EXPECT_EQ(out[1].bucket_index, 5);

    r[1].values[0].reset();
    EXPECT_THROW(aggregate(r, Granularity{60}), DataError);
}
