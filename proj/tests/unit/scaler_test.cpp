#include <gtest/gtest.h>

#include <random>

#include "loadcast/error.hpp"
#include "loadcast/scaler.hpp"

using namespace loadcast;

namespace {

FeatureSchema one_column() {
    return FeatureSchema{{"x"}, {true}};
}

std::vector<Sample> samples_of(std::initializer_list<double> xs) {
    std::vector<Sample> out;
    for (double x : xs) out.push_back({{x}, 0.0, DateTime{}});
    return out;
}

std::vector<double> column0(const std::vector<Sample>& s) {
    std::vector<double> v;
    for (const auto& x : s) v.push_back(x.features[0]);
    return v;
}

}  // namespace

TEST(Scaler, MinMaxFit) {
    const auto p = fit_scaler(samples_of({0, 5, 10}), one_column(), ScalerKind::MinMax);
    EXPECT_EQ(p.stats[0].min, 0.0);
    EXPECT_EQ(p.stats[0].max, 10.0);
    EXPECT_EQ(column0(apply_scaler(p, one_column(), samples_of({0, 5, 10}))), (std::vector<double>{0, 0.5, 1}));
    EXPECT_DOUBLE_EQ(column0(apply_scaler(p, one_column(), samples_of({12})))[0], 1.2);
}

TEST(Scaler, MaxAbsFit) {
    const auto p = fit_scaler(samples_of({-4, 2}), one_column(), ScalerKind::MaxAbs);
    EXPECT_EQ(p.stats[0].max_abs, 4.0);
    EXPECT_EQ(column0(apply_scaler(p, one_column(), samples_of({-4, 2}))), (std::vector<double>{-1, 0.5}));
}

TEST(Scaler, ConstantColumnMapsToZero) {
    const auto p = fit_scaler(samples_of({7, 7}), one_column(), ScalerKind::MinMax);
    EXPECT_EQ(p.stats[0].min, 7.0);
    EXPECT_EQ(p.stats[0].max, 7.0);
    EXPECT_EQ(column0(apply_scaler(p, one_column(), samples_of({7, 9}))), (std::vector<double>{0, 0}));
}

TEST(Scaler, TargetsAndPassthroughUntouched) {
    FeatureSchema schema{{"x", "flag"}, {true, false}};
    std::vector<Sample> train{{{2, 1}, 100, DateTime{}}, {{4, 0}, 200, DateTime{}}};
    const auto p = fit_scaler(train, schema, ScalerKind::MinMax);
    const auto out = apply_scaler(p, schema, train);
    EXPECT_EQ(out[0].target, 100.0);
    EXPECT_EQ(out[1].features[1], 0.0);
    EXPECT_EQ(out[0].features[1], 1.0);
}

TEST(Scaler, Errors) {
    EXPECT_THROW(fit_scaler({}, one_column(), ScalerKind::MinMax), DataError);
    const auto p = fit_scaler(samples_of({1, 2}), one_column(), ScalerKind::MinMax);
    EXPECT_THROW(apply_scaler(p, FeatureSchema{{"y"}, {true}}, samples_of({1})), DataError);
    std::vector<Sample> wide{{{1, 2}, 0, DateTime{}}};
    EXPECT_THROW(apply_scaler(p, one_column(), wide), DataError);
    EXPECT_THROW(parse_scaler_kind("zscore"), ConfigError);
}

TEST(Scaler, RangeAndRoundTripProperties) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1000.0, 1000.0);
    const FeatureSchema schema{{"a", "b", "c"}, {true, true, true}};
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Sample> train;
        for (int i = 0; i < 25; ++i) train.push_back({{u(rng), u(rng) * 1e-3, u(rng) + 5000.0}, 0.0, DateTime{}});
        for (auto kind : {ScalerKind::MinMax, ScalerKind::MaxAbs}) {
            const auto p = fit_scaler(train, schema, kind);
            const auto scaled = apply_scaler(p, schema, train);
            for (std::size_t i = 0; i < train.size(); ++i) {
                for (std::size_t j = 0; j < 3; ++j) {
                    const double v = scaled[i].features[j];
                    if (kind == ScalerKind::MinMax) {
                        ASSERT_GE(v, 0.0);
                        ASSERT_LE(v, 1.0);
                    } else {
                        ASSERT_GE(v, -1.0);
                        ASSERT_LE(v, 1.0);
                    }
                    const double back = p.inverse(j, v);
                    ASSERT_NEAR(back, train[i].features[j], 1e-12 * std::max(1.0, std::abs(train[i].features[j])));
                }
            }
        }
    }
}

TEST(Scaler, SerializesExactly) {
    const FeatureSchema schema{{"a", "season"}, {true, false}};
    std::vector<Sample> train{{{0.1, 2}, 0, DateTime{}}, {{1.0 / 3.0, 1}, 0, DateTime{}}};
    for (auto kind : {ScalerKind::MinMax, ScalerKind::MaxAbs}) {
        const auto p = fit_scaler(train, schema, kind);
        const auto q = ScalerParams::from_doc(KeyValueDoc::parse(p.to_doc().to_string()));
        EXPECT_EQ(q.kind, p.kind);
        EXPECT_EQ(q.schema, p.schema);
        EXPECT_EQ(q.transform(0, 0.2), p.transform(0, 0.2));
        EXPECT_EQ(q.transform(1, 3.0), 3.0);
    }
}
