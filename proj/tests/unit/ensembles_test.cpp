#include <gtest/gtest.h>

#include <random>
#include <set>

#include "loadcast/error.hpp"
#include "loadcast/forest.hpp"
#include "loadcast/gbt.hpp"
#include "oracles.hpp"

using namespace loadcast;

namespace {

FeatureMatrix four_x() {
    return FeatureMatrix::from_rows({{0}, {1}, {2}, {3}});
}
const std::vector<double> kFourY{0, 0, 10, 10};

RegressionTree constant_tree(double v, std::size_t p = 1) {
    return RegressionTree({RegressionTree::Node{true, 0, 0, RegressionTree::kNone, RegressionTree::kNone, v, 1}}, p);
}

}  // namespace

TEST(Forest, DegenerateConfigEqualsSingleTree) {
    std::mt19937_64 rng(1);
    ForestConfig cfg;
    cfg.n_trees = 1;
    cfg.bootstrap = false;
    cfg.feature_fraction = 1.0;
    for (int trial = 0; trial < 5; ++trial) {
        const auto d = oracle::random_real_dataset(rng, 70, 4);
        const auto x = FeatureMatrix::from_rows(d.x);
        const auto forest = fit_forest(x, d.y, cfg);
        const auto tree = fit_tree(x, d.y, cfg.tree);
        for (std::size_t i = 0; i < x.rows(); ++i) ASSERT_EQ(forest.predict(x.row(i)), tree.predict(x.row(i)));
    }
}

TEST(Forest, ConstantTargets) {
    const std::vector<double> y{7, 7, 7, 7};
    const auto forest = fit_forest(four_x(), y, ForestConfig{});
    for (const auto& t : forest.trees()) EXPECT_EQ(t.node_count(), 1u);
    EXPECT_EQ(forest.predict(std::vector<double>{2}), 7.0);
}

TEST(Forest, SeedDeterminismAndThreadIndependence) {
    std::mt19937_64 rng(2);
    const auto d = oracle::random_real_dataset(rng, 120, 5);
    const auto x = FeatureMatrix::from_rows(d.x);
    ForestConfig cfg;
    cfg.threads = 1;
    const auto a = fit_forest(x, d.y, cfg).to_string();
    const auto b = fit_forest(x, d.y, cfg).to_string();
    cfg.threads = 4;
    const auto c = fit_forest(x, d.y, cfg).to_string();
    EXPECT_EQ(a, b);
    EXPECT_EQ(a, c);
    cfg.seed = 43;
    EXPECT_NE(a, fit_forest(x, d.y, cfg).to_string());
}

TEST(Forest, MeanOfMembers) {
    ForestModel model(ForestConfig{}, {constant_tree(0), constant_tree(10)});
    EXPECT_EQ(model.predict(std::vector<double>{1}), 5.0);
    ForestModel single(ForestConfig{}, {constant_tree(3)});
    EXPECT_EQ(single.predict(std::vector<double>{1}), 3.0);
    std::vector<RegressionTree> fifteen(15, constant_tree(7));
    EXPECT_EQ(ForestModel(ForestConfig{}, fifteen).predict(std::vector<double>{0}), 7.0);
    EXPECT_THROW(model.predict(std::vector<double>{1, 2}), DataError);
}

TEST(Forest, MeanIdentityOnRandomInputs) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-5, 200);
    const auto d = oracle::random_real_dataset(rng, 150, 4);
    const auto forest = fit_forest(FeatureMatrix::from_rows(d.x), d.y, ForestConfig{});
    for (int i = 0; i < 500; ++i) {
        const std::vector<double> q{u(rng), u(rng), u(rng), u(rng)};
        double sum = 0.0;
        for (const auto& t : forest.trees()) sum += t.predict(q);
        ASSERT_NEAR(forest.predict(q), sum / static_cast<double>(forest.trees().size()), 1e-12);
    }
}

TEST(Forest, BootstrapSanity) {
    for (std::uint64_t t = 0; t < 50; ++t) {
        const auto rows = bootstrap_rows(123, t, 37, true);
        ASSERT_EQ(rows.size(), 37u);
        for (auto r : rows) ASSERT_LT(r, 37u);
        ASSERT_LT(std::set<std::size_t>(rows.begin(), rows.end()).size(), 37u + 1);
    }
    EXPECT_EQ(bootstrap_rows(1, 0, 3, false), (std::vector<std::size_t>{0, 1, 2}));
    EXPECT_EQ(bootstrap_rows(9, 4, 100, true), bootstrap_rows(9, 4, 100, true));
}

TEST(Forest, FeaturesPerNode) {
    EXPECT_EQ(features_per_node(1.0 / 3.0, 10), 4u);
    EXPECT_EQ(features_per_node(1.0 / 3.0, 9), 3u);
    EXPECT_EQ(features_per_node(0.01, 10), 1u);
    EXPECT_EQ(features_per_node(1.0, 10), 10u);
}

TEST(Forest, ConfigValidation) {
    ForestConfig cfg;
    cfg.n_trees = 0;
    EXPECT_THROW(fit_forest(four_x(), kFourY, cfg), ConfigError);
    cfg = {};
    cfg.feature_fraction = 0.0;
    EXPECT_THROW(fit_forest(four_x(), kFourY, cfg), ConfigError);
    EXPECT_THROW(fit_forest(FeatureMatrix{}, std::vector<double>{}, ForestConfig{}), DataError);
}

TEST(Forest, ModelFileRoundTrip) {
    std::mt19937_64 rng(4);
    const auto d = oracle::random_real_dataset(rng, 90, 3);
    const auto x = FeatureMatrix::from_rows(d.x);
    const auto forest = fit_forest(x, d.y, ForestConfig{});
    const auto text = forest.to_string();
    const auto back = ForestModel::parse(text);
    EXPECT_EQ(back.to_string(), text);
    for (std::size_t i = 0; i < x.rows(); ++i) ASSERT_EQ(back.predict(x.row(i)), forest.predict(x.row(i)));
    EXPECT_THROW(GbtModel::parse(text), DataError);
}

TEST(Gbt, OneRoundInterpolatesFourPoints) {
    GbtConfig cfg;
    cfg.n_rounds = 1;
    cfg.shrinkage = 1.0;
    cfg.tree.max_depth = kUnlimitedDepth;
    cfg.tree.min_gain = 0.0;
    const auto model = fit_gbt(four_x(), kFourY, cfg);
    EXPECT_EQ(model.base_score(), 5.0);
    for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(model.predict(four_x().row(i)), kFourY[i]);
}

TEST(Gbt, ConstantTargetsGiveZeroStages) {
    const std::vector<double> y{4, 4, 4, 4};
    GbtConfig cfg;
    cfg.n_rounds = 5;
    const auto model = fit_gbt(four_x(), y, cfg);
    EXPECT_EQ(model.base_score(), 4.0);
    ASSERT_EQ(model.stages().size(), 5u);
    for (const auto& s : model.stages()) {
        EXPECT_EQ(s.tree.node_count(), 1u);
        EXPECT_EQ(s.tree.nodes()[0].value, 0.0);
    }
}

TEST(Gbt, FormulaAndValidation) {
    GbtConfig cfg;
    cfg.n_rounds = 0;
    EXPECT_THROW(fit_gbt(four_x(), kFourY, cfg), ConfigError);
    cfg.n_rounds = 1;
    cfg.shrinkage = 0.0;
    EXPECT_THROW(fit_gbt(four_x(), kFourY, cfg), ConfigError);
    cfg.shrinkage = 1.5;
    EXPECT_THROW(fit_gbt(four_x(), kFourY, cfg), ConfigError);

    cfg.shrinkage = 0.1;
    const auto model = fit_gbt(four_x(), kFourY, cfg);
    const auto& tree = model.stages()[0].tree;
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_EQ(model.predict(four_x().row(i)), 5.0 + 0.1 * tree.predict(four_x().row(i)));
    }
}

TEST(Gbt, PredictFromHandBuiltStages) {
    GbtModel empty(GbtConfig{}, 5.0, {}, 1);
    EXPECT_EQ(empty.predict(std::vector<double>{0}), 5.0);

    GbtModel one(GbtConfig{}, 5.0, {{constant_tree(-5), 1.0}}, 1);
    EXPECT_EQ(one.predict(std::vector<double>{0}), 0.0);

    GbtModel two(GbtConfig{}, 5.0, {{constant_tree(-5), 0.5}, {constant_tree(2), 0.5}}, 1);
    EXPECT_EQ(two.predict(std::vector<double>{0}), 3.5);
    EXPECT_THROW(two.predict(std::vector<double>{0, 0}), DataError);
}

TEST(Gbt, TrainingSseNonIncreasing) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        const auto d = oracle::random_real_dataset(rng, 80, 3);
        GbtConfig cfg;
        cfg.n_rounds = 50;
        std::vector<double> sse;
        fit_gbt(FeatureMatrix::from_rows(d.x), d.y, cfg, [&](int, double s) { sse.push_back(s); });
        ASSERT_EQ(sse.size(), 51u);
        for (std::size_t t = 1; t < sse.size(); ++t) ASSERT_LE(sse[t], sse[t - 1]) << "round " << t;
    }
}

TEST(Gbt, ModelFileRoundTripAndDeterminism) {
    std::mt19937_64 rng(6);
    const auto d = oracle::random_real_dataset(rng, 90, 3);
    const auto x = FeatureMatrix::from_rows(d.x);
    GbtConfig cfg;
    cfg.n_rounds = 20;
    const auto model = fit_gbt(x, d.y, cfg);
    const auto text = model.to_string();
    EXPECT_EQ(text, fit_gbt(x, d.y, cfg).to_string());
    const auto back = GbtModel::parse(text);
    EXPECT_EQ(back.to_string(), text);
    for (std::size_t i = 0; i < x.rows(); ++i) ASSERT_EQ(back.predict(x.row(i)), model.predict(x.row(i)));
}
