#include "loadcast/forest.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numeric>
#include <sstream>
#include <thread>

#include "loadcast/error.hpp"
#include "loadcast/random.hpp"
#include "model_io.hpp"

namespace loadcast {

void ForestConfig::validate() const {
    if (n_trees < 1) throw ConfigError("n_trees must be >= 1");
    if (!(feature_fraction > 0.0 && feature_fraction <= 1.0)) throw ConfigError("feature_fraction must lie in (0,1]");
    tree.validate();
}

std::size_t features_per_node(double feature_fraction, std::size_t p) noexcept {
    const auto k = static_cast<std::size_t>(std::ceil(feature_fraction * static_cast<double>(p) - 1e-9));
    return std::clamp<std::size_t>(k, 1, std::max<std::size_t>(p, 1));
}

std::vector<std::size_t> bootstrap_rows(std::uint64_t seed, std::uint64_t tree_index, std::size_t n, bool bootstrap) {
    std::vector<std::size_t> rows(n);
    if (!bootstrap) {
        std::iota(rows.begin(), rows.end(), std::size_t{0});
        return rows;
    }
    // Stream 2t draws rows; 2t+1 feeds the per-node feature sampler.
    auto rng = keyed_stream(seed, 2 * tree_index);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (auto& r : rows) r = pick(rng);
    return rows;
}

namespace {

RegressionTree fit_member(const FeatureMatrix& x, std::span<const double> y, const ForestConfig& config,
                          std::uint64_t tree_index) {
    const auto rows = bootstrap_rows(config.seed, tree_index, x.rows(), config.bootstrap);
    const std::size_t k = features_per_node(config.feature_fraction, x.cols());
    if (k >= x.cols()) return fit_tree(x, y, rows, config.tree);

    auto rng = keyed_stream(config.seed, 2 * tree_index + 1);
    std::vector<std::size_t> pool(x.cols());
    FeatureSampler sampler = [&](std::size_t p) {
        pool.resize(p);
        std::iota(pool.begin(), pool.end(), std::size_t{0});
        std::shuffle(pool.begin(), pool.end(), rng);
        std::vector<std::size_t> chosen(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k));
        std::sort(chosen.begin(), chosen.end());
        return chosen;
    };
    return fit_tree(x, y, rows, config.tree, sampler);
}

}  // namespace

ForestModel fit_forest(const FeatureMatrix& x, std::span<const double> y, const ForestConfig& config) {
    config.validate();
    if (x.rows() == 0) throw DataError("fit_forest: empty training set");
    if (y.size() != x.rows()) throw DataError("fit_forest: target count does not match feature rows");

    const auto n_trees = static_cast<std::size_t>(config.n_trees);
    std::vector<RegressionTree> trees(n_trees);
    unsigned workers = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, n_trees));

    if (workers <= 1) {
        for (std::size_t t = 0; t < n_trees; ++t) trees[t] = fit_member(x, y, config, t);
    } else {
        std::vector<std::future<void>> jobs;
        for (unsigned w = 0; w < workers; ++w) {
            jobs.push_back(std::async(std::launch::async, [&, w] {
                for (std::size_t t = w; t < n_trees; t += workers) trees[t] = fit_member(x, y, config, t);
            }));
        }
        for (auto& job : jobs) job.get();
    }
    return ForestModel(config, std::move(trees));
}

ForestModel fit_forest(std::span<const Sample> train, const ForestConfig& config) {
    return fit_forest(FeatureMatrix::from_samples(train), targets_of(train), config);
}

ForestModel::ForestModel(ForestConfig config, std::vector<RegressionTree> trees)
    : config_(std::move(config)), trees_(std::move(trees)) {
    if (trees_.empty()) throw DataError("forest: no member trees");
    for (const auto& t : trees_) {
        if (t.n_features() != trees_.front().n_features()) throw DataError("forest: members disagree on width");
    }
}

std::size_t ForestModel::n_features() const noexcept {
    return trees_.empty() ? 0 : trees_.front().n_features();
}

double ForestModel::predict(std::span<const double> features) const {
    double sum = 0.0;
    for (const auto& t : trees_) sum += t.predict(features);
    return sum / static_cast<double>(trees_.size());
}

void ForestModel::write(std::ostream& out) const {
    KeyValueDoc doc;
    doc.set("kind", "forest");
    doc.set("n_trees", std::to_string(config_.n_trees));
    doc.set("max_depth", std::to_string(config_.tree.max_depth));
    doc.set("min_gain", config_.tree.min_gain);
    doc.set("min_samples_split", std::to_string(config_.tree.min_samples_split));
    doc.set("gain_mode", std::string(gain_mode_name(config_.tree.gain_mode)));
    doc.set("bootstrap", config_.bootstrap ? "true" : "false");
    doc.set("feature_fraction", config_.feature_fraction);
    doc.set("seed", std::to_string(config_.seed));
    doc.set("n_features", std::to_string(n_features()));
    detail::write_model_header(out, doc);
    for (const auto& t : trees_) t.write(out);
}

std::string ForestModel::to_string() const {
    std::ostringstream out;
    write(out);
    return out.str();
}

ForestModel ForestModel::parse(std::string_view text) {
    const auto lines = split_lines(text);
    std::size_t pos = 0;
    const auto doc = detail::read_model_header(lines, pos);
    if (doc.get("kind") != "forest") throw DataError("model: not a forest");

    ForestConfig config;
    config.n_trees = static_cast<int>(doc.get_double("n_trees"));
    config.tree.max_depth = static_cast<int>(doc.get_double("max_depth"));
    config.tree.min_gain = doc.get_double("min_gain");
    config.tree.min_samples_split = static_cast<std::size_t>(doc.get_double("min_samples_split"));
    config.tree.gain_mode = parse_gain_mode(doc.get("gain_mode"));
    config.bootstrap = doc.get("bootstrap") == "true";
    config.feature_fraction = doc.get_double("feature_fraction");
    config.seed = std::stoull(doc.get("seed"));

    std::vector<RegressionTree> trees;
    while (pos < lines.size() && !lines[pos].empty()) trees.push_back(RegressionTree::read(lines, pos));
    if (trees.size() != static_cast<std::size_t>(config.n_trees)) throw DataError("model: tree count mismatch");
    return ForestModel(config, std::move(trees));
}

}  // namespace loadcast
