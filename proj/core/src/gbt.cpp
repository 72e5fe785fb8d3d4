#include "loadcast/gbt.hpp"

#include <cmath>
#include <sstream>

#include "loadcast/error.hpp"
#include "model_io.hpp"

namespace loadcast {

void GbtConfig::validate() const {
    if (n_rounds < 1) throw ConfigError("n_rounds must be >= 1");
    if (!(shrinkage > 0.0 && shrinkage <= 1.0)) throw ConfigError("shrinkage must lie in (0,1]");
    tree.validate();
}

GbtModel::GbtModel(GbtConfig config, double base_score, std::vector<GbtStage> stages, std::size_t n_features)
    : config_(std::move(config)), base_score_(base_score), stages_(std::move(stages)), n_features_(n_features) {
    for (const auto& s : stages_) {
        if (s.tree.n_features() != n_features_) throw DataError("gbt: stage tree width mismatch");
    }
}

double GbtModel::predict(std::span<const double> features) const {
    if (features.size() != n_features_) {
        throw DataError("gbt: expected " + std::to_string(n_features_) + " features, got " +
                        std::to_string(features.size()));
    }
    double f = base_score_;
    for (const auto& s : stages_) f += s.shrinkage * s.tree.predict(features);
    return f;
}

GbtModel fit_gbt(const FeatureMatrix& x, std::span<const double> y, const GbtConfig& config,
                 const GbtRoundObserver& observer) {
    config.validate();
    const std::size_t n = x.rows();
    if (n == 0) throw DataError("fit_gbt: empty training set");
    if (y.size() != n) throw DataError("fit_gbt: target count does not match feature rows");

    double sum = 0.0;
    for (double v : y) sum += v;
    const double base = sum / static_cast<double>(n);

    std::vector<double> fitted(n, base);
    std::vector<double> residual(n);
    auto sse = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += (y[i] - fitted[i]) * (y[i] - fitted[i]);
        return s;
    };
    if (observer) observer(0, sse());

    std::vector<GbtStage> stages;
    stages.reserve(static_cast<std::size_t>(config.n_rounds));
    for (int round = 1; round <= config.n_rounds; ++round) {
        for (std::size_t i = 0; i < n; ++i) residual[i] = y[i] - fitted[i];
        auto tree = fit_tree(x, residual, config.tree);
        for (std::size_t i = 0; i < n; ++i) fitted[i] += config.shrinkage * tree.predict(x.row(i));
        stages.push_back({std::move(tree), config.shrinkage});
        if (observer) observer(round, sse());
    }
    return GbtModel(config, base, std::move(stages), x.cols());
}

GbtModel fit_gbt(std::span<const Sample> train, const GbtConfig& config, const GbtRoundObserver& observer) {
    return fit_gbt(FeatureMatrix::from_samples(train), targets_of(train), config, observer);
}

void GbtModel::write(std::ostream& out) const {
    KeyValueDoc doc;
    doc.set("kind", "gbt");
    doc.set("n_rounds", std::to_string(config_.n_rounds));
    doc.set("shrinkage", config_.shrinkage);
    doc.set("max_depth", std::to_string(config_.tree.max_depth));
    doc.set("min_gain", config_.tree.min_gain);
    doc.set("min_samples_split", std::to_string(config_.tree.min_samples_split));
    doc.set("gain_mode", std::string(gain_mode_name(config_.tree.gain_mode)));
    doc.set("seed", std::to_string(config_.seed));
    doc.set("n_features", std::to_string(n_features_));
    doc.set("base_score", base_score_);
    doc.set("stages", std::to_string(stages_.size()));
    detail::write_model_header(out, doc);
    for (const auto& s : stages_) {
        out << "stage shrinkage=" << format_double(s.shrinkage) << '\n';
        s.tree.write(out);
    }
}

std::string GbtModel::to_string() const {
    std::ostringstream out;
    write(out);
    return out.str();
}

GbtModel GbtModel::parse(std::string_view text) {
    const auto lines = split_lines(text);
    std::size_t pos = 0;
    const auto doc = detail::read_model_header(lines, pos);
    if (doc.get("kind") != "gbt") throw DataError("model: not a gbt model");

    GbtConfig config;
    config.n_rounds = static_cast<int>(doc.get_double("n_rounds"));
    config.shrinkage = doc.get_double("shrinkage");
    config.tree.max_depth = static_cast<int>(doc.get_double("max_depth"));
    config.tree.min_gain = doc.get_double("min_gain");
    config.tree.min_samples_split = static_cast<std::size_t>(doc.get_double("min_samples_split"));
    config.tree.gain_mode = parse_gain_mode(doc.get("gain_mode"));
    config.seed = std::stoull(doc.get("seed"));
    const auto n_features = static_cast<std::size_t>(doc.get_double("n_features"));
    const auto n_stages = static_cast<std::size_t>(doc.get_double("stages"));

    std::vector<GbtStage> stages;
    while (pos < lines.size() && !lines[pos].empty()) {
        constexpr std::string_view prefix = "stage shrinkage=";
        if (!lines[pos].starts_with(prefix)) throw DataError("model: expected 'stage' line");
        auto nu = parse_double(lines[pos].substr(prefix.size()));
        if (!nu) throw DataError("model: bad stage shrinkage");
        ++pos;
        stages.push_back({RegressionTree::read(lines, pos), *nu});
    }
    if (stages.size() != n_stages) throw DataError("model: stage count mismatch");
    return GbtModel(config, doc.get_double("base_score"), std::move(stages), n_features);
}

}  // namespace loadcast
