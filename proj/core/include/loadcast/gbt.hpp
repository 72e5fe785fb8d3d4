#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "loadcast/tree.hpp"

namespace loadcast {

struct GbtConfig {
    int n_rounds = 100;
    double shrinkage = 0.1;
    TreeConfig tree{};
    /// Echoed into model files.  Boosting on full data with all features is
    /// deterministic, so nothing consumes it yet.
    std::uint64_t seed = 42;

    void validate() const;
};

struct GbtStage {
    RegressionTree tree;
    double shrinkage = 0.0;
};

/// Squared-error boosting model: base_score + sum of shrinkage * tree(x).
class GbtModel {
public:
    GbtModel() = default;
    GbtModel(GbtConfig config, double base_score, std::vector<GbtStage> stages, std::size_t n_features);

    /// Throws DataError on width mismatch.
    double predict(std::span<const double> features) const;

    double base_score() const noexcept { return base_score_; }
    const std::vector<GbtStage>& stages() const noexcept { return stages_; }
    const GbtConfig& config() const noexcept { return config_; }
    std::size_t n_features() const noexcept { return n_features_; }

    void write(std::ostream& out) const;
    std::string to_string() const;
    static GbtModel parse(std::string_view text);

private:
    GbtConfig config_;
    double base_score_ = 0.0;
    std::vector<GbtStage> stages_;
    std::size_t n_features_ = 0;
};

/// Called after each round with (round, training SSE after that round);
/// round 0 reports the base-score-only SSE.
using GbtRoundObserver = std::function<void(int round, double training_sse)>;

GbtModel fit_gbt(const FeatureMatrix& x, std::span<const double> y, const GbtConfig& config,
                 const GbtRoundObserver& observer = {});
GbtModel fit_gbt(std::span<const Sample> train, const GbtConfig& config, const GbtRoundObserver& observer = {});

}  // namespace loadcast
