#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "loadcast/tree.hpp"

namespace loadcast {

struct ForestConfig {
    int n_trees = 15;
    TreeConfig tree{};
    bool bootstrap = true;
    /// Per-node candidate features: ceil(fraction * p), at least one.
    double feature_fraction = 1.0 / 3.0;
    std::uint64_t seed = 42;
    /// Worker threads for tree fitting; 0 = hardware concurrency.
    unsigned threads = 0;

    void validate() const;
};

/// Features drawn per node for `p` total features.
std::size_t features_per_node(double feature_fraction, std::size_t p) noexcept;

/// Row indices of the bootstrap draw (or the identity) for tree `tree_index`.
std::vector<std::size_t> bootstrap_rows(std::uint64_t seed, std::uint64_t tree_index, std::size_t n, bool bootstrap);

class ForestModel {
public:
    ForestModel() = default;
    ForestModel(ForestConfig config, std::vector<RegressionTree> trees);

    /// Mean of member predictions.
    double predict(std::span<const double> features) const;

    const ForestConfig& config() const noexcept { return config_; }
    const std::vector<RegressionTree>& trees() const noexcept { return trees_; }
    std::size_t n_features() const noexcept;

    void write(std::ostream& out) const;
    std::string to_string() const;
    static ForestModel parse(std::string_view text);

private:
    ForestConfig config_;
    std::vector<RegressionTree> trees_;
};

ForestModel fit_forest(const FeatureMatrix& x, std::span<const double> y, const ForestConfig& config);
ForestModel fit_forest(std::span<const Sample> train, const ForestConfig& config);

}  // namespace loadcast
