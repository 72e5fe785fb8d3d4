#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "loadcast/features.hpp"

namespace loadcast {

/// Dense row-major feature matrix.
class FeatureMatrix {
public:
    FeatureMatrix() = default;
    FeatureMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static FeatureMatrix from_samples(std::span<const Sample> samples);
    static FeatureMatrix from_rows(const std::vector<std::vector<double>>& rows);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    double operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }
    double& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
    std::span<const double> row(std::size_t r) const noexcept { return {data_.data() + r * cols_, cols_}; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

std::vector<double> targets_of(std::span<const Sample> samples);

enum class GainMode { Relative, Absolute };

std::string_view gain_mode_name(GainMode mode) noexcept;
GainMode parse_gain_mode(std::string_view name);

struct TreeConfig {
    int max_depth = 10;
    /// Minimum variance reduction; a fraction of the parent variance in
    /// relative mode, kW^2 in absolute mode.
    double min_gain = 0.2;
    std::size_t min_samples_split = 2;
    GainMode gain_mode = GainMode::Relative;

    /// Throws ConfigError.
    void validate() const;
};

inline constexpr int kUnlimitedDepth = std::numeric_limits<int>::max();

struct SplitCandidate {
    std::size_t feature_id = 0;
    double threshold = 0.0;
    double gain = 0.0;           // absolute variance reduction
    double relative_gain = 0.0;  // gain / parent variance
};

/// Population variance over `rows` of `y`, accumulated in row order.
double population_variance(std::span<const double> y, std::span<const std::size_t> rows);

/// Best variance-reducing threshold split of `rows` over `feature_ids`.
/// Thresholds are midpoints between consecutive distinct values; ties go
/// to the lowest feature id, then the lowest threshold.  Returns nullopt
/// for fewer than two rows, zero parent variance, or no positive gain.
std::optional<SplitCandidate> best_split(const FeatureMatrix& x, std::span<const double> y,
                                         std::span<const std::size_t> rows,
                                         std::span<const std::size_t> feature_ids);

std::optional<SplitCandidate> best_split(std::span<const Sample> samples, std::span<const std::size_t> feature_ids);

/// Returns the candidate feature ids for one node, given the total count.
using FeatureSampler = std::function<std::vector<std::size_t>(std::size_t n_features)>;

class RegressionTree {
public:
    static constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

    struct Node {
        bool leaf = true;
        std::size_t feature_id = 0;
        double threshold = 0.0;
        std::uint32_t left = kNone;
        std::uint32_t right = kNone;
        double value = 0.0;  // leaves only
        std::size_t n_samples = 0;

        friend bool operator==(const Node&, const Node&) = default;
    };

    RegressionTree() = default;
    RegressionTree(std::vector<Node> nodes, std::size_t n_features);

    /// Throws DataError when `features` has the wrong width.
    double predict(std::span<const double> features) const;
    /// Index of the leaf `features` routes to (`<=` goes left).
    std::uint32_t leaf_index(std::span<const double> features) const;

    std::size_t n_features() const noexcept { return n_features_; }
    std::size_t node_count() const noexcept { return nodes_.size(); }
    std::size_t leaf_count() const noexcept;
    /// Edges on the longest root-to-leaf path.
    int depth() const noexcept;
    const std::vector<Node>& nodes() const noexcept { return nodes_; }

    /// Nested plain-text form; reloading predicts bit-identically.
    void write(std::ostream& out) const;
    std::string to_string() const;
    static RegressionTree parse(std::string_view text);
    /// Reads one `tree ... end` block starting at `lines[pos]`; advances pos.
    static RegressionTree read(std::span<const std::string_view> lines, std::size_t& pos);

    friend bool operator==(const RegressionTree&, const RegressionTree&) = default;

private:
    std::vector<Node> nodes_;  // nodes_[0] is the root
    std::size_t n_features_ = 0;
};

/// Greedy recursive growth over `rows` (duplicates allowed, e.g. a
/// bootstrap draw).  Throws DataError on an empty row set.
RegressionTree fit_tree(const FeatureMatrix& x, std::span<const double> y, std::span<const std::size_t> rows,
                        const TreeConfig& config, const FeatureSampler& sampler = {});

RegressionTree fit_tree(const FeatureMatrix& x, std::span<const double> y, const TreeConfig& config,
                        const FeatureSampler& sampler = {});

RegressionTree fit_tree(std::span<const Sample> samples, const TreeConfig& config,
                        const FeatureSampler& sampler = {});

/// Splits text into lines without copying.
std::vector<std::string_view> split_lines(std::string_view text);

}  // namespace loadcast
