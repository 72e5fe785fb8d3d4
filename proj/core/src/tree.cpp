#include "loadcast/tree.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <sstream>

#include "loadcast/error.hpp"
#include "loadcast/kv.hpp"

namespace loadcast {

FeatureMatrix FeatureMatrix::from_samples(std::span<const Sample> samples) {
    const std::size_t cols = samples.empty() ? 0 : samples.front().features.size();
    FeatureMatrix m(samples.size(), cols);
    for (std::size_t r = 0; r < samples.size(); ++r) {
        if (samples[r].features.size() != cols) throw DataError("feature matrix: ragged rows");
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = samples[r].features[c];
    }
    return m;
}

FeatureMatrix FeatureMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    FeatureMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw DataError("feature matrix: ragged rows");
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
    }
    return m;
}

std::vector<double> targets_of(std::span<const Sample> samples) {
    std::vector<double> y;
    y.reserve(samples.size());
    for (const auto& s : samples) y.push_back(s.target);
    return y;
}

std::string_view gain_mode_name(GainMode mode) noexcept {
    return mode == GainMode::Relative ? "relative" : "absolute";
}

GainMode parse_gain_mode(std::string_view name) {
    if (name == "relative") return GainMode::Relative;
    if (name == "absolute") return GainMode::Absolute;
    throw ConfigError("unknown gain mode '" + std::string(name) + "'");
}

void TreeConfig::validate() const {
    if (max_depth < 1) throw ConfigError("max_depth must be >= 1");
    if (!(min_gain >= 0.0) || !std::isfinite(min_gain)) throw ConfigError("min_gain must be finite and >= 0");
    if (min_samples_split < 2) throw ConfigError("min_samples_split must be >= 2");
}

double population_variance(std::span<const double> y, std::span<const std::size_t> rows) {
    if (rows.empty()) return 0.0;
    const double n = static_cast<double>(rows.size());
    double sum = 0.0;
    for (auto r : rows) sum += y[r];
    const double mean = sum / n;
    double ss = 0.0;
    for (auto r : rows) ss += (y[r] - mean) * (y[r] - mean);
    return ss / n;
}

namespace {

double midpoint(double lo, double hi) noexcept {
    const double mid = (lo + hi) / 2.0;
    // Adjacent doubles: the midpoint may round up to `hi`, which would
    // route `hi` left.
    return mid < hi ? mid : lo;
}

}  // namespace

std::optional<SplitCandidate> best_split(const FeatureMatrix& x, std::span<const double> y,
                                         std::span<const std::size_t> rows,
                                         std::span<const std::size_t> feature_ids) {
    const std::size_t n = rows.size();
    if (n < 2) return std::nullopt;
    const double parent_var = population_variance(y, rows);
    if (!(parent_var > 0.0)) return std::nullopt;

    double total = 0.0;
    for (auto r : rows) total += y[r];

    std::vector<std::size_t> features(feature_ids.begin(), feature_ids.end());
    std::sort(features.begin(), features.end());

    // Scan score is the closed form n_L*n_R*(mean_L - mean_R)^2 / n^2 of the
    // variance reduction; near-equal scores count as ties so the
    // (feature, threshold) order decides.
    const double tie_tol = 1e-12 * parent_var;
    const double nd = static_cast<double>(n);
    std::optional<SplitCandidate> best;
    double best_score = 0.0;

    std::vector<std::size_t> order(rows.begin(), rows.end());
    for (auto f : features) {
        if (f >= x.cols()) throw DataError("best_split: feature id out of range");
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x(a, f) < x(b, f); });
        double left_sum = 0.0;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            left_sum += y[order[i]];
            const double lo = x(order[i], f);
            const double hi = x(order[i + 1], f);
            if (!(lo < hi)) continue;
            const double n_left = static_cast<double>(i + 1);
            const double n_right = nd - n_left;
            const double diff = left_sum / n_left - (total - left_sum) / n_right;
            const double score = n_left * n_right * diff * diff / (nd * nd);
            if (score > 0.0 && (!best || score > best_score + tie_tol)) {
                best_score = score;
                best = SplitCandidate{f, midpoint(lo, hi), 0.0, 0.0};
            }
        }
    }
    if (!best) return std::nullopt;

    // Report the gain from its definition over the chosen partition.
    std::vector<std::size_t> left;
    std::vector<std::size_t> right;
    for (auto r : rows) (x(r, best->feature_id) <= best->threshold ? left : right).push_back(r);
    const double n_l = static_cast<double>(left.size());
    const double n_r = static_cast<double>(right.size());
    const double gain =
        parent_var - (n_l / nd) * population_variance(y, left) - (n_r / nd) * population_variance(y, right);
    if (!(gain > 0.0)) return std::nullopt;
    best->gain = gain;
    best->relative_gain = std::min(1.0, gain / parent_var);
    return best;
}

std::optional<SplitCandidate> best_split(std::span<const Sample> samples, std::span<const std::size_t> feature_ids) {
    const auto x = FeatureMatrix::from_samples(samples);
    const auto y = targets_of(samples);
    std::vector<std::size_t> rows(samples.size());
    std::iota(rows.begin(), rows.end(), std::size_t{0});
    return best_split(x, y, rows, feature_ids);
}

RegressionTree::RegressionTree(std::vector<Node> nodes, std::size_t n_features)
    : nodes_(std::move(nodes)), n_features_(n_features) {
    if (nodes_.empty()) throw DataError("tree: no nodes");
    for (const auto& node : nodes_) {
        if (node.leaf) continue;
        if (node.left >= nodes_.size() || node.right >= nodes_.size() || node.feature_id >= n_features_) {
            throw DataError("tree: dangling node reference");
        }
    }
}

std::uint32_t RegressionTree::leaf_index(std::span<const double> features) const {
    if (features.size() != n_features_) {
        throw DataError("tree: expected " + std::to_string(n_features_) + " features, got " +
                        std::to_string(features.size()));
    }
    std::uint32_t i = 0;
    while (!nodes_[i].leaf) {
        const auto& node = nodes_[i];
        i = features[node.feature_id] <= node.threshold ? node.left : node.right;
    }
    return i;
}

double RegressionTree::predict(std::span<const double> features) const {
    return nodes_[leaf_index(features)].value;
}

std::size_t RegressionTree::leaf_count() const noexcept {
    return static_cast<std::size_t>(std::count_if(nodes_.begin(), nodes_.end(), [](const Node& n) { return n.leaf; }));
}

int RegressionTree::depth() const noexcept {
    if (nodes_.empty()) return 0;
    int deepest = 0;
    std::vector<std::pair<std::uint32_t, int>> stack{{0, 0}};
    while (!stack.empty()) {
        auto [i, d] = stack.back();
        stack.pop_back();
        deepest = std::max(deepest, d);
        if (!nodes_[i].leaf) {
            stack.emplace_back(nodes_[i].left, d + 1);
            stack.emplace_back(nodes_[i].right, d + 1);
        }
    }
    return deepest;
}

void RegressionTree::write(std::ostream& out) const {
    out << "tree nodes=" << nodes_.size() << " features=" << n_features_ << '\n';
    std::vector<std::pair<std::uint32_t, int>> stack{{0, 1}};
    while (!stack.empty()) {
        auto [i, d] = stack.back();
        stack.pop_back();
        const auto& node = nodes_[i];
        out << std::string(static_cast<std::size_t>(2 * d), ' ');
        if (node.leaf) {
            out << "leaf value=" << format_double(node.value) << " n=" << node.n_samples << '\n';
        } else {
            out << "split feature=" << node.feature_id << " threshold=" << format_double(node.threshold)
                << " n=" << node.n_samples << '\n';
            stack.emplace_back(node.right, d + 1);
            stack.emplace_back(node.left, d + 1);
        }
    }
    out << "end\n";
}

std::string RegressionTree::to_string() const {
    std::ostringstream out;
    write(out);
    return out.str();
}

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    while (!text.empty()) {
        auto nl = text.find('\n');
        auto line = text.substr(0, nl);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.push_back(line);
        if (nl == std::string_view::npos) break;
        text.remove_prefix(nl + 1);
    }
    return lines;
}

namespace {

// Parses space-separated `key=value` tokens after a leading word.
std::string_view attr(std::string_view line, std::string_view key) {
    std::size_t pos = 0;
    while (pos < line.size()) {
        auto end = line.find(' ', pos);
        if (end == std::string_view::npos) end = line.size();
        auto token = line.substr(pos, end - pos);
        if (token.size() > key.size() && token.starts_with(key) && token[key.size()] == '=') {
            return token.substr(key.size() + 1);
        }
        pos = end + 1;
    }
    throw DataError("tree: missing attribute '" + std::string(key) + "' in '" + std::string(line) + "'");
}

double attr_double(std::string_view line, std::string_view key) {
    auto v = parse_double(attr(line, key));
    if (!v) throw DataError("tree: bad number for '" + std::string(key) + "'");
    return *v;
}

std::size_t attr_size(std::string_view line, std::string_view key) {
    auto v = parse_double(attr(line, key));
    if (!v || *v < 0 || *v != std::floor(*v)) throw DataError("tree: bad count for '" + std::string(key) + "'");
    return static_cast<std::size_t>(*v);
}

struct TreeReader {
    std::span<const std::string_view> lines;
    std::size_t& pos;
    std::vector<RegressionTree::Node> nodes;

    std::uint32_t read_node(int depth) {
        if (pos >= lines.size()) throw DataError("tree: unexpected end of input");
        std::string_view line = lines[pos++];
        const std::size_t indent = line.find_first_not_of(' ');
        if (indent != static_cast<std::size_t>(2 * depth)) throw DataError("tree: bad indentation");
        line.remove_prefix(indent);

        const auto index = static_cast<std::uint32_t>(nodes.size());
        nodes.emplace_back();
        RegressionTree::Node node;
        node.n_samples = attr_size(line, "n");
        if (line.starts_with("leaf ")) {
            node.leaf = true;
            node.value = attr_double(line, "value");
        } else if (line.starts_with("split ")) {
            node.leaf = false;
            node.feature_id = attr_size(line, "feature");
            node.threshold = attr_double(line, "threshold");
            node.left = read_node(depth + 1);
            node.right = read_node(depth + 1);
        } else {
            throw DataError("tree: unknown node line '" + std::string(line) + "'");
        }
        nodes[index] = node;
        return index;
    }
};

}  // namespace

RegressionTree RegressionTree::read(std::span<const std::string_view> lines, std::size_t& pos) {
    if (pos >= lines.size() || !lines[pos].starts_with("tree ")) throw DataError("tree: expected 'tree' header");
    const auto header = lines[pos++];
    const std::size_t n_nodes = attr_size(header, "nodes");
    const std::size_t n_features = attr_size(header, "features");
    TreeReader reader{lines, pos, {}};
    reader.nodes.reserve(n_nodes);
    reader.read_node(1);
    if (pos >= lines.size() || lines[pos] != "end") throw DataError("tree: expected 'end'");
    ++pos;
    if (reader.nodes.size() != n_nodes) throw DataError("tree: node count mismatch");
    return RegressionTree(std::move(reader.nodes), n_features);
}

RegressionTree RegressionTree::parse(std::string_view text) {
    const auto lines = split_lines(text);
    std::size_t pos = 0;
    return read(lines, pos);
}

namespace {

struct TreeBuilder {
    const FeatureMatrix& x;
    std::span<const double> y;
    const TreeConfig& config;
    const FeatureSampler& sampler;
    std::vector<RegressionTree::Node> nodes;
    std::vector<std::size_t> all_features;

    std::uint32_t grow(std::vector<std::size_t> rows, int depth) {
        const auto index = static_cast<std::uint32_t>(nodes.size());
        nodes.emplace_back();

        RegressionTree::Node node;
        node.n_samples = rows.size();

        std::optional<SplitCandidate> split;
        if (depth < config.max_depth && rows.size() >= config.min_samples_split) {
            const auto features = sampler ? sampler(x.cols()) : all_features;
            split = best_split(x, y, rows, features);
            if (split) {
                const double measured = config.gain_mode == GainMode::Relative ? split->relative_gain : split->gain;
                if (measured < config.min_gain) split.reset();
            }
        }

        if (!split) {
            double sum = 0.0;
            for (auto r : rows) sum += y[r];
            node.leaf = true;
            node.value = sum / static_cast<double>(rows.size());
            nodes[index] = node;
            return index;
        }

        std::vector<std::size_t> left;
        std::vector<std::size_t> right;
        for (auto r : rows) (x(r, split->feature_id) <= split->threshold ? left : right).push_back(r);
        rows.clear();
        rows.shrink_to_fit();

        node.leaf = false;
        node.feature_id = split->feature_id;
        node.threshold = split->threshold;
        node.left = grow(std::move(left), depth + 1);
        node.right = grow(std::move(right), depth + 1);
        nodes[index] = node;
        return index;
    }
};

}  // namespace

RegressionTree fit_tree(const FeatureMatrix& x, std::span<const double> y, std::span<const std::size_t> rows,
                        const TreeConfig& config, const FeatureSampler& sampler) {
    config.validate();
    if (rows.empty()) throw DataError("fit_tree: empty sample set");
    if (y.size() != x.rows()) throw DataError("fit_tree: target count does not match feature rows");
    TreeBuilder builder{x, y, config, sampler, {}, std::vector<std::size_t>(x.cols())};
    std::iota(builder.all_features.begin(), builder.all_features.end(), std::size_t{0});
    builder.grow(std::vector<std::size_t>(rows.begin(), rows.end()), 0);
    return RegressionTree(std::move(builder.nodes), x.cols());
}

RegressionTree fit_tree(const FeatureMatrix& x, std::span<const double> y, const TreeConfig& config,
                        const FeatureSampler& sampler) {
    std::vector<std::size_t> rows(x.rows());
    std::iota(rows.begin(), rows.end(), std::size_t{0});
    return fit_tree(x, y, rows, config, sampler);
}

RegressionTree fit_tree(std::span<const Sample> samples, const TreeConfig& config, const FeatureSampler& sampler) {
    const auto x = FeatureMatrix::from_samples(samples);
    const auto y = targets_of(samples);
    return fit_tree(x, y, config, sampler);
}

}  // namespace loadcast
