#include "loadcast/split.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

#include "loadcast/error.hpp"

namespace loadcast {

SplitSpec parse_split(std::string_view text, double train_fraction) {
    SplitSpec spec;
    spec.train_fraction = train_fraction;
    if (text == "ordered") {
        spec.strategy = SplitStrategy::Ordered;
    } else if (text == "seasonal") {
        spec.strategy = SplitStrategy::SeasonalStratified;
    } else if (text == "monthly") {
        spec.strategy = SplitStrategy::MonthlyStratified;
    } else if (text.starts_with("season:")) {
        spec.strategy = SplitStrategy::SingleSeason;
        spec.season = parse_season(text.substr(7));
    } else {
        throw ConfigError("unknown split strategy '" + std::string(text) + "'");
    }
    return spec;
}

std::string split_name(const SplitSpec& spec) {
    switch (spec.strategy) {
        case SplitStrategy::Ordered: return "ordered";
        case SplitStrategy::SeasonalStratified: return "seasonal";
        case SplitStrategy::MonthlyStratified: return "monthly";
        case SplitStrategy::SingleSeason: return "season:" + std::string(season_name(spec.season));
    }
    return "?";
}

std::size_t train_count(double train_fraction, std::size_t n) noexcept {
    const double raw = train_fraction * static_cast<double>(n);
    const auto k = static_cast<std::size_t>(std::ceil(raw - 1e-9));
    return std::min(k, n);
}

namespace {

// Applies the head/tail rule to each group of indices; groups are given in
// first-appearance order, members ascending.
SplitIndices split_groups(const std::vector<std::vector<std::size_t>>& groups, double f) {
    SplitIndices out;
    for (const auto& g : groups) {
        const std::size_t k = train_count(f, g.size());
        out.train.insert(out.train.end(), g.begin(), g.begin() + static_cast<std::ptrdiff_t>(k));
        out.test.insert(out.test.end(), g.begin() + static_cast<std::ptrdiff_t>(k), g.end());
    }
    std::sort(out.train.begin(), out.train.end());
    std::sort(out.test.begin(), out.test.end());
    return out;
}

template <typename KeyFn>
std::vector<std::vector<std::size_t>> group_by(std::span<const Sample> samples, KeyFn key) {
    std::map<decltype(key(samples[0])), std::size_t> slot;
    std::vector<std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        auto [it, inserted] = slot.try_emplace(key(samples[i]), groups.size());
        if (inserted) groups.emplace_back();
        groups[it->second].push_back(i);
    }
    return groups;
}

}  // namespace

SplitIndices split_indices(std::span<const Sample> samples, const SplitSpec& spec) {
    const double f = spec.train_fraction;
    if (!(f > 0.0 && f < 1.0)) throw ConfigError("train fraction must lie in (0,1)");

    std::vector<std::vector<std::size_t>> groups;
    switch (spec.strategy) {
        case SplitStrategy::Ordered: {
            groups.emplace_back(samples.size());
            for (std::size_t i = 0; i < samples.size(); ++i) groups[0][i] = i;
            break;
        }
        case SplitStrategy::MonthlyStratified:
            groups = group_by(samples, [](const Sample& s) {
                const auto d = s.origin.date();
                return std::pair{d.year, d.month};
            });
            break;
        case SplitStrategy::SeasonalStratified:
            groups = group_by(samples, [](const Sample& s) {
                const auto d = s.origin.date();
                return std::pair{season_year(d), static_cast<int>(season_of_month(d.month))};
            });
            break;
        case SplitStrategy::SingleSeason: {
            groups.emplace_back();
            for (std::size_t i = 0; i < samples.size(); ++i) {
                if (season_of_month(samples[i].origin.date().month) == spec.season) groups[0].push_back(i);
            }
            break;
        }
    }
    if (groups.empty() || std::all_of(groups.begin(), groups.end(), [](const auto& g) { return g.empty(); })) {
        throw DataError("split '" + split_name(spec) + "' selects no samples");
    }
    return split_groups(groups, f);
}

std::vector<Sample> select(std::span<const Sample> samples, std::span<const std::size_t> indices) {
    std::vector<Sample> out;
    out.reserve(indices.size());
    for (auto i : indices) out.push_back(samples[i]);
    return out;
}

SplitResult split(std::span<const Sample> samples, const SplitSpec& spec) {
    const auto idx = split_indices(samples, spec);
    return {select(samples, idx.train), select(samples, idx.test)};
}

}  // namespace loadcast
