#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "loadcast/features.hpp"

namespace loadcast {

enum class SplitStrategy { Ordered, SeasonalStratified, MonthlyStratified, SingleSeason };

struct SplitSpec {
    SplitStrategy strategy = SplitStrategy::Ordered;
    Season season = Season::Spring;  // SingleSeason only
    double train_fraction = 0.8;
};

/// "ordered", "seasonal", "monthly", "season:<name>".
SplitSpec parse_split(std::string_view text, double train_fraction = 0.8);
std::string split_name(const SplitSpec& spec);

/// Head-of-group size: ceil(f * n), guarded against f*n landing a hair
/// above an integer.
std::size_t train_count(double train_fraction, std::size_t n) noexcept;

/// Indices into the chronological sample list; both sides ascending.
struct SplitIndices {
    std::vector<std::size_t> train;
    std::vector<std::size_t> test;
};

/// Throws ConfigError for train_fraction outside (0,1) and DataError when
/// the strategy selects no samples.
SplitIndices split_indices(std::span<const Sample> samples, const SplitSpec& spec);

struct SplitResult {
    std::vector<Sample> train;
    std::vector<Sample> test;
};

SplitResult split(std::span<const Sample> samples, const SplitSpec& spec);

std::vector<Sample> select(std::span<const Sample> samples, std::span<const std::size_t> indices);

}  // namespace loadcast
