#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "loadcast/kv.hpp"

namespace loadcast {

enum class MadKind {
    Mean,    // mean |e_i - mean(e)|
    Median,  // median |e_i - median(e)|
};

MadKind parse_mad_kind(std::string_view name);

struct MetricsReport {
    double rmse = 0.0;
    double mae = 0.0;
    double mad = 0.0;
    std::optional<double> mape;  // percent; absent when every actual is 0
    std::size_t n_points = 0;
    std::size_t n_skipped_mape = 0;

    KeyValueDoc to_doc(std::string_view model_name) const;
    /// Returns (model name, report).
    static std::pair<std::string, MetricsReport> from_doc(const KeyValueDoc& doc);
};

/// Errors are predicted - actual.  MAPE skips zero actuals and counts them.
/// Throws DataError on empty, mismatched, or non-finite input.
MetricsReport compute_metrics(std::span<const double> actual, std::span<const double> predicted,
                              MadKind mad_kind = MadKind::Mean);

enum class Metric { Rmse, Mae, Mad, Mape };

struct ComparisonTable {
    std::vector<std::string> models;
    std::vector<Metric> metrics{Metric::Rmse, Metric::Mae, Metric::Mad, Metric::Mape};
    /// values[metric][model]
    std::vector<std::vector<std::optional<double>>> values;
    /// best[metric][model]: value equals the row minimum.
    std::vector<std::vector<bool>> best;

    /// Aligned text; best entries carry a trailing '*'.
    std::string to_text() const;
    /// `metric,<model...>,best` with exact values.
    std::string to_csv() const;
};

std::string_view metric_name(Metric m) noexcept;

/// One row per metric, one column per model; ties are all marked best.
ComparisonTable compare_models(std::span<const std::pair<std::string, MetricsReport>> reports);

}  // namespace loadcast
