#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "loadcast/blend.hpp"
#include "loadcast/features.hpp"
#include "loadcast/forest.hpp"
#include "loadcast/gbt.hpp"
#include "loadcast/metrics.hpp"
#include "loadcast/scaler.hpp"
#include "loadcast/split.hpp"
#include "loadcast/synthetic.hpp"

namespace loadcast {

struct ExperimentConfig {
    /// Minute-level readings CSV; ignored when `synthetic` is set.
    std::string input_path;
    std::optional<SyntheticSpec> synthetic;

    int granularity_minutes = 1440;
    /// Model one meter (0-based) instead of the building total.
    std::optional<std::size_t> meter;
    SplitSpec split{SplitStrategy::MonthlyStratified, Season::Spring, 0.8};
    std::optional<ScalerKind> scaler = ScalerKind::MinMax;
    FeatureOptions features;
    ForestConfig forest;
    GbtConfig gbt;
    /// Chronological tail of the training set used to fit blend weights.
    double validation_fraction = 0.1;
    MadKind mad_kind = MadKind::Mean;
    /// Empty: compute only, write nothing.
    std::string output_dir;
    /// Seeds both ensembles.
    std::uint64_t seed = 42;

    /// Throws ConfigError; runs before any data is touched.
    void validate() const;
};

struct PredictionRow {
    DateTime timestamp;
    double actual = 0.0;
    double rf = 0.0;
    double gbt = 0.0;
    double blend = 0.0;
};

/// Which sample positions fed which stage.
struct DataLineage {
    std::vector<std::size_t> train;
    std::vector<std::size_t> test;
    std::vector<std::size_t> scaler_fit;
    std::vector<std::size_t> model_fit;   // final models
    std::vector<std::size_t> weight_fit;  // validation tail
};

struct ExperimentResult {
    std::vector<std::pair<std::string, MetricsReport>> reports;  // RF, GBT, blend
    ComparisonTable table;
    EnsembleWeights weights;
    std::vector<PredictionRow> predictions;
    DataLineage lineage;
    std::string forest_model;  // serialized
    std::string gbt_model;
    std::vector<std::string> written_files;
};

inline constexpr std::string_view kRfName = "Random Forest";
inline constexpr std::string_view kGbtName = "Gradient Boosting";
inline constexpr std::string_view kBlendName = "Weighted Average Ensemble";

/// Preprocess, featurize, split, scale, fit RF and GBT, fit blend weights
/// on the validation tail, predict the test set and evaluate.  Errors are
/// rethrown with the failing stage's name prepended.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// `timestamp,actual,pred_rf,pred_gbt,pred_blend`
std::string predictions_csv(const std::vector<PredictionRow>& rows);
std::vector<PredictionRow> parse_predictions_csv(std::string_view text);

/// Rows of a prediction CSV in [anchor, anchor + 7 days).  Throws
/// DataError("empty window") when none fall inside.
std::string emit_week_series(std::string_view predictions_csv_text, DateTime anchor);

}  // namespace loadcast
