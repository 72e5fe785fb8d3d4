#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "loadcast/features.hpp"
#include "loadcast/kv.hpp"

namespace loadcast {

enum class ScalerKind { MinMax, MaxAbs };

std::string_view scaler_name(ScalerKind kind) noexcept;
ScalerKind parse_scaler_kind(std::string_view name);

struct ColumnStats {
    double min = 0.0;
    double max = 0.0;
    double max_abs = 0.0;
};

/// Per-column statistics fitted on training rows.  Columns the schema
/// marks non-scalable pass through unchanged.
struct ScalerParams {
    ScalerKind kind = ScalerKind::MinMax;
    FeatureSchema schema;
    std::vector<ColumnStats> stats;  // one per schema column

    double transform(std::size_t column, double x) const noexcept;
    double inverse(std::size_t column, double x) const noexcept;
    /// In-place; throws DataError on width mismatch.
    void transform_row(std::span<double> row) const;
    void inverse_row(std::span<double> row) const;

    KeyValueDoc to_doc() const;
    static ScalerParams from_doc(const KeyValueDoc& doc);
};

/// Throws DataError if `train` is empty or rows do not match the schema.
ScalerParams fit_scaler(std::span<const Sample> train, const FeatureSchema& schema, ScalerKind kind);

/// Targets are never scaled; values outside the fitted range are not clipped.
std::vector<Sample> apply_scaler(const ScalerParams& params, const FeatureSchema& schema,
                                 std::span<const Sample> samples);

}  // namespace loadcast
