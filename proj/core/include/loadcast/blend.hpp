#pragma once

#include <span>
#include <string>
#include <vector>

#include "loadcast/kv.hpp"

namespace loadcast {

/// Convex weights for a weighted-average ensemble, proportional to inverse
/// validation RMSE.
struct EnsembleWeights {
    std::vector<std::string> names;
    std::vector<double> weights;
    std::vector<double> validation_rmse;
    std::string metric = "rmse";

    std::size_t size() const noexcept { return weights.size(); }

    KeyValueDoc to_doc() const;
    static EnsembleWeights from_doc(const KeyValueDoc& doc);
};

/// Weights from already-measured validation RMSEs.  Zero-RMSE models share
/// all the weight; infinite-RMSE models get none.
EnsembleWeights weights_from_rmse(std::vector<std::string> names, std::span<const double> rmse);

/// `predictions[m]` holds model m's validation predictions.  Throws
/// DataError on empty or mismatched lengths.
EnsembleWeights fit_weights(std::vector<std::string> names, std::span<const std::vector<double>> predictions,
                            std::span<const double> actuals);

/// Sum of w_m * pred_m; throws DataError on arity mismatch.
double predict_blend(const EnsembleWeights& weights, std::span<const double> predictions);

}  // namespace loadcast
