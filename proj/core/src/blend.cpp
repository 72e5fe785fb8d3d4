#include "loadcast/blend.hpp"

#include <cmath>

#include "loadcast/error.hpp"

namespace loadcast {

EnsembleWeights weights_from_rmse(std::vector<std::string> names, std::span<const double> rmse) {
    if (rmse.empty()) throw DataError("blend: no models");
    if (names.size() != rmse.size()) throw DataError("blend: names and RMSEs differ in length");
    EnsembleWeights w;
    w.names = std::move(names);
    w.validation_rmse.assign(rmse.begin(), rmse.end());
    w.weights.assign(rmse.size(), 0.0);

    std::size_t perfect = 0;
    for (double r : rmse) {
        if (std::isnan(r) || r < 0.0) throw DataError("blend: RMSE must be a non-negative number");
        if (r == 0.0) ++perfect;
    }
    if (perfect > 0) {
        for (std::size_t m = 0; m < rmse.size(); ++m) {
            if (rmse[m] == 0.0) w.weights[m] = 1.0 / static_cast<double>(perfect);
        }
        return w;
    }

    double total = 0.0;
    for (double r : rmse) total += 1.0 / r;  // 1/inf = 0
    if (!(total > 0.0)) throw DataError("blend: no model has a finite validation RMSE");
    for (std::size_t m = 0; m < rmse.size(); ++m) w.weights[m] = (1.0 / rmse[m]) / total;
    return w;
}

EnsembleWeights fit_weights(std::vector<std::string> names, std::span<const std::vector<double>> predictions,
                            std::span<const double> actuals) {
    if (actuals.empty()) throw DataError("blend: empty validation set");
    std::vector<double> rmse;
    for (const auto& pred : predictions) {
        if (pred.size() != actuals.size()) throw DataError("blend: prediction/actual length mismatch");
        double ss = 0.0;
        for (std::size_t i = 0; i < actuals.size(); ++i) ss += (pred[i] - actuals[i]) * (pred[i] - actuals[i]);
        rmse.push_back(std::sqrt(ss / static_cast<double>(actuals.size())));
    }
    return weights_from_rmse(std::move(names), rmse);
}

double predict_blend(const EnsembleWeights& weights, std::span<const double> predictions) {
    if (predictions.size() != weights.size()) throw DataError("blend: arity mismatch");
    double out = 0.0;
    for (std::size_t m = 0; m < predictions.size(); ++m) out += weights.weights[m] * predictions[m];
    return out;
}

KeyValueDoc EnsembleWeights::to_doc() const {
    KeyValueDoc doc;
    doc.set("metric", metric);
    std::string joined;
    for (std::size_t m = 0; m < names.size(); ++m) {
        if (m) joined += ',';
        joined += names[m];
    }
    doc.set("models", joined);
    for (std::size_t m = 0; m < names.size(); ++m) {
        doc.set(names[m] + ".weight", weights[m]);
        doc.set(names[m] + ".validation_rmse", validation_rmse[m]);
    }
    return doc;
}

EnsembleWeights EnsembleWeights::from_doc(const KeyValueDoc& doc) {
    EnsembleWeights w;
    w.metric = doc.get("metric");
    const auto& models = doc.get("models");
    std::size_t start = 0;
    while (start < models.size()) {
        auto comma = models.find(',', start);
        if (comma == std::string::npos) comma = models.size();
        w.names.push_back(models.substr(start, comma - start));
        start = comma + 1;
    }
    for (const auto& name : w.names) {
        w.weights.push_back(doc.get_double(name + ".weight"));
        w.validation_rmse.push_back(doc.get_double(name + ".validation_rmse"));
    }
    return w;
}

}  // namespace loadcast
