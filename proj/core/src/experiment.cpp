#include "loadcast/experiment.hpp"

#include <filesystem>
#include <future>
#include <sstream>

#include "loadcast/error.hpp"
#include "loadcast/kv.hpp"
#include "loadcast/readings.hpp"

namespace loadcast {

void ExperimentConfig::validate() const {
    Granularity{granularity_minutes};
    if (synthetic) {
        synthetic->validate();
    } else if (input_path.empty()) {
        throw ConfigError("no input: give an input path or a synthetic spec");
    }
    if (!(split.train_fraction > 0.0 && split.train_fraction < 1.0)) {
        throw ConfigError("train fraction must lie in (0,1)");
    }
    if (!(validation_fraction > 0.0 && validation_fraction < 0.5)) {
        throw ConfigError("validation fraction must lie in (0,0.5)");
    }
    for (int k : features.lag_offsets) {
        if (k < 1) throw ConfigError("lag offsets must be >= 1");
    }
    forest.validate();
    gbt.validate();
}

namespace {

template <typename Fn>
auto stage(std::string_view name, Fn&& fn) -> decltype(fn()) {
    const std::string prefix = "stage '" + std::string(name) + "': ";
    try {
        return fn();
    } catch (const ConfigError& e) {
        throw ConfigError(prefix + e.what());
    } catch (const DataError& e) {
        throw DataError(prefix + e.what());
    } catch (const InvariantError& e) {
        throw InvariantError(prefix + e.what());
    } catch (const std::exception& e) {
        throw InvariantError(prefix + e.what());
    }
}

std::vector<std::size_t> iota_range(std::size_t first, std::size_t last) {
    std::vector<std::size_t> v;
    for (std::size_t i = first; i < last; ++i) v.push_back(i);
    return v;
}

template <typename Model>
std::vector<double> predict_rows(const Model& model, std::span<const Sample> samples) {
    std::vector<double> out;
    out.reserve(samples.size());
    for (const auto& s : samples) out.push_back(model.predict(s.features));
    return out;
}

// Walks test positions in time order, feeding each model prediction back
// into the lag history of later test points.
template <typename Model>
std::vector<double> predict_recursive(const Model& model, std::span<const AggregatedRecord> records,
                                      std::span<const int> offsets, std::span<const std::size_t> test,
                                      const std::optional<ScalerParams>& scaler) {
    std::vector<double> history;
    history.reserve(records.size());
    for (const auto& r : records) history.push_back(r.target);
    std::vector<double> out;
    out.reserve(test.size());
    for (auto i : test) {
        auto row = encode(extract_features(records[i], std::span<const double>(history).first(i), offsets));
        if (scaler) scaler->transform_row(row);
        const double p = model.predict(row);
        history[i] = p;
        out.push_back(p);
    }
    return out;
}

void check_lineage(const DataLineage& lin) {
    auto contains_all = [](const std::vector<std::size_t>& outer, const std::vector<std::size_t>& inner) {
        return std::includes(outer.begin(), outer.end(), inner.begin(), inner.end());
    };
    if (!contains_all(lin.train, lin.scaler_fit) || !contains_all(lin.train, lin.weight_fit) ||
        !contains_all(lin.train, lin.model_fit)) {
        throw InvariantError("a fitting stage consumed samples outside the training partition");
    }
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config) {
    stage("config", [&] { config.validate(); });
    const Granularity granularity{config.granularity_minutes};

    const auto series = stage("load", [&] {
        if (config.synthetic) return parse_readings(generate_synthetic(*config.synthetic));
        return read_readings_file(config.input_path);
    });
    const auto records = stage("preprocess", [&] {
        const auto filled = interpolate_nulls(series.readings);
        AggregateOptions opts;
        opts.meter = config.meter;
        if (opts.meter && *opts.meter >= series.meter_names.size()) {
            throw ConfigError("meter index " + std::to_string(*opts.meter) + " out of range");
        }
        auto out = aggregate(filled, granularity, opts);
        if (out.empty()) throw DataError("no readings");
        return out;
    });

    std::vector<int> offsets;
    if (config.features.lags) {
        offsets = config.features.lag_offsets.empty() ? default_lag_offsets(granularity) : config.features.lag_offsets;
    }
    const FeatureSchema schema = feature_schema(offsets);
    const auto raw_samples = stage("features", [&] { return build_samples(records, offsets); });

    ExperimentResult result;
    DataLineage& lin = result.lineage;
    stage("split", [&] {
        auto idx = split_indices(raw_samples, config.split);
        if (idx.test.empty()) throw DataError("empty test set");
        if (idx.train.size() < 2) throw DataError("training set needs at least two samples");
        lin.train = std::move(idx.train);
        lin.test = std::move(idx.test);
    });

    std::optional<ScalerParams> scaler;
    const auto samples = stage("scale", [&] {
        if (!config.scaler) return raw_samples;
        lin.scaler_fit = lin.train;
        scaler = fit_scaler(select(raw_samples, lin.scaler_fit), schema, *config.scaler);
        return apply_scaler(*scaler, schema, raw_samples);
    });
    const auto train = select(samples, lin.train);
    const auto test = select(samples, lin.test);

    ForestConfig forest_cfg = config.forest;
    forest_cfg.seed = config.seed;
    GbtConfig gbt_cfg = config.gbt;
    gbt_cfg.seed = config.seed;

    auto fit_both = [&](std::span<const Sample> fit_set) {
        const auto x = FeatureMatrix::from_samples(fit_set);
        const auto y = targets_of(fit_set);
        auto gbt_job = std::async(std::launch::async, [&] { return fit_gbt(x, y, gbt_cfg); });
        auto forest = fit_forest(x, y, forest_cfg);
        return std::pair{std::move(forest), gbt_job.get()};
    };

    result.weights = stage("blend-weights", [&] {
        const std::size_t n_val = train_count(config.validation_fraction, train.size());
        if (n_val < 1 || n_val >= train.size()) throw DataError("validation tail leaves no fitting data");
        const std::size_t n_fit = train.size() - n_val;
        for (auto i : iota_range(n_fit, train.size())) lin.weight_fit.push_back(lin.train[i]);
        const std::span<const Sample> fit_part(train.data(), n_fit);
        const std::span<const Sample> val_part(train.data() + n_fit, n_val);
        const auto [rf_v, gbt_v] = fit_both(fit_part);
        const std::vector<std::vector<double>> preds{predict_rows(rf_v, val_part), predict_rows(gbt_v, val_part)};
        return fit_weights({"rf", "gbt"}, preds, targets_of(val_part));
    });

    const auto [forest, gbt] = stage("train", [&] {
        lin.model_fit = lin.train;
        return fit_both(train);
    });
    stage("lineage", [&] { check_lineage(lin); });

    stage("predict", [&] {
        std::vector<double> rf_pred;
        std::vector<double> gbt_pred;
        if (offsets.empty()) {
            rf_pred = predict_rows(forest, test);
            gbt_pred = predict_rows(gbt, test);
        } else {
            rf_pred = predict_recursive(forest, records, offsets, lin.test, scaler);
            gbt_pred = predict_recursive(gbt, records, offsets, lin.test, scaler);
        }
        for (std::size_t i = 0; i < test.size(); ++i) {
            const double both[] = {rf_pred[i], gbt_pred[i]};
            result.predictions.push_back(
                {test[i].origin, test[i].target, rf_pred[i], gbt_pred[i], predict_blend(result.weights, both)});
        }
    });

    stage("evaluate", [&] {
        std::vector<double> actual, rf, gb, bl;
        for (const auto& p : result.predictions) {
            actual.push_back(p.actual);
            rf.push_back(p.rf);
            gb.push_back(p.gbt);
            bl.push_back(p.blend);
        }
        result.reports = {{std::string(kRfName), compute_metrics(actual, rf, config.mad_kind)},
                          {std::string(kGbtName), compute_metrics(actual, gb, config.mad_kind)},
                          {std::string(kBlendName), compute_metrics(actual, bl, config.mad_kind)}};
        result.table = compare_models(result.reports);
    });

    result.forest_model = forest.to_string();
    result.gbt_model = gbt.to_string();

    if (!config.output_dir.empty()) {
        stage("write", [&] {
            namespace fs = std::filesystem;
            fs::create_directories(config.output_dir);
            auto put = [&](const std::string& name, std::string_view contents) {
                const auto path = (fs::path(config.output_dir) / name).string();
                write_text_file(path, contents);
                result.written_files.push_back(path);
            };
            put("predictions.csv", predictions_csv(result.predictions));
            put("model_rf.txt", result.forest_model);
            put("model_gbt.txt", result.gbt_model);
            put("weights.txt", result.weights.to_doc().to_string());
            if (scaler) put("scaler.txt", scaler->to_doc().to_string());
            std::ostringstream features;
            write_features_csv(features, schema, raw_samples);
            put("features.csv", features.str());
            const char* files[] = {"report_rf.txt", "report_gbt.txt", "report_blend.txt"};
            for (std::size_t m = 0; m < result.reports.size(); ++m) {
                put(files[m], result.reports[m].second.to_doc(result.reports[m].first).to_string());
            }
            put("comparison.txt", result.table.to_text());
            put("comparison.csv", result.table.to_csv());
        });
    }
    return result;
}

std::string predictions_csv(const std::vector<PredictionRow>& rows) {
    std::ostringstream out;
    out << "timestamp,actual,pred_rf,pred_gbt,pred_blend\n";
    for (const auto& r : rows) {
        out << r.timestamp.to_string() << ',' << format_double(r.actual) << ',' << format_double(r.rf) << ','
            << format_double(r.gbt) << ',' << format_double(r.blend) << '\n';
    }
    return out.str();
}

std::vector<PredictionRow> parse_predictions_csv(std::string_view text) {
    const auto lines = split_lines(text);
    if (lines.empty() || lines[0] != "timestamp,actual,pred_rf,pred_gbt,pred_blend") {
        throw DataError("predictions csv: unexpected header");
    }
    std::vector<PredictionRow> rows;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        std::vector<std::string_view> f;
        std::string_view rest = lines[i];
        while (true) {
            auto comma = rest.find(',');
            f.push_back(rest.substr(0, comma));
            if (comma == std::string_view::npos) break;
            rest.remove_prefix(comma + 1);
        }
        if (f.size() != 5) throw DataError("predictions csv: row " + std::to_string(i + 1) + " needs 5 columns");
        PredictionRow r;
        r.timestamp = DateTime::parse(f[0]);
        double* slots[] = {&r.actual, &r.rf, &r.gbt, &r.blend};
        for (std::size_t k = 0; k < 4; ++k) {
            auto v = parse_double(f[k + 1]);
            if (!v) throw DataError("predictions csv: bad number in row " + std::to_string(i + 1));
            *slots[k] = *v;
        }
        rows.push_back(r);
    }
    return rows;
}

std::string emit_week_series(std::string_view predictions_csv_text, DateTime anchor) {
    const auto rows = parse_predictions_csv(predictions_csv_text);
    const DateTime end = anchor.plus_minutes(7 * kMinutesPerDay);
    std::vector<PredictionRow> window;
    for (const auto& r : rows) {
        if (r.timestamp >= anchor && r.timestamp < end) window.push_back(r);
    }
    if (window.empty()) throw DataError("empty window");
    return predictions_csv(window);
}

}  // namespace loadcast
