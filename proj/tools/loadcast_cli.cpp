// loadcast: synthetic data, experiments, weekly slices and metric tables.
//
// Exit codes: 0 success, 2 config error, 3 data error, 4 internal error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "loadcast/error.hpp"
#include "loadcast/experiment.hpp"
#include "loadcast/kv.hpp"

namespace {

enum ExitCode { kOk = 0, kConfig = 2, kData = 3, kInternal = 4 };

void write_output(const std::string& path, const std::string& contents) {
    if (path.empty() || path == "-") {
        std::cout << contents;
    } else {
        loadcast::write_text_file(path, contents);
    }
}

struct SynthOptions {
    loadcast::SyntheticSpec spec;
    std::string start = "2015-01-01";
    std::string out = "-";
};

void add_synth_flags(CLI::App& cmd, SynthOptions& o) {
    cmd.add_option("--start", o.start, "First day (YYYY-MM-DD)")->capture_default_str();
    cmd.add_option("--days", o.spec.days, "Number of days")->capture_default_str();
    cmd.add_option("--meters", o.spec.meters, "Number of meter columns")->capture_default_str();
    cmd.add_option("--base", o.spec.base_kw, "Base load per meter (kW)")->capture_default_str();
    cmd.add_option("--daily", o.spec.daily_amplitude, "Daily sinusoid amplitude (kW)")->capture_default_str();
    cmd.add_option("--weekly", o.spec.weekly_amplitude, "Weekday step over weekends (kW)")->capture_default_str();
    cmd.add_option("--seasonal", o.spec.seasonal_amplitude, "Seasonal sinusoid amplitude (kW)")
        ->capture_default_str();
    cmd.add_option("--noise", o.spec.noise_sd, "Gaussian noise sd (kW)")->capture_default_str();
    cmd.add_option("--null-rate", o.spec.null_rate, "Probability a reading is blank")->capture_default_str();
}

struct RunOptions {
    loadcast::ExperimentConfig config;
    std::string split = "monthly";
    std::string scaler = "minmax";
    std::string gain_mode = "relative";
    std::string mad = "mean";
    int meter = -1;
    bool synthetic = false;
    SynthOptions synth;
};

loadcast::ExperimentConfig finish_run_config(RunOptions& o) {
    auto cfg = o.config;
    cfg.split = loadcast::parse_split(o.split, o.config.split.train_fraction);
    if (o.scaler == "none") {
        cfg.scaler.reset();
    } else {
        cfg.scaler = loadcast::parse_scaler_kind(o.scaler);
    }
    const auto mode = loadcast::parse_gain_mode(o.gain_mode);
    cfg.forest.tree.gain_mode = mode;
    cfg.gbt.tree.gain_mode = mode;
    cfg.gbt.tree.min_samples_split = cfg.forest.tree.min_samples_split;
    cfg.mad_kind = loadcast::parse_mad_kind(o.mad);
    if (o.meter >= 0) cfg.meter = static_cast<std::size_t>(o.meter);
    if (o.synthetic) {
        o.synth.spec.start = loadcast::DateTime::parse(o.synth.start, true).date();
        o.synth.spec.seed = cfg.seed;
        cfg.synthetic = o.synth.spec;
    }
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Short-term energy consumption forecasting with random forests, gradient boosting and a "
                 "weighted-average ensemble"};
    app.require_subcommand(1);

    // synth
    SynthOptions synth;
    std::uint64_t synth_seed = 42;
    auto* synth_cmd = app.add_subcommand("synth", "Generate minute-level synthetic meter readings");
    add_synth_flags(*synth_cmd, synth);
    synth_cmd->add_option("--seed", synth_seed, "Random seed")->capture_default_str();
    synth_cmd->add_option("-o,--out", synth.out, "Output CSV ('-' for stdout)")->capture_default_str();
    synth_cmd->set_config("--config", "", "Flat key-value file supplying any flag");

    // run
    RunOptions run;
    auto& cfg = run.config;
    auto* run_cmd = app.add_subcommand("run", "Train RF, GBT and the blend; evaluate on the test split");
    run_cmd->set_config("--config", "", "Flat key-value file supplying any flag");
    auto* input_opt = run_cmd->add_option("-i,--input", cfg.input_path, "Minute-level readings CSV");
    auto* synth_flag = run_cmd->add_flag("--synthetic", run.synthetic, "Use generated data instead of --input");
    input_opt->excludes(synth_flag);
    add_synth_flags(*run_cmd, run.synth);
    run_cmd->add_option("-g,--granularity", cfg.granularity_minutes, "Bucket width in minutes (divides 1440)")
        ->capture_default_str();
    run_cmd->add_option("--meter", run.meter, "Model one meter (0-based) instead of the total");
    run_cmd->add_option("--split", run.split, "ordered | seasonal | monthly | season:<winter|spring|summer|autumn>")
        ->capture_default_str();
    run_cmd->add_option("--train-fraction", cfg.split.train_fraction, "Training share")->capture_default_str();
    run_cmd->add_option("--scaler", run.scaler, "minmax | maxabs | none")->capture_default_str();
    run_cmd->add_flag("--lags", cfg.features.lags, "Add lagged consumption features");
    run_cmd->add_option("--lag-offsets", cfg.features.lag_offsets, "Lag offsets in buckets")->delimiter(',');
    run_cmd->add_option("--rf-trees", cfg.forest.n_trees, "Random forest size")->capture_default_str();
    run_cmd->add_option("--rf-depth", cfg.forest.tree.max_depth, "Random forest max depth")->capture_default_str();
    run_cmd->add_option("--rf-min-gain", cfg.forest.tree.min_gain, "Random forest min gain")->capture_default_str();
    run_cmd->add_option("--rf-feature-fraction", cfg.forest.feature_fraction, "Features tried per node")
        ->capture_default_str();
    run_cmd->add_option("--rf-bootstrap", cfg.forest.bootstrap, "Bootstrap rows per tree")->capture_default_str();
    run_cmd->add_option("--gbt-rounds", cfg.gbt.n_rounds, "Boosting rounds")->capture_default_str();
    run_cmd->add_option("--gbt-shrinkage", cfg.gbt.shrinkage, "Learning rate")->capture_default_str();
    run_cmd->add_option("--gbt-depth", cfg.gbt.tree.max_depth, "GBT max depth")->capture_default_str();
    run_cmd->add_option("--gbt-min-gain", cfg.gbt.tree.min_gain, "GBT min gain")->capture_default_str();
    run_cmd->add_option("--gain-mode", run.gain_mode, "relative | absolute")->capture_default_str();
    run_cmd->add_option("--min-samples-split", cfg.forest.tree.min_samples_split, "Smallest splittable node")
        ->capture_default_str();
    run_cmd->add_option("--validation-fraction", cfg.validation_fraction, "Training tail used for blend weights")
        ->capture_default_str();
    run_cmd->add_option("--mad", run.mad, "mean | median")->capture_default_str();
    run_cmd->add_option("--threads", cfg.forest.threads, "Forest worker threads (0 = all cores)")
        ->capture_default_str();
    run_cmd->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
    run_cmd->add_option("-o,--out", cfg.output_dir, "Output directory")->envname("LOADCAST_OUT_DIR");

    // week
    std::string week_input;
    std::string week_anchor;
    std::string week_out = "-";
    auto* week_cmd = app.add_subcommand("week", "Slice seven days out of a prediction CSV");
    week_cmd->add_option("-p,--predictions", week_input, "predictions.csv from 'run'")->required();
    week_cmd->add_option("-a,--anchor", week_anchor, "First day (YYYY-MM-DD or YYYY-MM-DDTHH:MM)")->required();
    week_cmd->add_option("-o,--out", week_out, "Output CSV ('-' for stdout)")->capture_default_str();

    // compare
    std::vector<std::string> report_files;
    bool compare_csv = false;
    auto* compare_cmd = app.add_subcommand("compare", "Render a metric table from saved report files");
    compare_cmd->add_option("reports", report_files, "report_*.txt files")->required();
    compare_cmd->add_flag("--csv", compare_csv, "Emit CSV instead of aligned text");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kConfig;
    }

    try {
        if (*synth_cmd) {
            synth.spec.start = loadcast::DateTime::parse(synth.start, true).date();
            synth.spec.seed = synth_seed;
            synth.spec.validate();
            if (synth.out.empty() || synth.out == "-") {
                loadcast::generate_synthetic(synth.spec, std::cout);
            } else {
                std::ofstream out(synth.out, std::ios::binary | std::ios::trunc);
                if (!out) throw loadcast::DataError("cannot write '" + synth.out + "'");
                loadcast::generate_synthetic(synth.spec, out);
            }
        } else if (*run_cmd) {
            const auto config = finish_run_config(run);
            const auto result = loadcast::run_experiment(config);
            std::cout << result.table.to_text();
            for (std::size_t m = 0; m < result.weights.size(); ++m) {
                std::cout << "weight " << result.weights.names[m] << " = " << result.weights.weights[m]
                          << " (validation RMSE " << result.weights.validation_rmse[m] << ")\n";
            }
            for (const auto& f : result.written_files) std::cerr << "wrote " << f << '\n';
        } else if (*week_cmd) {
            const auto anchor = loadcast::DateTime::parse(week_anchor, true);
            write_output(week_out, loadcast::emit_week_series(loadcast::read_text_file(week_input), anchor));
        } else if (*compare_cmd) {
            std::vector<std::pair<std::string, loadcast::MetricsReport>> reports;
            for (const auto& f : report_files) {
                reports.push_back(loadcast::MetricsReport::from_doc(loadcast::KeyValueDoc::read_file(f)));
            }
            const auto table = loadcast::compare_models(reports);
            std::cout << (compare_csv ? table.to_csv() : table.to_text());
        }
    } catch (const loadcast::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfig;
    } catch (const loadcast::DataError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return kData;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kInternal;
    }
    return kOk;
}
