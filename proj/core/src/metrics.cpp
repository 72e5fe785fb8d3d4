#include "loadcast/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "loadcast/error.hpp"

namespace loadcast {

MadKind parse_mad_kind(std::string_view name) {
    if (name == "mean") return MadKind::Mean;
    if (name == "median") return MadKind::Median;
    throw ConfigError("unknown MAD kind '" + std::string(name) + "'");
}

namespace {

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

}  // namespace

MetricsReport compute_metrics(std::span<const double> actual, std::span<const double> predicted, MadKind mad_kind) {
    if (actual.size() != predicted.size()) throw DataError("metrics: actual/predicted length mismatch");
    if (actual.empty()) throw DataError("metrics: empty input");

    const std::size_t n = actual.size();
    const double nd = static_cast<double>(n);
    std::vector<double> err(n);
    double se = 0.0;
    double ae = 0.0;
    double sum_e = 0.0;
    double ape = 0.0;
    std::size_t mape_points = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(actual[i]) || !std::isfinite(predicted[i])) throw DataError("metrics: non-finite value");
        err[i] = predicted[i] - actual[i];
        se += err[i] * err[i];
        ae += std::abs(err[i]);
        sum_e += err[i];
        if (actual[i] != 0.0) {
            ape += std::abs(err[i]) / std::abs(actual[i]);
            ++mape_points;
        }
    }

    MetricsReport r;
    r.n_points = n;
    r.rmse = std::sqrt(se / nd);
    r.mae = ae / nd;
    if (mad_kind == MadKind::Mean) {
        const double mean_e = sum_e / nd;
        double dev = 0.0;
        for (double e : err) dev += std::abs(e - mean_e);
        r.mad = dev / nd;
    } else {
        const double med = median(err);
        std::vector<double> dev(n);
        for (std::size_t i = 0; i < n; ++i) dev[i] = std::abs(err[i] - med);
        r.mad = median(std::move(dev));
    }
    r.n_skipped_mape = n - mape_points;
    if (mape_points > 0) r.mape = 100.0 * ape / static_cast<double>(mape_points);
    return r;
}

KeyValueDoc MetricsReport::to_doc(std::string_view model_name) const {
    KeyValueDoc doc;
    doc.set("model", std::string(model_name));
    doc.set("rmse", rmse);
    doc.set("mae", mae);
    doc.set("mad", mad);
    doc.set("mape", mape ? format_double(*mape) : std::string("none"));
    doc.set("n_points", std::to_string(n_points));
    doc.set("n_skipped_mape", std::to_string(n_skipped_mape));
    return doc;
}

std::pair<std::string, MetricsReport> MetricsReport::from_doc(const KeyValueDoc& doc) {
    MetricsReport r;
    r.rmse = doc.get_double("rmse");
    r.mae = doc.get_double("mae");
    r.mad = doc.get_double("mad");
    if (doc.get("mape") != "none") r.mape = doc.get_double("mape");
    r.n_points = static_cast<std::size_t>(doc.get_double("n_points"));
    r.n_skipped_mape = static_cast<std::size_t>(doc.get_double("n_skipped_mape"));
    return {doc.get("model"), r};
}

std::string_view metric_name(Metric m) noexcept {
    switch (m) {
        case Metric::Rmse: return "RMSE";
        case Metric::Mae: return "MAE";
        case Metric::Mad: return "MAD";
        case Metric::Mape: return "MAPE";
    }
    return "?";
}

ComparisonTable compare_models(std::span<const std::pair<std::string, MetricsReport>> reports) {
    if (reports.empty()) throw DataError("compare: no reports");
    ComparisonTable t;
    for (const auto& [name, _] : reports) t.models.push_back(name);
    for (Metric m : t.metrics) {
        std::vector<std::optional<double>> row;
        for (const auto& [_, r] : reports) {
            switch (m) {
                case Metric::Rmse: row.emplace_back(r.rmse); break;
                case Metric::Mae: row.emplace_back(r.mae); break;
                case Metric::Mad: row.emplace_back(r.mad); break;
                case Metric::Mape: row.push_back(r.mape); break;
            }
        }
        std::optional<double> lo;
        for (const auto& v : row) {
            if (v && (!lo || *v < *lo)) lo = v;
        }
        std::vector<bool> best;
        for (const auto& v : row) best.push_back(v && lo && *v == *lo);
        t.values.push_back(std::move(row));
        t.best.push_back(std::move(best));
    }
    return t;
}

namespace {

std::string short_fixed(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    std::string s = buf;
    if (s.find('.') != std::string::npos) {
        while (s.back() == '0') s.pop_back();
        if (s.back() == '.') s.pop_back();
    }
    return s;
}

}  // namespace

std::string ComparisonTable::to_text() const {
    std::vector<std::vector<std::string>> cells;
    cells.push_back({"Metric"});
    for (const auto& m : models) cells.back().push_back(m);
    for (std::size_t i = 0; i < metrics.size(); ++i) {
        std::vector<std::string> row{std::string(metric_name(metrics[i]))};
        for (std::size_t j = 0; j < models.size(); ++j) {
            row.push_back(values[i][j] ? short_fixed(*values[i][j]) + (best[i][j] ? "*" : "") : "n/a");
        }
        cells.push_back(std::move(row));
    }
    std::vector<std::size_t> width(models.size() + 1, 0);
    for (const auto& row : cells) {
        for (std::size_t j = 0; j < row.size(); ++j) width[j] = std::max(width[j], row[j].size());
    }
    std::ostringstream out;
    for (const auto& row : cells) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j == 0) {
                out << row[j] << std::string(width[j] - row[j].size(), ' ');
            } else {
                out << "  " << std::string(width[j] - row[j].size(), ' ') << row[j];
            }
        }
        out << '\n';
    }
    return out.str();
}

std::string ComparisonTable::to_csv() const {
    std::ostringstream out;
    out << "metric";
    for (const auto& m : models) out << ',' << m;
    out << ",best\n";
    for (std::size_t i = 0; i < metrics.size(); ++i) {
        out << metric_name(metrics[i]);
        std::string winners;
        for (std::size_t j = 0; j < models.size(); ++j) {
            out << ',' << (values[i][j] ? format_double(*values[i][j]) : std::string());
            if (best[i][j]) winners += (winners.empty() ? "" : ";") + models[j];
        }
        out << ',' << winners << '\n';
    }
    return out.str();
}

}  // namespace loadcast
