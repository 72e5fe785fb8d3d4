#include "loadcast/scaler.hpp"

#include <algorithm>
#include <cmath>

#include "loadcast/error.hpp"

namespace loadcast {

std::string_view scaler_name(ScalerKind kind) noexcept {
    return kind == ScalerKind::MinMax ? "minmax" : "maxabs";
}

ScalerKind parse_scaler_kind(std::string_view name) {
    if (name == "minmax") return ScalerKind::MinMax;
    if (name == "maxabs") return ScalerKind::MaxAbs;
    throw ConfigError("unknown scaler '" + std::string(name) + "'");
}

double ScalerParams::transform(std::size_t column, double x) const noexcept {
    if (!schema.scalable[column]) return x;
    const auto& s = stats[column];
    if (kind == ScalerKind::MinMax) {
        // A constant training column maps to 0.
        if (s.max == s.min) return 0.0;
        return (x - s.min) / (s.max - s.min);
    }
    if (s.max_abs == 0.0) return 0.0;
    return x / s.max_abs;
}

double ScalerParams::inverse(std::size_t column, double x) const noexcept {
    if (!schema.scalable[column]) return x;
    const auto& s = stats[column];
    if (kind == ScalerKind::MinMax) return s.min + x * (s.max - s.min);
    return x * s.max_abs;
}

void ScalerParams::transform_row(std::span<double> row) const {
    if (row.size() != schema.size()) throw DataError("scaler: feature width mismatch");
    for (std::size_t j = 0; j < row.size(); ++j) row[j] = transform(j, row[j]);
}

void ScalerParams::inverse_row(std::span<double> row) const {
    if (row.size() != schema.size()) throw DataError("scaler: feature width mismatch");
    for (std::size_t j = 0; j < row.size(); ++j) row[j] = inverse(j, row[j]);
}

namespace {

std::string join(const std::vector<std::string>& names) {
    std::string out;
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i) out += ',';
        out += names[i];
    }
    return out;
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto comma = text.find(',', start);
        if (comma == std::string::npos) comma = text.size();
        if (comma > start) out.push_back(text.substr(start, comma - start));
        start = comma + 1;
    }
    return out;
}

}  // namespace

KeyValueDoc ScalerParams::to_doc() const {
    KeyValueDoc doc;
    doc.set("kind", std::string(scaler_name(kind)));
    doc.set("columns", join(schema.names));
    std::vector<std::string> passthrough;
    for (std::size_t j = 0; j < schema.size(); ++j) {
        if (!schema.scalable[j]) {
            passthrough.push_back(schema.names[j]);
            continue;
        }
        if (kind == ScalerKind::MinMax) {
            doc.set(schema.names[j] + ".min", stats[j].min);
            doc.set(schema.names[j] + ".max", stats[j].max);
        } else {
            doc.set(schema.names[j] + ".maxabs", stats[j].max_abs);
        }
    }
    doc.set("passthrough", join(passthrough));
    return doc;
}

ScalerParams ScalerParams::from_doc(const KeyValueDoc& doc) {
    ScalerParams p;
    p.kind = parse_scaler_kind(doc.get("kind"));
    p.schema.names = split_list(doc.get("columns"));
    const auto passthrough = split_list(doc.find("passthrough").value_or(""));
    p.stats.resize(p.schema.size());
    for (std::size_t j = 0; j < p.schema.size(); ++j) {
        const auto& name = p.schema.names[j];
        const bool scalable = std::find(passthrough.begin(), passthrough.end(), name) == passthrough.end();
        p.schema.scalable.push_back(scalable);
        if (!scalable) continue;
        if (p.kind == ScalerKind::MinMax) {
            p.stats[j].min = doc.get_double(name + ".min");
            p.stats[j].max = doc.get_double(name + ".max");
            if (p.stats[j].max < p.stats[j].min) throw DataError("scaler: max < min for '" + name + "'");
        } else {
            p.stats[j].max_abs = doc.get_double(name + ".maxabs");
        }
    }
    return p;
}

ScalerParams fit_scaler(std::span<const Sample> train, const FeatureSchema& schema, ScalerKind kind) {
    if (train.empty()) throw DataError("fit_scaler: empty training set");
    ScalerParams p{kind, schema, std::vector<ColumnStats>(schema.size())};
    for (std::size_t j = 0; j < schema.size(); ++j) {
        p.stats[j].min = p.stats[j].max = train.front().features.at(j);
    }
    for (const auto& s : train) {
        if (s.features.size() != schema.size()) throw DataError("fit_scaler: feature width mismatch");
        for (std::size_t j = 0; j < schema.size(); ++j) {
            const double x = s.features[j];
            auto& st = p.stats[j];
            st.min = std::min(st.min, x);
            st.max = std::max(st.max, x);
            st.max_abs = std::max(st.max_abs, std::abs(x));
        }
    }
    return p;
}

std::vector<Sample> apply_scaler(const ScalerParams& params, const FeatureSchema& schema,
                                 std::span<const Sample> samples) {
    if (!(params.schema == schema)) throw DataError("apply_scaler: schema mismatch");
    std::vector<Sample> out(samples.begin(), samples.end());
    for (auto& s : out) params.transform_row(s.features);
    return out;
}

}  // namespace loadcast
