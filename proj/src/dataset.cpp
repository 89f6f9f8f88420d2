#include "nusample/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>

#include "nusample/csv.hpp"
#include "nusample/error.hpp"
#include "nusample/rng.hpp"

namespace nusample {

Dataset Dataset::subset(const std::vector<std::size_t>& indices) const {
    Dataset out;
    out.features = features.select_rows(indices);
    out.labels.reserve(indices.size());
    for (auto i : indices) out.labels.push_back(labels[i]);
    out.feature_names = feature_names;
    out.label_name = label_name;
    return out;
}

std::vector<std::string> Dataset::distinct_labels() const {
    std::set<std::string> s(labels.begin(), labels.end());
    return {s.begin(), s.end()};
}

Dataset make_dataset(Matrix features, std::vector<std::string> labels,
                     std::vector<std::string> feature_names, std::string label_name) {
    if (features.rows() != labels.size())
        throw Error(ErrorKind::shape, "dataset: " + std::to_string(features.rows()) + " feature rows but " +
                                          std::to_string(labels.size()) + " labels");
    if (features.rows() < 2) throw Error(ErrorKind::too_few_samples, "dataset: need at least 2 rows");
    if (features.cols() < 1) throw Error(ErrorKind::shape, "dataset: need at least 1 feature column");
    if (feature_names.size() != features.cols())
        throw Error(ErrorKind::shape, "dataset: feature name count does not match column count");
    for (std::size_t r = 0; r < features.rows(); ++r)
        for (std::size_t c = 0; c < features.cols(); ++c)
            if (!std::isfinite(features(r, c)))
                throw Error(ErrorKind::missing_value, "dataset: non-finite value at row " + std::to_string(r) +
                                                          ", column " + feature_names[c]);

    Dataset d{std::move(features), std::move(labels), std::move(feature_names), std::move(label_name)};
    const auto distinct = d.distinct_labels();
    if (distinct.size() != 2)
        throw Error(ErrorKind::non_binary,
                    "dataset: expected exactly 2 distinct labels, found " + std::to_string(distinct.size()));
    return d;
}

namespace {

bool is_missing_token(std::string_view s) {
    return s.empty() || s == "NaN" || s == "nan" || s == "NA" || s == "?";
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

double parse_cell(std::string_view raw, std::size_t record, const std::string& column) {
    const auto s = trim(raw);
    auto where = [&] { return " (record " + std::to_string(record + 1) + ", column " + column + ")"; };
    if (is_missing_token(s)) throw Error(ErrorKind::missing_value, "csv: missing value" + where());
    double v = 0.0;
    const char* first = s.data();
    if (!s.empty() && s.front() == '+') ++first;
    const auto res = std::from_chars(first, s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw Error(ErrorKind::parse, "csv: not a number '" + std::string(s) + "'" + where());
    if (!std::isfinite(v)) throw Error(ErrorKind::missing_value, "csv: non-finite value" + where());
    return v;
}

}  // namespace

Dataset parse_csv(std::string_view text, const LabelColumn& label_column) {
    const auto table = csv::parse(text);
    const auto& header = table.header;

    std::size_t label_idx = 0;
    if (const auto* name = std::get_if<std::string>(&label_column)) {
        const auto it = std::find(header.begin(), header.end(), *name);
        if (it == header.end()) throw Error(ErrorKind::config, "csv: no label column named '" + *name + "'");
        label_idx = static_cast<std::size_t>(it - header.begin());
    } else {
        label_idx = std::get<std::size_t>(label_column);
        if (label_idx >= header.size())
            throw Error(ErrorKind::config, "csv: label column index " + std::to_string(label_idx) + " out of range");
    }

    std::vector<std::string> names;
    for (std::size_t c = 0; c < header.size(); ++c)
        if (c != label_idx) names.push_back(header[c]);

    Matrix features(table.records.size(), names.size());
    std::vector<std::string> labels;
    labels.reserve(table.records.size());
    for (std::size_t r = 0; r < table.records.size(); ++r) {
        const auto& rec = table.records[r];
        std::size_t out = 0;
        for (std::size_t c = 0; c < rec.size(); ++c) {
            if (c == label_idx) continue;
            features(r, out) = parse_cell(rec[c], r, header[c]);
            ++out;
        }
        const auto label = trim(rec[label_idx]);
        if (label.empty()) throw Error(ErrorKind::missing_value, "csv: empty label in record " + std::to_string(r + 1));
        labels.emplace_back(label);
    }
    return make_dataset(std::move(features), std::move(labels), std::move(names), header[label_idx]);
}

Dataset load_csv(const std::string& path, const LabelColumn& label_column) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::io, "cannot open " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_csv(text, label_column);
}

void write_csv(const Dataset& d, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::io, "cannot write " + path);
    auto header = d.feature_names;
    header.push_back(d.label_name);
    csv::write_row(out, header);
    std::vector<std::string> cells(d.dims() + 1);
    for (std::size_t r = 0; r < d.size(); ++r) {
        for (std::size_t c = 0; c < d.dims(); ++c) cells[c] = csv::format_double(d.features(r, c));
        cells.back() = d.labels[r];
        csv::write_row(out, cells);
    }
    if (!out) throw Error(ErrorKind::io, "write failed: " + path);
}

ClassSplit split_classes(const Dataset& d) {
    const auto distinct = d.distinct_labels();
    if (distinct.size() != 2)
        throw Error(ErrorKind::non_binary,
                    "split_classes: expected 2 distinct labels, found " + std::to_string(distinct.size()));
    std::vector<std::size_t> first, second;
    for (std::size_t i = 0; i < d.size(); ++i) (d.labels[i] == distinct[0] ? first : second).push_back(i);

    ClassSplit split;
    // distinct[] is sorted, so a tie leaves the lexicographically first label as minority.
    if (second.size() < first.size()) {
        split.minority_indices = std::move(second);
        split.majority_indices = std::move(first);
        split.minority_label = distinct[1];
        split.majority_label = distinct[0];
    } else {
        split.minority_indices = std::move(first);
        split.majority_indices = std::move(second);
        split.minority_label = distinct[0];
        split.majority_label = distinct[1];
    }
    return split;
}

ScalerParams fit_minmax(const Matrix& x) {
    if (x.empty()) throw Error(ErrorKind::empty_input, "fit_minmax: no rows");
    ScalerParams p;
    p.min.assign(x.row(0).begin(), x.row(0).end());
    p.max = p.min;
    for (std::size_t r = 1; r < x.rows(); ++r) {
        const auto row = x.row(r);
        for (std::size_t c = 0; c < x.cols(); ++c) {
            p.min[c] = std::min(p.min[c], row[c]);
            p.max[c] = std::max(p.max[c], row[c]);
        }
    }
    return p;
}

Matrix ScalerParams::apply(const Matrix& x) const {
    if (x.cols() != min.size()) throw Error(ErrorKind::shape, "scaler: column count mismatch");
    Matrix out(x.rows(), x.cols());
    for (std::size_t c = 0; c < x.cols(); ++c) {
        const double span = max[c] - min[c];
        for (std::size_t r = 0; r < x.rows(); ++r) out(r, c) = span > 0.0 ? (x(r, c) - min[c]) / span : 0.0;
    }
    return out;
}

Matrix ScalerParams::invert(const Matrix& scaled) const {
    if (scaled.cols() != min.size()) throw Error(ErrorKind::shape, "scaler: column count mismatch");
    Matrix out(scaled.rows(), scaled.cols());
    for (std::size_t c = 0; c < scaled.cols(); ++c) {
        const double span = max[c] - min[c];
        for (std::size_t r = 0; r < scaled.rows(); ++r) out(r, c) = min[c] + scaled(r, c) * span;
    }
    return out;
}

std::pair<Dataset, ScalerParams> fit_apply_minmax(const Dataset& d) {
    auto params = fit_minmax(d.features);
    Dataset scaled = d;
    scaled.features = params.apply(d.features);
    return {std::move(scaled), std::move(params)};
}

std::vector<std::size_t> FoldPlan::test_rows(std::size_t repeat, std::size_t fold) const {
    std::vector<std::size_t> rows;
    const auto& a = assignments.at(repeat);
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] == fold) rows.push_back(i);
    return rows;
}

std::vector<std::size_t> FoldPlan::train_rows(std::size_t repeat, std::size_t fold) const {
    std::vector<std::size_t> rows;
    const auto& a = assignments.at(repeat);
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != fold) rows.push_back(i);
    return rows;
}

FoldPlan stratified_folds(const Dataset& d, std::size_t k, std::size_t repeats, std::uint64_t seed) {
    if (k < 2) throw Error(ErrorKind::config, "stratified_folds: k must be >= 2");
    if (repeats < 1) throw Error(ErrorKind::config, "stratified_folds: repeats must be >= 1");
    const auto split = split_classes(d);
    if (split.n_minority() < k)
        throw Error(ErrorKind::too_few_samples, "stratified_folds: class '" + split.minority_label + "' has " +
                                                    std::to_string(split.n_minority()) + " rows, fewer than k=" +
                                                    std::to_string(k));

    FoldPlan plan{k, repeats, seed, {}};
    for (std::size_t rep = 0; rep < repeats; ++rep) {
        Rng rng(derive_seed(seed, rep));
        auto minority = split.minority_indices;
        auto majority = split.majority_indices;
        rng.shuffle(minority);
        rng.shuffle(majority);
        std::vector<std::size_t> fold_ids(k);
        std::iota(fold_ids.begin(), fold_ids.end(), std::size_t{0});
        rng.shuffle(fold_ids);

        // Dealing minority then majority round-robin keeps each class within
        // one row of its share per fold and the fold sizes within one row.
        std::vector<std::size_t> assign(d.size());
        std::size_t pos = 0;
        for (auto i : minority) assign[i] = fold_ids[pos++ % k];
        for (auto i : majority) assign[i] = fold_ids[pos++ % k];
        plan.assignments.push_back(std::move(assign));
    }
    return plan;
}

}  // namespace nusample
