#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "nusample/matrix.hpp"

namespace nusample {

/// Binary-labelled tabular data. Labels are opaque text identifiers.
///
/// Datasets produced by load_csv() or make_dataset() satisfy the full
/// invariant set (two distinct labels, finite features, n >= 2, m >= 1).
/// Subsets and resampled outputs keep the structural invariants only: a
/// resampler is allowed to hand back a single-class set, and consumers that
/// need both classes check for themselves.
struct Dataset {
    Matrix features;
    std::vector<std::string> labels;
    std::vector<std::string> feature_names;
    std::string label_name;

    std::size_t size() const noexcept { return features.rows(); }
    std::size_t dims() const noexcept { return features.cols(); }

    /// Rows in the listed order.
    Dataset subset(const std::vector<std::size_t>& indices) const;

    /// Distinct labels in lexicographic order.
    std::vector<std::string> distinct_labels() const;
};

/// Validates every Dataset invariant; throws on the first violation.
Dataset make_dataset(Matrix features, std::vector<std::string> labels,
                     std::vector<std::string> feature_names, std::string label_name);

/// Label column chosen by header name or zero-based position.
using LabelColumn = std::variant<std::string, std::size_t>;

Dataset load_csv(const std::string& path, const LabelColumn& label_column);
Dataset parse_csv(std::string_view text, const LabelColumn& label_column);

/// Writes header + rows with the label as the last column.
void write_csv(const Dataset& d, const std::string& path);

struct ClassSplit {
    std::vector<std::size_t> minority_indices;  // ascending
    std::vector<std::size_t> majority_indices;  // ascending
    std::string minority_label;
    std::string majority_label;

    std::size_t n_minority() const noexcept { return minority_indices.size(); }
    std::size_t n_majority() const noexcept { return majority_indices.size(); }
};

/// The smaller class is the minority; on a tie the lexicographically first
/// label is. Requires exactly two labels.
ClassSplit split_classes(const Dataset& d);

/// Per-feature min/max of the data a scaler was fitted on.
struct ScalerParams {
    std::vector<double> min;
    std::vector<double> max;

    /// x -> (x - min) / (max - min); constant columns map to 0. No clamping.
    Matrix apply(const Matrix& x) const;
    Matrix invert(const Matrix& scaled) const;
};

ScalerParams fit_minmax(const Matrix& x);
std::pair<Dataset, ScalerParams> fit_apply_minmax(const Dataset& d);

struct FoldPlan {
    std::size_t k = 0;
    std::size_t repeats = 0;
    std::uint64_t seed = 0;
    std::vector<std::vector<std::size_t>> assignments;  // [repeat][row] -> fold

    /// Row indices (ascending) of one fold, or of everything outside it.
    std::vector<std::size_t> test_rows(std::size_t repeat, std::size_t fold) const;
    std::vector<std::size_t> train_rows(std::size_t repeat, std::size_t fold) const;
};

/// Stratified k-fold assignment, repeated with fresh shuffles.
FoldPlan stratified_folds(const Dataset& d, std::size_t k, std::size_t repeats, std::uint64_t seed);

}  // namespace nusample
