#include "nusample/nus.hpp"

#include <algorithm>

#include "nusample/error.hpp"
#include "nusample/rng.hpp"

namespace nusample {

ResampleOutcome make_outcome(const Dataset& d, const ClassSplit& split, std::vector<std::size_t> kept_majority,
                             std::optional<Matrix> synthesized) {
    std::sort(kept_majority.begin(), kept_majority.end());
    if (std::adjacent_find(kept_majority.begin(), kept_majority.end()) != kept_majority.end())
        throw Error(ErrorKind::shape, "resample: duplicate kept index");
    for (auto i : kept_majority)
        if (i >= d.size() || d.labels[i] != split.majority_label)
            throw Error(ErrorKind::shape, "resample: kept index is not a majority row");
    if (synthesized && synthesized->cols() != d.dims())
        throw Error(ErrorKind::shape, "resample: synthesized rows have the wrong width");

    ResampleOutcome out;
    out.kept_minority = split.minority_indices;
    out.kept_majority = std::move(kept_majority);

    std::vector<std::size_t> rows;
    rows.reserve(out.kept_minority.size() + out.kept_majority.size());
    std::merge(out.kept_minority.begin(), out.kept_minority.end(), out.kept_majority.begin(), out.kept_majority.end(),
               std::back_inserter(rows));
    out.balanced = d.subset(rows);
    if (synthesized) {
        for (std::size_t r = 0; r < synthesized->rows(); ++r) {
            out.balanced.features.append_row(synthesized->row(r));
            out.balanced.labels.push_back(split.majority_label);
        }
        out.synthesized_majority = std::move(synthesized);
    }
    return out;
}

std::string to_string(ThresholdMode mode) {
    switch (mode) {
        case ThresholdMode::half_average: return "half_average";
        case ThresholdMode::max: return "max";
        case ThresholdMode::or_both: return "or_both";
    }
    return "or_both";
}

ThresholdMode parse_threshold_mode(const std::string& s) {
    if (s == "half_average") return ThresholdMode::half_average;
    if (s == "max") return ThresholdMode::max;
    if (s == "or_both") return ThresholdMode::or_both;
    throw Error(ErrorKind::config, "unknown threshold mode '" + s + "'");
}

void NusConfig::validate() const {
    if (threshold < 1) throw Error(ErrorKind::config, "nus: architecture threshold must be >= 1");
    train.validate();
}

MinorityThresholds minority_thresholds(std::span<const DistanceRecord> minority_distances) {
    if (minority_distances.empty()) throw Error(ErrorKind::empty_input, "minority_thresholds: no distances");
    std::vector<double> d;
    d.reserve(minority_distances.size());
    for (const auto& r : minority_distances) d.push_back(r.dist);
    std::sort(d.begin(), d.end(), std::greater<>());
    const std::size_t half = (d.size() + 1) / 2;
    double sum = 0.0;
    for (std::size_t i = 0; i < half; ++i) sum += d[i];
    return {d.front(), sum / static_cast<double>(half)};
}

std::vector<std::size_t> select_hard(std::span<const DistanceRecord> sorted_majority, std::size_t n1) {
    const std::size_t take = std::min(n1, sorted_majority.size());
    std::vector<std::size_t> kept;
    kept.reserve(take);
    for (std::size_t i = 0; i < take; ++i) kept.push_back(sorted_majority[i].index);
    std::sort(kept.begin(), kept.end());
    return kept;
}

std::vector<std::size_t> select_soft(std::span<const DistanceRecord> majority, const MinorityThresholds& t,
                                     ThresholdMode mode) {
    std::vector<std::size_t> kept;
    for (const auto& r : majority) {
        bool keep = false;
        switch (mode) {
            case ThresholdMode::max: keep = r.dist > t.max_dist; break;
            case ThresholdMode::half_average: keep = r.dist > t.last_mid_avg; break;
            case ThresholdMode::or_both: keep = r.dist > t.max_dist || r.dist > t.last_mid_avg; break;
        }
        if (keep) kept.push_back(r.index);
    }
    std::sort(kept.begin(), kept.end());
    return kept;
}

TrainedReconstructor fit_minority_model(const Dataset& d, const ClassSplit& split, const NusConfig& cfg,
                                        std::uint64_t seed) {
    cfg.validate();
    if (split.n_minority() == 0) throw Error(ErrorKind::empty_input, "nus: no minority rows");
    const auto spec = choose_architecture(d.dims(), cfg.threshold, cfg.widths);
    auto train = cfg.train;
    train.seed = derive_seed(seed, 0x6e7573);
    return train_reconstructor(d.features.select_rows(split.minority_indices), spec, train);
}

ResampleOutcome nus1_with_model(const Dataset& d, const ClassSplit& split, const Reconstructor& model) {
    const auto majority = reconstruction_distances(model, split.majority_indices, d.features);
    return make_outcome(d, split, select_hard(majority, split.n_minority()));
}

ResampleOutcome nus1(const Dataset& d, const NusConfig& cfg, std::uint64_t seed) {
    const auto split = split_classes(d);
    const auto model = fit_minority_model(d, split, cfg, seed);
    return nus1_with_model(d, split, model);
}

ResampleOutcome nus2_with_model(const Dataset& d, const ClassSplit& split, const Reconstructor& model,
                                ThresholdMode mode) {
    const auto minority = reconstruction_distances(model, split.minority_indices, d.features);
    const auto thresholds = minority_thresholds(minority);
    const auto majority = reconstruction_distances(model, split.majority_indices, d.features);
    auto out = make_outcome(d, split, select_soft(majority, thresholds, mode));
    if (out.kept_majority.empty())
        out.warnings.push_back("nus2: no majority row exceeded the minority threshold; output is single-class");
    return out;
}

ResampleOutcome nus2(const Dataset& d, const NusConfig& cfg, std::uint64_t seed) {
    const auto split = split_classes(d);
    const auto model = fit_minority_model(d, split, cfg, seed);
    return nus2_with_model(d, split, model, cfg.threshold_mode);
}

}  // namespace nusample
