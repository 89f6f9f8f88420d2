#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nusample/dataset.hpp"
#include "nusample/nnet.hpp"

namespace nusample {

/// Result of any undersampler. Indices refer to rows of the input Dataset.
struct ResampleOutcome {
    std::vector<std::size_t> kept_majority;  // ascending
    std::vector<std::size_t> kept_minority;  // ascending, always every minority row
    std::optional<Matrix> synthesized_majority;  // cluster centroids only
    Dataset balanced;  // kept rows in original order, then synthesized rows
    std::vector<std::string> warnings;

    std::size_t majority_count() const {
        return kept_majority.size() + (synthesized_majority ? synthesized_majority->rows() : 0);
    }
};

/// Assembles an outcome from kept majority indices (any order) plus optional
/// synthesized majority rows; every minority row is kept.
ResampleOutcome make_outcome(const Dataset& d, const ClassSplit& split, std::vector<std::size_t> kept_majority,
                             std::optional<Matrix> synthesized = std::nullopt);

enum class ThresholdMode { half_average, max, or_both };

std::string to_string(ThresholdMode mode);
ThresholdMode parse_threshold_mode(const std::string& s);

struct NusConfig {
    std::size_t threshold = kDefaultArchitectureThreshold;  // architecture switch on m
    LayerWidths widths = LayerWidths::full_rank;
    ThresholdMode threshold_mode = ThresholdMode::or_both;
    TrainConfig train;

    void validate() const;
};

struct MinorityThresholds {
    double max_dist = 0.0;
    double last_mid_avg = 0.0;  // mean of the top ceil(n1/2) distances
};

MinorityThresholds minority_thresholds(std::span<const DistanceRecord> minority_distances);

/// First n1 records of a descending-sorted distance list, returned as
/// ascending row indices.
std::vector<std::size_t> select_hard(std::span<const DistanceRecord> sorted_majority, std::size_t n1);

/// Majority records whose distance strictly exceeds the mode's threshold.
std::vector<std::size_t> select_soft(std::span<const DistanceRecord> majority, const MinorityThresholds& t,
                                     ThresholdMode mode);

/// Trains the minority reconstructor used by both samplers.
TrainedReconstructor fit_minority_model(const Dataset& d, const ClassSplit& split, const NusConfig& cfg,
                                        std::uint64_t seed);

/// Hard undersampling: keep the n1 majority rows reconstructed worst by a
/// network fitted to the minority.
ResampleOutcome nus1(const Dataset& d, const NusConfig& cfg, std::uint64_t seed);
ResampleOutcome nus1_with_model(const Dataset& d, const ClassSplit& split, const Reconstructor& model);

/// Soft undersampling: keep the majority rows reconstructed worse than the
/// minority's own threshold. The kept count is data dependent.
ResampleOutcome nus2(const Dataset& d, const NusConfig& cfg, std::uint64_t seed);
ResampleOutcome nus2_with_model(const Dataset& d, const ClassSplit& split, const Reconstructor& model,
                                ThresholdMode mode);

}  // namespace nusample
