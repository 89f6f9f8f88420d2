#pragma once

#include <cstdint>
#include <string>

#include "nusample/dataset.hpp"
#include "nusample/nus.hpp"

namespace nusample {

/// How an edited-nearest-neighbour pass decides a majority row is noise.
///   all_agree : removed unless every one of its k neighbours is majority
///   mode      : removed when the minority holds a strict majority of the k
enum class EditRule { all_agree, mode };

std::string to_string(EditRule r);
EditRule parse_edit_rule(const std::string& s);

ResampleOutcome random_undersample(const Dataset& d, std::uint64_t seed);

/// version in {1,2,3}.
ResampleOutcome near_miss(const Dataset& d, int version, std::size_t k = 3);

ResampleOutcome tomek_links(const Dataset& d);

ResampleOutcome enn(const Dataset& d, std::size_t k = 3, EditRule rule = EditRule::all_agree);

/// ENN for k = 1..k_max, each pass on the survivors of the previous one.
ResampleOutcome all_knn(const Dataset& d, std::size_t k_max = 3, EditRule rule = EditRule::all_agree);

/// ENN(k) removals plus the majority neighbours of every minority row its
/// own k-NN vote misclassifies.
ResampleOutcome ncr(const Dataset& d, std::size_t k = 3, EditRule rule = EditRule::mode);

/// Majority replaced by n1 k-means centroids.
ResampleOutcome cluster_centroids(const Dataset& d, std::uint64_t seed);

}  // namespace nusample
