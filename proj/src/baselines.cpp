#include "nusample/baselines.hpp"

#include <algorithm>
#include <numeric>

#include "nusample/error.hpp"
#include "nusample/kmeans.hpp"
#include "nusample/neighbors.hpp"
#include "nusample/rng.hpp"

namespace nusample {

std::string to_string(EditRule r) { return r == EditRule::mode ? "mode" : "all"; }

EditRule parse_edit_rule(const std::string& s) {
    if (s == "all") return EditRule::all_agree;
    if (s == "mode") return EditRule::mode;
    throw Error(ErrorKind::config, "unknown edit rule '" + s + "' (expected all or mode)");
}

namespace {

std::vector<bool> minority_mask(const Dataset& d, const ClassSplit& split) {
    std::vector<bool> is_min(d.size(), false);
    for (auto i : split.minority_indices) is_min[i] = true;
    return is_min;
}

std::vector<std::size_t> complement(const std::vector<std::size_t>& all, const std::vector<bool>& removed) {
    std::vector<std::size_t> out;
    for (auto i : all)
        if (!removed[i]) out.push_back(i);
    return out;
}

// One ENN pass over the reference rows `pool`; marks majority rows of the pool
// that the rule flags.
void edit_pass(const Dataset& d, const std::vector<bool>& is_min, const std::vector<std::size_t>& pool, std::size_t k,
               EditRule rule, std::vector<bool>& removed) {
    NeighborQuery q(d.features, pool);
    for (auto i : pool) {
        if (is_min[i]) continue;
        std::size_t minority = 0;
        for (const auto& nb : q.nearest(d.features.row(i), k, i)) minority += is_min[nb.id];
        const bool flag = rule == EditRule::all_agree ? minority > 0 : 2 * minority > k;
        if (flag) removed[i] = true;
    }
}

void check_k_below_n(std::size_t k, std::size_t n, const char* who) {
    if (k < 1 || k >= n)
        throw Error(ErrorKind::bad_k, std::string(who) + ": k=" + std::to_string(k) + " needs 1 <= k < n=" +
                                          std::to_string(n));
}

}  // namespace

ResampleOutcome random_undersample(const Dataset& d, std::uint64_t seed) {
    const auto split = split_classes(d);
    Rng rng(derive_seed(seed, 0x727573));
    std::vector<std::size_t> kept;
    for (auto p : rng.sample_without_replacement(split.n_majority(), split.n_minority()))
        kept.push_back(split.majority_indices[p]);
    return make_outcome(d, split, std::move(kept));
}

ResampleOutcome near_miss(const Dataset& d, int version, std::size_t k) {
    if (version < 1 || version > 3)
        throw Error(ErrorKind::bad_version, "near_miss: version " + std::to_string(version) + " (expected 1, 2 or 3)");
    const auto split = split_classes(d);
    const std::size_t n1 = split.n_minority();

    if (version == 3) {
        if (k < 1 || k > split.n_majority())
            throw Error(ErrorKind::bad_k, "near_miss v3: k=" + std::to_string(k) + " exceeds majority count");
        NeighborQuery maj(d.features, split.majority_indices);
        std::vector<std::size_t> kept;
        for (auto i : split.minority_indices)
            for (const auto& nb : maj.nearest(d.features.row(i), k)) kept.push_back(nb.id);
        std::sort(kept.begin(), kept.end());
        kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
        return make_outcome(d, split, std::move(kept));
    }

    if (k < 1 || k > n1)
        throw Error(ErrorKind::bad_k, "near_miss: k=" + std::to_string(k) + " exceeds minority count " +
                                          std::to_string(n1));
    NeighborQuery mino(d.features, split.minority_indices);
    std::vector<std::pair<double, std::size_t>> score;
    score.reserve(split.n_majority());
    for (auto i : split.majority_indices) {
        const auto nbs = version == 1 ? mino.nearest(d.features.row(i), k) : mino.farthest(d.features.row(i), k);
        double s = 0.0;
        for (const auto& nb : nbs) s += nb.dist;
        score.emplace_back(s / static_cast<double>(k), i);
    }
    std::sort(score.begin(), score.end());
    std::vector<std::size_t> kept;
    for (std::size_t j = 0; j < std::min(n1, score.size()); ++j) kept.push_back(score[j].second);
    return make_outcome(d, split, std::move(kept));
}

ResampleOutcome tomek_links(const Dataset& d) {
    const auto split = split_classes(d);
    const auto is_min = minority_mask(d, split);
    NeighborQuery q(d.features);
    std::vector<std::size_t> nn(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) nn[i] = q.nearest(d.features.row(i), 1, i).front().id;

    std::vector<bool> removed(d.size(), false);
    for (auto i : split.majority_indices) {
        const auto j = nn[i];
        if (is_min[j] && nn[j] == i) removed[i] = true;
    }
    return make_outcome(d, split, complement(split.majority_indices, removed));
}

ResampleOutcome enn(const Dataset& d, std::size_t k, EditRule rule) {
    check_k_below_n(k, d.size(), "enn");
    const auto split = split_classes(d);
    const auto is_min = minority_mask(d, split);
    std::vector<std::size_t> all(d.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    std::vector<bool> removed(d.size(), false);
    edit_pass(d, is_min, all, k, rule, removed);
    return make_outcome(d, split, complement(split.majority_indices, removed));
}

ResampleOutcome all_knn(const Dataset& d, std::size_t k_max, EditRule rule) {
    check_k_below_n(k_max, d.size(), "all_knn");
    const auto split = split_classes(d);
    const auto is_min = minority_mask(d, split);
    std::vector<std::size_t> pool(d.size());
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    std::vector<bool> removed(d.size(), false);
    for (std::size_t k = 1; k <= k_max && k < pool.size(); ++k) {
        edit_pass(d, is_min, pool, k, rule, removed);
        pool = complement(pool, removed);
    }
    return make_outcome(d, split, complement(split.majority_indices, removed));
}

ResampleOutcome ncr(const Dataset& d, std::size_t k, EditRule rule) {
    check_k_below_n(k, d.size(), "ncr");
    const auto split = split_classes(d);
    const auto is_min = minority_mask(d, split);
    std::vector<std::size_t> all(d.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    std::vector<bool> removed(d.size(), false);
    edit_pass(d, is_min, all, k, rule, removed);

    NeighborQuery q(d.features);
    for (auto i : split.minority_indices) {
        const auto nbs = q.nearest(d.features.row(i), k, i);
        std::size_t majority = 0;
        for (const auto& nb : nbs) majority += !is_min[nb.id];
        if (2 * majority <= k) continue;
        for (const auto& nb : nbs)
            if (!is_min[nb.id]) removed[nb.id] = true;
    }
    return make_outcome(d, split, complement(split.majority_indices, removed));
}

ResampleOutcome cluster_centroids(const Dataset& d, std::uint64_t seed) {
    const auto split = split_classes(d);
    const auto majority = d.features.select_rows(split.majority_indices);
    auto model = kmeans(majority, split.n_minority(), seed);
    return make_outcome(d, split, {}, std::move(model.centroids));
}

}  // namespace nusample
