#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "helpers.hpp"
#include "nusample/nus.hpp"
#include "nusample/rng.hpp"

using namespace nusample;

namespace {

struct ZeroModel : Reconstructor {
    std::size_t m = 1;
    std::size_t input_dim() const override { return m; }
    void reconstruct_into(std::span<const double>, std::span<double> out) const override {
        std::fill(out.begin(), out.end(), 0.0);
    }
};

// 1-D dataset whose rows reconstruct (under ZeroModel) at the given squared
// distances.
Dataset stub_dataset(const std::vector<double>& minority_d, const std::vector<double>& majority_d) {
    Matrix x(minority_d.size() + majority_d.size(), 1);
    std::vector<std::string> y;
    std::size_t r = 0;
    for (double v : majority_d) {
        x(r++, 0) = std::sqrt(v);
        y.push_back("maj");
    }
    for (double v : minority_d) {
        x(r++, 0) = std::sqrt(v);
        y.push_back("min");
    }
    return make_dataset(std::move(x), std::move(y), {"x"}, "y");
}

std::vector<DistanceRecord> records(const std::vector<double>& d) {
    std::vector<DistanceRecord> r;
    for (std::size_t i = 0; i < d.size(); ++i) r.push_back({i, d[i]});
    return r;
}

}  // namespace

TEST_CASE("minority thresholds") {
    auto t = minority_thresholds(records({4, 3, 2, 1}));
    CHECK(t.max_dist == 4.0);
    CHECK(t.last_mid_avg == 3.5);
    t = minority_thresholds(records({1, 3, 2}));
    CHECK(t.max_dist == 3.0);
    CHECK(t.last_mid_avg == 2.5);
    t = minority_thresholds(records({0, 0}));
    CHECK(t.max_dist == 0.0);
    CHECK(t.last_mid_avg == 0.0);
    CHECK_ERROR(minority_thresholds({}), empty_input);
}

TEST_CASE("soft selection example") {
    const MinorityThresholds t{4.0, 3.5};
    const auto maj = records({5, 3.6, 3.4, 1});
    CHECK(select_soft(maj, t, ThresholdMode::or_both) == std::vector<std::size_t>{0, 1});
    CHECK(select_soft(maj, t, ThresholdMode::half_average) == std::vector<std::size_t>{0, 1});
    CHECK(select_soft(maj, t, ThresholdMode::max) == std::vector<std::size_t>{0});
    // strict inequality
    CHECK(select_soft(records({3.5}), t, ThresholdMode::or_both).empty());
}

TEST_CASE("nus1 with a stub model") {
    const auto d = stub_dataset({0.1, 0.2, 0.3}, {5, 4, 3, 2, 1});
    const auto s = split_classes(d);
    const auto o = nus1_with_model(d, s, ZeroModel{});
    CHECK(o.kept_majority == std::vector<std::size_t>{0, 1, 2});
    CHECK(o.balanced.size() == 6);

    const auto eq = stub_dataset({1, 2}, {0.5, 0.1});
    const auto oe = nus1_with_model(eq, split_classes(eq), ZeroModel{});
    CHECK(oe.kept_majority.size() == 2);
}

TEST_CASE("nus1 matches the top-n1 oracle on random stubs") {
    Rng rng(21);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n1 = 1 + rng.below(10), n2 = n1 + 1 + rng.below(30);
        std::vector<double> mi(n1), ma(n2);
        for (auto& v : mi) v = rng.uniform();
        for (auto& v : ma) v = double(rng.below(8)) / 4.0;  // ties on purpose
        const auto d = stub_dataset(mi, ma);
        const auto o = nus1_with_model(d, split_classes(d), ZeroModel{});

        // oracle: rank majority rows by (distance desc, index asc), take n1
        std::vector<std::size_t> idx(n2);
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        std::vector<double> dist(n2);
        for (std::size_t i = 0; i < n2; ++i) dist[i] = d.features(i, 0) * d.features(i, 0);
        std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return dist[a] > dist[b]; });
        idx.resize(n1);
        std::sort(idx.begin(), idx.end());
        CHECK(o.kept_majority == idx);
        CHECK(o.balanced.size() == 2 * n1);

        double min_kept = 1e300, max_dropped = -1;
        std::set<std::size_t> kept(o.kept_majority.begin(), o.kept_majority.end());
        for (std::size_t i = 0; i < n2; ++i) {
            if (kept.count(i)) min_kept = std::min(min_kept, dist[i]);
            else max_dropped = std::max(max_dropped, dist[i]);
        }
        CHECK(min_kept >= max_dropped);
    }
}

TEST_CASE("nus2 modes: or_both equals half-average, max is a subset") {
    Rng rng(22);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n1 = 1 + rng.below(10), n2 = n1 + 1 + rng.below(30);
        std::vector<double> mi(n1), ma(n2);
        for (auto& v : mi) v = rng.uniform();
        for (auto& v : ma) v = rng.uniform(0.0, 1.5);
        const auto d = stub_dataset(mi, ma);
        const auto s = split_classes(d);
        const auto both = nus2_with_model(d, s, ZeroModel{}, ThresholdMode::or_both).kept_majority;
        const auto half = nus2_with_model(d, s, ZeroModel{}, ThresholdMode::half_average).kept_majority;
        const auto mx = nus2_with_model(d, s, ZeroModel{}, ThresholdMode::max).kept_majority;
        CHECK(both == half);
        CHECK(std::includes(both.begin(), both.end(), mx.begin(), mx.end()));
    }
}

TEST_CASE("nus2 with nothing above threshold warns instead of failing") {
    const auto d = stub_dataset({0, 0}, {0, 0, 0});
    const auto o = nus2_with_model(d, split_classes(d), ZeroModel{}, ThresholdMode::or_both);
    CHECK(o.kept_majority.empty());
    CHECK(o.warnings.size() == 1);
    CHECK(o.balanced.size() == 2);
}

TEST_CASE("make_outcome rejects bad index sets") {
    const auto d = stub_dataset({1}, {2, 3});
    const auto s = split_classes(d);
    CHECK_ERROR(make_outcome(d, s, {0, 0}), shape);
    CHECK_ERROR(make_outcome(d, s, {2}), shape);
    CHECK_ERROR(make_outcome(d, s, {7}), shape);
}

TEST_CASE("nus1 and nus2 end to end on Balance") {
    const auto d = fit_apply_minmax(load_csv(data_path("balance.csv"), std::string("class"))).first;
    const auto s = split_classes(d);
    const auto o = nus1(d, NusConfig{}, 5);
    CHECK(o.kept_majority.size() == 49);
    CHECK(o.balanced.size() == 98);
    CHECK(o.kept_minority == s.minority_indices);
    // minority rows bit-exact in the balanced output
    std::size_t seen = 0;
    for (std::size_t r = 0; r < o.balanced.size(); ++r) {
        if (o.balanced.labels[r] != s.minority_label) continue;
        const auto src = s.minority_indices[seen++];
        for (std::size_t c = 0; c < d.dims(); ++c) CHECK(o.balanced.features(r, c) == d.features(src, c));
    }
    CHECK(seen == 49);

    const auto again = nus1(d, NusConfig{}, 5);
    CHECK(again.kept_majority == o.kept_majority);
    const auto o2 = nus2(d, NusConfig{}, 5);
    CHECK(o2.kept_majority == nus2(d, NusConfig{}, 5).kept_majority);
    NusConfig strict;
    strict.threshold_mode = ThresholdMode::max;
    const auto o3 = nus2(d, strict, 5);
    CHECK(std::includes(o2.kept_majority.begin(), o2.kept_majority.end(), o3.kept_majority.begin(),
                        o3.kept_majority.end()));
}

TEST_CASE("nus2 on Ionosphere with narrow widths lands in the published range") {
    const auto d = fit_apply_minmax(load_csv(data_path("ionosphere.csv"), std::string("class"))).first;
    NusConfig cfg;
    cfg.widths = LayerWidths::narrow;
    const auto o = nus2(d, cfg, 0);
    MESSAGE("ionosphere nus2 (narrow) kept " << o.kept_majority.size());
    CHECK(o.kept_majority.size() >= 75);
    CHECK(o.kept_majority.size() <= 135);
}
