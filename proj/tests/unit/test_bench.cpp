#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <tuple>

#include "helpers.hpp"
#include "nusample/baselines.hpp"
#include "nusample/bench.hpp"
#include "nusample/csv.hpp"

using namespace nusample;

namespace {

BlobSpec two_blobs(std::vector<double> c0, double s0, std::size_t n0, std::vector<double> c1, double s1,
                   std::size_t n1, std::uint64_t seed) {
    return {{{std::move(c0), s0, n0}, {std::move(c1), s1, n1}}, seed};
}

std::string temp_path(const std::string& name) { return std::string(NUSAMPLE_TEST_TMP) + "/" + name; }

}  // namespace

TEST_CASE("generate_blobs") {
    const auto a = generate_blobs(two_blobs({0, 0}, 1.5, 1000, {2, 2}, 0.5, 100, 1));
    CHECK(a.size() == 1100);
    CHECK(a.dims() == 2);
    const auto s = split_classes(a);
    CHECK(s.minority_label == "min");
    CHECK(s.n_majority() == 1000);
    CHECK(generate_blobs(two_blobs({0, 0}, 1.5, 1000, {2, 2}, 0.5, 100, 1)).features == a.features);
    CHECK(generate_blobs(two_blobs({0, 0}, 1.5, 1000, {2, 2}, 0.5, 100, 2)).features != a.features);

    const auto z = generate_blobs(two_blobs({1, 2}, 0, 3, {4, 5}, 0, 2, 0));
    for (std::size_t r = 0; r < 3; ++r) CHECK((z.features(r, 0) == 1.0 && z.features(r, 1) == 2.0));
    for (std::size_t r = 3; r < 5; ++r) CHECK((z.features(r, 0) == 4.0 && z.features(r, 1) == 5.0));

    CHECK_ERROR(generate_blobs(two_blobs({0, 0}, 1, 0, {1, 1}, 1, 5, 0)), bad_spec);
    CHECK_ERROR(generate_blobs(two_blobs({0, 0}, -1, 5, {1, 1}, 1, 5, 0)), bad_spec);
    CHECK_ERROR(generate_blobs(two_blobs({0, 0}, 1, 5, {1}, 1, 5, 0)), bad_spec);
}

TEST_CASE("run_experiment: separable blobs, shape of the report") {
    const auto d = generate_blobs(two_blobs({0, 0}, 0.3, 200, {9, 9}, 0.3, 40, 4));
    CVConfig cv;
    cv.repeats = 2;
    cv.seed = 3;
    const auto rep = run_experiment(d, {make_sampler("none"), make_sampler("rus")},
                                    {make_classifier("knn"), make_classifier("logreg")},
                                    {Metric::auc, Metric::gmean, Metric::f1}, cv, "blobs");
    CHECK(rep.rows.size() == 2 * 2 * 3);
    for (const auto& row : rep.rows) {
        CHECK(row.fold_values.size() == 10);
        const auto [m, s] = mean_std(row.fold_values);
        CHECK(std::abs(m - row.mean) <= 1e-9);
        CHECK(std::abs(s - row.std) <= 1e-9);
        if (row.sampler == "none" && row.classifier == "knn" && row.metric == "auc") CHECK(row.mean >= 0.99);
    }
    CHECK(std::is_sorted(rep.rows.begin(), rep.rows.end(), [](const ReportRow& a, const ReportRow& b) {
        return std::tie(a.sampler, a.classifier, a.metric) < std::tie(b.sampler, b.classifier, b.metric);
    }));
    // bitwise reproducible
    const auto again = run_experiment(d, {make_sampler("rus"), make_sampler("none")},
                                      {make_classifier("logreg"), make_classifier("knn")},
                                      {Metric::f1, Metric::auc, Metric::gmean}, cv, "blobs");
    CHECK(report_to_json(again) == report_to_json(rep));
}

TEST_CASE("train_only: the sampler sees exactly the scaled training rows") {
    const auto d = generate_blobs(two_blobs({0, 0}, 1, 60, {2, 2}, 1, 15, 8));
    CVConfig cv;
    cv.folds = 3;
    cv.repeats = 2;
    cv.seed = 5;
    const auto plan = stratified_folds(d, cv.folds, cv.repeats, cv.seed);
    std::size_t calls = 0;
    bool matches = true;
    NamedSampler spy{"spy", [&](const Dataset& train, std::uint64_t) {
                         const std::size_t r = calls / cv.folds, f = calls % cv.folds;
                         const auto rows = plan.train_rows(r, f);
                         const auto expected = fit_minmax(d.features.select_rows(rows)).apply(
                             d.features.select_rows(rows));
                         matches = matches && train.features == expected;
                         ++calls;
                         const auto s = split_classes(train);
                         return make_outcome(train, s, s.majority_indices);
                     }};
    run_experiment(d, {spy}, {make_classifier("knn")}, {Metric::auc}, cv);
    CHECK(calls == cv.folds * cv.repeats);
    CHECK(matches);
}

TEST_CASE("skipped folds are recorded, all-skipped is an error") {
    const auto d = generate_blobs(two_blobs({0, 0}, 1, 60, {2, 2}, 1, 15, 8));
    CVConfig cv;
    cv.repeats = 1;
    NamedSampler wipe{"wipe", [](const Dataset& t, std::uint64_t) { return make_outcome(t, split_classes(t), {}); }};
    CHECK_ERROR(run_experiment(d, {wipe}, {make_classifier("knn")}, {Metric::auc}, cv), all_folds_skipped);

    const auto rep = run_experiment(d, {wipe, make_sampler("none")}, {make_classifier("knn")}, {Metric::auc}, cv);
    CHECK(rep.skipped.size() == cv.folds);
    for (const auto& row : rep.rows) {
        if (row.sampler != "wipe") continue;
        CHECK(std::isnan(row.mean));
        for (const auto& v : row.fold_values) CHECK(!v.has_value());
    }
    CHECK(report_to_json(rep).find("null") != std::string::npos);

    std::vector<std::string> y(6, "maj");
    y[0] = y[1] = "min";
    const auto tiny = make_dataset(Matrix(6, 1), y, {"x"}, "y");
    CHECK_ERROR(run_experiment(tiny, {make_sampler("none")}, {make_classifier("knn")}, {Metric::auc}, cv),
                too_few_samples);
}

TEST_CASE("whole_dataset scope runs and differs from train_only") {
    const auto d = generate_blobs(two_blobs({0, 0}, 1.5, 150, {1, 1}, 0.5, 30, 2));
    CVConfig cv;
    cv.repeats = 2;
    cv.scope = ResampleScope::whole_dataset;
    const auto rep = run_experiment(d, {make_sampler("rus")}, {make_classifier("knn")}, {Metric::auc}, cv);
    CHECK(rep.rows.front().fold_values.size() == 10);
    CHECK(report_to_json(rep).find("whole_dataset") != std::string::npos);
}

TEST_CASE("emit_scatter") {
    const auto a = generate_blobs(two_blobs({0, 0}, 1.5, 1000, {2, 2}, 0.5, 100, 1));
    const auto scaled = fit_apply_minmax(a).first;
    const auto o = nus1(scaled, NusConfig{}, 3);
    const auto path = temp_path("scatter.csv");
    emit_scatter(a, o, path);
    const auto t = csv::read_file(path);
    CHECK(t.header == std::vector<std::string>{"x", "y", "class", "status"});
    CHECK(t.records.size() == 1100);
    std::size_t kept = 0;
    for (const auto& r : t.records) kept += r[3] == "kept";
    CHECK(kept == 200);

    const auto s = split_classes(a);
    emit_scatter(a, make_outcome(a, s, s.majority_indices), path);
    for (const auto& r : csv::read_file(path).records) CHECK(r[3] == "kept");

    const auto cc = cluster_centroids(a, 1);
    emit_scatter(a, cc, path);
    const auto tc = csv::read_file(path);
    CHECK(tc.records.size() == 1200);
    CHECK(tc.records.back()[3] == "synthetic");
    CHECK(tc.records.back()[2] == "maj");

    const auto pima = load_csv(data_path("pima.csv"), std::string("class"));
    const auto ps = split_classes(pima);
    CHECK_ERROR(emit_scatter(pima, make_outcome(pima, ps, ps.majority_indices), path), not_two_dimensional);
    std::remove(path.c_str());
}

TEST_CASE("sampler and classifier factories") {
    for (const auto& n : sampler_names()) CHECK(make_sampler(n).name == n);
    CHECK_ERROR(make_sampler("smote"), config);
    CHECK(make_classifier("sgd_hinge").name == "sgd");
    CHECK_ERROR(make_classifier("rf"), config);
    CHECK_ERROR(parse_scope("both"), config);
}
