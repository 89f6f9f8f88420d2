#include "nusample/bench.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <tuple>

#include "nusample/baselines.hpp"
#include "nusample/error.hpp"
#include "nusample/rng.hpp"

namespace nusample {

Dataset generate_blobs(const BlobSpec& spec) {
    if (spec.classes.size() != 2) throw Error(ErrorKind::bad_spec, "blobs: exactly two classes are required");
    const std::size_t m = spec.classes[0].center.size();
    for (const auto& c : spec.classes) {
        if (c.center.empty()) throw Error(ErrorKind::bad_spec, "blobs: empty center");
        if (c.center.size() != m) throw Error(ErrorKind::bad_spec, "blobs: center dimensions differ");
        if (c.count < 1) throw Error(ErrorKind::bad_spec, "blobs: class count must be >= 1");
        if (!(c.stddev >= 0.0) || !std::isfinite(c.stddev))
            throw Error(ErrorKind::bad_spec, "blobs: standard deviation must be finite and >= 0");
        for (double v : c.center)
            if (!std::isfinite(v)) throw Error(ErrorKind::bad_spec, "blobs: non-finite center");
    }

    static const char* kLabels[2] = {"maj", "min"};
    Matrix x(spec.classes[0].count + spec.classes[1].count, m);
    std::vector<std::string> labels;
    std::size_t r = 0;
    for (std::size_t c = 0; c < 2; ++c) {
        const auto& cls = spec.classes[c];
        Rng rng(derive_seed(spec.seed, c));
        for (std::size_t i = 0; i < cls.count; ++i, ++r) {
            for (std::size_t j = 0; j < m; ++j) x(r, j) = cls.center[j] + cls.stddev * rng.normal();
            labels.emplace_back(kLabels[c]);
        }
    }
    std::vector<std::string> names;
    for (std::size_t j = 0; j < m; ++j) names.push_back("x" + std::to_string(j + 1));
    return make_dataset(std::move(x), std::move(labels), std::move(names), "y");
}

std::vector<std::string> sampler_names() {
    return {"none", "nus1", "nus2", "rus", "nm1", "nm2", "nm3", "tomek", "enn", "aknn", "ncr", "cc"};
}

NamedSampler make_sampler(const std::string& name, const NusConfig& nus_cfg) {
    nus_cfg.validate();
    SamplerFn fn;
    if (name == "none") {
        fn = [](const Dataset& d, std::uint64_t) {
            const auto split = split_classes(d);
            return make_outcome(d, split, split.majority_indices);
        };
    } else if (name == "nus1") {
        fn = [nus_cfg](const Dataset& d, std::uint64_t s) { return nus1(d, nus_cfg, s); };
    } else if (name == "nus2") {
        fn = [nus_cfg](const Dataset& d, std::uint64_t s) { return nus2(d, nus_cfg, s); };
    } else if (name == "rus") {
        fn = [](const Dataset& d, std::uint64_t s) { return random_undersample(d, s); };
    } else if (name == "nm1" || name == "nm2" || name == "nm3") {
        const int v = name.back() - '0';
        fn = [v](const Dataset& d, std::uint64_t) { return near_miss(d, v); };
    } else if (name == "tomek") {
        fn = [](const Dataset& d, std::uint64_t) { return tomek_links(d); };
    } else if (name == "enn") {
        fn = [](const Dataset& d, std::uint64_t) { return enn(d); };
    } else if (name == "aknn") {
        fn = [](const Dataset& d, std::uint64_t) { return all_knn(d); };
    } else if (name == "ncr") {
        fn = [](const Dataset& d, std::uint64_t) { return ncr(d); };
    } else if (name == "cc") {
        fn = [](const Dataset& d, std::uint64_t s) { return cluster_centroids(d, s); };
    } else {
        throw Error(ErrorKind::config, "unknown sampling method '" + name + "'");
    }
    return {name, std::move(fn)};
}

NamedClassifier make_classifier(const std::string& name) {
    const auto kind = parse_classifier_kind(name);
    return {to_string(kind), kind, {}};
}

std::string to_string(ResampleScope s) { return s == ResampleScope::whole_dataset ? "whole_dataset" : "train_only"; }

ResampleScope parse_scope(const std::string& s) {
    if (s == "train_only") return ResampleScope::train_only;
    if (s == "whole_dataset") return ResampleScope::whole_dataset;
    throw Error(ErrorKind::config, "unknown resample scope '" + s + "'");
}

void CVConfig::validate() const {
    if (folds < 2) throw Error(ErrorKind::config, "cv: folds must be >= 2");
    if (repeats < 1) throw Error(ErrorKind::config, "cv: repeats must be >= 1");
}

std::pair<double, double> mean_std(const std::vector<std::optional<double>>& values) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& v : values)
        if (v) {
            sum += *v;
            ++n;
        }
    if (n == 0) return {nan, nan};
    const double mean = sum / double(n);
    if (n < 2) return {mean, nan};
    double ss = 0.0;
    for (const auto& v : values)
        if (v) ss += (*v - mean) * (*v - mean);
    return {mean, std::sqrt(ss / double(n - 1))};
}

namespace {

// stable name hash so per-cell seeds do not depend on list order
std::uint64_t name_key(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

bool two_classes(const Dataset& d) {
    for (std::size_t i = 1; i < d.labels.size(); ++i)
        if (d.labels[i] != d.labels[0]) return true;
    return false;
}

struct Harness {
    const std::vector<NamedClassifier>& classifiers;
    const std::vector<Metric>& metrics;
    std::string positive;
    std::size_t cells;
    // [sampler][classifier][metric][cell]
    std::vector<std::vector<std::vector<std::vector<std::optional<double>>>>> values;
    std::vector<SkippedCell> skipped;

    void skip_all(std::size_t rep, std::size_t fold, const std::string& sampler, const std::string& why) {
        for (const auto& c : classifiers) skipped.push_back({rep, fold, sampler, c.name, why});
    }

    void evaluate(std::size_t si, const std::string& sampler, std::size_t rep, std::size_t fold, std::size_t cell,
                  const Dataset& train, const Dataset& test, std::uint64_t seed) {
        for (std::size_t ci = 0; ci < classifiers.size(); ++ci) {
            const auto& c = classifiers[ci];
            ClassifierModel model;
            try {
                model = fit_classifier(c.kind, train.features, train.labels, positive, c.cfg,
                                       derive_seed(seed, name_key(c.name)));
            } catch (const Error& e) {
                if (!is_degenerate_data(e.kind())) throw;
                skipped.push_back({rep, fold, sampler, c.name, e.what()});
                continue;
            }
            const auto s = score(model, test.features);
            std::vector<std::string> pred(s.size());
            for (std::size_t i = 0; i < s.size(); ++i)
                pred[i] = s[i] > model.decision_threshold() ? model.positive_label : model.negative_label;
            const auto cm = confusion_matrix(test.labels, pred, positive);
            for (std::size_t mi = 0; mi < metrics.size(); ++mi) {
                double v = 0.0;
                switch (metrics[mi]) {
                    case Metric::auc: v = auc(test.labels, s, positive); break;
                    case Metric::gmean: v = gmean(cm); break;
                    case Metric::f1: v = precision_recall_f1(cm).f1; break;
                }
                values[si][ci][mi][cell] = v;
            }
        }
    }
};

// Runs the sampler; a degenerate-data failure or a single-class result is
// returned as a skip reason.
std::optional<std::string> resample(const NamedSampler& s, const Dataset& d, std::uint64_t seed, Dataset& out) {
    try {
        out = s.run(d, seed).balanced;
    } catch (const Error& e) {
        if (!is_degenerate_data(e.kind())) throw;
        return std::string("sampler failed: ") + e.what();
    }
    if (!two_classes(out)) return std::string("resampled training set is single-class");
    return std::nullopt;
}

}  // namespace

ExperimentReport run_experiment(const Dataset& d, const std::vector<NamedSampler>& samplers,
                                const std::vector<NamedClassifier>& classifiers, const std::vector<Metric>& metrics,
                                const CVConfig& cv, const std::string& dataset_name) {
    cv.validate();
    if (samplers.empty() || classifiers.empty() || metrics.empty())
        throw Error(ErrorKind::config, "run_experiment: samplers, classifiers and metrics must be non-empty");
    const auto split = split_classes(d);
    const std::size_t cells = cv.folds * cv.repeats;

    Harness h{classifiers, metrics, split.minority_label, cells, {}, {}};
    h.values.assign(samplers.size(),
                    std::vector(classifiers.size(),
                                std::vector(metrics.size(), std::vector<std::optional<double>>(cells))));

    if (cv.scope == ResampleScope::train_only) {
        const auto plan = stratified_folds(d, cv.folds, cv.repeats, cv.seed);
        for (std::size_t r = 0; r < cv.repeats; ++r) {
            for (std::size_t f = 0; f < cv.folds; ++f) {
                const std::size_t cell = r * cv.folds + f;
                auto train = d.subset(plan.train_rows(r, f));
                auto test = d.subset(plan.test_rows(r, f));
                const auto scaler = fit_minmax(train.features);
                train.features = scaler.apply(train.features);
                test.features = scaler.apply(test.features);
                for (std::size_t si = 0; si < samplers.size(); ++si) {
                    const auto& s = samplers[si];
                    const auto seed = derive_seed(cv.seed, cell + 1, name_key(s.name));
                    Dataset balanced;
                    if (auto why = resample(s, train, seed, balanced)) {
                        h.skip_all(r, f, s.name, *why);
                        continue;
                    }
                    h.evaluate(si, s.name, r, f, cell, balanced, test, seed);
                }
            }
        }
    } else {
        // resample once per repeat on the whole (scaled) dataset, then
        // cross-validate on the resampled rows
        const auto scaled = fit_apply_minmax(d).first;
        for (std::size_t r = 0; r < cv.repeats; ++r) {
            for (std::size_t si = 0; si < samplers.size(); ++si) {
                const auto& s = samplers[si];
                const auto seed = derive_seed(cv.seed, r + 1, name_key(s.name));
                Dataset balanced;
                auto why = resample(s, scaled, seed, balanced);
                FoldPlan plan;
                if (!why) {
                    try {
                        plan = stratified_folds(balanced, cv.folds, 1, derive_seed(cv.seed, r, 0x776473));
                    } catch (const Error& e) {
                        if (!is_degenerate_data(e.kind())) throw;
                        why = std::string("cannot fold resampled set: ") + e.what();
                    }
                }
                for (std::size_t f = 0; f < cv.folds; ++f) {
                    if (why) {
                        h.skip_all(r, f, s.name, *why);
                        continue;
                    }
                    const std::size_t cell = r * cv.folds + f;
                    h.evaluate(si, s.name, r, f, cell, balanced.subset(plan.train_rows(0, f)),
                               balanced.subset(plan.test_rows(0, f)), derive_seed(seed, f));
                }
            }
        }
    }

    ExperimentReport rep;
    rep.dataset = dataset_name;
    rep.cv = cv;
#ifdef NUSAMPLE_VERSION
    rep.version = NUSAMPLE_VERSION;
#endif
    rep.positive_label = split.minority_label;
    bool any_value = false;
    for (std::size_t si = 0; si < samplers.size(); ++si)
        for (std::size_t ci = 0; ci < classifiers.size(); ++ci)
            for (std::size_t mi = 0; mi < metrics.size(); ++mi) {
                ReportRow row;
                row.sampler = samplers[si].name;
                row.classifier = classifiers[ci].name;
                row.metric = to_string(metrics[mi]);
                row.fold_values = std::move(h.values[si][ci][mi]);
                std::tie(row.mean, row.std) = mean_std(row.fold_values);
                any_value = any_value || !std::isnan(row.mean);
                rep.rows.push_back(std::move(row));
            }
    if (!any_value)
        throw Error(ErrorKind::all_folds_skipped, "run_experiment: every fold was skipped (" +
                                                      (h.skipped.empty() ? std::string("?") : h.skipped.front().reason) +
                                                      ")");
    std::sort(rep.rows.begin(), rep.rows.end(), [](const ReportRow& a, const ReportRow& b) {
        return std::tie(a.sampler, a.classifier, a.metric) < std::tie(b.sampler, b.classifier, b.metric);
    });
    rep.skipped = std::move(h.skipped);
    std::sort(rep.skipped.begin(), rep.skipped.end(), [](const SkippedCell& a, const SkippedCell& b) {
        return std::tie(a.sampler, a.classifier, a.repeat, a.fold) < std::tie(b.sampler, b.classifier, b.repeat, b.fold);
    });
    return rep;
}

}  // namespace nusample
