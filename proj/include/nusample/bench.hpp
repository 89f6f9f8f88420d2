#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nusample/classifiers.hpp"
#include "nusample/dataset.hpp"
#include "nusample/metrics.hpp"
#include "nusample/nus.hpp"

namespace nusample {

struct BlobClass {
    std::vector<double> center;
    double stddev = 1.0;
    std::size_t count = 0;
};

/// Two Gaussian blobs; the first is labelled "maj", the second "min".
struct BlobSpec {
    std::vector<BlobClass> classes;
    std::uint64_t seed = 0;
};

Dataset generate_blobs(const BlobSpec& spec);

/// A sampler sees a (scaled) training set and a per-cell seed.
using SamplerFn = std::function<ResampleOutcome(const Dataset&, std::uint64_t)>;

struct NamedSampler {
    std::string name;
    SamplerFn run;
};

/// "none" (identity), nus1, nus2, rus, nm1, nm2, nm3, tomek, enn, aknn, ncr, cc.
NamedSampler make_sampler(const std::string& name, const NusConfig& nus_cfg = {});
std::vector<std::string> sampler_names();

struct NamedClassifier {
    std::string name;
    ClassifierKind kind = ClassifierKind::knn;
    ClassifierConfig cfg;
};

NamedClassifier make_classifier(const std::string& name);

enum class ResampleScope { train_only, whole_dataset };

std::string to_string(ResampleScope s);
ResampleScope parse_scope(const std::string& s);

struct CVConfig {
    std::size_t folds = 5;
    std::size_t repeats = 10;
    std::uint64_t seed = 0;
    ResampleScope scope = ResampleScope::train_only;

    void validate() const;
};

struct ReportRow {
    std::string sampler;
    std::string classifier;
    std::string metric;
    double mean = 0.0;  // NaN when every cell was skipped
    double std = 0.0;   // sample std; NaN with fewer than two values
    std::vector<std::optional<double>> fold_values;  // repeat-major, nullopt = skipped
};

struct SkippedCell {
    std::size_t repeat = 0;
    std::size_t fold = 0;
    std::string sampler;
    std::string classifier;
    std::string reason;
};

struct ExperimentReport {
    std::string dataset;
    CVConfig cv;
    std::string version;
    std::string positive_label;
    std::vector<ReportRow> rows;  // sorted by (sampler, classifier, metric)
    std::vector<SkippedCell> skipped;
};

ExperimentReport run_experiment(const Dataset& d, const std::vector<NamedSampler>& samplers,
                                const std::vector<NamedClassifier>& classifiers, const std::vector<Metric>& metrics,
                                const CVConfig& cv, const std::string& dataset_name = "");

/// Mean and sample standard deviation of the non-skipped values.
std::pair<double, double> mean_std(const std::vector<std::optional<double>>& values);

std::string report_to_json(const ExperimentReport& r);

/// 2-D plot data: every original row with its fate, plus synthesized points.
void emit_scatter(const Dataset& original, const ResampleOutcome& outcome, const std::string& path);

}  // namespace nusample
