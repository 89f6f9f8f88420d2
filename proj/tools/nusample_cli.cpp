// nusample command line: generate blobs, resample a CSV, run a CV benchmark.
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "nusample/bench.hpp"
#include "nusample/dataset.hpp"
#include "nusample/error.hpp"
#include "nusample/nus.hpp"

using namespace nusample;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitDegenerate = 3;

std::vector<std::string> split_on(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, sep)) out.push_back(item);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

double to_double(const std::string& s, const char* what) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != s.size())
        throw Error(ErrorKind::bad_spec, std::string(what) + ": '" + s + "' is not a number");
    return v;
}

// All-digit label arguments select a column by position.
LabelColumn label_column(const std::string& s) {
    if (!s.empty() && s.find_first_not_of("0123456789") == std::string::npos) return std::size_t(std::stoull(s));
    return s;
}

BlobSpec parse_blob_spec(const std::string& centers, const std::string& stds, const std::string& counts,
                         std::uint64_t seed) {
    const auto c = split_on(centers, ';');
    const auto s = split_on(stds, ',');
    const auto n = split_on(counts, ',');
    if (c.size() != s.size() || c.size() != n.size())
        throw Error(ErrorKind::bad_spec, "generate: --centers, --stds and --counts must list the same number of classes");
    BlobSpec spec;
    spec.seed = seed;
    for (std::size_t i = 0; i < c.size(); ++i) {
        BlobClass cls;
        for (const auto& v : split_on(c[i], ',')) cls.center.push_back(to_double(v, "center"));
        cls.stddev = to_double(s[i], "std");
        const double count = to_double(n[i], "count");
        if (count < 1 || count != std::floor(count))
            throw Error(ErrorKind::bad_spec, "generate: count '" + n[i] + "' must be a positive integer");
        cls.count = static_cast<std::size_t>(count);
        spec.classes.push_back(std::move(cls));
    }
    return spec;
}

struct NusOptions {
    std::size_t threshold = kDefaultArchitectureThreshold;
    std::string mode = "or_both";
    std::string widths = "full_rank";

    NusConfig config() const {
        NusConfig cfg;
        cfg.threshold = threshold;
        cfg.threshold_mode = parse_threshold_mode(mode);
        cfg.widths = parse_layer_widths(widths);
        return cfg;
    }
};

void add_nus_options(CLI::App* cmd, NusOptions& o) {
    cmd->add_option("--threshold-mode", o.mode, "nus2 selection rule: or_both, max or half_average")
        ->check(CLI::IsMember({"or_both", "max", "half_average"}));
    cmd->add_option("--nn-threshold", o.threshold, "attribute count above which an autoencoder is used");
    cmd->add_option("--nn-widths", o.widths, "hidden layer widths: full_rank or narrow")
        ->check(CLI::IsMember({"full_rank", "narrow"}));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"nusample: undersampling for imbalanced binary data"};
    app.require_subcommand(1);
#ifdef NUSAMPLE_VERSION
    app.set_version_flag("--version", NUSAMPLE_VERSION);
#endif

    std::string centers, stds, counts, out_path;
    std::uint64_t seed = 0;
    auto* gen = app.add_subcommand("generate", "sample two Gaussian blobs to CSV (first class = \"maj\")");
    gen->add_option("--centers", centers, "class centers, e.g. \"0,0;2,2\"")->required();
    gen->add_option("--stds", stds, "per-class standard deviations, e.g. 1.5,0.5")->required();
    gen->add_option("--counts", counts, "per-class sample counts, e.g. 1000,100")->required();
    gen->add_option("--seed", seed, "random seed");
    gen->add_option("--out", out_path, "output CSV")->required();

    std::string in_path, label = "y", method, scatter_path;
    NusOptions nus_opts;
    auto* res = app.add_subcommand("resample", "balance a CSV with one undersampler");
    res->add_option("--in", in_path, "input CSV")->required();
    res->add_option("--label", label, "label column name or zero-based index");
    res->add_option("--method", method, "sampler")->required()->check(CLI::IsMember(sampler_names()));
    add_nus_options(res, nus_opts);
    res->add_option("--seed", seed, "random seed");
    res->add_option("--out", out_path, "balanced CSV")->required();
    res->add_option("--scatter", scatter_path, "also write 2-D plot data here");

    std::vector<std::string> methods, classifiers{"knn", "logreg", "sgd"}, metrics{"auc", "gmean", "f1"};
    std::size_t folds = 5, repeats = 10;
    std::string scope = "train_only", report_path;
    auto* ev = app.add_subcommand("evaluate", "cross-validated sampler x classifier benchmark");
    ev->add_option("--in", in_path, "input CSV")->required();
    ev->add_option("--label", label, "label column name or zero-based index");
    ev->add_option("--methods", methods, "comma-separated samplers")
        ->required()
        ->delimiter(',')
        ->check(CLI::IsMember(sampler_names()));
    ev->add_option("--classifiers", classifiers, "knn,logreg,sgd")
        ->delimiter(',')
        ->check(CLI::IsMember({"knn", "logreg", "sgd", "sgd_hinge"}));
    ev->add_option("--metrics", metrics, "auc,gmean,f1")->delimiter(',')->check(CLI::IsMember({"auc", "gmean", "f1"}));
    ev->add_option("--folds", folds, "folds per repeat");
    ev->add_option("--repeats", repeats, "CV repeats");
    ev->add_option("--scope", scope, "where resampling happens")->check(CLI::IsMember({"train_only", "whole_dataset"}));
    add_nus_options(ev, nus_opts);
    ev->add_option("--seed", seed, "random seed");
    ev->add_option("--report", report_path, "JSON report path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitValidation;
    }

    try {
        if (gen->parsed()) {
            const auto d = generate_blobs(parse_blob_spec(centers, stds, counts, seed));
            write_csv(d, out_path);
            std::cout << "wrote " << d.size() << " rows to " << out_path << "\n";
        } else if (res->parsed()) {
            const auto d = load_csv(in_path, label_column(label));
            const auto split = split_classes(d);
            const auto [scaled, params] = fit_apply_minmax(d);
            const auto sampler = make_sampler(method, nus_opts.config());
            auto outcome = sampler.run(scaled, seed);
            // back to input units: kept rows come from the raw file, centroids are unscaled
            std::optional<Matrix> synth;
            if (outcome.synthesized_majority) synth = params.invert(*outcome.synthesized_majority);
            auto result = make_outcome(d, split, outcome.kept_majority, std::move(synth));
            for (const auto& w : outcome.warnings) std::cerr << "warning: " << w << "\n";
            write_csv(result.balanced, out_path);
            if (!scatter_path.empty()) emit_scatter(d, result, scatter_path);
            std::cout << method << ": minority " << split.n_minority() << ", majority " << split.n_majority()
                      << " -> " << result.majority_count() << "\n";
        } else if (ev->parsed()) {
            const auto d = load_csv(in_path, label_column(label));
            const auto nus_cfg = nus_opts.config();
            std::vector<NamedSampler> samplers;
            for (const auto& m : methods) samplers.push_back(make_sampler(m, nus_cfg));
            std::vector<NamedClassifier> cls;
            for (const auto& c : classifiers) cls.push_back(make_classifier(c));
            std::vector<Metric> mets;
            for (const auto& m : metrics) mets.push_back(parse_metric(m));
            CVConfig cv;
            cv.folds = folds;
            cv.repeats = repeats;
            cv.seed = seed;
            cv.scope = parse_scope(scope);
            const auto report = run_experiment(d, samplers, cls, mets, cv, in_path);
            std::ofstream out(report_path, std::ios::binary);
            if (!out) throw Error(ErrorKind::io, "cannot open '" + report_path + "' for writing");
            out << report_to_json(report);
            if (!out) throw Error(ErrorKind::io, "write to '" + report_path + "' failed");
            for (const auto& row : report.rows) {
                char line[160];
                std::snprintf(line, sizeof line, "%-6s %-7s %-6s %.3f +- %.3f\n", row.sampler.c_str(),
                              row.classifier.c_str(), row.metric.c_str(), row.mean, row.std);
                std::cout << line;
            }
            if (!report.skipped.empty()) std::cerr << report.skipped.size() << " cell(s) skipped; see report\n";
        }
    } catch (const Error& e) {
        std::cerr << "error [" << error_kind_name(e.kind()) << "]: " << e.what() << "\n";
        return is_degenerate_data(e.kind()) ? kExitDegenerate : kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
