#include <cmath>
#include <fstream>

#include <json.hpp>

#include "nusample/bench.hpp"
#include "nusample/csv.hpp"
#include "nusample/error.hpp"

namespace nusample {

namespace {

nlohmann::ordered_json num(double v) {
    if (std::isnan(v)) return nullptr;
    return v;
}

}  // namespace

std::string report_to_json(const ExperimentReport& r) {
    nlohmann::ordered_json j;
    j["format"] = "nusample-report";
    j["version"] = r.version;
    j["dataset"] = r.dataset;
    j["positive_label"] = r.positive_label;
    j["cv"] = {{"folds", r.cv.folds},
               {"repeats", r.cv.repeats},
               {"seed", r.cv.seed},
               {"scope", to_string(r.cv.scope)}};
    auto& rows = j["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : r.rows) {
        nlohmann::ordered_json folds = nlohmann::ordered_json::array();
        for (const auto& v : row.fold_values) folds.push_back(v ? num(*v) : nlohmann::ordered_json(nullptr));
        rows.push_back({{"sampler", row.sampler},
                        {"classifier", row.classifier},
                        {"metric", row.metric},
                        {"mean", num(row.mean)},
                        {"std", num(row.std)},
                        {"fold_values", std::move(folds)}});
    }
    auto& skipped = j["skipped"] = nlohmann::ordered_json::array();
    for (const auto& s : r.skipped)
        skipped.push_back({{"sampler", s.sampler},
                           {"classifier", s.classifier},
                           {"repeat", s.repeat},
                           {"fold", s.fold},
                           {"reason", s.reason}});
    return j.dump(2) + "\n";
}

void emit_scatter(const Dataset& original, const ResampleOutcome& outcome, const std::string& path) {
    if (original.dims() != 2)
        throw Error(ErrorKind::not_two_dimensional,
                    "scatter output needs 2 features, dataset has " + std::to_string(original.dims()));
    std::vector<bool> kept(original.size(), false);
    for (auto i : outcome.kept_minority) kept.at(i) = true;
    for (auto i : outcome.kept_majority) kept.at(i) = true;

    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::io, "cannot open '" + path + "' for writing");
    csv::write_row(out, {"x", "y", "class", "status"});
    for (std::size_t i = 0; i < original.size(); ++i)
        csv::write_row(out, {csv::format_double(original.features(i, 0)), csv::format_double(original.features(i, 1)),
                             original.labels[i], kept[i] ? "kept" : "dropped"});
    if (outcome.synthesized_majority) {
        const auto& s = *outcome.synthesized_majority;
        // synthesized rows carry the majority label of the balanced set
        const std::string label = outcome.balanced.labels.empty() ? "" : outcome.balanced.labels.back();
        for (std::size_t r = 0; r < s.rows(); ++r)
            csv::write_row(out, {csv::format_double(s(r, 0)), csv::format_double(s(r, 1)), label, "synthetic"});
    }
    if (!out) throw Error(ErrorKind::io, "write to '" + path + "' failed");
}

}  // namespace nusample
