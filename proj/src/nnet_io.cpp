#include <fstream>
#include <sstream>

#include <json.hpp>

#include "nusample/error.hpp"
#include "nusample/nnet.hpp"

namespace nusample {

using nlohmann::json;

std::string model_to_json(const TrainedReconstructor& model) {
    const auto& spec = model.spec();
    json doc;
    doc["format"] = "nusample-reconstructor";
    doc["version"] = 1;
    doc["kind"] = to_string(spec.kind);
    doc["layer_sizes"] = spec.layer_sizes;
    doc["hidden_activation"] = to_string(spec.hidden_activation);
    doc["output_activation"] = to_string(spec.output_activation);
    doc["final_training_mse"] = model.final_training_mse;
    doc["epochs_run"] = model.epochs_run;
    json layers = json::array();
    for (const auto& L : model.layers()) {
        json entry;
        entry["weights"] = std::vector<double>(L.weights.data().begin(), L.weights.data().end());
        entry["bias"] = L.bias;
        layers.push_back(std::move(entry));
    }
    doc["layers"] = std::move(layers);
    return doc.dump(2);
}

TrainedReconstructor model_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(ErrorKind::parse, std::string("model json: ") + e.what());
    }
    try {
        NetworkSpec spec;
        spec.kind = parse_network_kind(doc.at("kind").get<std::string>());
        spec.layer_sizes = doc.at("layer_sizes").get<std::vector<std::size_t>>();
        spec.hidden_activation = parse_activation(doc.at("hidden_activation").get<std::string>());
        spec.output_activation = parse_activation(doc.at("output_activation").get<std::string>());
        spec.validate();

        const auto& jl = doc.at("layers");
        if (jl.size() + 1 != spec.layer_sizes.size()) throw Error(ErrorKind::shape, "model json: layer count mismatch");
        std::vector<DenseLayer> layers;
        for (std::size_t l = 0; l < jl.size(); ++l) {
            const std::size_t in = spec.layer_sizes[l], out = spec.layer_sizes[l + 1];
            const auto w = jl[l].at("weights").get<std::vector<double>>();
            auto b = jl[l].at("bias").get<std::vector<double>>();
            if (w.size() != in * out) throw Error(ErrorKind::shape, "model json: weight array has wrong length");
            DenseLayer layer{Matrix(out, in), std::move(b)};
            std::copy(w.begin(), w.end(), layer.weights.data().begin());
            layers.push_back(std::move(layer));
        }
        TrainedReconstructor model(std::move(spec), std::move(layers));
        model.final_training_mse = doc.value("final_training_mse", 0.0);
        model.epochs_run = doc.value("epochs_run", std::size_t{0});
        return model;
    } catch (const json::exception& e) {
        throw Error(ErrorKind::parse, std::string("model json: ") + e.what());
    }
}

void save_model(const TrainedReconstructor& model, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::io, "cannot write " + path);
    out << model_to_json(model) << '\n';
}

TrainedReconstructor load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::io, "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return model_from_json(buf.str());
}

}  // namespace nusample
