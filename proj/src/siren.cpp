#include "rktv/siren.hpp"

#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

#include "rktv/errors.hpp"
#include "rktv/rng.hpp"

namespace rktv::siren {

namespace {

void validate(const SirenConfig& c) {
    if (c.hidden_layers < 1 || c.width < 1 || c.out_dim < 1)
        throw ConfigError("siren: hidden_layers, width and out_dim must be >= 1");
    if (!(c.omega0 > 0)) throw ConfigError("siren: omega0 must be positive");
    if (!(c.t_domain_hi > c.t_domain_lo)) throw ConfigError("siren: empty time domain");
}

}  // namespace

SirenParams init(const SirenConfig& config, std::uint64_t seed) {
    validate(config);
    Xoshiro256pp rng(seed);
    SirenParams params;
    params.layers.resize(static_cast<std::size_t>(config.hidden_layers) + 1);
    for (std::size_t l = 0; l < params.layers.size(); ++l) {
        const bool output = l + 1 == params.layers.size();
        const int in = l == 0 ? 1 : config.width;
        const int out = output ? config.out_dim : config.width;
        const double range =
            l == 0 ? 1.0 / in : std::sqrt(6.0 / in) / config.omega0;
        Layer& layer = params.layers[l];
        layer.W.resize(out, in);
        layer.b.resize(out);
        for (int r = 0; r < out; ++r)
            for (int c = 0; c < in; ++c) layer.W(r, c) = rng.uniform_symmetric(range);
        for (int r = 0; r < out; ++r) layer.b[r] = rng.uniform_symmetric(range);
    }
    return params;
}

std::vector<ad::Jet> eval_jet(const SirenParams& params, const SirenConfig& config, double t) {
    if (!std::isfinite(t)) throw Error("eval_jet: non-finite time");
    const std::size_t n_layers = params.layers.size();

    std::vector<ad::Jet> z{ad::Jet{config.normalize(t), config.du_dt(), 0.0}};
    std::vector<ad::Jet> next;
    for (std::size_t l = 0; l < n_layers; ++l) {
        const Layer& layer = params.layers[l];
        const bool output = l + 1 == n_layers;
        next.assign(static_cast<std::size_t>(layer.W.rows()), ad::Jet{});
        for (Eigen::Index r = 0; r < layer.W.rows(); ++r) {
            ad::Jet acc{layer.b[r]};
            for (Eigen::Index c = 0; c < layer.W.cols(); ++c)
                acc = acc + layer.W(r, c) * z[static_cast<std::size_t>(c)];
            next[static_cast<std::size_t>(r)] =
                output ? acc : ad::sin(config.omega0 * acc);
        }
        z.swap(next);
    }
    for (const auto& j : z)
        if (!ad::is_finite(j)) throw Error("eval_jet: non-finite network output");
    return z;
}

SirenParams zeros_like(const SirenParams& params) {
    SirenParams out;
    out.layers.reserve(params.layers.size());
    for (const auto& l : params.layers) {
        Layer z;
        z.W = Eigen::MatrixXd::Zero(l.W.rows(), l.W.cols());
        z.b = Eigen::VectorXd::Zero(l.b.size());
        out.layers.push_back(std::move(z));
    }
    return out;
}

Eigen::VectorXd flatten(const SirenParams& params) {
    Eigen::VectorXd flat(params.count());
    Eigen::Index k = 0;
    for (const auto& l : params.layers) {
        for (Eigen::Index r = 0; r < l.W.rows(); ++r)
            for (Eigen::Index c = 0; c < l.W.cols(); ++c) flat[k++] = l.W(r, c);
        for (Eigen::Index r = 0; r < l.b.size(); ++r) flat[k++] = l.b[r];
    }
    return flat;
}

void unflatten(const Eigen::VectorXd& flat, SirenParams& params) {
    if (flat.size() != params.count()) throw Error("unflatten: size mismatch");
    Eigen::Index k = 0;
    for (auto& l : params.layers) {
        for (Eigen::Index r = 0; r < l.W.rows(); ++r)
            for (Eigen::Index c = 0; c < l.W.cols(); ++c) l.W(r, c) = flat[k++];
        for (Eigen::Index r = 0; r < l.b.size(); ++r) l.b[r] = flat[k++];
    }
}

TapeNet::TapeNet(ad::Tape& tape, const SirenParams& params, const SirenConfig& cfg)
    : config(&cfg) {
    weight_ids.resize(params.layers.size());
    bias_ids.resize(params.layers.size());
    for (std::size_t l = 0; l < params.layers.size(); ++l) {
        const Layer& layer = params.layers[l];
        auto& w = weight_ids[l];
        auto& b = bias_ids[l];
        w.reserve(static_cast<std::size_t>(layer.W.size()));
        for (Eigen::Index r = 0; r < layer.W.rows(); ++r)
            for (Eigen::Index c = 0; c < layer.W.cols(); ++c)
                w.push_back(tape.parameter(layer.W(r, c)));
        b.reserve(static_cast<std::size_t>(layer.b.size()));
        for (Eigen::Index r = 0; r < layer.b.size(); ++r)
            b.push_back(tape.parameter(layer.b[r]));
    }
}

std::vector<ad::Tape::NodeId> TapeNet::forward(ad::Tape& tape, double t) const {
    std::vector<ad::Tape::NodeId> z{tape.input(ad::Jet{config->normalize(t), config->du_dt(), 0.0})};
    std::vector<ad::Tape::NodeId> next;
    for (std::size_t l = 0; l < weight_ids.size(); ++l) {
        const bool output = l + 1 == weight_ids.size();
        const std::size_t in = z.size();
        const std::size_t out = bias_ids[l].size();
        next.clear();
        for (std::size_t r = 0; r < out; ++r) {
            std::span<const ad::Tape::NodeId> w(&weight_ids[l][r * in], in);
            ad::Tape::NodeId pre = tape.affine(w, z, bias_ids[l][r]);
            next.push_back(output ? pre : tape.sin(tape.scale(config->omega0, pre)));
        }
        z = next;
    }
    return z;
}

namespace {
constexpr const char* kCheckpointFormat = "rktv.siren.v1";
}

void save_checkpoint(const SirenParams& params, const SirenConfig& config,
                     const std::string& path) {
    nlohmann::json j;
    j["format"] = kCheckpointFormat;
    j["config"] = {{"hidden_layers", config.hidden_layers},
                   {"width", config.width},
                   {"omega0", config.omega0},
                   {"out_dim", config.out_dim},
                   {"t_domain", {config.t_domain_lo, config.t_domain_hi}}};
    nlohmann::json layers = nlohmann::json::array();
    for (const auto& l : params.layers) {
        nlohmann::json jl;
        jl["rows"] = l.W.rows();
        jl["cols"] = l.W.cols();
        std::vector<double> w;
        w.reserve(static_cast<std::size_t>(l.W.size()));
        for (Eigen::Index r = 0; r < l.W.rows(); ++r)
            for (Eigen::Index c = 0; c < l.W.cols(); ++c) w.push_back(l.W(r, c));
        jl["W"] = w;
        jl["b"] = std::vector<double>(l.b.data(), l.b.data() + l.b.size());
        layers.push_back(std::move(jl));
    }
    j["layers"] = std::move(layers);
    std::ofstream out(path);
    if (!out) throw Error("cannot open for writing: " + path);
    out << j.dump(2) << "\n";
}

std::pair<SirenParams, SirenConfig> load_checkpoint(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open for reading: " + path);
    nlohmann::json j;
    in >> j;
    if (j.value("format", "") != kCheckpointFormat)
        throw Error("unsupported checkpoint format in " + path);
    SirenConfig config;
    const auto& jc = j.at("config");
    config.hidden_layers = jc.at("hidden_layers").get<int>();
    config.width = jc.at("width").get<int>();
    config.omega0 = jc.at("omega0").get<double>();
    config.out_dim = jc.at("out_dim").get<int>();
    config.t_domain_lo = jc.at("t_domain").at(0).get<double>();
    config.t_domain_hi = jc.at("t_domain").at(1).get<double>();

    SirenParams params;
    for (const auto& jl : j.at("layers")) {
        Layer l;
        const auto rows = jl.at("rows").get<Eigen::Index>();
        const auto cols = jl.at("cols").get<Eigen::Index>();
        const auto w = jl.at("W").get<std::vector<double>>();
        const auto b = jl.at("b").get<std::vector<double>>();
        if (static_cast<Eigen::Index>(w.size()) != rows * cols ||
            static_cast<Eigen::Index>(b.size()) != rows)
            throw Error("corrupt checkpoint layer in " + path);
        l.W.resize(rows, cols);
        for (Eigen::Index r = 0; r < rows; ++r)
            for (Eigen::Index c = 0; c < cols; ++c)
                l.W(r, c) = w[static_cast<std::size_t>(r * cols + c)];
        l.b = Eigen::Map<const Eigen::VectorXd>(b.data(), rows);
        params.layers.push_back(std::move(l));
    }
    return {std::move(params), config};
}

}  // namespace rktv::siren
