#pragma once

// Sine-activated MLP mapping scalar time to the state vector. The raw time
// is normalized to u in [-1,1] over the configured domain; jets seeded with
// du/dt keep all derivatives expressed in raw time units.
//
// Hidden layer l computes sin(omega0 * (W_l z + b_l)); the output layer is
// affine. Initialization follows the standard sine-network scheme: first
// layer weights U(-1/fan_in, 1/fan_in), deeper layers (output included)
// U(-sqrt(6/fan_in)/omega0, +sqrt(6/fan_in)/omega0), biases drawn from the
// same range as their layer's weights.

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

#include "rktv/jet.hpp"
#include "rktv/tape.hpp"

namespace rktv::siren {

struct SirenConfig {
    int hidden_layers = 3;
    int width = 80;
    double omega0 = 30.0;
    int out_dim = 1;
    double t_domain_lo = 0.0;
    double t_domain_hi = 1.0;

    double normalize(double t) const {
        return 2.0 * (t - t_domain_lo) / (t_domain_hi - t_domain_lo) - 1.0;
    }
    double du_dt() const { return 2.0 / (t_domain_hi - t_domain_lo); }
};

struct Layer {
    Eigen::MatrixXd W;  // out x in
    Eigen::VectorXd b;  // out
};

struct SirenParams {
    std::vector<Layer> layers;  // hidden_layers + 1 entries, output last

    Eigen::Index count() const {
        Eigen::Index total = 0;
        for (const auto& l : layers) total += l.W.size() + l.b.size();
        return total;
    }
};

// Deterministic per seed; draw order is layer by layer, weights row-major,
// then biases.
SirenParams init(const SirenConfig& config, std::uint64_t seed);

// Value/first/second time derivative of every output at raw time t.
std::vector<ad::Jet> eval_jet(const SirenParams& params, const SirenConfig& config, double t);

// Zero-initialized parameter gradients with the same shapes.
SirenParams zeros_like(const SirenParams& params);

// Canonical flat layout (layer by layer, W row-major, then b) used by the
// finite-difference tests and the tape parameter ordering.
Eigen::VectorXd flatten(const SirenParams& params);
void unflatten(const Eigen::VectorXd& flat, SirenParams& params);

// Network recorded on a reverse-mode tape: parameters become tape leaves in
// canonical flat order, forward() appends one evaluation of the network.
struct TapeNet {
    const SirenConfig* config;
    std::vector<std::vector<ad::Tape::NodeId>> weight_ids;  // per layer, row-major
    std::vector<std::vector<ad::Tape::NodeId>> bias_ids;

    TapeNet(ad::Tape& tape, const SirenParams& params, const SirenConfig& config);
    std::vector<ad::Tape::NodeId> forward(ad::Tape& tape, double t) const;
};

// Versioned JSON checkpoint (config + layer shapes + row-major values).
void save_checkpoint(const SirenParams& params, const SirenConfig& config,
                     const std::string& path);
std::pair<SirenParams, SirenConfig> load_checkpoint(const std::string& path);

}  // namespace rktv::siren
