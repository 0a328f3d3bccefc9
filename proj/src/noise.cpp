#include "rktv/noise.hpp"

#include "rktv/errors.hpp"

namespace rktv::noise {

const char* to_string(Distribution d) {
    switch (d) {
        case Distribution::Gaussian: return "gaussian";
        case Distribution::Uniform: return "uniform";
        case Distribution::Laplace: return "laplace";
    }
    return "unknown";
}

Distribution distribution_from_string(const std::string& name) {
    if (name == "gaussian") return Distribution::Gaussian;
    if (name == "uniform") return Distribution::Uniform;
    if (name == "laplace") return Distribution::Laplace;
    throw ConfigError("unknown noise distribution: " + name);
}

double length_scale(const Eigen::MatrixXd& states) {
    const Eigen::Index m = states.rows();
    const Eigen::Index n = states.cols();
    if (m < 2) throw Error("length_scale: need at least 2 rows");
    double mean_var = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
        const double mu = states.col(j).mean();
        mean_var += (states.col(j).array() - mu).square().sum() / static_cast<double>(m);
    }
    return std::sqrt(mean_var / static_cast<double>(n));
}

Trajectory corrupt(const Trajectory& traj, const NoiseSpec& spec) {
    Trajectory out;
    out.t0 = traj.t0;
    out.h = traj.h;
    out.states = traj.states;
    // Derivatives are unknown after corruption.
    out.derivs.reset();
    if (spec.relative_level == 0.0) return out;

    const double L = length_scale(traj.states);
    const double zeta2 = spec.relative_level * L * L;
    NoiseSampler sampler(spec.distribution, zeta2, spec.seed);
    for (Eigen::Index i = 0; i < out.states.rows(); ++i)
        for (Eigen::Index j = 0; j < out.states.cols(); ++j)
            out.states(i, j) += sampler.next();
    return out;
}

}  // namespace rktv::noise
