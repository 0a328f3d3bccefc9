#pragma once

// Calibrated noise injection. The corruption strength is a relative level
// sigma2 = zeta^2 / L^2 where L is the root mean column variance of the
// clean states; each distribution is parameterized so the injected noise
// has variance zeta^2 exactly.

#include <Eigen/Core>
#include <cstdint>
#include <string>

#include "rktv/rng.hpp"
#include "rktv/trajectory.hpp"

namespace rktv::noise {

enum class Distribution { Gaussian, Uniform, Laplace };

const char* to_string(Distribution d);
Distribution distribution_from_string(const std::string& name);

struct NoiseSpec {
    double relative_level = 0.0;  // sigma^2, dimensionless
    Distribution distribution = Distribution::Gaussian;
    std::uint64_t seed = 0;
};

// L = sqrt(mean_j Var(X_col_j)), population variance (divide by m). m >= 2.
double length_scale(const Eigen::MatrixXd& states);

// Draws noise of variance zeta2: Gaussian N(0, zeta^2), uniform on
// [-zeta*sqrt(3), zeta*sqrt(3)], or Laplace with scale zeta/sqrt(2).
class NoiseSampler {
  public:
    NoiseSampler(Distribution distribution, double zeta2, std::uint64_t seed)
        : distribution_(distribution), zeta_(std::sqrt(zeta2)), rng_(seed) {}

    double next() {
        switch (distribution_) {
            case Distribution::Gaussian: return zeta_ * rng_.normal();
            case Distribution::Uniform: return rng_.uniform_symmetric(zeta_ * std::sqrt(3.0));
            case Distribution::Laplace: return rng_.laplace(zeta_ / std::sqrt(2.0));
        }
        return 0.0;
    }

  private:
    Distribution distribution_;
    double zeta_;
    Xoshiro256pp rng_;
};

// Returns a copy with i.i.d. noise of variance sigma2 * L^2 added to every
// state entry (row-major draw order) and derivatives dropped. sigma2 = 0
// leaves the states bit-identical.
Trajectory corrupt(const Trajectory& traj, const NoiseSpec& spec);

}  // namespace rktv::noise
