#pragma once

// The six benchmark systems and a classical fixed-step RK4 integrator used
// to produce ground-truth states and derivatives.

#include <Eigen/Core>
#include <functional>
#include <map>
#include <string>

#include "rktv/trajectory.hpp"

namespace rktv::ode {

using Rhs = std::function<Eigen::VectorXd(const Eigen::VectorXd&, double)>;

enum class SystemName { LinearOsc, CubicOsc, VanDerPol, SEIR, Lorenz63, Rossler };

const char* to_string(SystemName name);
SystemName system_from_string(const std::string& name);

struct OdeSystem {
    SystemName name;
    int dimension;
    std::map<std::string, double> params;
    Rhs rhs;
};

// Default experiment grid for each preset (initial condition and sampling).
struct SimGrid {
    Eigen::VectorXd x0;
    double t0 = 0.0;
    double t1 = 0.0;
    double h = 0.0;
};

// Builds one of the six presets. Override values must name existing
// parameters of the chosen system.
OdeSystem make_system(SystemName name, const std::map<std::string, double>& overrides = {});

// The preset's published simulation grid.
SimGrid default_grid(SystemName name);

// One classical RK4 step: x + (k1 + 2k2 + 2k3 + k4)/6.
// Throws IntegrationError when a stage evaluates non-finite.
Eigen::VectorXd rk4_step(const Rhs& rhs, const Eigen::VectorXd& x, double t, double h);

// Integrates from x0 over [t0, t1] with step h; (t1-t0)/h must be an integer
// to within half an ulp. States with any |entry| > 1e12 abort the run.
// The returned trajectory carries derivs = rhs evaluated along the states.
Trajectory simulate(const OdeSystem& system, const Eigen::VectorXd& x0,
                    double t0, double t1, double h);

// Same integrator for an arbitrary right-hand side (used by the SINDy
// playback of identified models).
Trajectory integrate_rk4(const Rhs& rhs, const Eigen::VectorXd& x0,
                         double t0, double t1, double h);

// Multiplies states and derivatives by `factor` (the derivative of the
// scaled state is factor * xdot). factor must be nonzero.
Trajectory rescale(const Trajectory& traj, double factor);

}  // namespace rktv::ode
