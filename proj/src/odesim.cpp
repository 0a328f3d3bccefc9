#include "rktv/odesim.hpp"

#include <cmath>

#include "rktv/errors.hpp"

namespace rktv::ode {

namespace {

constexpr double kDivergenceGuard = 1e12;

bool integer_step_count(double t0, double t1, double h, long long& steps) {
    const double q = (t1 - t0) / h;
    const double r = std::round(q);
    // Accept only a ratio within half an ulp of an integer.
    const double half_ulp = 0.5 * (std::nextafter(q, INFINITY) - q);
    if (std::abs(q - r) > half_ulp) return false;
    steps = static_cast<long long>(r);
    return steps >= 1;
}

void check_state(const Eigen::VectorXd& x, double t) {
    for (Eigen::Index j = 0; j < x.size(); ++j) {
        if (!std::isfinite(x[j]) || std::abs(x[j]) > kDivergenceGuard)
            throw IntegrationError("trajectory diverged at t=" + std::to_string(t), t, 0);
    }
}

}  // namespace

const char* to_string(SystemName name) {
    switch (name) {
        case SystemName::LinearOsc: return "linear_osc";
        case SystemName::CubicOsc: return "cubic_osc";
        case SystemName::VanDerPol: return "van_der_pol";
        case SystemName::SEIR: return "seir";
        case SystemName::Lorenz63: return "lorenz63";
        case SystemName::Rossler: return "rossler";
    }
    return "unknown";
}

SystemName system_from_string(const std::string& name) {
    if (name == "linear_osc") return SystemName::LinearOsc;
    if (name == "cubic_osc") return SystemName::CubicOsc;
    if (name == "van_der_pol") return SystemName::VanDerPol;
    if (name == "seir") return SystemName::SEIR;
    if (name == "lorenz63") return SystemName::Lorenz63;
    if (name == "rossler") return SystemName::Rossler;
    throw ConfigError("unknown system: " + name);
}

OdeSystem make_system(SystemName name, const std::map<std::string, double>& overrides) {
    OdeSystem sys;
    sys.name = name;
    switch (name) {
        case SystemName::LinearOsc:
            sys.dimension = 2;
            sys.params = {{"a11", -0.1}, {"a12", 3.0}, {"a21", -3.0}, {"a22", -0.1}};
            break;
        case SystemName::CubicOsc:
            sys.dimension = 2;
            sys.params = {{"delta", 0.1}, {"alpha", -1.0}, {"beta", 1.0}};
            break;
        case SystemName::VanDerPol:
            sys.dimension = 2;
            sys.params = {{"mu", 0.5}};
            break;
        case SystemName::SEIR:
            sys.dimension = 4;
            sys.params = {{"beta", 0.3}, {"sigma", 0.2}, {"gamma", 0.1}};
            break;
        case SystemName::Lorenz63:
            sys.dimension = 3;
            sys.params = {{"rho", 28.0}, {"sigma", 10.0}, {"beta", 8.0 / 3.0}};
            break;
        case SystemName::Rossler:
            sys.dimension = 3;
            sys.params = {{"a", 0.2}, {"b", 0.2}, {"c", 5.7}};
            break;
    }
    for (const auto& [key, value] : overrides) {
        auto it = sys.params.find(key);
        if (it == sys.params.end())
            throw ConfigError(std::string("unknown parameter '") + key + "' for system " +
                              to_string(name));
        it->second = value;
    }

    const auto p = sys.params;  // captured by value; systems are autonomous
    switch (name) {
        case SystemName::LinearOsc:
            sys.rhs = [p](const Eigen::VectorXd& x, double) {
                Eigen::VectorXd dx(2);
                dx[0] = p.at("a11") * x[0] + p.at("a12") * x[1];
                dx[1] = p.at("a21") * x[0] + p.at("a22") * x[1];
                return dx;
            };
            break;
        case SystemName::CubicOsc:
            sys.rhs = [p](const Eigen::VectorXd& x, double) {
                Eigen::VectorXd dx(2);
                dx[0] = x[1];
                dx[1] = -p.at("delta") * x[1] - p.at("alpha") * x[0] -
                        p.at("beta") * x[0] * x[0] * x[0];
                return dx;
            };
            break;
        case SystemName::VanDerPol:
            sys.rhs = [p](const Eigen::VectorXd& x, double) {
                Eigen::VectorXd dx(2);
                dx[0] = x[1];
                dx[1] = p.at("mu") * (1.0 - x[0] * x[0]) * x[1] - x[0];
                return dx;
            };
            break;
        case SystemName::SEIR:
            sys.rhs = [p](const Eigen::VectorXd& x, double) {
                Eigen::VectorXd dx(4);
                const double si = x[0] * x[2];
                dx[0] = -p.at("beta") * si;
                dx[1] = p.at("beta") * si - p.at("sigma") * x[1];
                dx[2] = p.at("sigma") * x[1] - p.at("gamma") * x[2];
                dx[3] = p.at("gamma") * x[2];
                return dx;
            };
            break;
        case SystemName::Lorenz63:
            sys.rhs = [p](const Eigen::VectorXd& x, double) {
                Eigen::VectorXd dx(3);
                dx[0] = p.at("sigma") * (x[1] - x[0]);
                dx[1] = x[0] * (p.at("rho") - x[2]) - x[1];
                dx[2] = x[0] * x[1] - p.at("beta") * x[2];
                return dx;
            };
            break;
        case SystemName::Rossler:
            sys.rhs = [p](const Eigen::VectorXd& x, double) {
                Eigen::VectorXd dx(3);
                dx[0] = -x[1] - x[2];
                dx[1] = x[0] + p.at("a") * x[1];
                dx[2] = p.at("b") + x[2] * (x[0] - p.at("c"));
                return dx;
            };
            break;
    }
    return sys;
}

SimGrid default_grid(SystemName name) {
    SimGrid g;
    switch (name) {
        case SystemName::LinearOsc:
            g.x0 = Eigen::Vector2d(-2.0, 2.0);
            g.t1 = 10.0;
            g.h = 0.1;
            break;
        case SystemName::CubicOsc:
            g.x0 = Eigen::Vector2d(0.5, 0.0);
            g.t1 = 20.0;
            g.h = 0.05;
            break;
        case SystemName::VanDerPol:
            g.x0 = Eigen::Vector2d(-2.0, 2.0);
            g.t1 = 10.0;
            g.h = 0.05;
            break;
        case SystemName::SEIR:
            g.x0 = Eigen::Vector4d(0.999, 0.001, 0.0, 0.0);
            g.t1 = 160.0;
            g.h = 1.0;
            break;
        case SystemName::Lorenz63:
            g.x0 = Eigen::Vector3d(-8.0, 7.0, 27.0);
            g.t1 = 10.0;
            g.h = 0.05;
            break;
        case SystemName::Rossler:
            g.x0 = Eigen::Vector3d(-7.5, 2.5, 0.0);
            g.t1 = 20.0;
            g.h = 0.05;
            break;
    }
    return g;
}

Eigen::VectorXd rk4_step(const Rhs& rhs, const Eigen::VectorXd& x, double t, double h) {
    if (!(h > 0)) throw Error("rk4_step: step must be positive");
    auto stage = [&](const Eigen::VectorXd& xs, double ts, int index) {
        Eigen::VectorXd k = rhs(xs, ts);
        for (Eigen::Index j = 0; j < k.size(); ++j) {
            if (!std::isfinite(k[j]))
                throw IntegrationError("non-finite RK4 stage " + std::to_string(index) +
                                           " at t=" + std::to_string(ts),
                                       ts, index);
        }
        return k;
    };
    const Eigen::VectorXd k1 = stage(x, t, 1);
    const Eigen::VectorXd k2 = stage(x + 0.5 * h * k1, t + 0.5 * h, 2);
    const Eigen::VectorXd k3 = stage(x + 0.5 * h * k2, t + 0.5 * h, 3);
    const Eigen::VectorXd k4 = stage(x + h * k3, t + h, 4);
    return x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

Trajectory integrate_rk4(const Rhs& rhs, const Eigen::VectorXd& x0, double t0, double t1,
                         double h) {
    long long steps = 0;
    if (!(h > 0) || !integer_step_count(t0, t1, h, steps))
        throw Error("simulate: (t1-t0)/h is not an integer step count");

    const Eigen::Index m = static_cast<Eigen::Index>(steps) + 1;
    const Eigen::Index n = x0.size();

    Trajectory traj;
    traj.t0 = t0;
    traj.h = h;
    traj.states.resize(m, n);
    traj.derivs.emplace(m, n);

    Eigen::VectorXd x = x0;
    check_state(x, t0);
    traj.states.row(0) = x.transpose();
    for (Eigen::Index i = 1; i < m; ++i) {
        const double t = traj.time(i - 1);
        x = rk4_step(rhs, x, t, h);
        check_state(x, traj.time(i));
        traj.states.row(i) = x.transpose();
    }
    for (Eigen::Index i = 0; i < m; ++i)
        traj.derivs->row(i) = rhs(traj.states.row(i).transpose(), traj.time(i)).transpose();
    return traj;
}

Trajectory simulate(const OdeSystem& system, const Eigen::VectorXd& x0, double t0, double t1,
                    double h) {
    if (x0.size() != system.dimension)
        throw Error("simulate: initial condition dimension mismatch");
    return integrate_rk4(system.rhs, x0, t0, t1, h);
}

Trajectory rescale(const Trajectory& traj, double factor) {
    if (factor == 0.0) throw Error("rescale: factor must be nonzero");
    Trajectory out = traj;
    out.states *= factor;
    if (out.derivs) *out.derivs *= factor;
    return out;
}

}  // namespace rktv::ode
