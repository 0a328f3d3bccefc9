#pragma once

#include <Eigen/Core>
#include <optional>
#include <string>

namespace rktv {

// Uniformly sampled trajectory. The grid is stored as (t0, h, m) and times
// are always recomputed as t0 + i*h — never accumulated — so the spacing
// assumed by the Runge-Kutta residual is exact.
struct Trajectory {
    double t0 = 0.0;
    double h = 1.0;
    Eigen::MatrixXd states;                 // m x n
    std::optional<Eigen::MatrixXd> derivs;  // m x n when available

    Eigen::Index rows() const { return states.rows(); }
    Eigen::Index dim() const { return states.cols(); }
    double time(Eigen::Index i) const { return t0 + static_cast<double>(i) * h; }
    double t_end() const { return time(rows() - 1); }
};

// CSV round trip. Header is `t,x1,...,xn` with `dx1,...,dxn` appended when
// derivatives are present; values are written with 17 significant digits.
void write_trajectory_csv(const Trajectory& traj, const std::string& path);
Trajectory read_trajectory_csv(const std::string& path);

// Formats a double with enough digits to round-trip exactly.
std::string format_double(double v);

}  // namespace rktv
