#include "rktv/trajectory.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "rktv/errors.hpp"

namespace rktv {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_trajectory_csv(const Trajectory& traj, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open for writing: " + path);
    const Eigen::Index n = traj.dim();
    out << "t";
    for (Eigen::Index j = 0; j < n; ++j) out << ",x" << (j + 1);
    if (traj.derivs)
        for (Eigen::Index j = 0; j < n; ++j) out << ",dx" << (j + 1);
    out << "\n";
    for (Eigen::Index i = 0; i < traj.rows(); ++i) {
        out << format_double(traj.time(i));
        for (Eigen::Index j = 0; j < n; ++j) out << "," << format_double(traj.states(i, j));
        if (traj.derivs)
            for (Eigen::Index j = 0; j < n; ++j)
                out << "," << format_double((*traj.derivs)(i, j));
        out << "\n";
    }
    if (!out) throw Error("write failed: " + path);
}

Trajectory read_trajectory_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open for reading: " + path);

    std::string header;
    if (!std::getline(in, header)) throw Error("empty trajectory file: " + path);

    std::vector<std::string> cols;
    {
        std::stringstream ss(header);
        std::string item;
        while (std::getline(ss, item, ',')) cols.push_back(item);
    }
    if (cols.empty() || cols[0] != "t") throw Error("bad trajectory header in " + path);

    Eigen::Index n = 0;
    while (1 + n < static_cast<Eigen::Index>(cols.size()) &&
           cols[static_cast<std::size_t>(1 + n)] == "x" + std::to_string(n + 1))
        ++n;
    const bool has_derivs = static_cast<Eigen::Index>(cols.size()) == 1 + 2 * n;
    if (!has_derivs && static_cast<Eigen::Index>(cols.size()) != 1 + n)
        throw Error("bad trajectory header in " + path);

    std::vector<double> times;
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string item;
        std::vector<double> row;
        while (std::getline(ss, item, ',')) row.push_back(std::stod(item));
        if (static_cast<Eigen::Index>(row.size()) != static_cast<Eigen::Index>(cols.size()))
            throw Error("ragged row in " + path);
        times.push_back(row[0]);
        row.erase(row.begin());
        rows.push_back(std::move(row));
    }
    const auto m = static_cast<Eigen::Index>(rows.size());
    if (m < 2) throw Error("trajectory needs at least 2 rows: " + path);

    Trajectory traj;
    traj.t0 = times[0];
    traj.h = (times[static_cast<std::size_t>(m - 1)] - times[0]) / static_cast<double>(m - 1);
    if (!(traj.h > 0)) throw Error("non-increasing time grid in " + path);
    for (Eigen::Index i = 0; i < m; ++i) {
        const double expected = traj.time(i);
        const double tol = 4.0 * std::abs(expected) * 1e-15 + 1e-300;
        if (std::abs(times[static_cast<std::size_t>(i)] - expected) > tol)
            throw Error("non-uniform time grid in " + path);
    }

    traj.states.resize(m, n);
    if (has_derivs) traj.derivs.emplace(m, n);
    for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            traj.states(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            if (has_derivs)
                (*traj.derivs)(i, j) =
                    rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(n + j)];
        }
    }
    return traj;
}

}  // namespace rktv
