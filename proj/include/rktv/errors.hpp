#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace rktv {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Non-finite stage value during RK4 integration.
struct IntegrationError : Error {
    IntegrationError(const std::string& msg, double t, int stage)
        : Error(msg), t(t), stage(stage) {}
    double t;
    int stage;  // 1..4, or 0 when the failure is not stage-specific
};

// Non-finite training loss; carries the iteration and component losses.
struct TrainError : Error {
    TrainError(const std::string& msg, int iteration, double l1, double l2, double l3)
        : Error(msg), iteration(iteration), l1(l1), l2(l2), l3(l3) {}
    int iteration;
    double l1, l2, l3;
};

// Rank-deficient (or under-determined) active submatrix in STLSQ.
struct RegressionError : Error {
    RegressionError(const std::string& msg, std::vector<int> columns)
        : Error(msg), columns(std::move(columns)) {}
    std::vector<int> columns;
};

struct ConfigError : Error {
    using Error::Error;
};

}  // namespace rktv
