#pragma once

#include <stdexcept>
#include <string>

namespace entrolab {

// All library failures derive from Error so callers can map them to exit codes.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// An operand lives in the wrong state space (circle point fed to a torus map, ...).
struct SpaceMismatch : Error {
    explicit SpaceMismatch(const std::string& what = "wrong space") : Error(what) {}
};

// Structurally invalid arguments: empty orbits, degenerate compacts, short series.
struct DomainError : Error {
    explicit DomainError(const std::string& what) : Error(what) {}
};

// Numerical failure while evaluating a system or an estimator.
struct ComputeError : Error {
    explicit ComputeError(const std::string& what) : Error(what) {}
};

// Invalid experiment configuration; the CLI maps this to exit code 2.
struct ConfigError : Error {
    explicit ConfigError(const std::string& what) : Error(what) {}
};

// Internal invariant check. Not a debug assert: stays on in release builds.
inline void check(bool cond, const std::string& msg) {
    if (!cond) throw ComputeError(msg);
}

} // namespace entrolab
