#pragma once

#include <stdexcept>
#include <string>

namespace adns {

// Structural misuse: fields from different grids combined in one operation.
class GridMismatchError : public std::invalid_argument {
  public:
    explicit GridMismatchError(const std::string& what) : std::invalid_argument(what) {}
};

// Requested (p, q) pair outside the supported mixed-norm family.
class UnsupportedNormError : public std::invalid_argument {
  public:
    explicit UnsupportedNormError(const std::string& what) : std::invalid_argument(what) {}
};

// Bad or missing run configuration; the message names the offending key.
class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Trajectory left the trusted regime (NaN/Inf or amplitude guard tripped).
class BlowupError : public std::runtime_error {
  public:
    BlowupError(long step, double t, const std::string& what)
        : std::runtime_error(what), step_index(step), time(t) {}
    long step_index;
    double time;
};

// Calibration ensemble carries no usable information (e.g. all delta == 0).
class CalibrationUndefinedError : public std::runtime_error {
  public:
    explicit CalibrationUndefinedError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace adns
