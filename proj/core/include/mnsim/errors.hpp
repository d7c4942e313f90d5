#ifndef MNSIM_ERRORS_HPP
#define MNSIM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mnsim {

/// Invalid numerology or experiment configuration (names the offending field).
class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Spectrum allocation cannot be realized on the reference grid.
class AllocationError : public std::runtime_error {
  public:
    explicit AllocationError(const std::string& what) : std::runtime_error(what) {}
};

/// Mismatched signal/grid dimensions.
class DimensionError : public std::runtime_error {
  public:
    explicit DimensionError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mnsim

#endif  // MNSIM_ERRORS_HPP
