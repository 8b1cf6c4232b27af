#ifndef SIRSV_ERRORS_HPP
#define SIRSV_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sirsv {

// Invalid user input: malformed graphs, partitions, configs, out-of-range
// parameters. The CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// A numerical procedure failed to meet its contract (non-convergence,
// step-size underflow, singular system). The CLI maps this to exit code 3.
class NumericalError : public std::runtime_error {
public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sirsv

#endif
