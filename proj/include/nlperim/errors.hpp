#pragma once

#include <stdexcept>
#include <string>

namespace nlperim {

// Invalid construction parameters, regime violations (e.g. a too large for
// the surface resolution), unusable sampler setups.  CLI maps this to exit 3.
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A numerical routine could not reach the requested accuracy.  Carries the
// best estimate so callers may still inspect it.
class accuracy_error : public std::runtime_error {
public:
    accuracy_error(const std::string& msg, double best_value, double best_err)
        : std::runtime_error(msg), value(best_value), abs_err(best_err) {}
    double value;
    double abs_err;
};

// File/stream problems.  CLI maps this to exit 4.
class io_error : public std::runtime_error {
public:
    explicit io_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Domain errors (t <= 0, r outside [0,1), ...) use std::domain_error.

} // namespace nlperim
