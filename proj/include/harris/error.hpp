#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace harris {

// Thrown when a distribution or process is configured with a parameter
// outside its admissible set. parameter() names the offending argument.
class parameter_error : public std::invalid_argument {
public:
    parameter_error(std::string parameter, const std::string& what)
        : std::invalid_argument(what), parameter_(std::move(parameter)) {}

    const std::string& parameter() const noexcept { return parameter_; }

private:
    std::string parameter_;
};

// Thrown when an evaluation point lies outside an operation's domain
// (a probability outside [0,1], a non-positive argument of psi, ...).
class domain_error : public std::domain_error {
public:
    domain_error(std::string parameter, const std::string& what)
        : std::domain_error(what), parameter_(std::move(parameter)) {}

    const std::string& parameter() const noexcept { return parameter_; }

private:
    std::string parameter_;
};

namespace detail {

inline std::string fmt_value(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline void require_param(bool ok, const char* name, double value, const char* constraint) {
    if (!ok) {
        throw parameter_error(name, std::string("invalid parameter ") + name + " = " +
                                        fmt_value(value) + ": must be " + constraint);
    }
}

inline void require_domain(bool ok, const char* name, double value, const char* constraint) {
    if (!ok) {
        throw domain_error(name, std::string("argument ") + name + " = " + fmt_value(value) +
                                     " outside domain: must be " + constraint);
    }
}

inline void require_probability(double q, const char* name = "q") {
    require_domain(q >= 0.0 && q <= 1.0, name, q, "in [0, 1]");
}

} // namespace detail
} // namespace harris
