#pragma once

#include <stdexcept>
#include <string>

namespace pcdn {

/// Input describes an instance or schedule that violates its invariants.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Internal consistency failure inside a solver phase. Indicates a defect.
class InternalError : public std::logic_error {
public:
    InternalError(std::string phase, const std::string& what)
        : std::logic_error(phase + ": " + what), phase_(std::move(phase)) {}
    const std::string& phase() const { return phase_; }

private:
    std::string phase_;
};

class InfeasibleFlow : public InternalError {
public:
    explicit InfeasibleFlow(const std::string& what) : InternalError("flow", what) {}
};

class NegativeCycle : public InternalError {
public:
    explicit NegativeCycle(const std::string& what) : InternalError("flow", what) {}
};

class DegreeBoundViolated : public InternalError {
public:
    explicit DegreeBoundViolated(const std::string& what) : InternalError("coloring", what) {}
};

class InstanceTooLarge : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace pcdn
