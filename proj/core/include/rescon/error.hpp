#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace rescon {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// e^{f(nu)} left the representable double range.
class OverflowError : public Error {
public:
    using Error::Error;
};

class NotStronglyConnected : public Error {
public:
    using Error::Error;
};

class DegenerateSpectrum : public Error {
public:
    using Error::Error;
};

class NonFiniteState : public Error {
public:
    NonFiniteState(std::size_t agent, double time, const std::string& what)
        : Error(what), agent_(agent), time_(time) {}

    std::size_t agent() const noexcept { return agent_; }
    double time() const noexcept { return time_; }

private:
    std::size_t agent_;
    double time_;
};

class AssumptionViolation : public Error {
public:
    AssumptionViolation(std::string signal, double time, const std::string& what)
        : Error(what), signal_(std::move(signal)), time_(time) {}

    const std::string& signal() const noexcept { return signal_; }
    double time() const noexcept { return time_; }

private:
    std::string signal_;
    double time_;
};

class ParseError : public Error {
public:
    using Error::Error;
};

/// One failed constraint. `path` is a JSON-pointer-like location in the
/// scenario document, `rule` a stable identifier of the violated constraint.
struct Violation {
    std::string path;
    std::string rule;
    std::string message;
};

class ValidationError : public Error {
public:
    explicit ValidationError(std::vector<Violation> violations);

    const std::vector<Violation>& violations() const noexcept { return violations_; }

private:
    std::vector<Violation> violations_;
};

class EmptySelection : public Error {
public:
    using Error::Error;
};

}  // namespace rescon
