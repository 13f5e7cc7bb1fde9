#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pomdp {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Unknown state/action/observation/node name.
class LookupError : public Error {
public:
    using Error::Error;
};

class ValidationError : public Error {
public:
    using Error::Error;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

// Pr(o | a, b) == 0 in a belief update.
class ImpossibleObservation : public Error {
public:
    using Error::Error;
};

// Evidence with zero joint probability in a Bayesian network query.
class ImpossibleEvidence : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class ResourceLimitError : public Error {
public:
    using Error::Error;
};

class PolicyError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

} // namespace pomdp
