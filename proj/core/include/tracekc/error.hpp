#pragma once

#include <stdexcept>
#include <string>

namespace tracekc {

// Malformed input: files, traces, evidence strings.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A variable name or id that the schema does not expose.
class UnknownVariable : public DataError {
public:
    explicit UnknownVariable(const std::string& name)
        : DataError("unknown variable: " + name), name_(name) {}
    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

// Evidence has zero supporting models. Distinct from a probability of 0.
class NoSupport : public std::runtime_error {
public:
    NoSupport() : std::runtime_error("no supporting observations") {}
};

}  // namespace tracekc
