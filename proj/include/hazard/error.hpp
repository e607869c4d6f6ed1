#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hazard {

// Base of every error raised by the library. Callers that only need a
// diagnostic can catch this; the CLI maps subclasses onto exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ArityError : public Error {
public:
    using Error::Error;
};

class UnknownVariable : public Error {
public:
    explicit UnknownVariable(const std::string& name)
        : Error("unknown variable '" + name + "'"), name_(name) {}
    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

class NotBooleanValued : public Error {
public:
    using Error::Error;
};

class NegativeDelay : public Error {
public:
    using Error::Error;
};

class MissingDelayAssignment : public Error {
public:
    explicit MissingDelayAssignment(const std::string& symbol)
        : Error("no value assigned to delay symbol '" + symbol + "'"), symbol_(symbol) {}
    const std::string& symbol() const noexcept { return symbol_; }

private:
    std::string symbol_;
};

class NonPositiveDelay : public Error {
public:
    using Error::Error;
};

// Two step instants whose order depends on the concrete delay values.
class AmbiguousOrdering : public Error {
public:
    AmbiguousOrdering(std::string first, std::string second, std::string gate = {})
        : Error(compose(first, second, gate)),
          first_(std::move(first)),
          second_(std::move(second)),
          gate_(std::move(gate)) {}

    const std::string& first() const noexcept { return first_; }
    const std::string& second() const noexcept { return second_; }
    const std::string& gate() const noexcept { return gate_; }

    AmbiguousOrdering at_gate(const std::string& gate) const { return {first_, second_, gate}; }

private:
    static std::string compose(const std::string& a, const std::string& b, const std::string& gate) {
        std::string msg = "ambiguous ordering of step times " + a + " and " + b;
        if (!gate.empty()) msg += " at gate " + gate;
        return msg;
    }

    std::string first_;
    std::string second_;
    std::string gate_;
};

class SyntaxError : public Error {
public:
    SyntaxError(std::size_t line, std::size_t col, const std::string& what)
        : Error(std::to_string(line) + ":" + std::to_string(col) + ": " + what), line_(line), col_(col) {}
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return col_; }

private:
    std::size_t line_;
    std::size_t col_;
};

class UndefinedSignal : public Error {
public:
    using Error::Error;
};

class DuplicateName : public Error {
public:
    using Error::Error;
};

class CycleDetected : public Error {
public:
    using Error::Error;
};

class TooManyInputs : public Error {
public:
    using Error::Error;
};

}  // namespace hazard
