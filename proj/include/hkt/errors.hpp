#pragma once

#include <stdexcept>
#include <string>

namespace hkt {

// Caller broke a documented precondition.
struct ContractViolation : std::logic_error {
    explicit ContractViolation(const std::string& what) : std::logic_error(what) {}
};

// A field produced a non-finite value.
struct EvaluationError : std::runtime_error {
    explicit EvaluationError(const std::string& what) : std::runtime_error(what) {}
};

inline void require(bool cond, const char* msg)
{
    if (!cond) throw ContractViolation(msg);
}

}  // namespace hkt
