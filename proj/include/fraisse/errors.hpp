#pragma once

#include <stdexcept>
#include <string>

namespace fraisse {

/// Failure categories surfaced by every public operation. The CLI maps each
/// one onto a process exit code.
enum class ErrorKind {
    contract_violation,
    witness_not_found,
    resource_limit,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Precondition failure, malformed input, or a broken invariant in caller data.
class ContractViolation : public Error {
public:
    explicit ContractViolation(const std::string& what)
        : Error(ErrorKind::contract_violation, what) {}
};

/// An exhaustive search finished without finding the requested morphism.
class WitnessNotFound : public Error {
public:
    explicit WitnessNotFound(const std::string& what)
        : Error(ErrorKind::witness_not_found, what) {}
};

/// An input exceeds a configured exhaustive-search or size bound.
class ResourceLimit : public Error {
public:
    explicit ResourceLimit(const std::string& what) : Error(ErrorKind::resource_limit, what) {}
};

}  // namespace fraisse
