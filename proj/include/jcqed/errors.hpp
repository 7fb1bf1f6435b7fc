// errors.hpp: exception hierarchy shared by all jcqed modules
//
// Every error carries a stable machine-readable kind ("invalid-argument",
// "domain-error", ...) that the CLI reports in its JSON error payload.

#pragma once

#include <stdexcept>
#include <string>

namespace jcqed {

class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

struct InvalidArgument : Error {
    explicit InvalidArgument(const std::string& what) : Error("invalid-argument", what) {}
};

// Input outside the validity domain of a closed form (e.g. off-resonant input
// to a resonant-only formula).
struct DomainError : Error {
    explicit DomainError(const std::string& what) : Error("domain-error", what) {}
};

// Spectral decomposition requested inside the exceptional-point exclusion zone.
struct DegenerateSpectrum : Error {
    explicit DegenerateSpectrum(const std::string& what) : Error("degenerate-spectrum", what) {}
};

struct PrincipalValuePoint : Error {
    explicit PrincipalValuePoint(const std::string& what) : Error("principal-value-point", what) {}
};

struct ComplexityLimit : Error {
    explicit ComplexityLimit(const std::string& what) : Error("complexity-limit", what) {}
};

struct InsufficientData : Error {
    explicit InsufficientData(const std::string& what) : Error("insufficient-data", what) {}
};

} // namespace jcqed
