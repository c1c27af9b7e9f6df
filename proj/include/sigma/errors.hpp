#ifndef SIGMA_ERRORS_HPP
#define SIGMA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sigma {

struct SigmaError : std::runtime_error {
    explicit SigmaError(const std::string& m) : std::runtime_error(m) {}
};

struct DimensionMismatch : SigmaError {
    explicit DimensionMismatch(const std::string& m) : SigmaError("dimension mismatch: " + m) {}
};

struct RingMismatch : SigmaError {
    explicit RingMismatch(const std::string& m) : SigmaError("ring mismatch: " + m) {}
};

struct NotAUnit : SigmaError {
    explicit NotAUnit(const std::string& m) : SigmaError("NotAUnit: " + m) {}
};

struct ZeroInput : SigmaError {
    explicit ZeroInput(const std::string& m) : SigmaError("zero input: " + m) {}
};

struct NotInSigma : SigmaError {
    explicit NotInSigma(const std::string& m) : SigmaError("NotInSigma: " + m) {}
};

struct MissingDirection : SigmaError {
    explicit MissingDirection(const std::string& m) : SigmaError("MissingDirection: " + m) {}
};

struct ConstantsInfeasible : SigmaError {
    explicit ConstantsInfeasible(const std::string& m) : SigmaError("ConstantsInfeasible: " + m) {}
};

struct SchemaError : SigmaError {
    explicit SchemaError(const std::string& m) : SigmaError("schema error: " + m) {}
};

struct UnsupportedRegime : SigmaError {
    explicit UnsupportedRegime(const std::string& m) : SigmaError("unsupported regime: " + m) {}
};

}  // namespace sigma

#endif
