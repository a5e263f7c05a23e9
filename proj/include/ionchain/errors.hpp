#ifndef IONCHAIN_ERRORS_HPP
#define IONCHAIN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ionchain {

/// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// chain_mechanics
struct NonConvergence : Error   { using Error::Error; };
struct InvalidOddChain : Error  { using Error::Error; };
struct DegenerateInput : Error  { using Error::Error; };
struct IndefiniteHessian : Error { using Error::Error; };
struct SingularCurvature : Error { using Error::Error; };

// couplings
struct ZeroFrequencyMode : Error { using Error::Error; };
struct LengthMismatch : Error   { using Error::Error; };
struct AmbiguousSign : Error    { using Error::Error; };

// hopfield_dynamics
struct TooLarge : Error         { using Error::Error; };

// qnn_gates
struct InvalidParams : Error    { using Error::Error; };
struct DegenerateLevelCrossing : Error { using Error::Error; };
struct StepSizeUnderflow : Error { using Error::Error; };
struct AccuracyNotMet : Error   { using Error::Error; };
struct InvalidDimension : Error { using Error::Error; };

// harness
struct ConfigError : Error      { using Error::Error; };
struct IoError : Error          { using Error::Error; };

} // namespace ionchain

#endif
