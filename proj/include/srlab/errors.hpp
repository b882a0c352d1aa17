#pragma once

#include <stdexcept>
#include <string>

namespace srlab {

// Structural misuse of quantum numbers (|m| > j, wrong parity, negative j).
// Selection-rule violations are *not* errors: coefficients return 0 there.
struct InvalidQuantumNumber : std::domain_error {
    using std::domain_error::domain_error;
};

// Bra and ket belong to different (j1, j2) irrep families.
struct MismatchedAlpha : std::domain_error {
    using std::domain_error::domain_error;
};

struct OutOfSectorRange : std::domain_error {
    using std::domain_error::domain_error;
};

// Adaptive integrator could not reach the requested tolerance.
struct ToleranceNotMet : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PoleHit : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Field evaluation requested too close to a wire segment.
struct SingularPoint : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NanDetected : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Singular values fell inside the null-space decision gap.
struct RankAmbiguous : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace srlab
