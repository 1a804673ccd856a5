#pragma once

// Seeded self-check of the closed forms against the finite-difference
// oracle and the algebraic identities that tie them together.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace acobs::cli {

struct VerifyOptions {
    std::uint64_t seed = 42;
    int n_states = 1000;
    /// Evaluate the determinant checks against a tampered closed form (sign
    /// of the derivative-dependent term flipped); the suite must then fail.
    bool mutate = false;
};

struct PropertyResult {
    std::string name;
    bool pass = false;
    double worst = 0.0;      ///< largest observed error measure
    double tolerance = 0.0;  ///< bound the worst value is held to
    std::string detail;
};

std::vector<PropertyResult> run_verify(const VerifyOptions& options);

/// One "PASS|FAIL name worst=… tol=…" line per property.
void print_results(std::ostream& out, const std::vector<PropertyResult>& results);

bool all_passed(const std::vector<PropertyResult>& results);

}  // namespace acobs::cli
