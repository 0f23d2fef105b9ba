#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "acdc/sparse.hpp"

namespace acdc {

/// Sparse LU with the analyze/refactor split: the pattern-dependent symbolic
/// analysis runs once per solve, every iteration then runs a numeric
/// factorization on the same pattern. Counters are exposed so callers can
/// audit the one-analysis contract.
class LinearSolver {
public:
    LinearSolver();
    ~LinearSolver();
    LinearSolver(const LinearSolver&) = delete;
    LinearSolver& operator=(const LinearSolver&) = delete;

    /// Symbolic analysis of the pattern. Must be called once before factor().
    void analyze(FixedPatternMatrix& m);

    /// Numeric factorization of the current values. False when singular.
    bool factor(FixedPatternMatrix& m);

    /// Solves J * x = -residual into `increment`. factor() must have succeeded.
    void solve_negated(std::span<const double> residual, std::span<double> increment);

    int symbolic_count() const { return symbolic_count_; }
    int numeric_count() const { return numeric_count_; }
    const std::string& last_error() const { return last_error_; }

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    int symbolic_count_ = 0;
    int numeric_count_ = 0;
    std::string last_error_;
};

}  // namespace acdc
