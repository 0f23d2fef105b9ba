#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace acdc {

/// Square sparse matrix with a pattern frozen at the first assembly.
///
/// The first begin/add/end pass records the emission sequence and builds the
/// compressed-column storage; every later pass must emit the same (row, col)
/// sequence and only rewrites values in place. Entries that are numerically
/// zero in some control modes stay structurally allocated, so control-mode
/// swaps never change the pattern.
class FixedPatternMatrix {
public:
    explicit FixedPatternMatrix(int n = 0) : n_(n) {}

    int n() const { return n_; }
    int nnz() const { return static_cast<int>(row_idx_.size()); }
    bool finalized() const { return finalized_; }

    void begin_assembly();
    void add(int row, int col, double value);
    void end_assembly();

    std::span<const int> col_ptr() const { return col_ptr_; }
    std::span<const int> row_idx() const { return row_idx_; }
    std::span<const double> values() const { return values_; }
    std::span<int> col_ptr_mut() { return col_ptr_; }
    std::span<int> row_idx_mut() { return row_idx_; }
    std::span<double> values_mut() { return values_; }

    double at(int row, int col) const;

    /// FNV-1a over the structural (col_ptr, row_idx) arrays.
    std::uint64_t pattern_hash() const;

private:
    int n_ = 0;
    bool finalized_ = false;
    size_t cursor_ = 0;

    // Recording pass.
    std::vector<int> t_row_, t_col_;
    std::vector<double> t_val_;
    std::vector<int> slot_of_;  // triplet order -> CSC slot

    // Frozen CSC storage.
    std::vector<int> col_ptr_;
    std::vector<int> row_idx_;
    std::vector<double> values_;
};

}  // namespace acdc
