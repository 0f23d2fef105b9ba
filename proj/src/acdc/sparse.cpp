#include "acdc/sparse.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <stdexcept>

namespace acdc {

void FixedPatternMatrix::begin_assembly() {
    if (finalized_) {
        std::fill(values_.begin(), values_.end(), 0.0);
        cursor_ = 0;
    } else {
        t_row_.clear();
        t_col_.clear();
        t_val_.clear();
    }
}

void FixedPatternMatrix::add(int row, int col, double value) {
    if (!finalized_) {
        assert(row >= 0 && row < n_ && col >= 0 && col < n_);
        t_row_.push_back(row);
        t_col_.push_back(col);
        t_val_.push_back(value);
        return;
    }
    if (cursor_ >= slot_of_.size())
        throw std::logic_error("assembly emitted more entries than the frozen pattern");
    assert(row_idx_[slot_of_[cursor_]] == row);
    values_[slot_of_[cursor_++]] += value;
}

void FixedPatternMatrix::end_assembly() {
    if (finalized_) {
        if (cursor_ != slot_of_.size())
            throw std::logic_error("assembly emitted fewer entries than the frozen pattern");
        return;
    }
    const size_t nt = t_row_.size();
    std::vector<int> order(nt);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [this](int a, int b) {
        if (t_col_[a] != t_col_[b]) return t_col_[a] < t_col_[b];
        return t_row_[a] < t_row_[b];
    });

    col_ptr_.assign(n_ + 1, 0);
    row_idx_.clear();
    values_.clear();
    slot_of_.assign(nt, -1);
    int prev_col = -1, prev_row = -1;
    for (int k : order) {
        if (t_col_[k] != prev_col || t_row_[k] != prev_row) {
            row_idx_.push_back(t_row_[k]);
            values_.push_back(0.0);
            ++col_ptr_[t_col_[k] + 1];
            prev_col = t_col_[k];
            prev_row = t_row_[k];
        }
        slot_of_[k] = static_cast<int>(row_idx_.size()) - 1;
        values_.back() += t_val_[k];
    }
    std::partial_sum(col_ptr_.begin(), col_ptr_.end(), col_ptr_.begin());
    t_row_.clear();
    t_col_.clear();
    t_val_.clear();
    finalized_ = true;
    cursor_ = slot_of_.size();
}

double FixedPatternMatrix::at(int row, int col) const {
    for (int k = col_ptr_[col]; k < col_ptr_[col + 1]; ++k) {
        if (row_idx_[k] == row) return values_[k];
    }
    return 0.0;
}

std::uint64_t FixedPatternMatrix::pattern_hash() const {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](std::uint64_t x) {
        h ^= x;
        h *= 1099511628211ull;
    };
    for (int p : col_ptr_) mix(static_cast<std::uint64_t>(p));
    for (int r : row_idx_) mix(static_cast<std::uint64_t>(r));
    return h;
}

}  // namespace acdc
