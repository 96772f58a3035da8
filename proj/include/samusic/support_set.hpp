#pragma once

#include <vector>

#include "samusic/types.hpp"

namespace samusic {

/// Sorted, duplicate-free set of 1-based column indices over a universe [1, n].
class SupportSet {
public:
    SupportSet() = default;

    /// Indices are canonically sorted; duplicates or out-of-range entries are rejected.
    SupportSet(std::vector<int> indices, int universe);

    static SupportSet empty(int universe) { return SupportSet({}, universe); }

    const std::vector<int>& indices() const { return indices_; }
    int universe() const { return universe_; }
    int size() const { return static_cast<int>(indices_.size()); }
    bool contains(int index_1based) const;

    /// Set union; both operands must share the universe.
    SupportSet united(const SupportSet& other) const;

    /// Indices not in this set, as a sorted list (1-based).
    std::vector<int> complement() const;

    bool operator==(const SupportSet& other) const {
        return universe_ == other.universe_ && indices_ == other.indices_;
    }

private:
    std::vector<int> indices_;  // strictly increasing, 1-based
    int universe_ = 0;
};

/// true iff the two sets are equal; universes must match.
bool support_match(const SupportSet& a, const SupportSet& b);

/// Columns of A selected by J (J indices are 1-based), in increasing index order.
Mat select_columns(const Mat& A, const SupportSet& J);

/// Columns of A at the given 1-based indices, in the order given.
Mat select_columns(const Mat& A, const std::vector<int>& indices_1based);

}  // namespace samusic
