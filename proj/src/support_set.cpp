#include "samusic/support_set.hpp"

#include <algorithm>

#include "samusic/errors.hpp"

namespace samusic {

SupportSet::SupportSet(std::vector<int> indices, int universe)
    : indices_(std::move(indices)), universe_(universe) {
    if (universe_ < 0) throw InvalidInput("support universe must be nonnegative");
    std::sort(indices_.begin(), indices_.end());
    if (std::adjacent_find(indices_.begin(), indices_.end()) != indices_.end())
        throw InvalidInput("support set contains duplicate indices");
    if (!indices_.empty() && (indices_.front() < 1 || indices_.back() > universe_))
        throw InvalidInput("support index out of universe range");
}

bool SupportSet::contains(int index_1based) const {
    return std::binary_search(indices_.begin(), indices_.end(), index_1based);
}

SupportSet SupportSet::united(const SupportSet& other) const {
    if (universe_ != other.universe_)
        throw InvalidInput("support union across different universes");
    std::vector<int> merged;
    merged.reserve(indices_.size() + other.indices_.size());
    std::set_union(indices_.begin(), indices_.end(), other.indices_.begin(),
                   other.indices_.end(), std::back_inserter(merged));
    return SupportSet(std::move(merged), universe_);
}

std::vector<int> SupportSet::complement() const {
    std::vector<int> rest;
    rest.reserve(universe_ - size());
    for (int j = 1; j <= universe_; ++j)
        if (!contains(j)) rest.push_back(j);
    return rest;
}

bool support_match(const SupportSet& a, const SupportSet& b) {
    if (a.universe() != b.universe())
        throw InvalidInput("support_match: universe mismatch");
    return a.indices() == b.indices();
}

Mat select_columns(const Mat& A, const SupportSet& J) {
    return select_columns(A, J.indices());
}

Mat select_columns(const Mat& A, const std::vector<int>& indices_1based) {
    Mat out(A.rows(), static_cast<Index>(indices_1based.size()));
    for (size_t k = 0; k < indices_1based.size(); ++k) {
        int j = indices_1based[k];
        if (j < 1 || j > A.cols()) throw InvalidInput("column index out of range");
        out.col(static_cast<Index>(k)) = A.col(j - 1);
    }
    return out;
}

}  // namespace samusic
