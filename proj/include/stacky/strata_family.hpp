#pragma once

// Families of index subsets of {0,..,d-1}: face strata of a polytope, cone
// ray-sets of a fan, zero-coordinate patterns of level sets.

#include <algorithm>
#include <set>
#include <vector>

#include "stacky/errors.hpp"

namespace stacky {

using IndexSet = std::vector<int>;  // strictly increasing

inline IndexSet sorted_set(IndexSet s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

inline IndexSet complement_set(const IndexSet& s, int ground) {
    IndexSet out;
    size_t k = 0;
    for (int i = 0; i < ground; ++i) {
        if (k < s.size() && s[k] == i)
            ++k;
        else
            out.push_back(i);
    }
    return out;
}

inline bool is_subset(const IndexSet& a, const IndexSet& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

class StrataFamily {
public:
    StrataFamily() : ground_(0) {}
    explicit StrataFamily(int ground) : ground_(ground) {}

    int ground() const { return ground_; }
    size_t size() const { return sets_.size(); }

    void add(IndexSet s) { sets_.insert(sorted_set(std::move(s))); }

    // Insert every subset of s.
    void add_with_subsets(const IndexSet& s) {
        IndexSet base = sorted_set(s);
        const size_t n = base.size();
        for (size_t mask = 0; mask < (size_t{1} << n); ++mask) {
            IndexSet sub;
            for (size_t i = 0; i < n; ++i)
                if (mask & (size_t{1} << i)) sub.push_back(base[i]);
            sets_.insert(std::move(sub));
        }
    }

    bool contains(const IndexSet& s) const { return sets_.count(sorted_set(s)) > 0; }

    bool subset_closed() const {
        for (const IndexSet& s : sets_)
            for (size_t i = 0; i < s.size(); ++i) {
                IndexSet sub = s;
                sub.erase(sub.begin() + static_cast<long>(i));
                if (!sets_.count(sub)) return false;
            }
        return true;
    }

    std::vector<IndexSet> maximal_sets() const {
        std::vector<IndexSet> out;
        for (const IndexSet& s : sets_) {
            bool maximal = true;
            for (const IndexSet& t : sets_)
                if (&s != &t && s != t && is_subset(s, t)) {
                    maximal = false;
                    break;
                }
            if (maximal) out.push_back(s);
        }
        return out;
    }

    const std::set<IndexSet>& sets() const { return sets_; }

    bool operator==(const StrataFamily& other) const {
        return ground_ == other.ground_ && sets_ == other.sets_;
    }
    bool operator!=(const StrataFamily& other) const { return !(*this == other); }

    // Strata present in exactly one of the two families, in sorted order.
    std::vector<IndexSet> symmetric_difference(const StrataFamily& other) const {
        std::vector<IndexSet> out;
        std::set_symmetric_difference(sets_.begin(), sets_.end(), other.sets_.begin(),
                                      other.sets_.end(), std::back_inserter(out));
        return out;
    }

private:
    int ground_;
    std::set<IndexSet> sets_;
};

}  // namespace stacky
