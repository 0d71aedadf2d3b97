#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "tsdd/vtree.hpp"

namespace tsdd {

// Explicit set-of-subsets representation of a Boolean function over a small
// variable universe. Members are bitmasks over the universe's variable list.
// Exists purely as ground truth for tests and --check-rewrites; anything
// past ~20 variables is out of its job description.
class CombinationSet {
  public:
    CombinationSet() = default;

    explicit CombinationSet(std::vector<int> universe) : universe_(std::move(universe)) {
        std::sort(universe_.begin(), universe_.end());
        universe_.erase(std::unique(universe_.begin(), universe_.end()), universe_.end());
        if (universe_.size() > 20)
            throw std::invalid_argument("oracle: universe too large");
    }

    static CombinationSet empty(std::vector<int> universe) {
        return CombinationSet(std::move(universe));
    }

    static CombinationSet just_empty_combination(std::vector<int> universe) {
        CombinationSet q(std::move(universe));
        q.members_.push_back(0);
        return q;
    }

    // U_X: all 2^|X| subsets.
    static CombinationSet universe_set(std::vector<int> universe) {
        CombinationSet q(std::move(universe));
        q.members_.resize(size_t{1} << q.universe_.size());
        for (size_t i = 0; i < q.members_.size(); ++i) q.members_[i] = static_cast<uint32_t>(i);
        return q;
    }

    const std::vector<int>& universe() const { return universe_; }
    size_t size() const { return members_.size(); }
    bool is_empty() const { return members_.empty(); }

    bool contains_mask(uint32_t m) const {
        return std::binary_search(members_.begin(), members_.end(), m);
    }

    bool contains(const std::vector<int>& combination) const {
        return contains_mask(mask_of(combination));
    }

    void insert(const std::vector<int>& combination) { insert_mask(mask_of(combination)); }

    void insert_mask(uint32_t m) {
        auto it = std::lower_bound(members_.begin(), members_.end(), m);
        if (it == members_.end() || *it != m) members_.insert(it, m);
    }

    const std::vector<uint32_t>& masks() const { return members_; }

    std::vector<std::vector<int>> combinations() const {
        std::vector<std::vector<int>> out;
        out.reserve(members_.size());
        for (uint32_t m : members_) {
            std::vector<int> c;
            for (size_t b = 0; b < universe_.size(); ++b)
                if (m & (1u << b)) c.push_back(universe_[b]);
            out.push_back(std::move(c));
        }
        return out;
    }

    CombinationSet intersect(const CombinationSet& other) const {
        require_same_universe(other, "intersection");
        CombinationSet out(universe_);
        std::set_intersection(members_.begin(), members_.end(), other.members_.begin(),
                              other.members_.end(), std::back_inserter(out.members_));
        return out;
    }

    CombinationSet unite(const CombinationSet& other) const {
        require_same_universe(other, "union");
        CombinationSet out(universe_);
        std::set_union(members_.begin(), members_.end(), other.members_.begin(),
                       other.members_.end(), std::back_inserter(out.members_));
        return out;
    }

    CombinationSet difference(const CombinationSet& other) const {
        require_same_universe(other, "difference");
        CombinationSet out(universe_);
        std::set_difference(members_.begin(), members_.end(), other.members_.begin(),
                            other.members_.end(), std::back_inserter(out.members_));
        return out;
    }

    // Q ⊔ Q': pairwise unions of combinations over disjoint universes.
    CombinationSet orthogonal_join(const CombinationSet& other) const {
        std::vector<int> joint = universe_;
        for (int v : other.universe_) {
            if (std::binary_search(universe_.begin(), universe_.end(), v))
                throw std::invalid_argument("oracle: orthogonal_join universes overlap");
            joint.push_back(v);
        }
        CombinationSet out(std::move(joint));
        for (uint32_t a : members_) {
            uint32_t am = remap(a, universe_, out.universe_);
            for (uint32_t b : other.members_)
                out.insert_mask(am | remap(b, other.universe_, out.universe_));
        }
        return out;
    }

    // Flip x's membership in every combination; an involution.
    CombinationSet change(int x) const {
        size_t b = index_of(x);
        CombinationSet out(universe_);
        for (uint32_t m : members_) out.insert_mask(m ^ (1u << b));
        return out;
    }

    CombinationSet complement() const {
        return universe_set(universe_).difference(*this);
    }

    // Reinterpret over a larger universe (same combinations; no padding).
    CombinationSet lift(const std::vector<int>& bigger) const {
        CombinationSet out((std::vector<int>(bigger)));
        for (int v : universe_)
            if (!out.in_universe(v))
                throw std::invalid_argument("oracle: lift target misses x" + std::to_string(v));
        for (uint32_t m : members_) out.insert_mask(remap(m, universe_, out.universe_));
        return out;
    }

    // Restrict to combinations that only use `smaller`, dropping the rest.
    CombinationSet restrict_to(const std::vector<int>& smaller) const {
        CombinationSet out((std::vector<int>(smaller)));
        uint32_t keep = 0;
        for (int v : out.universe_) keep |= 1u << index_of(v);
        for (uint32_t m : members_)
            if ((m & ~keep) == 0) out.insert_mask(remap(m, universe_, out.universe_));
        return out;
    }

    bool in_universe(int v) const {
        return std::binary_search(universe_.begin(), universe_.end(), v);
    }

    // x is paddable iff the set is closed under toggling x.
    bool paddable(int x) const {
        uint32_t bit = 1u << index_of(x);
        for (uint32_t m : members_)
            if (!contains_mask(m ^ bit)) return false;
        return true;
    }

    bool operator==(const CombinationSet& other) const {
        if (is_empty() && other.is_empty()) return true;
        return universe_ == other.universe_ && members_ == other.members_;
    }
    bool operator!=(const CombinationSet& other) const { return !(*this == other); }

    // Semantic equality regardless of declared universes: every extra
    // variable on either side must be absent from all members.
    bool same_combinations(const CombinationSet& other) const {
        std::vector<int> joint = universe_;
        joint.insert(joint.end(), other.universe_.begin(), other.universe_.end());
        std::sort(joint.begin(), joint.end());
        joint.erase(std::unique(joint.begin(), joint.end()), joint.end());
        return lift(joint).members_ == other.lift(joint).members_;
    }

    std::string to_string() const {
        std::string s = "{";
        bool first = true;
        for (const auto& c : combinations()) {
            if (!first) s += ", ";
            first = false;
            s += "{";
            for (size_t i = 0; i < c.size(); ++i) {
                if (i) s += ",";
                s += "x" + std::to_string(c[i]);
            }
            s += "}";
        }
        return s + "}";
    }

  private:
    std::vector<int> universe_;       // sorted, unique
    std::vector<uint32_t> members_;   // sorted, unique bitmasks

    size_t index_of(int v) const {
        auto it = std::lower_bound(universe_.begin(), universe_.end(), v);
        if (it == universe_.end() || *it != v)
            throw std::invalid_argument("oracle: x" + std::to_string(v) + " outside universe");
        return it - universe_.begin();
    }

    uint32_t mask_of(const std::vector<int>& combination) const {
        uint32_t m = 0;
        for (int v : combination) m |= 1u << index_of(v);
        return m;
    }

    static uint32_t remap(uint32_t m, const std::vector<int>& from,
                          const std::vector<int>& to) {
        uint32_t out = 0;
        for (size_t b = 0; b < from.size(); ++b) {
            if (!(m & (1u << b))) continue;
            auto it = std::lower_bound(to.begin(), to.end(), from[b]);
            out |= 1u << (it - to.begin());
        }
        return out;
    }

    void require_same_universe(const CombinationSet& other, const char* op) const {
        if (universe_ != other.universe_)
            throw std::invalid_argument(std::string("oracle: ") + op +
                                        " requires equal universes");
    }
};

enum class SetOp { Intersect, Union, Difference };

inline CombinationSet set_algebra(const CombinationSet& a, const CombinationSet& b, SetOp op) {
    switch (op) {
        case SetOp::Intersect: return a.intersect(b);
        case SetOp::Union: return a.unite(b);
        case SetOp::Difference: return a.difference(b);
    }
    throw std::logic_error("unreachable");
}

inline CombinationSet universe_of_vtree(const Vtree& t, VtreeId v) {
    return CombinationSet::universe_set(t.vars(v));
}

}  // namespace tsdd
