#pragma once

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "tsdd/tsdd.hpp"

namespace tsdd::testutil {

// All shape s-expressions over vars[from, from+n).
inline std::vector<std::string> shape_exprs(const std::vector<int>& vars, size_t from,
                                            size_t n) {
    std::vector<std::string> out;
    if (n == 1) {
        out.push_back("x" + std::to_string(vars[from]));
        return out;
    }
    for (size_t s = 1; s < n; ++s)
        for (const auto& l : shape_exprs(vars, from, s))
            for (const auto& r : shape_exprs(vars, from + s, n - s))
                out.push_back("(" + l + " " + r + ")");
    return out;
}

inline int emit_shape(const std::string& e, size_t& pos, std::vector<std::string>& lines,
                      int& next) {
    if (e[pos] == '(') {
        ++pos;  // '('
        int l = emit_shape(e, pos, lines, next);
        ++pos;  // ' '
        int r = emit_shape(e, pos, lines, next);
        ++pos;  // ')'
        lines.push_back("I " + std::to_string(next) + " " + std::to_string(l) + " " +
                        std::to_string(r));
        return next++;
    }
    size_t start = pos;
    while (pos < e.size() && e[pos] != ' ' && e[pos] != ')') ++pos;
    lines.push_back("L " + std::to_string(next) + " " + e.substr(start, pos - start));
    return next++;
}

inline Vtree vtree_from_expr(const std::string& e) {
    std::vector<std::string> lines;
    int next = 0;
    size_t pos = 0;
    emit_shape(e, pos, lines, next);
    std::string text = "vtree " + std::to_string(lines.size()) + "\n";
    for (const auto& l : lines) text += l + "\n";
    return Vtree::parse(text);
}

// All full binary tree shapes over the ordered variable list (Catalan many).
inline std::vector<Vtree> all_vtrees(const std::vector<int>& vars) {
    std::vector<Vtree> out;
    for (const auto& e : shape_exprs(vars, 0, vars.size())) out.push_back(vtree_from_expr(e));
    return out;
}

inline std::vector<int> iota_vars(int n) {
    std::vector<int> v(n);
    for (int i = 0; i < n; ++i) v[i] = i + 1;
    return v;
}

inline CombinationSet random_set(std::mt19937_64& rng, const std::vector<int>& universe) {
    CombinationSet q(universe);
    size_t total = size_t{1} << universe.size();
    for (uint32_t m = 0; m < total; ++m)
        if (rng() & 1) q.insert_mask(m);
    return q;
}

inline CombinationSet set_from_masks(const std::vector<int>& universe,
                                     std::initializer_list<uint32_t> masks) {
    CombinationSet q(universe);
    for (uint32_t m : masks) q.insert_mask(m);
    return q;
}

inline Part compile_set(Manager& m, const CombinationSet& q, VtreeId scope,
                        std::mt19937_64* shuffle_rng = nullptr) {
    std::vector<std::vector<int>> combs = q.combinations();
    if (shuffle_rng) std::shuffle(combs.begin(), combs.end(), *shuffle_rng);
    return m.compile_combinations(combs, scope);
}

inline bool sem_equal(const Manager& m, const Part& f, const CombinationSet& q) {
    return denotation(m, f).same_combinations(q);
}

inline const std::vector<DiagramKind> kAllKinds = {
    DiagramKind::SDD,    DiagramKind::ZSDD,   DiagramKind::NSTSDD,
    DiagramKind::NZTSDD, DiagramKind::ESTSDD, DiagramKind::EZTSDD};

}  // namespace tsdd::testutil
