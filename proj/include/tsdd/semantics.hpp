#pragma once

#include <string>
#include <vector>

#include "tsdd/core.hpp"
#include "tsdd/oracle.hpp"

namespace tsdd {

// Exact evaluators used as ground truth. All are exponential in the number
// of variables and exist only for verification at small sizes.

// Standard semantics of (pv, node) per the recursive definition: the main
// combination set joined with the universe over vars(pv) \ vars(sv).
// Declared over vars(pv).
inline CombinationSet std_ext_sem(const Manager& m, const Part& f) {
    const Vtree& t = m.vtree();
    const Node& n = m.node(f.node);
    std::vector<int> scope = t.vars(f.pv);
    std::vector<int> band;  // vars(pv) \ vars(sv)
    {
        std::vector<int> inner = t.vars(n.sv);
        for (int v : scope)
            if (std::find(inner.begin(), inner.end(), v) == inner.end()) band.push_back(v);
    }
    CombinationSet pad = CombinationSet::universe_set(band);
    if (n.terminal) {
        switch (n.term) {
            case TerminalKind::One: return CombinationSet::universe_set(scope);
            case TerminalKind::Zero: return CombinationSet::empty(scope);
            case TerminalKind::Eps: return pad.lift(scope);
            case TerminalKind::NegEps: {
                CombinationSet pos = CombinationSet::universe_set(t.vars(n.sv))
                                         .difference(CombinationSet::just_empty_combination(
                                             t.vars(n.sv)));
                return pad.orthogonal_join(pos).lift(scope);
            }
        }
    }
    CombinationSet inner_union = CombinationSet::empty(t.vars(n.sv));
    for (const Element& e : n.elements) {
        CombinationSet pe = std_ext_sem(m, e.prime);
        CombinationSet se = std_ext_sem(m, e.sub);
        inner_union = inner_union.unite(pe.orthogonal_join(se).lift(t.vars(n.sv)));
    }
    return pad.orthogonal_join(inner_union).lift(scope);
}

// Zero-suppressed semantics of (pv, node): per-element universes over
// vars(sv) minus the primes' and subs' primary vtrees. Declared over
// vars(pv); members never mention the pv-to-sv band.
inline CombinationSet zero_ext_sem(const Manager& m, const Part& f) {
    const Vtree& t = m.vtree();
    const Node& n = m.node(f.node);
    std::vector<int> scope = t.vars(f.pv);
    if (n.terminal) {
        switch (n.term) {
            case TerminalKind::One:
                return CombinationSet::universe_set(t.vars(n.sv)).lift(scope);
            case TerminalKind::Zero: return CombinationSet::empty(scope);
            case TerminalKind::Eps:
                return CombinationSet::just_empty_combination(scope);
            case TerminalKind::NegEps: {
                std::vector<int> sv_vars = t.vars(n.sv);
                return CombinationSet::universe_set(sv_vars)
                    .difference(CombinationSet::just_empty_combination(sv_vars))
                    .lift(scope);
            }
        }
    }
    CombinationSet out = CombinationSet::empty(t.vars(n.sv));
    for (const Element& e : n.elements) {
        std::vector<int> covered = t.vars(e.prime.pv);
        for (int v : t.vars(e.sub.pv)) covered.push_back(v);
        std::vector<int> band;
        for (int v : t.vars(n.sv))
            if (std::find(covered.begin(), covered.end(), v) == covered.end())
                band.push_back(v);
        CombinationSet pe = zero_ext_sem(m, e.prime);
        CombinationSet se = zero_ext_sem(m, e.sub);
        CombinationSet elem =
            CombinationSet::universe_set(band).orthogonal_join(pe).orthogonal_join(se);
        out = out.unite(elem.lift(t.vars(n.sv)));
    }
    return out.lift(scope);
}

// Context-style standard semantics (the non-extended recursion): children
// are evaluated at the decomposition's halves, ignoring stored primaries.
// Independent route for cross-checking std_ext_sem on untagged diagrams.
inline CombinationSet std_sem(const Manager& m, VtreeId ctx, NodeId id) {
    const Vtree& t = m.vtree();
    const Node& n = m.node(id);
    std::vector<int> scope = t.vars(ctx);
    std::vector<int> band;
    {
        std::vector<int> inner = t.vars(n.sv);
        for (int v : scope)
            if (std::find(inner.begin(), inner.end(), v) == inner.end()) band.push_back(v);
    }
    CombinationSet pad = CombinationSet::universe_set(band);
    if (n.terminal) {
        switch (n.term) {
            case TerminalKind::One: return CombinationSet::universe_set(scope);
            case TerminalKind::Zero: return CombinationSet::empty(scope);
            case TerminalKind::Eps: return pad.lift(scope);
            case TerminalKind::NegEps: {
                std::vector<int> sv_vars = t.vars(n.sv);
                CombinationSet pos =
                    CombinationSet::universe_set(sv_vars)
                        .difference(CombinationSet::just_empty_combination(sv_vars));
                return pad.orthogonal_join(pos).lift(scope);
            }
        }
    }
    CombinationSet inner_union = CombinationSet::empty(t.vars(n.sv));
    for (const Element& e : n.elements) {
        CombinationSet pe = std_sem(m, t.left(n.sv), e.prime.node);
        CombinationSet se = std_sem(m, t.right(n.sv), e.sub.node);
        inner_union = inner_union.unite(pe.orthogonal_join(se));
    }
    return pad.orthogonal_join(inner_union).lift(scope);
}

// Zero-suppressed context semantics: the main combination set only.
inline CombinationSet zero_sem(const Manager& m, NodeId id) {
    const Vtree& t = m.vtree();
    const Node& n = m.node(id);
    std::vector<int> sv_vars = t.vars(n.sv);
    if (n.terminal) {
        switch (n.term) {
            case TerminalKind::One: return CombinationSet::universe_set(sv_vars);
            case TerminalKind::Zero: return CombinationSet::empty(sv_vars);
            case TerminalKind::Eps: return CombinationSet::just_empty_combination(sv_vars);
            case TerminalKind::NegEps:
                return CombinationSet::universe_set(sv_vars).difference(
                    CombinationSet::just_empty_combination(sv_vars));
        }
    }
    CombinationSet out = CombinationSet::empty(sv_vars);
    for (const Element& e : n.elements) {
        CombinationSet pe = zero_sem(m, e.prime.node);
        CombinationSet se = zero_sem(m, e.sub.node);
        out = out.unite(pe.orthogonal_join(se).lift(sv_vars));
    }
    return out;
}

// Manager-level denotation of a diagram handle.
inline CombinationSet denotation(const Manager& m, const Part& f) {
    return std_semantics(m.kind()) ? std_ext_sem(m, f) : zero_ext_sem(m, f);
}

// Lifted prime set as seen by a zero-suppressed decomposition: the element
// padding over the slot's variables outside the part's primary vtree.
inline CombinationSet zero_lifted(const Manager& m, const Part& f, VtreeId slot) {
    const Vtree& t = m.vtree();
    std::vector<int> band;
    std::vector<int> inner = t.vars(f.pv);
    for (int v : t.vars(slot))
        if (std::find(inner.begin(), inner.end(), v) == inner.end()) band.push_back(v);
    return CombinationSet::universe_set(band)
        .orthogonal_join(zero_ext_sem(m, f))
        .lift(t.vars(slot));
}

// Exact denotation of a would-be decomposition (pv, sv, elements) under the
// manager's semantics, evaluated without interning anything.
inline CombinationSet assemble_semantics(const Manager& m, VtreeId pv, VtreeId sv,
                                         const std::vector<Element>& elems) {
    const Vtree& t = m.vtree();
    std::vector<int> sv_vars = t.vars(sv);
    CombinationSet inner = CombinationSet::empty(sv_vars);
    if (std_semantics(m.kind())) {
        for (const Element& e : elems) {
            if (e.prime.node == m.zero_node()) continue;
            inner = inner.unite(std_ext_sem(m, e.prime)
                                    .orthogonal_join(std_ext_sem(m, e.sub))
                                    .lift(sv_vars));
        }
        std::vector<int> band;
        for (int v : t.vars(pv))
            if (std::find(sv_vars.begin(), sv_vars.end(), v) == sv_vars.end())
                band.push_back(v);
        return CombinationSet::universe_set(band).orthogonal_join(inner).lift(t.vars(pv));
    }
    for (const Element& e : elems) {
        if (e.prime.node == m.zero_node()) continue;
        std::vector<int> covered = t.vars(e.prime.pv);
        for (int v : t.vars(e.sub.pv)) covered.push_back(v);
        std::vector<int> band;
        for (int v : sv_vars)
            if (std::find(covered.begin(), covered.end(), v) == covered.end())
                band.push_back(v);
        inner = inner.unite(CombinationSet::universe_set(band)
                                .orthogonal_join(zero_ext_sem(m, e.prime))
                                .orthogonal_join(zero_ext_sem(m, e.sub))
                                .lift(sv_vars));
    }
    return inner;
}

struct RewriteCheckReport {
    size_t firings = 0;
    std::vector<std::string> violations;
    std::vector<std::string> trace;
    bool keep_trace = false;
};

// A hook verifying every individual rule firing against the exact
// evaluators. Exponential in the variable count; meant for small managers.
inline Manager::RewriteHook oracle_rewrite_checker(const Manager& m,
                                                   RewriteCheckReport& report) {
    return [&m, &report](const char* rule, VtreeId pv, VtreeId sv,
                         const std::vector<Element>& before, const Part& after) {
        report.firings++;
        const Vtree& t = m.vtree();
        const bool zfam = !std_semantics(m.kind());
        bool ok = true;
        std::string detail;
        if (std::string(rule).find("compress") != std::string::npos) {
            // the merged prime denotes the union of the group's primes and
            // the grouped subs agree semantically
            VtreeId slot = t.left(sv);
            auto prime_sem = [&](const Part& p) {
                switch (m.kind()) {
                    case DiagramKind::SDD: return std_sem(m, slot, p.node);
                    case DiagramKind::ZSDD: return zero_sem(m, p.node);
                    case DiagramKind::NSTSDD:
                    case DiagramKind::ESTSDD: return std_ext_sem(m, p);
                    default: return zero_lifted(m, p, slot);
                }
            };
            CombinationSet want = CombinationSet::empty(t.vars(slot));
            for (const Element& e : before)
                want = want.unite(prime_sem(e.prime).lift(t.vars(slot)));
            ok = prime_sem(after).same_combinations(want);
            for (size_t i = 1; ok && i < before.size(); ++i) {
                CombinationSet s0 = zfam ? zero_ext_sem(m, before[0].sub)
                                         : std_ext_sem(m, before[0].sub);
                CombinationSet si = zfam ? zero_ext_sem(m, before[i].sub)
                                         : std_ext_sem(m, before[i].sub);
                ok = s0.same_combinations(si);
            }
        } else {
            CombinationSet before_sem = assemble_semantics(m, pv, sv, before);
            CombinationSet after_sem =
                zfam ? zero_ext_sem(m, after)
                     : (tagged(m.kind()) ? std_ext_sem(m, after)
                                         : std_sem(m, pv, after.node));
            ok = before_sem.same_combinations(after_sem);
            if (!ok)
                detail = " before=" + before_sem.to_string() +
                         " after=" + after_sem.to_string();
        }
        if (!ok)
            report.violations.push_back(std::string("rule=") + rule + detail);
        if (report.keep_trace) {
            std::string line = std::string("rule=") + rule + " before=";
            for (const Element& e : before)
                line += "(" + std::to_string(e.prime.node) + "," +
                        std::to_string(e.sub.node) + ")";
            line += " after=" + std::to_string(after.node);
            report.trace.push_back(line);
        }
    };
}

// Structural + partition validation against the kind's conditions, with the
// partition checks done semantically. Violations are collected, not thrown.
inline std::vector<std::string> validate(const Manager& m, const Part& root) {
    const Vtree& t = m.vtree();
    std::vector<std::string> out;
    std::vector<Part> work{root};
    std::unordered_set<uint64_t> seen;
    auto key = [](const Part& p) { return (uint64_t(p.pv) << 32) | p.node; };
    bool zfam = !std_semantics(m.kind());
    while (!work.empty()) {
        Part f = work.back();
        work.pop_back();
        if (!seen.insert(key(f)).second) continue;
        const Node& n = m.node(f.node);
        if (!t.is_subtree(n.sv, f.pv)) {
            out.push_back("secondary vtree escapes primary at node " +
                          std::to_string(f.node));
            continue;
        }
        if (n.terminal) continue;
        if (!t.is_internal(n.sv)) {
            out.push_back("decomposition on non-internal vtree at node " +
                          std::to_string(f.node));
            continue;
        }
        VtreeId xl = t.left(n.sv), xr = t.right(n.sv);
        std::vector<int> xvars = t.vars(xl);
        std::vector<CombinationSet> primes;
        for (const Element& e : n.elements) {
            bool in_slots = true;
            if (!t.is_subtree(e.prime.pv, xl) ||
                !t.is_subtree(m.node(e.prime.node).sv, xl)) {
                out.push_back("prime outside left slot at node " + std::to_string(f.node));
                in_slots = false;
            }
            if (!t.is_subtree(e.sub.pv, xr) || !t.is_subtree(m.node(e.sub.node).sv, xr)) {
                out.push_back("sub outside right slot at node " + std::to_string(f.node));
                in_slots = false;
            }
            if (!in_slots) continue;  // structural break; semantic checks skipped
            CombinationSet p = zfam ? zero_lifted(m, e.prime, xl)
                                    : std_ext_sem(m, e.prime).lift(xvars);
            if (p.is_empty())
                out.push_back("empty prime at node " + std::to_string(f.node));
            primes.push_back(std::move(p));
            work.push_back(e.prime);
            work.push_back(e.sub);
        }
        CombinationSet cover = CombinationSet::empty(xvars);
        for (size_t i = 0; i < primes.size(); ++i) {
            for (size_t j = i + 1; j < primes.size(); ++j)
                if (!primes[i].intersect(primes[j]).is_empty())
                    out.push_back("overlapping primes at node " + std::to_string(f.node));
            cover = cover.unite(primes[i]);
        }
        // Exhaustiveness: required except for tagged zero-suppressed
        // diagrams, where uncovered prime space maps to the empty set
        // implicitly (their empty subs are never materialized).
        bool need_full = !(zfam && tagged(m.kind()));
        if (need_full && cover != CombinationSet::universe_set(xvars))
            out.push_back("primes not exhaustive at node " + std::to_string(f.node));
        if (zfam && tagged(m.kind())) {
            for (const Element& e : n.elements)
                if (m.node(e.sub.node).terminal &&
                    m.node(e.sub.node).term == TerminalKind::Zero)
                    out.push_back("empty sub kept in zero-suppressed decomposition at node " +
                                  std::to_string(f.node));
        }
    }
    return out;
}

}  // namespace tsdd
