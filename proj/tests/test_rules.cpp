#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "tsdd/tsdd.hpp"

using namespace tsdd;
using namespace tsdd::testutil;

namespace {

CombinationSet set_for_mask(const std::vector<int>& universe, uint32_t members) {
    CombinationSet q(universe);
    for (uint32_t m = 0; m < (1u << universe.size()); ++m)
        if (members & (1u << m)) q.insert_mask(m);
    return q;
}

}  // namespace

TEST_CASE("every rule firing is semantics preserving") {
    std::vector<int> vars = {1, 2, 3};
    size_t total_firings = 0;
    for (DiagramKind kind : kAllKinds) {
        for (const Vtree& t : all_vtrees(vars)) {
            Manager m(kind, t);
            RewriteCheckReport report;
            m.set_rewrite_hook(oracle_rewrite_checker(m, report));
            for (uint32_t mask = 0; mask < 256; ++mask) {
                CombinationSet q = set_for_mask(vars, mask);
                Part f = m.compile_combinations(q.combinations(), t.root());
                (void)f;
                m.clear_cache();  // re-derive rewrites for every set
            }
            INFO(kind_name(kind) << " vtree " << t.serialize());
            if (!report.violations.empty()) INFO("first: " << report.violations.front());
            REQUIRE(report.violations.empty());
            total_firings += report.firings;
        }
    }
    // the sweep must actually exercise the rewrite engine
    CHECK(total_firings > 10000);
}

TEST_CASE("trimmed diagrams are fixpoints of make_decomposition") {
    std::vector<int> vars = {1, 2, 3, 4};
    Vtree t = Vtree::balanced(vars);
    std::mt19937_64 rng(17);
    for (DiagramKind kind : kAllKinds) {
        Manager m(kind, t);
        for (int trial = 0; trial < 60; ++trial) {
            CombinationSet q = random_set(rng, vars);
            Part f = compile_set(m, q, t.root());
            // rebuild every reachable decomposition from its own elements
            std::vector<Part> work{f};
            std::unordered_set<uint64_t> seen;
            while (!work.empty()) {
                Part p = work.back();
                work.pop_back();
                if (!seen.insert((uint64_t(p.pv) << 32) | p.node).second) continue;
                const Node& n = m.node(p.node);
                if (n.terminal) continue;
                Part rebuilt = m.make_decomposition(p.pv, n.sv, n.elements);
                INFO(kind_name(kind) << " q=" << q.to_string());
                if (tagged(kind) && std_semantics(kind)) {
                    REQUIRE(rebuilt == p);
                } else {
                    REQUIRE(rebuilt.node == p.node);
                }
                for (const Element& e : n.elements) {
                    work.push_back(e.prime);
                    work.push_back(e.sub);
                }
            }
        }
    }
}

TEST_CASE("standard tagged trimming rule examples") {
    Vtree t = Vtree::balanced({1, 2, 3, 4});
    Manager m(DiagramKind::NSTSDD, t);
    VtreeId root = t.root(), tl = t.left(root), tr = t.right(root);
    Part eps = m.make_terminal(TerminalKind::Eps, kZeroLeaf, kZeroLeaf);
    Part zero = m.empty_diagram();
    Part p1 = m.make_terminal(TerminalKind::NegEps, tl, t.leaf_of(2));
    Part comp = m.complement(p1, tl);

    // (a): a {()} sub next to an empty sub unwraps to the prime
    CHECK(m.make_decomposition(root, root, {{p1, eps}, {comp, zero}}) == p1);
    // (a) mirror: a {()} prime unwraps to its sub
    Part s1 = m.make_terminal(TerminalKind::NegEps, tr, t.leaf_of(4));
    Part nepsl = m.complement(eps, tl);
    CHECK(m.make_decomposition(root, root, {{eps, s1}, {nepsl, zero}}) == s1);
    // (b): all-{()} with an empty partner at a child secondary gives the
    // sibling universe
    CHECK(m.make_decomposition(root, tl, {{eps, eps}, {nepsl, zero}}) ==
          m.universe_diagram(tr));
    // (c): a universe prime with an empty sub collapses to the empty diagram
    CHECK(m.make_decomposition(root, root, {{m.universe_diagram(tl), zero}}) == zero);
    // (d): a universe sub lifts the prime's node to the outer primary
    Part lifted =
        m.make_decomposition(root, root, {{p1, m.universe_diagram(tr)}, {comp, zero}});
    CHECK(lifted == m.make_terminal(TerminalKind::NegEps, root, t.leaf_of(2)));
    // compression: equal subs merge into a single element
    Part nx3 = m.make_terminal(TerminalKind::NegEps, t.leaf_of(3), t.leaf_of(3));
    Part merged = m.make_decomposition(
        tr, tr, {{nx3, eps}, {m.complement(nx3, t.leaf_of(3)), eps}});
    CHECK(merged == m.universe_diagram(t.leaf_of(3)));
}

TEST_CASE("normalization is the inverse of trimming") {
    std::vector<int> vars = {1, 2, 3, 4};
    Vtree t = Vtree::balanced(vars);
    std::mt19937_64 rng(37);
    for (DiagramKind kind : {DiagramKind::NSTSDD, DiagramKind::ESTSDD}) {
        Manager m(kind, t);
        for (int trial = 0; trial < 120; ++trial) {
            CombinationSet q = random_set(rng, {1, 2});
            if (q.is_empty()) continue;
            Part f = compile_set(m, q, t.left(t.root()));
            // lift the primary vtree: semantics unchanged, and the
            // canonicalizer folds the wrapper right back
            if (t.is_proper_subtree(f.pv, t.root())) {
                auto elems = m.normalize1_elements(f, t.root());
                CHECK(assemble_semantics(m, t.root(), t.root(), elems)
                          .same_combinations(std_ext_sem(m, f)));
                CHECK(m.make_decomposition(t.root(), t.root(), elems) == f);
            }
            // raise the secondary vtree: same invariants
            VtreeId sv = m.node(f.node).sv;
            if (t.is_proper_subtree(sv, f.pv) && t.is_internal(f.pv)) {
                auto elems = m.normalize2_elements(f, f.pv);
                CHECK(assemble_semantics(m, f.pv, f.pv, elems)
                          .same_combinations(std_ext_sem(m, f)));
                CHECK(m.make_decomposition(f.pv, f.pv, elems) == f);
            }
        }
    }
}

TEST_CASE("disabling a rule is detected by the canonicity sweep") {
    std::vector<int> vars = {1, 2, 3};
    Vtree t = Vtree::balanced(vars);
    Manager m(DiagramKind::NSTSDD, t);
    m.disable_rule("st:a");
    bool broke = false;
    std::mt19937_64 rng(5);
    for (uint32_t mask = 0; mask < 256 && !broke; ++mask) {
        CombinationSet q = set_for_mask(vars, mask);
        Part a = compile_set(m, q, t.root());
        for (int i = 0; i < 4; ++i) {
            Part b = compile_set(m, q, t.root(), &rng);
            if (!(a == b)) broke = true;
        }
        if (!std_ext_sem(m, a).same_combinations(q)) broke = true;
    }
    CHECK(broke);
}
