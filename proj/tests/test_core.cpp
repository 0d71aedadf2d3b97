#include <catch2/catch_amalgamated.hpp>

#include <atomic>
#include <thread>

#include "helpers.hpp"
#include "tsdd/tsdd.hpp"

using namespace tsdd;
using namespace tsdd::testutil;

namespace {

// The running-example set over ((x1 x2)(x3 x4)).
CombinationSet example_set() {
    CombinationSet q(std::vector<int>{1, 2, 3, 4});
    q.insert({1, 2, 3, 4});
    q.insert({2, 3, 4});
    q.insert({1, 3, 4});
    q.insert({1, 4});
    return q;
}

// Hand-built canonical standard tagged diagram of the running example.
Part build_example_st(Manager& m) {
    const Vtree& t = m.vtree();
    VtreeId root = t.root(), tl = t.left(root), tr = t.right(root);
    VtreeId x1 = t.leaf_of(1), x2 = t.leaf_of(2), x3 = t.leaf_of(3), x4 = t.leaf_of(4);

    Part p1 = m.make_terminal(TerminalKind::NegEps, tl, x2);
    Part p2 = m.make_terminal(TerminalKind::NegEps, x1, x1);
    Part s2 = m.make_terminal(TerminalKind::NegEps, tr, x4);
    Part p3 = m.make_terminal(TerminalKind::Eps, kZeroLeaf, kZeroLeaf);
    Part s3 = m.make_terminal(TerminalKind::Zero, kZeroLeaf, kZeroLeaf);
    Part nx3 = m.make_terminal(TerminalKind::NegEps, x3, x3);
    Part nx4 = m.make_terminal(TerminalKind::NegEps, x4, x4);
    Part s1 = m.make_decomposition(tr, tr, {{nx3, nx4}, {p3, s3}});
    return m.make_decomposition(root, root, {{p1, s1}, {p2, s2}, {p3, s3}});
}

}  // namespace

TEST_CASE("terminal interning and constraints") {
    Vtree t = Vtree::balanced({1, 2, 3, 4});
    Manager m(DiagramKind::NSTSDD, t);

    Part zero = m.make_terminal(TerminalKind::Zero, kZeroLeaf, kZeroLeaf);
    Part eps1 = m.make_terminal(TerminalKind::Eps, kZeroLeaf, kZeroLeaf);
    Part eps2 = m.make_terminal(TerminalKind::Eps, kZeroLeaf, kZeroLeaf);
    CHECK(eps1 == eps2);
    CHECK(zero != eps1);

    // 1 is never admitted by a standard tagged manager
    CHECK_THROWS_AS(m.make_terminal(TerminalKind::One, t.root(), t.root()), ManagerError);
    // 0 requires both vtrees zero
    CHECK_THROWS_AS(m.make_terminal(TerminalKind::Zero, t.root(), kZeroLeaf), ManagerError);
    // -eps requires a leaf secondary
    CHECK_THROWS_AS(m.make_terminal(TerminalKind::NegEps, t.root(), t.root()), ManagerError);
    CHECK_NOTHROW(m.make_terminal(TerminalKind::NegEps, t.root(), t.leaf_of(2)));

    Manager zt(DiagramKind::NZTSDD, t);
    CHECK_NOTHROW(zt.make_terminal(TerminalKind::One, t.root(), kZeroLeaf));
    CHECK_THROWS_AS(zt.make_terminal(TerminalKind::Eps, kZeroLeaf, kZeroLeaf), ManagerError);
}

TEST_CASE("running example: sizes, bytes, counts") {
    Vtree t = Vtree::balanced({1, 2, 3, 4});
    CombinationSet q = example_set();

    Manager nst(DiagramKind::NSTSDD, t);
    Part f = build_example_st(nst);
    CHECK(nst.size(f) == 5);
    CHECK(nst.node_count(f) == 9);
    CHECK(nst.memory_bytes(f) == 449);
    CHECK(nst.count_models(f) == 4);
    CHECK(std_ext_sem(nst, f).same_combinations(q));
    CHECK(validate(nst, f).empty());

    Manager est(DiagramKind::ESTSDD, t);
    Part g = build_example_st(est);
    CHECK(est.size(g) == 5);
    CHECK(est.node_count(g) == 8);
    CHECK(est.memory_bytes(g) == 432);
    CHECK(est.count_models(g) == 4);

    // a bare terminal: size 0, one 41-byte node under the node-based model
    Part eps = nst.make_terminal(TerminalKind::Eps, kZeroLeaf, kZeroLeaf);
    CHECK(nst.size(eps) == 0);
    CHECK(nst.memory_bytes(eps) == 41);
}

TEST_CASE("make_decomposition is order independent") {
    Vtree t = Vtree::balanced({1, 2, 3, 4});
    Manager m(DiagramKind::NSTSDD, t);
    VtreeId root = t.root(), tr = t.right(root);
    Part nx3 = m.make_terminal(TerminalKind::NegEps, t.leaf_of(3), t.leaf_of(3));
    Part nx4 = m.make_terminal(TerminalKind::NegEps, t.leaf_of(4), t.leaf_of(4));
    Part p3 = m.make_terminal(TerminalKind::Eps, kZeroLeaf, kZeroLeaf);
    Part s3 = m.make_terminal(TerminalKind::Zero, kZeroLeaf, kZeroLeaf);
    Part a = m.make_decomposition(tr, tr, {{nx3, nx4}, {p3, s3}});
    Part b = m.make_decomposition(tr, tr, {{p3, s3}, {nx3, nx4}});
    CHECK(a == b);
}

TEST_CASE("ref deref gc") {
    Vtree t = Vtree::balanced({1, 2, 3, 4});
    Manager m(DiagramKind::NSTSDD, t);
    size_t base = m.live_node_count();
    Part f = build_example_st(m);
    m.ref(f);
    size_t built = m.live_node_count();
    CHECK(built > base);

    // ref/deref leaves counts unchanged
    m.ref(f);
    m.deref(f);
    CHECK(m.live_node_count() == built);

    // dropping the root reclaims every decomposition node
    m.deref(f);
    size_t reclaimed = m.gc();
    CHECK(reclaimed > 0);
    CHECK(m.live_node_count() == base + 4);  // the four -eps terminals stay interned

    Manager m2(DiagramKind::NSTSDD, t);
    Part g = build_example_st(m2);
    CHECK_THROWS_AS((m2.deref(g), m2.deref(g)), ManagerError);
}

TEST_CASE("shared sub survives gc while referenced") {
    Vtree t = Vtree::balanced({1, 2, 3, 4});
    Manager m(DiagramKind::NSTSDD, t);
    VtreeId tr = t.right(t.root());
    Part nx3 = m.make_terminal(TerminalKind::NegEps, t.leaf_of(3), t.leaf_of(3));
    Part nx4 = m.make_terminal(TerminalKind::NegEps, t.leaf_of(4), t.leaf_of(4));
    Part p3 = m.make_terminal(TerminalKind::Eps, kZeroLeaf, kZeroLeaf);
    Part s3 = m.make_terminal(TerminalKind::Zero, kZeroLeaf, kZeroLeaf);
    Part shared = m.make_decomposition(tr, tr, {{nx3, nx4}, {p3, s3}});
    m.ref(shared);
    Part f = build_example_st(m);  // contains the same node as s1
    (void)f;
    m.gc();  // the root had no external reference
    // the shared node is still alive
    CHECK_FALSE(m.node(shared.node).dead);
    m.deref(shared);
    m.gc();
    CHECK(m.node(shared.node).dead);
}

TEST_CASE("stats invariant under gc of unrelated roots") {
    Vtree t = Vtree::balanced({1, 2, 3, 4});
    Manager m(DiagramKind::NSTSDD, t);
    Part f = build_example_st(m);
    m.ref(f);
    Part junk = m.make_decomposition(
        t.right(t.root()), t.right(t.root()),
        {{m.make_terminal(TerminalKind::NegEps, t.leaf_of(3), t.leaf_of(3)),
          m.make_terminal(TerminalKind::Eps, kZeroLeaf, kZeroLeaf)},
         {m.make_terminal(TerminalKind::Eps, kZeroLeaf, kZeroLeaf),
          m.make_terminal(TerminalKind::Zero, kZeroLeaf, kZeroLeaf)}});
    (void)junk;
    uint64_t size_before = m.size(f), bytes_before = m.memory_bytes(f);
    m.gc();
    CHECK(m.size(f) == size_before);
    CHECK(m.memory_bytes(f) == bytes_before);
}

TEST_CASE("semantics evaluator tables") {
    Vtree t = Vtree::balanced({1, 2, 3, 4});
    std::vector<int> all = {1, 2, 3, 4};

    Manager st(DiagramKind::NSTSDD, t);
    VtreeId root = t.root(), x2 = t.leaf_of(2);
    // eps with a zero secondary denotes the universe over the primary
    CHECK(std_ext_sem(st, Part{root, st.eps_node()}) ==
          CombinationSet::universe_set(all));
    // the empty diagram denotes the empty set
    CHECK(std_ext_sem(st, st.empty_diagram()).is_empty());
    // -eps: padding joined with the nonempty combinations of its leaf
    CombinationSet with_x2 = std_ext_sem(st, st.make_terminal(TerminalKind::NegEps, root, x2));
    CHECK(with_x2.size() == 8);
    CHECK(with_x2.contains({2}));
    CHECK_FALSE(with_x2.contains({1}));
    // {()} under the zero-suppressed reading
    Manager zt(DiagramKind::NZTSDD, t);
    CHECK(zero_ext_sem(zt, Part{root, zt.one_node()})
              .same_combinations(CombinationSet::just_empty_combination({})));
    CHECK(zero_ext_sem(zt, zt.make_terminal(TerminalKind::NegEps, root, x2))
              .same_combinations([] {
                  CombinationSet s(std::vector<int>{2});
                  s.insert({2});
                  return s;
              }()));

    // context-style evaluators on untagged nodes
    Manager sdd(DiagramKind::SDD, t);
    CHECK(std_sem(sdd, root, sdd.one_node()) == CombinationSet::universe_set(all));
    CombinationSet no_x2 = std_sem(sdd, root, sdd.make_terminal(TerminalKind::Eps, x2, x2).node);
    CHECK(no_x2.size() == 8);
    CHECK_FALSE(no_x2.contains({2}));

    Manager zsdd(DiagramKind::ZSDD, t);
    CHECK(zero_sem(zsdd, zsdd.make_terminal(TerminalKind::One, x2, x2).node)
              .same_combinations(CombinationSet::universe_set({2})));
    CHECK(zero_sem(zsdd, zsdd.eps_node()) == CombinationSet::just_empty_combination({}));
}

TEST_CASE("validate reports partition violations") {
    Vtree t = Vtree::balanced({1, 2, 3, 4});
    Manager m(DiagramKind::NSTSDD, t);
    CHECK(validate(m, m.empty_diagram()).empty());

    // overlapping primes: the universe prime overlaps the x1 literal
    VtreeId root = t.root(), tl = t.left(root);
    Part up = m.universe_diagram(tl);
    Part lit = Part{t.leaf_of(1), m.intern_terminal(t.leaf_of(1), TerminalKind::NegEps)};
    Part s = m.make_terminal(TerminalKind::Eps, kZeroLeaf, kZeroLeaf);
    Part s2 = m.make_terminal(TerminalKind::NegEps, t.right(root), t.leaf_of(4));
    NodeId raw = m.intern_decomposition(root, {{up, s}, {lit, s2}});
    auto viols = validate(m, Part{root, raw});
    REQUIRE_FALSE(viols.empty());
    bool found = false;
    for (const auto& v : viols)
        if (v.find("overlapping") != std::string::npos) found = true;
    CHECK(found);

    // a prime escaping its slot
    Part wrong = m.make_terminal(TerminalKind::NegEps, t.right(root), t.leaf_of(3));
    NodeId raw2 = m.intern_decomposition(root, {{wrong, s}});
    auto viols2 = validate(m, Part{root, raw2});
    bool slot = false;
    for (const auto& v : viols2)
        if (v.find("outside left slot") != std::string::npos) slot = true;
    CHECK(slot);
}

TEST_CASE("gc between operations leaves results intact") {
    Vtree t = Vtree::balanced({1, 2, 3, 4});
    Manager m(DiagramKind::ESTSDD, t);
    std::mt19937_64 rng(53);
    CombinationSet qa = random_set(rng, {1, 2, 3, 4});
    CombinationSet qb = random_set(rng, {1, 2, 3, 4});
    Part fa = compile_set(m, qa, t.root());
    Part fb = compile_set(m, qb, t.root());
    m.ref(fa);
    m.ref(fb);
    Part before = m.apply(fa, fb, SetOp::Union);
    m.ref(before);
    m.gc();  // clears the cache, sweeps scratch nodes
    CHECK_FALSE(m.node(before.node).dead);
    Part after = m.apply(fa, fb, SetOp::Union);
    CHECK(after == before);
    CHECK(std_ext_sem(m, after).same_combinations(qa.unite(qb)));
}

TEST_CASE("independent managers run concurrently") {
    std::vector<std::thread> workers;
    std::atomic<int> bad{0};
    for (int w = 0; w < 4; ++w) {
        workers.emplace_back([w, &bad] {
            Vtree t = Vtree::balanced({1, 2, 3, 4});
            DiagramKind kind = kAllKinds[w % kAllKinds.size()];
            Manager m(kind, t);
            std::mt19937_64 rng(1000 + w);
            for (int trial = 0; trial < 50; ++trial) {
                CombinationSet q = random_set(rng, {1, 2, 3, 4});
                Part f = compile_set(m, q, t.root());
                if (!denotation(m, f).same_combinations(q)) ++bad;
            }
        });
    }
    for (auto& th : workers) th.join();
    CHECK(bad == 0);
}

TEST_CASE("dot export mentions every reachable node") {
    Vtree t = Vtree::balanced({1, 2, 3, 4});
    Manager m(DiagramKind::NSTSDD, t);
    Part f = build_example_st(m);
    std::ostringstream os;
    m.export_dot(f, os);
    std::string dot = os.str();
    CHECK(dot.find("digraph") != std::string::npos);
    CHECK(dot.find("shape=circle") != std::string::npos);
    CHECK(dot.find("shape=record") != std::string::npos);
}
