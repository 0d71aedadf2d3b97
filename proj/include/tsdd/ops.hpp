#pragma once

// Apply, OrthogonalJoin and Change for the four engines, plus constructors
// (universe, literal, single combination) and complement. Everything routes
// through the canonicalizers in rules.hpp, so results are always canonical.

#include <algorithm>

#include "tsdd/rules.hpp"

namespace tsdd {

// ---------------------------------------------------------------------------
// shared helpers
// ---------------------------------------------------------------------------

// Both operands live at or below one leaf: four possible sets over {x},
// computed directly. Encoding: bit0 = contains the empty combination,
// bit1 = contains {x}.
inline Part Manager::terminal_pair_apply(NodeId a, NodeId b, SetOp op) {
    VtreeId leaf = vtree_.lca(node(a).sv, node(b).sv);
    auto enc = [&](NodeId n) -> unsigned {
        const Node& t = node(n);
        if (n == zero_) return 0u;
        switch (kind_) {
            case DiagramKind::SDD:
                if (t.term == TerminalKind::One) return 3u;
                return t.term == TerminalKind::Eps ? 1u : 2u;
            case DiagramKind::ZSDD:
                if (t.term == TerminalKind::Eps) return 1u;
                return t.term == TerminalKind::One ? 3u : 2u;
            default:  // zero-suppressed tagged
                return t.term == TerminalKind::One ? 1u : 2u;
        }
    };
    unsigned ea = enc(a), eb = enc(b), r = 0;
    switch (op) {
        case SetOp::Intersect: r = ea & eb; break;
        case SetOp::Union: r = ea | eb; break;
        case SetOp::Difference: r = ea & ~eb; break;
    }
    switch (kind_) {
        case DiagramKind::SDD:
            switch (r) {
                case 0: return zero_part();
                case 1: return sdd_part(intern_terminal(leaf, TerminalKind::Eps));
                case 2: return sdd_part(intern_terminal(leaf, TerminalKind::NegEps));
                default: return sdd_part(one0_);
            }
        case DiagramKind::ZSDD:
            switch (r) {
                case 0: return zero_part();
                case 1: return sdd_part(eps0_);
                case 2: return sdd_part(intern_terminal(leaf, TerminalKind::NegEps));
                default: return sdd_part(intern_terminal(leaf, TerminalKind::One));
            }
        default:
            switch (r) {
                case 0: return zero_part();
                case 1: return sdd_part(one0_);
                case 2: return sdd_part(intern_terminal(leaf, TerminalKind::NegEps));
                default: return sdd_part(universe_node_zt(leaf));
            }
    }
}

// ---------------------------------------------------------------------------
// ST engine
// ---------------------------------------------------------------------------

inline Part Manager::universe_part_st(VtreeId scope) {
    return Part{scope, eps0_};  // scope == 0 gives the {()} diagram
}

inline Part Manager::apply_st(const Part& f, const Part& g, SetOp op) {
    if (f.node == zero_) return op == SetOp::Union ? g : zero_part();
    if (g.node == zero_) return op == SetOp::Intersect ? zero_part() : f;
    if (f == g) return op == SetOp::Difference ? zero_part() : f;
    const bool f_univ = node(f.node).term == TerminalKind::Eps &&
                        node(f.node).terminal && f.pv != kZeroLeaf &&
                        node(f.node).sv == kZeroLeaf;
    const bool g_univ = node(g.node).term == TerminalKind::Eps &&
                        node(g.node).terminal && g.pv != kZeroLeaf &&
                        node(g.node).sv == kZeroLeaf;
    if (f_univ && vtree_.is_subtree(g.pv, f.pv)) {
        if (op == SetOp::Intersect) return g;
        if (op == SetOp::Union) return f;
    }
    if (g_univ && vtree_.is_subtree(f.pv, g.pv)) {
        if (op == SetOp::Intersect) return f;
        if (op == SetOp::Union) return g;
        return zero_part();
    }
    if (f == eps_part()) {
        if (op == SetOp::Intersect)
            return contains_empty_combination(g) ? f : zero_part();
        if (op == SetOp::Difference)
            return contains_empty_combination(g) ? zero_part() : f;
    }
    if (g == eps_part() && op == SetOp::Intersect)
        return contains_empty_combination(f) ? g : zero_part();

    Part a = f, b = g;
    OpTag tag = op == SetOp::Intersect ? OpTag::Intersect
                : op == SetOp::Union  ? OpTag::Union
                                      : OpTag::Difference;
    if (op != SetOp::Difference && b < a) std::swap(a, b);
    Part cached;
    if (cache_lookup(tag, a, b, 0, cached)) return cached;

    VtreeId t1 = f.pv, t3 = g.pv;
    VtreeId t5, t6;
    std::vector<Element> ef, eg;
    if (vtree_.incomparable(t1, t3)) {
        t5 = t6 = vtree_.lca(t1, t3);
        ef = normalize1_st(f, t5);
        eg = normalize1_st(g, t5);
    } else if (vtree_.is_proper_subtree(t1, t3)) {
        t5 = t6 = t3;
        if (!vtree_.is_internal(t5)) {
            Part r = terminal_pair_apply_st(f, g, op, t5);
            cache_store(tag, a, b, 0, r);
            return r;
        }
        ef = normalize1_st(f, t5);
        eg = normalize2_st(g, t5);
    } else if (vtree_.is_proper_subtree(t3, t1)) {
        t5 = t6 = t1;
        if (!vtree_.is_internal(t5)) {
            Part r = terminal_pair_apply_st(f, g, op, t5);
            cache_store(tag, a, b, 0, r);
            return r;
        }
        ef = normalize2_st(f, t5);
        eg = normalize1_st(g, t5);
    } else {
        t5 = t1;
        if (!vtree_.is_internal(t5)) {
            Part r = terminal_pair_apply_st(f, g, op, t5);
            cache_store(tag, a, b, 0, r);
            return r;
        }
        t6 = vtree_.lca(node(f.node).sv, node(g.node).sv);
        if (!vtree_.is_internal(t6)) t6 = vtree_.parent(t6 == kZeroLeaf ? t5 : t6);
        if (t6 == kZeroLeaf || !vtree_.is_internal(t6)) t6 = t5;
        ef = normalize2_st(f, t6);
        eg = normalize2_st(g, t6);
    }

    std::vector<Element> out;
    for (const Element& e1 : ef) {
        for (const Element& e2 : eg) {
            Part p = apply_st(e1.prime, e2.prime, SetOp::Intersect);
            if (p.node == zero_) continue;
            Part s = apply_st(e1.sub, e2.sub, op);
            out.push_back(Element{p, s});
        }
    }
    Part h = mk_st(t5, t6, std::move(out));
    cache_store(tag, a, b, 0, h);
    return h;
}

inline Part Manager::terminal_pair_apply_st(const Part& f, const Part& g, SetOp op,
                                            VtreeId leaf) {
    auto enc = [&](const Part& p) -> unsigned {
        if (p.node == zero_) return 0u;
        if (node(p.node).term == TerminalKind::NegEps) return 2u;
        return p.pv == kZeroLeaf ? 1u : 3u;  // eps: {()} vs leaf universe
    };
    unsigned ea = enc(f), eb = enc(g), r = 0;
    switch (op) {
        case SetOp::Intersect: r = ea & eb; break;
        case SetOp::Union: r = ea | eb; break;
        case SetOp::Difference: r = ea & ~eb; break;
    }
    switch (r) {
        case 0: return zero_part();
        case 1: return eps_part();
        case 2: return Part{leaf, intern_terminal(leaf, TerminalKind::NegEps)};
        default: return universe_part_st(leaf);
    }
}

inline Part Manager::join_st(const Part& f, const Part& g) {
    if (f.node == zero_ || g.node == zero_) return zero_part();
    if (f == eps_part()) return g;
    if (g == eps_part()) return f;
    if (!vtree_.incomparable(f.pv, g.pv))
        throw ManagerError("orthogonal_join: overlapping variable sets");
    Part a = f, b = g;
    if (b < a) std::swap(a, b);
    Part cached;
    if (cache_lookup(OpTag::Join, a, b, 0, cached)) return cached;
    VtreeId t = vtree_.lca(f.pv, g.pv);
    Part first = f, second = g;
    if (!vtree_.is_subtree(f.pv, vtree_.left(t))) std::swap(first, second);
    Part comp = apply_st(universe_part_st(vtree_.left(t)), first, SetOp::Difference);
    std::vector<Element> elems{{first, second}};
    if (comp.node != zero_) elems.push_back({comp, zero_part()});
    Part h = mk_st(t, t, std::move(elems));
    cache_store(OpTag::Join, a, b, 0, h);
    return h;
}

inline Part Manager::change_st(const Part& f, int var) {
    VtreeId t3 = vtree_.leaf_of(var);
    if (f == eps_part()) return Part{t3, intern_terminal(t3, TerminalKind::NegEps)};
    if (f.pv == t3 && node(f.node).terminal && node(f.node).term == TerminalKind::NegEps)
        return eps_part();
    if (f.node == zero_) return f;
    if (f.pv == t3 && f.node == eps0_) return f;  // the universe over x
    const VtreeId sv = node(f.node).sv;
    if (vtree_.is_proper_subtree(t3, f.pv) && !vtree_.is_subtree(t3, sv)) return f;
    Part cached;
    if (cache_lookup(OpTag::Change, f, Part{}, static_cast<uint32_t>(var), cached))
        return cached;
    Part g;
    if (vtree_.incomparable(f.pv, t3)) {
        g = join_st(f, Part{t3, intern_terminal(t3, TerminalKind::NegEps)});
    } else if (t3 == sv) {
        // f is (pv, x, -eps) with x strictly below pv
        VtreeId t2p = vtree_.parent(t3);
        if (vtree_.left(t2p) == t3) {
            Part h = apply_st(universe_part_st(t3), eps_part(), SetOp::Difference);
            std::vector<Element> elems{{eps_part(), universe_part_st(vtree_.right(t2p))},
                                       {h, zero_part()}};
            g = mk_st(f.pv, t2p, std::move(elems));
        } else {
            std::vector<Element> elems{{universe_part_st(vtree_.left(t2p)), eps_part()}};
            g = mk_st(f.pv, t2p, std::move(elems));
        }
    } else {
        // x strictly below the secondary: recurse into one side
        const Node& n = node(f.node);
        std::vector<Element> out;
        out.reserve(n.elements.size());
        if (vtree_.is_subtree(t3, vtree_.left(sv))) {
            for (const Element& e : n.elements)
                out.push_back(Element{change_st(e.prime, var), e.sub});
        } else {
            for (const Element& e : n.elements)
                out.push_back(Element{e.prime, change_st(e.sub, var)});
        }
        g = mk_st(f.pv, sv, std::move(out));
    }
    cache_store(OpTag::Change, f, Part{}, static_cast<uint32_t>(var), g);
    return g;
}

// ---------------------------------------------------------------------------
// S engine (untagged SDD)
// ---------------------------------------------------------------------------

inline std::vector<Element> Manager::wrap_sdd(NodeId n, VtreeId target) {
    if (node(n).sv == target) return node(n).elements;
    std::vector<Element> out;
    if (vtree_.is_subtree(node(n).sv, vtree_.left(target))) {
        NodeId comp = apply_sdd(one0_, n, SetOp::Difference);
        out.push_back({Part{vtree_.left(target), n}, Part{vtree_.right(target), one0_}});
        if (comp != zero_)
            out.push_back({Part{vtree_.left(target), comp}, Part{vtree_.right(target), zero_}});
    } else {
        out.push_back({Part{vtree_.left(target), one0_}, Part{vtree_.right(target), n}});
    }
    return out;
}

inline NodeId Manager::apply_sdd(NodeId a, NodeId b, SetOp op) {
    if (a == zero_) return op == SetOp::Union ? b : zero_;
    if (b == zero_) return op == SetOp::Intersect ? zero_ : a;
    if (a == b) return op == SetOp::Difference ? zero_ : a;
    if (a == one0_) {
        if (op == SetOp::Intersect) return b;
        if (op == SetOp::Union) return one0_;
    }
    if (b == one0_) {
        if (op == SetOp::Intersect) return a;
        if (op == SetOp::Union) return one0_;
        return zero_;
    }
    NodeId x = a, y = b;
    OpTag tag = op == SetOp::Intersect ? OpTag::Intersect
                : op == SetOp::Union  ? OpTag::Union
                                      : OpTag::Difference;
    if (op != SetOp::Difference && y < x) std::swap(x, y);
    Part cached;
    if (cache_lookup(tag, Part{0, x}, Part{0, y}, 0, cached)) return cached.node;

    const VtreeId va = node(a).sv, vb = node(b).sv;
    VtreeId t = vtree_.lca(va, vb);
    NodeId result;
    if (!vtree_.is_internal(t)) {
        result = terminal_pair_apply(a, b, op).node;
    } else {
        std::vector<Element> ea = wrap_sdd(a, t);
        std::vector<Element> eb = wrap_sdd(b, t);
        std::vector<Element> out;
        for (const Element& e1 : ea) {
            for (const Element& e2 : eb) {
                NodeId p = apply_sdd(e1.prime.node, e2.prime.node, SetOp::Intersect);
                if (p == zero_) continue;
                NodeId s = apply_sdd(e1.sub.node, e2.sub.node, op);
                out.push_back(Element{Part{vtree_.left(t), p}, Part{vtree_.right(t), s}});
            }
        }
        result = mk_sdd(t, std::move(out));
    }
    cache_store(tag, Part{0, x}, Part{0, y}, 0, Part{0, result});
    return result;
}

inline NodeId Manager::change_sdd(NodeId n, int var) {
    VtreeId t3 = vtree_.leaf_of(var);
    const Node& nd = node(n);
    if (nd.terminal) {
        if (nd.sv == t3)
            return intern_terminal(t3, nd.term == TerminalKind::Eps ? TerminalKind::NegEps
                                                                    : TerminalKind::Eps);
        return n;  // 1, 0, or a terminal over another leaf: x is padded
    }
    if (!vtree_.is_subtree(t3, nd.sv)) return n;
    Part cached;
    if (cache_lookup(OpTag::Change, Part{0, n}, Part{}, static_cast<uint32_t>(var), cached))
        return cached.node;
    std::vector<Element> out;
    out.reserve(nd.elements.size());
    if (vtree_.is_subtree(t3, vtree_.left(nd.sv)))
        for (const Element& e : nd.elements)
            out.push_back(Element{Part{e.prime.pv, change_sdd(e.prime.node, var)}, e.sub});
    else
        for (const Element& e : nd.elements)
            out.push_back(Element{e.prime, Part{e.sub.pv, change_sdd(e.sub.node, var)}});
    NodeId g = mk_sdd(nd.sv, std::move(out));
    cache_store(OpTag::Change, Part{0, n}, Part{}, static_cast<uint32_t>(var), Part{0, g});
    return g;
}

// ---------------------------------------------------------------------------
// Z engine (untagged ZSDD)
// ---------------------------------------------------------------------------

inline NodeId Manager::universe_node_zsdd(VtreeId scope) {
    if (scope == kZeroLeaf) return eps0_;
    if (vtree_.is_leaf(scope)) return intern_terminal(scope, TerminalKind::One);
    auto it = universe_memo_.find(scope);
    if (it != universe_memo_.end()) return it->second;
    NodeId sub = universe_node_zsdd(vtree_.right(scope));
    VtreeId xl = vtree_.left(scope);
    std::vector<Element> elems;
    if (vtree_.is_leaf(xl)) {
        elems.push_back({Part{xl, intern_terminal(xl, TerminalKind::NegEps)},
                         Part{vtree_.right(scope), sub}});
        elems.push_back({Part{xl, eps0_}, Part{vtree_.right(scope), sub}});
    } else {
        elems.push_back({Part{xl, universe_node_zsdd(xl)}, Part{vtree_.right(scope), sub}});
    }
    NodeId u = intern_decomposition(scope, std::move(elems));
    nodes_[u].refcount++;  // pinned
    universe_memo_.emplace(scope, u);
    return u;
}

inline std::vector<Element> Manager::wrap_zsdd(NodeId n, VtreeId target) {
    if (node(n).sv == target) return node(n).elements;
    std::vector<Element> out;
    VtreeId xl = vtree_.left(target), xr = vtree_.right(target);
    if (vtree_.is_subtree(node(n).sv, xl)) {
        NodeId comp = apply_zsdd(universe_node_zsdd(xl), n, SetOp::Difference);
        out.push_back({Part{xl, n}, Part{xr, eps0_}});
        if (comp != zero_) out.push_back({Part{xl, comp}, Part{xr, zero_}});
    } else {
        // no padding under the zero-suppressed reading: the {()} prime
        // carries n, the rest of the prime space maps to the empty set
        NodeId comp = apply_zsdd(universe_node_zsdd(xl), eps0_, SetOp::Difference);
        out.push_back({Part{xl, eps0_}, Part{xr, n}});
        out.push_back({Part{xl, comp}, Part{xr, zero_}});
    }
    return out;
}

inline NodeId Manager::apply_zsdd(NodeId a, NodeId b, SetOp op) {
    if (a == zero_) return op == SetOp::Union ? b : zero_;
    if (b == zero_) return op == SetOp::Intersect ? zero_ : a;
    if (a == b) return op == SetOp::Difference ? zero_ : a;
    if (a == eps0_) {
        if (op == SetOp::Intersect) return node(b).has_empty_comb ? eps0_ : zero_;
        if (op == SetOp::Difference) return node(b).has_empty_comb ? zero_ : eps0_;
    }
    if (b == eps0_ && op == SetOp::Intersect)
        return node(a).has_empty_comb ? eps0_ : zero_;
    NodeId x = a, y = b;
    OpTag tag = op == SetOp::Intersect ? OpTag::Intersect
                : op == SetOp::Union  ? OpTag::Union
                                      : OpTag::Difference;
    if (op != SetOp::Difference && y < x) std::swap(x, y);
    Part cached;
    if (cache_lookup(tag, Part{0, x}, Part{0, y}, 0, cached)) return cached.node;

    VtreeId t = vtree_.lca(node(a).sv, node(b).sv);
    NodeId result;
    if (!vtree_.is_internal(t)) {
        result = terminal_pair_apply(a, b, op).node;
    } else {
        std::vector<Element> ea = wrap_zsdd(a, t);
        std::vector<Element> eb = wrap_zsdd(b, t);
        std::vector<Element> out;
        for (const Element& e1 : ea) {
            for (const Element& e2 : eb) {
                NodeId p = apply_zsdd(e1.prime.node, e2.prime.node, SetOp::Intersect);
                if (p == zero_) continue;
                NodeId s = apply_zsdd(e1.sub.node, e2.sub.node, op);
                out.push_back(Element{Part{vtree_.left(t), p}, Part{vtree_.right(t), s}});
            }
        }
        result = mk_zsdd(t, std::move(out));
    }
    cache_store(tag, Part{0, x}, Part{0, y}, 0, Part{0, result});
    return result;
}

inline NodeId Manager::join_zsdd(NodeId a, NodeId b) {
    if (a == zero_ || b == zero_) return zero_;
    if (a == eps0_) return b;
    if (b == eps0_) return a;
    if (!vtree_.incomparable(node(a).sv, node(b).sv))
        throw ManagerError("orthogonal_join: overlapping variable sets");
    NodeId x = a, y = b;
    if (y < x) std::swap(x, y);
    Part cached;
    if (cache_lookup(OpTag::Join, Part{0, x}, Part{0, y}, 0, cached)) return cached.node;
    VtreeId t = vtree_.lca(node(a).sv, node(b).sv);
    NodeId first = a, second = b;
    if (!vtree_.is_subtree(node(a).sv, vtree_.left(t))) std::swap(first, second);
    VtreeId xl = vtree_.left(t), xr = vtree_.right(t);
    NodeId comp = apply_zsdd(universe_node_zsdd(xl), first, SetOp::Difference);
    std::vector<Element> elems{{Part{xl, first}, Part{xr, second}}};
    if (comp != zero_) elems.push_back({Part{xl, comp}, Part{xr, zero_}});
    NodeId h = mk_zsdd(t, std::move(elems));
    cache_store(OpTag::Join, Part{0, x}, Part{0, y}, 0, Part{0, h});
    return h;
}

inline NodeId Manager::change_zsdd(NodeId n, int var) {
    VtreeId t3 = vtree_.leaf_of(var);
    const Node& nd = node(n);
    if (n == zero_) return n;
    if (n == eps0_) return intern_terminal(t3, TerminalKind::NegEps);
    if (nd.terminal && nd.sv == t3) {
        if (nd.term == TerminalKind::One) return n;
        return nd.term == TerminalKind::NegEps ? eps0_
                                               : intern_terminal(t3, TerminalKind::NegEps);
    }
    if (!vtree_.is_subtree(t3, nd.sv))
        return join_zsdd(n, intern_terminal(t3, TerminalKind::NegEps));
    Part cached;
    if (cache_lookup(OpTag::Change, Part{0, n}, Part{}, static_cast<uint32_t>(var), cached))
        return cached.node;
    std::vector<Element> out;
    out.reserve(nd.elements.size());
    if (vtree_.is_subtree(t3, vtree_.left(nd.sv)))
        for (const Element& e : nd.elements)
            out.push_back(Element{Part{e.prime.pv, change_zsdd(e.prime.node, var)}, e.sub});
    else
        for (const Element& e : nd.elements)
            out.push_back(Element{e.prime, Part{e.sub.pv, change_zsdd(e.sub.node, var)}});
    NodeId g = mk_zsdd(nd.sv, std::move(out));
    cache_store(OpTag::Change, Part{0, n}, Part{}, static_cast<uint32_t>(var), Part{0, g});
    return g;
}

// ---------------------------------------------------------------------------
// ZT engine (tagged zero-suppressed)
// ---------------------------------------------------------------------------

inline NodeId Manager::universe_node_zt(VtreeId scope) {
    if (scope == kZeroLeaf) return one0_;
    auto it = universe_memo_.find(scope);
    if (it != universe_memo_.end()) return it->second;
    NodeId u;
    if (vtree_.is_leaf(scope)) {
        VtreeId up = vtree_.parent(scope);
        if (up == kZeroLeaf)
            throw ManagerError(
                "universe over a single-leaf vtree is not expressible here");
        std::vector<Element> elems;
        if (vtree_.left(up) == scope)
            elems.push_back({Part{kZeroLeaf, one0_}, Part{vtree_.right(up), one0_}});
        else
            elems.push_back({Part{vtree_.left(up), one0_}, Part{kZeroLeaf, one0_}});
        u = intern_decomposition(up, std::move(elems));
        universe_scope_.emplace(u, scope);
    } else {
        std::vector<Element> elems{{Part{kZeroLeaf, one0_}, Part{kZeroLeaf, one0_}}};
        u = intern_decomposition(scope, std::move(elems));
    }
    nodes_[u].refcount++;  // pinned
    universe_memo_.emplace(scope, u);
    return u;
}

inline std::vector<Element> Manager::wrap_zt(NodeId n, VtreeId target) {
    if (node(n).sv == target) return node(n).elements;
    std::vector<Element> out;
    VtreeId xl = vtree_.left(target), xr = vtree_.right(target);
    if (vtree_.is_subtree(node(n).sv, xl))
        out.push_back({part_of_zt(n, xl), Part{xr, one0_}});
    else
        out.push_back({Part{xl, one0_}, part_of_zt(n, xr)});
    return out;
}

inline NodeId Manager::apply_zt(NodeId a, NodeId b, SetOp op) {
    if (a == zero_) return op == SetOp::Union ? b : zero_;
    if (b == zero_) return op == SetOp::Intersect ? zero_ : a;
    if (a == b) return op == SetOp::Difference ? zero_ : a;
    if (a == one0_) {
        if (op == SetOp::Intersect) return node(b).has_empty_comb ? one0_ : zero_;
        if (op == SetOp::Difference) return node(b).has_empty_comb ? zero_ : one0_;
    }
    if (b == one0_) {
        if (op == SetOp::Intersect) return node(a).has_empty_comb ? one0_ : zero_;
        if (op == SetOp::Difference && !node(a).has_empty_comb) return a;
    }
    NodeId x = a, y = b;
    OpTag tag = op == SetOp::Intersect ? OpTag::Intersect
                : op == SetOp::Union  ? OpTag::Union
                                      : OpTag::Difference;
    if (op != SetOp::Difference && y < x) std::swap(x, y);
    Part cached;
    if (cache_lookup(tag, Part{0, x}, Part{0, y}, 0, cached)) return cached.node;

    VtreeId t = vtree_.lca(node(a).sv, node(b).sv);
    NodeId result;
    if (!vtree_.is_internal(t)) {
        result = terminal_pair_apply(a, b, op).node;
    } else {
        std::vector<Element> ea = wrap_zt(a, t);
        std::vector<Element> eb = wrap_zt(b, t);
        VtreeId xl = vtree_.left(t), xr = vtree_.right(t);
        auto lift_op = [&](const Part& u, const Part& v, SetOp o, VtreeId slot) -> Part {
            bool upad = u.pv == kZeroLeaf, vpad = v.pv == kZeroLeaf;
            if (upad && vpad)
                return o == SetOp::Difference ? zero_part() : Part{kZeroLeaf, one0_};
            if (upad) {
                if (o == SetOp::Intersect) return v;
                if (o == SetOp::Union) return Part{kZeroLeaf, one0_};
                // U_{slot} minus the lifted set; leaf slots resolve
                // directly (the leaf universe node lives at its parent, so
                // recursing through it would not shrink the problem)
                if (vtree_.is_leaf(slot)) {
                    if (v.node == one0_)
                        return Part{slot, intern_terminal(slot, TerminalKind::NegEps)};
                    return Part{slot, one0_};
                }
                return part_of_zt(apply_zt(universe_node_zt(slot), v.node, o), slot);
            }
            if (vpad) {
                if (o == SetOp::Intersect) return u;
                if (o == SetOp::Union) return Part{kZeroLeaf, one0_};
                return zero_part();
            }
            return part_of_zt(apply_zt(u.node, v.node, o), slot);
        };
        std::vector<Element> out;
        for (const Element& e1 : ea) {
            for (const Element& e2 : eb) {
                Part p = lift_op(e1.prime, e2.prime, SetOp::Intersect, xl);
                if (p.node == zero_) continue;
                Part s = lift_op(e1.sub, e2.sub, op, xr);
                if (s.node == zero_) continue;
                out.push_back(Element{p, s});
            }
        }
        // Prime space uncovered by the other operand maps to its implicit
        // empty sub; union and difference keep this side's sub there.
        auto primes_union = [&](const std::vector<Element>& es) -> Part {
            Part u = zero_part();
            for (const Element& e : es) {
                if (e.prime.pv == kZeroLeaf) return Part{kZeroLeaf, one0_};
                u = u.node == zero_
                        ? e.prime
                        : part_of_zt(apply_zt(u.node, e.prime.node, SetOp::Union), xl);
                if (u.pv == kZeroLeaf) return u;
            }
            return u;
        };
        if (op == SetOp::Union || op == SetOp::Difference) {
            Part bu = primes_union(eb);
            for (const Element& e1 : ea) {
                Part rem = lift_op(e1.prime, bu, SetOp::Difference, xl);
                if (rem.node != zero_) out.push_back(Element{rem, e1.sub});
            }
        }
        if (op == SetOp::Union) {
            Part au = primes_union(ea);
            for (const Element& e2 : eb) {
                Part rem = lift_op(e2.prime, au, SetOp::Difference, xl);
                if (rem.node != zero_) out.push_back(Element{rem, e2.sub});
            }
        }
        result = mk_zt(t, std::move(out));
    }
    cache_store(tag, Part{0, x}, Part{0, y}, 0, Part{0, result});
    return result;
}

inline NodeId Manager::join_zt(NodeId a, NodeId b) {
    if (a == zero_ || b == zero_) return zero_;
    if (a == one0_) return b;
    if (b == one0_) return a;
    VtreeId sa = zt_scope(a), sb = zt_scope(b);
    if (!vtree_.incomparable(sa, sb))
        throw ManagerError("orthogonal_join: overlapping variable sets");
    NodeId x = a, y = b;
    if (y < x) std::swap(x, y);
    Part cached;
    if (cache_lookup(OpTag::Join, Part{0, x}, Part{0, y}, 0, cached)) return cached.node;
    VtreeId t = vtree_.lca(sa, sb);
    NodeId first = a, second = b;
    if (!vtree_.is_subtree(sa, vtree_.left(t))) std::swap(first, second);
    std::vector<Element> elems{
        {part_of_zt(first, vtree_.left(t)), part_of_zt(second, vtree_.right(t))}};
    NodeId h = mk_zt(t, std::move(elems));
    cache_store(OpTag::Join, Part{0, x}, Part{0, y}, 0, Part{0, h});
    return h;
}

inline NodeId Manager::change_zt(NodeId n, int var) {
    VtreeId t3 = vtree_.leaf_of(var);
    const Node& nd = node(n);
    if (n == zero_) return n;
    if (n == one0_) return intern_terminal(t3, TerminalKind::NegEps);
    if (nd.terminal && nd.sv == t3) return one0_;  // -eps at x flips back to {()}
    if (!vtree_.is_subtree(t3, nd.sv))
        return join_zt(n, intern_terminal(t3, TerminalKind::NegEps));
    Part cached;
    if (cache_lookup(OpTag::Change, Part{0, n}, Part{}, static_cast<uint32_t>(var), cached))
        return cached.node;
    std::vector<Element> out;
    out.reserve(nd.elements.size());
    const bool left_side = vtree_.is_subtree(t3, vtree_.left(nd.sv));
    for (const Element& e : nd.elements) {
        const Part& side = left_side ? e.prime : e.sub;
        if (side.pv == kZeroLeaf || !vtree_.is_subtree(t3, side.pv)) {
            // x sits in this element's padding; toggling a padded variable
            // leaves the element's set unchanged
            out.push_back(e);
            continue;
        }
        VtreeId slot = left_side ? vtree_.left(nd.sv) : vtree_.right(nd.sv);
        Part changed = part_of_zt(change_zt(side.node, var), slot);
        out.push_back(left_side ? Element{changed, e.sub} : Element{e.prime, changed});
    }
    NodeId g = mk_zt(nd.sv, std::move(out));
    cache_store(OpTag::Change, Part{0, n}, Part{}, static_cast<uint32_t>(var), Part{0, g});
    return g;
}

// ---------------------------------------------------------------------------
// public dispatchers
// ---------------------------------------------------------------------------

inline Part Manager::apply(const Part& f, const Part& g, SetOp op) {
    switch (kind_) {
        case DiagramKind::SDD: return sdd_part(apply_sdd(f.node, g.node, op));
        case DiagramKind::ZSDD: return sdd_part(apply_zsdd(f.node, g.node, op));
        case DiagramKind::NSTSDD:
        case DiagramKind::ESTSDD: return apply_st(f, g, op);
        case DiagramKind::NZTSDD:
        case DiagramKind::EZTSDD: return sdd_part(apply_zt(f.node, g.node, op));
    }
    throw std::logic_error("unreachable");
}

inline Part Manager::orthogonal_join(const Part& f, const Part& g) {
    switch (kind_) {
        case DiagramKind::SDD: {
            if (f.node != zero_ && g.node != zero_ && f.node != one0_ && g.node != one0_ &&
                !vtree_.incomparable(node(f.node).sv, node(g.node).sv))
                throw ManagerError("orthogonal_join: overlapping variable sets");
            return sdd_part(apply_sdd(f.node, g.node, SetOp::Intersect));
        }
        case DiagramKind::ZSDD: return sdd_part(join_zsdd(f.node, g.node));
        case DiagramKind::NSTSDD:
        case DiagramKind::ESTSDD: return join_st(f, g);
        case DiagramKind::NZTSDD:
        case DiagramKind::EZTSDD: return sdd_part(join_zt(f.node, g.node));
    }
    throw std::logic_error("unreachable");
}

inline Part Manager::change(const Part& f, int var) {
    switch (kind_) {
        case DiagramKind::SDD: return sdd_part(change_sdd(f.node, var));
        case DiagramKind::ZSDD: return sdd_part(change_zsdd(f.node, var));
        case DiagramKind::NSTSDD:
        case DiagramKind::ESTSDD: return change_st(f, var);
        case DiagramKind::NZTSDD:
        case DiagramKind::EZTSDD: return sdd_part(change_zt(f.node, var));
    }
    throw std::logic_error("unreachable");
}

inline Part Manager::empty_diagram() { return zero_part(); }

inline Part Manager::universe_diagram(VtreeId scope) {
    switch (kind_) {
        case DiagramKind::SDD: return Part{scope, one0_};
        case DiagramKind::ZSDD: return sdd_part(universe_node_zsdd(scope));
        case DiagramKind::NSTSDD:
        case DiagramKind::ESTSDD: return universe_part_st(scope);
        case DiagramKind::NZTSDD:
        case DiagramKind::EZTSDD: return sdd_part(universe_node_zt(scope));
    }
    throw std::logic_error("unreachable");
}

inline Part Manager::literal(VtreeId scope, int var, bool positive) {
    VtreeId leaf = vtree_.leaf_of(var);
    if (!vtree_.is_subtree(leaf, scope))
        throw ManagerError("literal: x" + std::to_string(var) + " outside the scope vtree");
    NodeId neg_eps = intern_terminal(leaf, TerminalKind::NegEps);
    switch (kind_) {
        case DiagramKind::SDD:
            return positive ? sdd_part(neg_eps)
                            : sdd_part(intern_terminal(leaf, TerminalKind::Eps));
        case DiagramKind::NSTSDD:
        case DiagramKind::ESTSDD: {
            Part pos{scope, neg_eps};
            return positive ? pos : complement(pos, scope);
        }
        default: {
            // zero-suppressed kinds build the padded set explicitly: walk
            // up from the leaf, joining each sibling's universe
            NodeId d = neg_eps;
            VtreeId at = leaf;
            bool zt = tagged(kind_);
            while (at != scope) {
                VtreeId p = vtree_.parent(at);
                bool left_child = vtree_.left(p) == at;
                std::vector<Element> elems;
                if (zt) {
                    if (left_child)
                        elems.push_back({part_of_zt(d, vtree_.left(p)),
                                         Part{kZeroLeaf, one0_}});
                    else
                        elems.push_back({Part{kZeroLeaf, one0_},
                                         part_of_zt(d, vtree_.right(p))});
                    d = mk_zt(p, std::move(elems));
                } else {
                    VtreeId xl = vtree_.left(p), xr = vtree_.right(p);
                    if (left_child) {
                        NodeId comp = apply_zsdd(universe_node_zsdd(xl), d,
                                                 SetOp::Difference);
                        elems.push_back({Part{xl, d}, Part{xr, universe_node_zsdd(xr)}});
                        if (comp != zero_) elems.push_back({Part{xl, comp}, Part{xr, zero_}});
                    } else {
                        elems.push_back({Part{xl, universe_node_zsdd(xl)}, Part{xr, d}});
                    }
                    d = mk_zsdd(p, std::move(elems));
                }
                at = p;
            }
            Part pos = sdd_part(d);
            return positive ? pos : complement(pos, scope);
        }
    }
}

inline Part Manager::complement(const Part& f, VtreeId scope) {
    return apply(universe_diagram(scope), f, SetOp::Difference);
}

inline Part Manager::combination_diagram(const std::vector<int>& combination,
                                         VtreeId scope) {
    for (int v : combination)
        if (!vtree_.is_subtree(vtree_.leaf_of(v), scope))
            throw ManagerError("combination variable outside scope");
    if (kind_ == DiagramKind::SDD) {
        Part acc = universe_diagram(scope);
        for (int v : vtree_.vars(scope)) {
            bool pos = std::find(combination.begin(), combination.end(), v) !=
                       combination.end();
            acc = apply(acc, literal(scope, v, pos), SetOp::Intersect);
        }
        return acc;
    }
    // join of the present variables' singletons, built along the vtree so
    // the joined scopes stay incomparable
    auto rec = [&](auto&& self, VtreeId v) -> Part {
        if (vtree_.is_leaf(v)) {
            bool pos = std::find(combination.begin(), combination.end(),
                                 vtree_.var(v)) != combination.end();
            if (pos) {
                NodeId n = intern_terminal(v, TerminalKind::NegEps);
                return std_semantics(kind_) ? Part{v, n} : sdd_part(n);
            }
            return std_semantics(kind_) ? eps_part() : sdd_part(one_or_eps());
        }
        Part l = self(self, vtree_.left(v));
        Part r = self(self, vtree_.right(v));
        return orthogonal_join(l, r);
    };
    return rec(rec, scope);
}

inline Part Manager::compile_combinations(const std::vector<std::vector<int>>& combs,
                                          VtreeId scope) {
    Part acc = empty_diagram();
    for (const auto& c : combs)
        acc = apply(acc, combination_diagram(c, scope), SetOp::Union);
    return acc;
}

}  // namespace tsdd
