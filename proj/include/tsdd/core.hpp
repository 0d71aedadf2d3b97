#pragma once

#include <cassert>
#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "tsdd/oracle.hpp"
#include "tsdd/vtree.hpp"

namespace tsdd {

enum class DiagramKind : uint8_t { SDD, ZSDD, NSTSDD, NZTSDD, ESTSDD, EZTSDD };

inline bool std_semantics(DiagramKind k) {
    return k == DiagramKind::SDD || k == DiagramKind::NSTSDD || k == DiagramKind::ESTSDD;
}
inline bool tagged(DiagramKind k) {
    return k != DiagramKind::SDD && k != DiagramKind::ZSDD;
}
inline bool edge_based(DiagramKind k) {
    return k == DiagramKind::ESTSDD || k == DiagramKind::EZTSDD;
}

inline const char* kind_name(DiagramKind k) {
    switch (k) {
        case DiagramKind::SDD: return "sdd";
        case DiagramKind::ZSDD: return "zsdd";
        case DiagramKind::NSTSDD: return "nstsdd";
        case DiagramKind::NZTSDD: return "nztsdd";
        case DiagramKind::ESTSDD: return "estsdd";
        case DiagramKind::EZTSDD: return "eztsdd";
    }
    return "?";
}

inline bool parse_kind(const std::string& s, DiagramKind& out) {
    for (DiagramKind k : {DiagramKind::SDD, DiagramKind::ZSDD, DiagramKind::NSTSDD,
                          DiagramKind::NZTSDD, DiagramKind::ESTSDD, DiagramKind::EZTSDD}) {
        if (s == kind_name(k)) {
            out = k;
            return true;
        }
    }
    return false;
}

// Terminal symbols: 1, 0, eps, -eps.
enum class TerminalKind : uint8_t { One, Zero, Eps, NegEps };

using NodeId = uint32_t;

// A diagram reference: the primary vtree plus the stored node (which carries
// the secondary vtree and the terminal/decomposition). This is the edge of
// Fig-4's edge-based layout; node-based managers treat the pair itself as
// the node identity.
struct Part {
    VtreeId pv = kZeroLeaf;
    NodeId node = 0;

    bool operator==(const Part& o) const { return pv == o.pv && node == o.node; }
    bool operator!=(const Part& o) const { return !(*this == o); }
    bool operator<(const Part& o) const {
        return node != o.node ? node < o.node : pv < o.pv;
    }
};

struct Element {
    Part prime;
    Part sub;
    bool operator==(const Element& o) const { return prime == o.prime && sub == o.sub; }
};

struct Node {
    VtreeId sv = kZeroLeaf;
    bool terminal = true;
    TerminalKind term = TerminalKind::Zero;
    std::vector<Element> elements;

    uint32_t refcount = 0;
    bool dead = false;

    bool has_empty_comb = false;  // the empty combination is a member
};

class ManagerError : public std::runtime_error {
  public:
    explicit ManagerError(const std::string& msg) : std::runtime_error(msg) {}
};

enum class OpTag : uint8_t { Intersect, Union, Difference, Join, Change };

class Manager {
  public:
    Manager(DiagramKind kind, Vtree vtree) : kind_(kind), vtree_(std::move(vtree)) {
        zero_ = intern_terminal(kZeroLeaf, TerminalKind::Zero);
        // The {()} constant differs per family: standard systems express it
        // as eps, tagged zero-suppressed ones as 1 (eps is omitted there);
        // the SDD keeps 1 at the zero leaf as its true constant.
        if (std_semantics(kind_) || kind_ == DiagramKind::ZSDD)
            eps0_ = intern_terminal(kZeroLeaf, TerminalKind::Eps);
        if (kind_ == DiagramKind::SDD || kind_ == DiagramKind::NZTSDD ||
            kind_ == DiagramKind::EZTSDD)
            one0_ = intern_terminal(kZeroLeaf, TerminalKind::One);
    }

    Manager(const Manager&) = delete;
    Manager& operator=(const Manager&) = delete;

    DiagramKind kind() const { return kind_; }
    const Vtree& vtree() const { return vtree_; }

    const Node& node(NodeId id) const { return nodes_[id]; }
    size_t live_node_count() const { return live_count_; }

    // ---- terminal construction (kind-checked) -------------------------

    // Interns (pv, sv, term) after validating the manager kind's terminal
    // constraints.
    Part make_terminal(TerminalKind term, VtreeId pv, VtreeId sv) {
        check_terminal(term, pv, sv);
        return Part{pv, intern_terminal(sv, term)};
    }

    NodeId zero_node() const { return zero_; }
    NodeId eps_node() const { return eps0_; }   // (0, eps): the {()} terminal
    NodeId one_node() const { return one0_; }   // (0, 1)

    bool is_empty(const Part& p) const { return p.node == zero_; }
    bool is_empty(NodeId n) const { return n == zero_; }

    // ---- raw interning (rule modules build through this) ---------------

    NodeId intern_terminal(VtreeId sv, TerminalKind term) {
        NodeKey key{sv, true, term, {}};
        auto it = unique_.find(key);
        if (it != unique_.end()) return it->second;
        Node n;
        n.sv = sv;
        n.terminal = true;
        n.term = term;
        n.refcount = 1;  // terminals are permanent
        n.has_empty_comb = (term == TerminalKind::Eps || term == TerminalKind::One);
        return insert(std::move(key), std::move(n));
    }

    // Elements must already be canonical for the manager's rule system;
    // this only sorts deterministically and interns.
    NodeId intern_decomposition(VtreeId sv, std::vector<Element> elements) {
        assert(!elements.empty());
        std::sort(elements.begin(), elements.end(), [](const Element& a, const Element& b) {
            if (a.prime.node != b.prime.node) return a.prime.node < b.prime.node;
            if (a.prime.pv != b.prime.pv) return a.prime.pv < b.prime.pv;
            if (a.sub.node != b.sub.node) return a.sub.node < b.sub.node;
            return a.sub.pv < b.sub.pv;
        });
        NodeKey key{sv, false, TerminalKind::Zero, elements};
        auto it = unique_.find(key);
        if (it != unique_.end()) return it->second;
        Node n;
        n.sv = sv;
        n.terminal = false;
        n.elements = elements;
        n.has_empty_comb = false;
        for (const Element& e : elements) {
            nodes_[e.prime.node].refcount++;
            nodes_[e.sub.node].refcount++;
            if (nodes_[e.prime.node].has_empty_comb && nodes_[e.sub.node].has_empty_comb)
                n.has_empty_comb = true;
        }
        return insert(std::move(key), std::move(n));
    }

    // ---- reference counting & garbage collection ----------------------

    void ref(const Part& p) { nodes_[p.node].refcount++; }

    void deref(const Part& p) {
        if (nodes_[p.node].refcount == 0) throw ManagerError("deref below zero");
        nodes_[p.node].refcount--;
    }

    // Removes every node with refcount zero, transitively, and clears the
    // operation cache. Returns the number of reclaimed nodes.
    size_t gc() {
        std::vector<NodeId> stack;
        for (NodeId i = 0; i < nodes_.size(); ++i)
            if (!nodes_[i].dead && nodes_[i].refcount == 0) stack.push_back(i);
        size_t reclaimed = 0;
        while (!stack.empty()) {
            NodeId id = stack.back();
            stack.pop_back();
            Node& n = nodes_[id];
            if (n.dead || n.refcount != 0) continue;
            n.dead = true;
            ++reclaimed;
            --live_count_;
            unique_.erase(NodeKey{n.sv, n.terminal, n.term, n.elements});
            for (const Element& e : n.elements) {
                for (NodeId c : {e.prime.node, e.sub.node}) {
                    if (--nodes_[c].refcount == 0) stack.push_back(c);
                }
            }
            n.elements.clear();
            free_list_.push_back(id);
        }
        if (reclaimed) clear_cache();
        return reclaimed;
    }

    // ---- operation cache ----------------------------------------------

    bool cache_lookup(OpTag op, const Part& a, const Part& b, uint32_t extra, Part& out) const {
        auto it = cache_.find(CacheKey{op, a, b, extra});
        if (it == cache_.end()) return false;
        out = it->second;
        return true;
    }

    void cache_store(OpTag op, const Part& a, const Part& b, uint32_t extra, const Part& r) {
        cache_.emplace(CacheKey{op, a, b, extra}, r);
    }

    void clear_cache() { cache_.clear(); }
    size_t cache_size() const { return cache_.size(); }

    // ---- size and byte accounting --------------------------------------

    // Sum of element counts over reachable decompositions. Node-based
    // managers distinguish nodes by (primary, node) pairs, edge-based ones
    // share nodes across primaries.
    uint64_t size(const Part& root) const {
        uint64_t total = 0;
        visit(root, [&](const Part&, NodeId n) {
            if (!nodes_[n].terminal) total += nodes_[n].elements.size();
        });
        return total;
    }

    uint64_t node_count(const Part& root) const {
        uint64_t total = 0;
        if (edge_based(kind_)) {
            std::unordered_set<NodeId> seen;
            visit_nodes(root.node, seen, [&](NodeId) { ++total; });
        } else {
            std::unordered_set<uint64_t> seen;
            visit_parts(root, seen, [&](const Part&) { ++total; });
        }
        return total;
    }

    // Accounting model, not the in-process layout: 41 + 16n bytes per
    // node-based node, 33 + 32n per edge-based node plus one 8-byte edge
    // carrying the root's primary vtree.
    uint64_t memory_bytes(const Part& root) const {
        uint64_t total = 0;
        if (edge_based(kind_)) {
            std::unordered_set<NodeId> seen;
            visit_nodes(root.node, seen, [&](NodeId n) {
                total += 33 + 32 * static_cast<uint64_t>(element_count(n));
            });
            total += 8;  // the edge carrying the root's primary vtree
        } else {
            std::unordered_set<uint64_t> seen;
            visit_parts(root, seen, [&](const Part& p) {
                total += 41 + 16 * static_cast<uint64_t>(element_count(p.node));
            });
        }
        return total;
    }

    // |denotation|, by recursion with memoization (zero padding factors are
    // applied per the manager's semantics).
    uint64_t count_models(const Part& root) {
        std::unordered_map<uint64_t, uint64_t> memo;
        return std_semantics(kind_) ? count_std(root, memo) : count_zero(root.node, memo);
    }

    bool contains_empty_combination(const Part& p) const {
        return nodes_[p.node].has_empty_comb;
    }

    // ---- operations (defined in rules.hpp / ops.hpp) --------------------

    // Canonicalizing constructor: compression, then the kind's trimming
    // rules to fixpoint. Elements must be made of canonical parts.
    Part make_decomposition(VtreeId pv, VtreeId sv, std::vector<Element> elements);

    Part apply(const Part& f, const Part& g, SetOp op);
    Part orthogonal_join(const Part& f, const Part& g);
    Part change(const Part& f, int var);

    Part empty_diagram();
    Part universe_diagram(VtreeId scope);
    Part literal(VtreeId scope, int var, bool positive);
    Part complement(const Part& f, VtreeId scope);

    // Diagram for a single combination; empty combination allowed.
    Part combination_diagram(const std::vector<int>& combination, VtreeId scope);
    // Union-fold of combination diagrams in the given order.
    Part compile_combinations(const std::vector<std::vector<int>>& combs, VtreeId scope);

    // Scratch element lists used by Apply's vtree alignment; exposed for
    // verification (the canonicalizer inverts them back to the input).
    std::vector<Element> normalize1_elements(const Part& f, VtreeId target) {
        return normalize1_st(f, target);
    }
    std::vector<Element> normalize2_elements(const Part& f, VtreeId target) {
        return normalize2_st(f, target);
    }

    // Test hook: when set, the named ST rule is skipped (fault injection
    // for the fuzz harness). Empty string disables nothing.
    void disable_rule(const std::string& name) { disabled_rule_ = name; }
    const std::string& disabled_rule() const { return disabled_rule_; }

    // Per-firing rewrite verification: the engine reports each firing with
    // the redex (pv, sv, elements) and the replacement; set by
    // --check-rewrites. The hook must not mutate the manager.
    using RewriteHook = std::function<void(const char* rule, VtreeId pv, VtreeId sv,
                                           const std::vector<Element>& before,
                                           const Part& after)>;
    void set_rewrite_hook(RewriteHook h) { rewrite_hook_ = std::move(h); }

    // ---- DOT export -----------------------------------------------------

    void export_dot(const Part& root, std::ostream& os) const {
        os << "digraph tsdd {\noverlap=false\n";
        std::unordered_set<NodeId> seen;
        export_dot_rec(root.node, os, seen);
        os << "r [shape=point];\n";
        os << "r -> n" << root.node;
        if (tagged(kind_)) os << " [label=\"" << vtree_label(root.pv) << "\"]";
        os << ";\n}\n";
    }

  private:
    struct NodeKey {
        VtreeId sv;
        bool terminal;
        TerminalKind term;
        std::vector<Element> elements;

        bool operator==(const NodeKey& o) const {
            return sv == o.sv && terminal == o.terminal &&
                   (terminal ? term == o.term : elements == o.elements);
        }
    };

    struct NodeKeyHash {
        size_t operator()(const NodeKey& k) const {
            uint64_t h = 1469598103934665603ull;
            auto mix = [&h](uint64_t x) {
                h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
            };
            mix(k.sv);
            mix(k.terminal ? 0x10 + static_cast<uint64_t>(k.term) : 0x1);
            for (const Element& e : k.elements) {
                mix(e.prime.pv);
                mix(e.prime.node);
                mix(e.sub.pv);
                mix(e.sub.node);
            }
            return static_cast<size_t>(h);
        }
    };

    struct CacheKey {
        OpTag op;
        Part a, b;
        uint32_t extra;
        bool operator==(const CacheKey& o) const {
            return op == o.op && a == o.a && b == o.b && extra == o.extra;
        }
    };

    struct CacheKeyHash {
        size_t operator()(const CacheKey& k) const {
            uint64_t h = static_cast<uint64_t>(k.op) * 0x9e3779b97f4a7c15ull;
            for (uint64_t x : {uint64_t(k.a.pv), uint64_t(k.a.node), uint64_t(k.b.pv),
                               uint64_t(k.b.node), uint64_t(k.extra)})
                h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
            return static_cast<size_t>(h);
        }
    };

    DiagramKind kind_;
    Vtree vtree_;
    std::vector<Node> nodes_;
    std::vector<NodeId> free_list_;
    std::unordered_map<NodeKey, NodeId, NodeKeyHash> unique_;
    std::unordered_map<CacheKey, Part, CacheKeyHash> cache_;
    std::unordered_map<VtreeId, NodeId> universe_memo_;  // zero-suppressed kinds
    // leaf universes structurally live at the leaf's parent; this maps them
    // back to the scope they denote
    std::unordered_map<NodeId, VtreeId> universe_scope_;
    size_t live_count_ = 0;
    NodeId zero_ = 0, eps0_ = 0, one0_ = 0;
    std::string disabled_rule_;
    RewriteHook rewrite_hook_;

    // ---- internals defined in rules.hpp ---------------------------------
    Part canonical_part_st(VtreeId anchor, NodeId node);
    Part mk_st(VtreeId pv, VtreeId sv, std::vector<Element> elems);
    NodeId mk_sdd(VtreeId sv, std::vector<Element> elems);
    NodeId mk_zsdd(VtreeId sv, std::vector<Element> elems);
    NodeId mk_zt(VtreeId sv, std::vector<Element> elems);
    std::vector<Element> normalize1_st(const Part& f, VtreeId target);
    std::vector<Element> normalize2_st(const Part& f, VtreeId target);
    bool rule_enabled(const char* name) const { return disabled_rule_ != name; }
    void fired(const char* name, VtreeId pv, VtreeId sv, const std::vector<Element>& before,
               const Part& after) {
        if (rewrite_hook_) rewrite_hook_(name, pv, sv, before, after);
    }
    Part sdd_part(NodeId n) { return n == zero_ ? zero_part() : Part{vtree_.root(), n}; }

    // ---- internals defined in ops.hpp ------------------------------------
    Part apply_st(const Part& f, const Part& g, SetOp op);
    Part universe_part_st(VtreeId scope);
    Part eps_part() { return Part{kZeroLeaf, eps0_}; }
    Part zero_part() { return Part{kZeroLeaf, zero_}; }
    Part change_st(const Part& f, int var);
    Part join_st(const Part& f, const Part& g);

    NodeId apply_sdd(NodeId a, NodeId b, SetOp op);
    std::vector<Element> wrap_sdd(NodeId n, VtreeId target);
    NodeId change_sdd(NodeId n, int var);

    NodeId apply_zsdd(NodeId a, NodeId b, SetOp op);
    std::vector<Element> wrap_zsdd(NodeId n, VtreeId target);
    NodeId universe_node_zsdd(VtreeId scope);
    NodeId change_zsdd(NodeId n, int var);
    NodeId join_zsdd(NodeId a, NodeId b);

    NodeId apply_zt(NodeId a, NodeId b, SetOp op);
    std::vector<Element> wrap_zt(NodeId n, VtreeId target);
    NodeId universe_node_zt(VtreeId scope);
    // the vtree scope a node's combinations actually live under
    VtreeId zt_scope(NodeId n) const {
        auto it = universe_scope_.find(n);
        return it != universe_scope_.end() ? it->second : nodes_[n].sv;
    }
    Part part_of_zt(NodeId n, VtreeId slot);
    NodeId change_zt(NodeId n, int var);
    NodeId join_zt(NodeId a, NodeId b);
    Part terminal_pair_apply(NodeId a, NodeId b, SetOp op);
    Part terminal_pair_apply_st(const Part& f, const Part& g, SetOp op, VtreeId leaf);
    // the {()} terminal of the manager's family
    NodeId one_or_eps() const {
        return (std_semantics(kind_) || kind_ == DiagramKind::ZSDD) ? eps0_ : one0_;
    }

    NodeId insert(NodeKey key, Node n) {
        NodeId id;
        if (!free_list_.empty()) {
            id = free_list_.back();
            free_list_.pop_back();
            nodes_[id] = std::move(n);
        } else {
            id = static_cast<NodeId>(nodes_.size());
            nodes_.push_back(std::move(n));
        }
        unique_.emplace(std::move(key), id);
        ++live_count_;
        return id;
    }

    void check_terminal(TerminalKind term, VtreeId pv, VtreeId sv) const {
        if (!vtree_.is_subtree(sv, pv))
            throw ManagerError("terminal: secondary vtree not inside primary");
        bool ok = false;
        switch (kind_) {
            case DiagramKind::SDD:
                // 1/0 at the zero leaf; eps/-eps at leaves.
                ok = ((term == TerminalKind::One || term == TerminalKind::Zero) &&
                      sv == kZeroLeaf) ||
                     ((term == TerminalKind::Eps || term == TerminalKind::NegEps) &&
                      vtree_.is_leaf(sv));
                break;
            case DiagramKind::ZSDD:
                // eps moves to the zero leaf, 1 moves to leaves.
                ok = (term == TerminalKind::Zero && sv == kZeroLeaf) ||
                     (term == TerminalKind::Eps && sv == kZeroLeaf) ||
                     ((term == TerminalKind::One || term == TerminalKind::NegEps) &&
                      vtree_.is_leaf(sv));
                break;
            case DiagramKind::NSTSDD:
            case DiagramKind::ESTSDD:
                ok = (term == TerminalKind::Zero && pv == kZeroLeaf && sv == kZeroLeaf) ||
                     (term == TerminalKind::Eps && sv == kZeroLeaf) ||
                     (term == TerminalKind::NegEps && vtree_.is_leaf(sv));
                break;
            case DiagramKind::NZTSDD:
            case DiagramKind::EZTSDD:
                ok = (term == TerminalKind::Zero && pv == kZeroLeaf && sv == kZeroLeaf) ||
                     (term == TerminalKind::One && sv == kZeroLeaf) ||
                     (term == TerminalKind::NegEps && vtree_.is_leaf(sv));
                break;
        }
        if (!ok)
            throw ManagerError(std::string("terminal kind not admitted by ") +
                               kind_name(kind_) + " manager");
    }

    uint32_t element_count(NodeId n) const {
        return nodes_[n].terminal ? 0 : static_cast<uint32_t>(nodes_[n].elements.size());
    }

    static uint64_t part_key(const Part& p) {
        return (uint64_t(p.pv) << 32) | p.node;
    }

    template <typename F>
    void visit(const Part& root, F&& f) const {
        if (edge_based(kind_)) {
            std::unordered_set<NodeId> seen;
            visit_nodes(root.node, seen, [&](NodeId n) { f(Part{kZeroLeaf, n}, n); });
        } else {
            std::unordered_set<uint64_t> seen;
            visit_parts(root, seen, [&](const Part& p) { f(p, p.node); });
        }
    }

    template <typename F>
    void visit_nodes(NodeId n, std::unordered_set<NodeId>& seen, F&& f) const {
        if (!seen.insert(n).second) return;
        f(n);
        for (const Element& e : nodes_[n].elements) {
            visit_nodes(e.prime.node, seen, f);
            visit_nodes(e.sub.node, seen, f);
        }
    }

    template <typename F>
    void visit_parts(const Part& p, std::unordered_set<uint64_t>& seen, F&& f) const {
        if (!seen.insert(part_key(p)).second) return;
        f(p);
        for (const Element& e : nodes_[p.node].elements) {
            visit_parts(e.prime, seen, f);
            visit_parts(e.sub, seen, f);
        }
    }

    uint64_t count_std(const Part& p, std::unordered_map<uint64_t, uint64_t>& memo) {
        auto it = memo.find(part_key(p));
        if (it != memo.end()) return it->second;
        const Node& n = nodes_[p.node];
        uint64_t pad = uint64_t{1} << (vtree_.var_count(p.pv) - vtree_.var_count(n.sv));
        uint64_t result = 0;
        if (n.terminal) {
            switch (n.term) {
                case TerminalKind::One: result = uint64_t{1} << vtree_.var_count(p.pv); break;
                case TerminalKind::Zero: result = 0; break;
                case TerminalKind::Eps: result = pad; break;
                case TerminalKind::NegEps:
                    result = pad * ((uint64_t{1} << vtree_.var_count(n.sv)) - 1);
                    break;
            }
        } else {
            for (const Element& e : n.elements)
                result += count_std(e.prime, memo) * count_std(e.sub, memo);
            result *= pad;
        }
        memo.emplace(part_key(p), result);
        return result;
    }

    uint64_t count_zero(NodeId id, std::unordered_map<uint64_t, uint64_t>& memo) {
        auto it = memo.find(id);
        if (it != memo.end()) return it->second;
        const Node& n = nodes_[id];
        uint64_t result = 0;
        if (n.terminal) {
            switch (n.term) {
                case TerminalKind::One: result = uint64_t{1} << vtree_.var_count(n.sv); break;
                case TerminalKind::Zero: result = 0; break;
                case TerminalKind::Eps: result = 1; break;
                case TerminalKind::NegEps:
                    result = (uint64_t{1} << vtree_.var_count(n.sv)) - 1;
                    break;
            }
        } else {
            for (const Element& e : n.elements) {
                uint64_t band = vtree_.var_count(n.sv) - vtree_.var_count(e.prime.pv) -
                                vtree_.var_count(e.sub.pv);
                result += (uint64_t{1} << band) * count_zero(e.prime.node, memo) *
                          count_zero(e.sub.node, memo);
            }
        }
        memo.emplace(id, result);
        return result;
    }

    std::string vtree_label(VtreeId v) const {
        if (v == kZeroLeaf) return "0";
        if (vtree_.is_leaf(v)) return "x" + std::to_string(vtree_.var(v));
        return "v" + std::to_string(v);
    }

    std::string terminal_label(const Node& n) const {
        switch (n.term) {
            case TerminalKind::One: return "1";
            case TerminalKind::Zero: return "0";
            case TerminalKind::Eps: return "&#949;";
            case TerminalKind::NegEps: return "&#172;&#949;";
        }
        return "?";
    }

    void export_dot_rec(NodeId id, std::ostream& os, std::unordered_set<NodeId>& seen) const {
        if (!seen.insert(id).second) return;
        const Node& n = nodes_[id];
        if (n.terminal) {
            os << "n" << id << " [shape=record,label=\"" << terminal_label(n) << "|"
               << vtree_label(n.sv) << "\"];\n";
            return;
        }
        os << "n" << id << " [shape=circle,label=\"" << vtree_label(n.sv) << "\"];\n";
        size_t i = 0;
        for (const Element& e : n.elements) {
            std::string eid = "n" + std::to_string(id) + "e" + std::to_string(i++);
            os << eid << " [shape=record,label=\"<L>|<R>\"];\n";
            os << "n" << id << " -> " << eid << ";\n";
            os << eid << ":L -> n" << e.prime.node;
            if (tagged(kind_)) os << " [label=\"" << vtree_label(e.prime.pv) << "\"]";
            os << ";\n";
            os << eid << ":R -> n" << e.sub.node;
            if (tagged(kind_)) os << " [label=\"" << vtree_label(e.sub.pv) << "\"]";
            os << ";\n";
            export_dot_rec(e.prime.node, os, seen);
            export_dot_rec(e.sub.node, os, seen);
        }
    }
};

}  // namespace tsdd
