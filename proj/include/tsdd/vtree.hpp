#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace tsdd {

using VtreeId = uint32_t;

// Shared sentinel: the empty leaf "0". It is a subtree of every node,
// has no variables and is never written to vtree files.
constexpr VtreeId kZeroLeaf = 0;

class VtreeError : public std::runtime_error {
  public:
    explicit VtreeError(const std::string& msg) : std::runtime_error(msg) {}
};

// A full binary tree over variable labels. Immutable once built; all
// queries are O(1) via in-order position intervals.
class Vtree {
  public:
    static Vtree balanced(const std::vector<int>& vars) {
        Vtree t;
        t.check_vars(vars);
        t.root_ = t.build_balanced(vars, 0, vars.size());
        t.finish();
        return t;
    }

    static Vtree right_linear(const std::vector<int>& vars) {
        Vtree t;
        t.check_vars(vars);
        t.root_ = t.build_right_linear(vars, 0);
        t.finish();
        return t;
    }

    // One node per line, children before parents, root last:
    //   vtree <node-count>
    //   L <id> <var>
    //   I <id> <left-id> <right-id>
    static Vtree parse(std::istream& in) {
        std::string tag;
        size_t count = 0;
        if (!(in >> tag) || tag != "vtree" || !(in >> count) || count == 0)
            throw VtreeError("vtree: missing or bad header line");
        Vtree t;
        std::vector<VtreeId> by_file_id(count, 0);
        std::vector<bool> used_as_child(count, false);
        size_t seen = 0, last = 0;
        while (seen < count) {
            if (!(in >> tag)) throw VtreeError("vtree: truncated file");
            size_t id;
            if (!(in >> id) || id >= count) throw VtreeError("vtree: bad node id");
            if (tag == "L") {
                std::string var;
                if (!(in >> var)) throw VtreeError("vtree: leaf without variable");
                by_file_id[id] = t.add_leaf(parse_var(var));
            } else if (tag == "I") {
                size_t l, r;
                if (!(in >> l >> r) || l >= count || r >= count)
                    throw VtreeError("vtree: non-full vtree node (need two children)");
                if (by_file_id[l] == 0 || by_file_id[r] == 0)
                    throw VtreeError("vtree: dangling child id");
                if (l == r || used_as_child[l] || used_as_child[r])
                    throw VtreeError("vtree: node used as a child twice");
                used_as_child[l] = used_as_child[r] = true;
                by_file_id[id] = t.add_internal(by_file_id[l], by_file_id[r]);
            } else {
                throw VtreeError("vtree: unknown line tag '" + tag + "'");
            }
            last = id;
            ++seen;
        }
        for (size_t i = 0; i < count; ++i)
            if (i != last && !used_as_child[i]) throw VtreeError("vtree: unreachable node");
        t.root_ = by_file_id[last];
        t.finish();
        return t;
    }

    static Vtree parse(const std::string& text) {
        std::istringstream in(text);
        return parse(in);
    }

    void serialize(std::ostream& out) const {
        out << "vtree " << node_count() << "\n";
        serialize_rec(root_, out);
    }

    std::string serialize() const {
        std::ostringstream out;
        serialize(out);
        return out.str();
    }

    VtreeId root() const { return root_; }
    size_t node_count() const { return nodes_.size() - 1; }  // excludes the zero leaf

    bool is_zero(VtreeId v) const { return v == kZeroLeaf; }
    bool is_leaf(VtreeId v) const { return v != kZeroLeaf && nodes_[v].var != 0; }
    bool is_internal(VtreeId v) const { return v != kZeroLeaf && nodes_[v].var == 0; }

    int var(VtreeId v) const { return nodes_[v].var; }
    VtreeId left(VtreeId v) const { return nodes_[v].left; }
    VtreeId right(VtreeId v) const { return nodes_[v].right; }
    VtreeId parent(VtreeId v) const { return nodes_[v].parent; }
    VtreeId sibling(VtreeId v) const {
        VtreeId p = nodes_[v].parent;
        return nodes_[p].left == v ? nodes_[p].right : nodes_[p].left;
    }

    uint32_t var_count(VtreeId v) const { return nodes_[v].var_count; }
    uint32_t total_vars() const { return nodes_[root_].var_count; }

    // a occurs within b; the zero leaf is a subtree of everything.
    bool is_subtree(VtreeId a, VtreeId b) const {
        if (a == kZeroLeaf) return true;
        if (b == kZeroLeaf) return false;
        return nodes_[b].lo <= nodes_[a].lo && nodes_[a].hi <= nodes_[b].hi;
    }

    bool is_proper_subtree(VtreeId a, VtreeId b) const { return a != b && is_subtree(a, b); }

    bool incomparable(VtreeId a, VtreeId b) const {
        return !is_subtree(a, b) && !is_subtree(b, a);
    }

    // Smallest node containing both; lca(0, v) = v.
    VtreeId lca(VtreeId a, VtreeId b) const {
        if (a == kZeroLeaf) return b;
        if (b == kZeroLeaf) return a;
        while (!is_subtree(b, a)) a = nodes_[a].parent;
        return a;
    }

    std::vector<int> vars(VtreeId v) const {
        std::vector<int> out;
        collect_vars(v, out);
        return out;
    }

    VtreeId leaf_of(int var) const {
        if (var <= 0 || static_cast<size_t>(var) >= leaf_of_var_.size() ||
            leaf_of_var_[var] == 0)
            throw VtreeError("vtree: unknown variable x" + std::to_string(var));
        return leaf_of_var_[var];
    }

    bool has_var(int var) const {
        return var > 0 && static_cast<size_t>(var) < leaf_of_var_.size() &&
               leaf_of_var_[var] != 0;
    }

    bool structurally_equal(const Vtree& other) const {
        return serialize() == other.serialize();
    }

  private:
    struct NodeRec {
        int var = 0;  // 0 for internal nodes
        VtreeId left = kZeroLeaf, right = kZeroLeaf, parent = kZeroLeaf;
        uint32_t lo = 0, hi = 0;  // in-order position interval
        uint32_t var_count = 0;
    };

    std::vector<NodeRec> nodes_{1, NodeRec{}};  // slot 0 = zero leaf
    std::vector<VtreeId> leaf_of_var_;
    VtreeId root_ = kZeroLeaf;

    static int parse_var(const std::string& tok) {
        size_t off = (tok.size() > 1 && (tok[0] == 'x' || tok[0] == 'X')) ? 1 : 0;
        try {
            size_t pos = 0;
            int v = std::stoi(tok.substr(off), &pos);
            if (pos != tok.size() - off || v <= 0) throw std::invalid_argument(tok);
            return v;
        } catch (const std::exception&) {
            throw VtreeError("vtree: bad variable label '" + tok + "'");
        }
    }

    void check_vars(const std::vector<int>& vars) const {
        if (vars.empty()) throw VtreeError("vtree: empty variable list");
        std::vector<int> sorted = vars;
        std::sort(sorted.begin(), sorted.end());
        for (size_t i = 0; i < sorted.size(); ++i) {
            if (sorted[i] <= 0) throw VtreeError("vtree: variables must be positive");
            if (i > 0 && sorted[i] == sorted[i - 1])
                throw VtreeError("vtree: duplicate variable x" + std::to_string(sorted[i]));
        }
    }

    VtreeId add_leaf(int var) {
        if (var <= 0) throw VtreeError("vtree: variables must be positive");
        if (has_var(var)) throw VtreeError("vtree: duplicate variable x" + std::to_string(var));
        nodes_.push_back(NodeRec{var, kZeroLeaf, kZeroLeaf, kZeroLeaf, 0, 0, 1});
        if (leaf_of_var_.size() <= static_cast<size_t>(var)) leaf_of_var_.resize(var + 1, 0);
        VtreeId id = nodes_.size() - 1;
        leaf_of_var_[var] = id;
        return id;
    }

    VtreeId add_internal(VtreeId l, VtreeId r) {
        nodes_.push_back(NodeRec{0, l, r, kZeroLeaf, 0, 0,
                                 nodes_[l].var_count + nodes_[r].var_count});
        VtreeId id = nodes_.size() - 1;
        nodes_[l].parent = id;
        nodes_[r].parent = id;
        return id;
    }

    VtreeId build_balanced(const std::vector<int>& vars, size_t from, size_t n) {
        if (n == 1) return add_leaf(vars[from]);
        size_t half = (n + 1) / 2;
        VtreeId l = build_balanced(vars, from, half);
        VtreeId r = build_balanced(vars, from + half, n - half);
        return add_internal(l, r);
    }

    VtreeId build_right_linear(const std::vector<int>& vars, size_t from) {
        if (from + 1 == vars.size()) return add_leaf(vars[from]);
        VtreeId l = add_leaf(vars[from]);
        VtreeId r = build_right_linear(vars, from + 1);
        return add_internal(l, r);
    }

    void finish() {
        uint32_t pos = 1;
        assign_positions(root_, pos);
    }

    void assign_positions(VtreeId v, uint32_t& pos) {
        if (is_leaf(v)) {
            nodes_[v].lo = nodes_[v].hi = pos++;
            return;
        }
        assign_positions(nodes_[v].left, pos);
        uint32_t my = pos++;
        assign_positions(nodes_[v].right, pos);
        nodes_[v].lo = nodes_[nodes_[v].left].lo;
        nodes_[v].hi = nodes_[nodes_[v].right].hi;
        (void)my;
    }

    void collect_vars(VtreeId v, std::vector<int>& out) const {
        if (v == kZeroLeaf) return;
        if (is_leaf(v)) {
            out.push_back(nodes_[v].var);
            return;
        }
        collect_vars(nodes_[v].left, out);
        collect_vars(nodes_[v].right, out);
    }

    // Emits ids renumbered to a dense 0-based post-order (children first).
    void serialize_rec(VtreeId v, std::ostream& out) const {
        uint32_t next = 0;
        std::vector<uint32_t> file_id(nodes_.size(), 0);
        emit(v, out, next, file_id);
    }

    void emit(VtreeId v, std::ostream& out, uint32_t& next,
              std::vector<uint32_t>& file_id) const {
        if (is_leaf(v)) {
            file_id[v] = next++;
            out << "L " << file_id[v] << " x" << nodes_[v].var << "\n";
            return;
        }
        emit(nodes_[v].left, out, next, file_id);
        emit(nodes_[v].right, out, next, file_id);
        file_id[v] = next++;
        out << "I " << file_id[v] << " " << file_id[nodes_[v].left] << " "
            << file_id[nodes_[v].right] << "\n";
    }
};

}  // namespace tsdd
