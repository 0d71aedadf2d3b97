#pragma once

// Benchmark front ends: DIMACS CNF ingestion, the bottom-up compilation
// driver, the n-queens generators and the dictionary encoders.

#include <cmath>
#include <istream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "tsdd/ops.hpp"

namespace tsdd {

struct Cnf {
    int var_count = 0;
    std::vector<std::vector<int>> clauses;
};

class CnfError : public std::runtime_error {
  public:
    explicit CnfError(const std::string& msg) : std::runtime_error(msg) {}
};

inline Cnf parse_dimacs(std::istream& in) {
    Cnf cnf;
    long declared_clauses = -1;
    std::string line;
    std::vector<int> current;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == 'c') continue;
        std::istringstream ls(line);
        if (line[0] == 'p') {
            std::string p, fmt;
            if (!(ls >> p >> fmt >> cnf.var_count >> declared_clauses) || fmt != "cnf" ||
                cnf.var_count <= 0 || declared_clauses < 0)
                throw CnfError("dimacs: bad problem line");
            continue;
        }
        if (declared_clauses < 0) throw CnfError("dimacs: clause before problem line");
        int lit;
        while (ls >> lit) {
            if (lit == 0) {
                cnf.clauses.push_back(current);
                current.clear();
            } else {
                if (std::abs(lit) > cnf.var_count)
                    throw CnfError("dimacs: literal out of range: " + std::to_string(lit));
                current.push_back(lit);
            }
        }
    }
    if (!current.empty()) throw CnfError("dimacs: unterminated clause");
    if (declared_clauses < 0) throw CnfError("dimacs: missing problem line");
    if (static_cast<long>(cnf.clauses.size()) != declared_clauses)
        throw CnfError("dimacs: clause count mismatch");
    return cnf;
}

inline Cnf parse_dimacs(const std::string& text) {
    std::istringstream in(text);
    return parse_dimacs(in);
}

inline void write_dimacs(const Cnf& cnf, std::ostream& out) {
    out << "p cnf " << cnf.var_count << " " << cnf.clauses.size() << "\n";
    for (const auto& clause : cnf.clauses) {
        for (int lit : clause) out << lit << " ";
        out << "0\n";
    }
}

// Clause diagrams are unions of literals; the formula is their
// intersection folded in input order.
inline Part compile_cnf(Manager& m, const Cnf& cnf) {
    VtreeId scope = m.vtree().root();
    for (const auto& clause : cnf.clauses)
        for (int lit : clause)
            if (!m.vtree().has_var(std::abs(lit)))
                throw ManagerError("cnf: variable x" + std::to_string(std::abs(lit)) +
                                   " not in the vtree");
    Part acc = m.universe_diagram(scope);
    for (const auto& clause : cnf.clauses) {
        Part cd = m.empty_diagram();
        for (int lit : clause)
            cd = m.apply(cd, m.literal(scope, std::abs(lit), lit > 0), SetOp::Union);
        acc = m.apply(acc, cd, SetOp::Intersect);
    }
    return acc;
}

// ---------------------------------------------------------------------------
// n-queens
// ---------------------------------------------------------------------------

namespace queens_detail {

inline void at_most_one(std::vector<std::vector<int>>& clauses, const std::vector<int>& vars) {
    for (size_t i = 0; i < vars.size(); ++i)
        for (size_t j = i + 1; j < vars.size(); ++j)
            clauses.push_back({-vars[i], -vars[j]});
}

}  // namespace queens_detail

// One variable per square; rows pick exactly one column, columns and
// diagonals at most one.
inline Cnf queens_onehot(int n) {
    if (n < 1) throw CnfError("queens: n must be positive");
    Cnf cnf;
    cnf.var_count = n * n;
    auto var = [n](int r, int c) { return r * n + c + 1; };
    for (int r = 0; r < n; ++r) {
        std::vector<int> row;
        for (int c = 0; c < n; ++c) row.push_back(var(r, c));
        cnf.clauses.push_back(row);  // at least one
        queens_detail::at_most_one(cnf.clauses, row);
    }
    for (int c = 0; c < n; ++c) {
        std::vector<int> col;
        for (int r = 0; r < n; ++r) col.push_back(var(r, c));
        queens_detail::at_most_one(cnf.clauses, col);
    }
    for (int d = -(n - 1); d <= n - 1; ++d) {
        std::vector<int> diag1, diag2;
        for (int r = 0; r < n; ++r) {
            int c1 = r + d, c2 = (n - 1 - r) + d;
            if (c1 >= 0 && c1 < n) diag1.push_back(var(r, c1));
            if (c2 >= 0 && c2 < n) diag2.push_back(var(r, c2));
        }
        queens_detail::at_most_one(cnf.clauses, diag1);
        queens_detail::at_most_one(cnf.clauses, diag2);
    }
    return cnf;
}

// ceil(log2 n) column-index bits per row; invalid codes and attacking
// pairs are forbidden clause by clause.
inline Cnf queens_binary(int n) {
    if (n < 1) throw CnfError("queens: n must be positive");
    int bits = 1;
    while ((1 << bits) < n) ++bits;
    Cnf cnf;
    cnf.var_count = n * bits;
    // row r encodes its column in variables r*bits+1 .. r*bits+bits
    auto forbid = [&](int r, int value) {
        std::vector<int> clause;
        for (int b = 0; b < bits; ++b) {
            int v = r * bits + b + 1;
            clause.push_back((value >> b) & 1 ? -v : v);
        }
        return clause;
    };
    for (int r = 0; r < n; ++r)
        for (int value = n; value < (1 << bits); ++value)
            cnf.clauses.push_back(forbid(r, value));
    for (int r1 = 0; r1 < n; ++r1) {
        for (int r2 = r1 + 1; r2 < n; ++r2) {
            int d = r2 - r1;
            for (int c = 0; c < n; ++c) {
                for (int c2 : {c, c + d, c - d}) {
                    if (c2 < 0 || c2 >= n) continue;
                    std::vector<int> clause = forbid(r1, c);
                    std::vector<int> second = forbid(r2, c2);
                    clause.insert(clause.end(), second.begin(), second.end());
                    cnf.clauses.push_back(clause);
                }
            }
        }
    }
    return cnf;
}

inline Cnf gen_queens(int n, bool onehot) {
    return onehot ? queens_onehot(n) : queens_binary(n);
}

// ---------------------------------------------------------------------------
// dictionaries
// ---------------------------------------------------------------------------

// '\0' is the reserved terminator padding short words to full width.
struct DictionaryLayout {
    bool onehot = false;
    std::vector<char> alphabet;  // terminator first
    size_t width = 0;            // positions
    int vars_per_position = 0;

    int var_count() const { return static_cast<int>(width) * vars_per_position; }

    // The full assignment (as a combination of true variables) of a word.
    std::vector<int> word_combination(const std::string& word) const {
        if (word.size() > width) throw CnfError("dictionary: word longer than layout");
        std::vector<int> comb;
        for (size_t p = 0; p < width; ++p) {
            char ch = p < word.size() ? word[p] : '\0';
            auto it = std::find(alphabet.begin(), alphabet.end(), ch);
            if (it == alphabet.end())
                throw CnfError(std::string("dictionary: symbol outside alphabet: '") + ch +
                               "'");
            int idx = static_cast<int>(it - alphabet.begin());
            int base = static_cast<int>(p) * vars_per_position;
            if (onehot) {
                comb.push_back(base + idx + 1);
            } else {
                for (int b = 0; b < vars_per_position; ++b)
                    if ((idx >> b) & 1) comb.push_back(base + b + 1);
            }
        }
        return comb;
    }
};

inline DictionaryLayout dictionary_layout(const std::vector<std::string>& words, bool onehot,
                                          bool ascii) {
    if (words.empty()) throw CnfError("dictionary: no words");
    DictionaryLayout layout;
    layout.onehot = onehot;
    std::set<char> symbols;
    for (const auto& w : words) {
        layout.width = std::max(layout.width, w.size());
        for (char c : w) {
            if (c == '\0') throw CnfError("dictionary: NUL is reserved");
            symbols.insert(c);
        }
    }
    layout.alphabet.push_back('\0');
    if (ascii) {
        for (int c = 1; c < 128; ++c) layout.alphabet.push_back(static_cast<char>(c));
    } else {
        layout.alphabet.insert(layout.alphabet.end(), symbols.begin(), symbols.end());
    }
    if (onehot) {
        layout.vars_per_position = static_cast<int>(layout.alphabet.size());
    } else {
        int bits = 1;
        while ((size_t{1} << bits) < layout.alphabet.size()) ++bits;
        layout.vars_per_position = bits;
    }
    return layout;
}

// The dictionary diagram is the union over words of their full-width
// assignments; its model count is the word count.
inline Part encode_dictionary(Manager& m, const std::vector<std::string>& words,
                              const DictionaryLayout& layout) {
    Part acc = m.empty_diagram();
    for (const auto& w : words)
        acc = m.apply(acc, m.combination_diagram(layout.word_combination(w), m.vtree().root()),
                      SetOp::Union);
    return acc;
}

inline bool dictionary_contains(Manager& m, const Part& dict, const DictionaryLayout& layout,
                                const std::string& word) {
    Part probe = m.combination_diagram(layout.word_combination(word), m.vtree().root());
    return m.apply(dict, probe, SetOp::Intersect) != m.empty_diagram();
}

}  // namespace tsdd
