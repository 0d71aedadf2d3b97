#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "tsdd/tsdd.hpp"

using namespace tsdd;
using namespace tsdd::testutil;

namespace {

// independent reference for small CNFs
uint64_t truth_table_count(const Cnf& cnf) {
    uint64_t count = 0;
    for (uint32_t a = 0; a < (1u << cnf.var_count); ++a) {
        bool sat = true;
        for (const auto& clause : cnf.clauses) {
            bool cs = false;
            for (int lit : clause) {
                bool val = (a >> (std::abs(lit) - 1)) & 1;
                if (lit > 0 ? val : !val) {
                    cs = true;
                    break;
                }
            }
            if (!cs) {
                sat = false;
                break;
            }
        }
        if (sat) ++count;
    }
    return count;
}

// independent backtracking n-queens solver
uint64_t queens_solutions(int n) {
    std::vector<int> cols;
    uint64_t count = 0;
    std::function<void(int)> place = [&](int row) {
        if (row == n) {
            ++count;
            return;
        }
        for (int c = 0; c < n; ++c) {
            bool ok = true;
            for (int r = 0; r < row; ++r)
                if (cols[r] == c || std::abs(cols[r] - c) == row - r) {
                    ok = false;
                    break;
                }
            if (ok) {
                cols.push_back(c);
                place(row + 1);
                cols.pop_back();
            }
        }
    };
    place(0);
    return count;
}

Manager manager_for(DiagramKind kind, int vars) {
    return Manager(kind, Vtree::balanced(iota_vars(vars)));
}

}  // namespace

TEST_CASE("dimacs parsing") {
    Cnf one = parse_dimacs("p cnf 1 1\n1 0\n");
    CHECK(one.var_count == 1);
    REQUIRE(one.clauses.size() == 1);
    CHECK(one.clauses[0] == std::vector<int>{1});

    Cnf equiv = parse_dimacs("c equivalence\np cnf 2 2\n1 -2 0\n-1 2 0\n");
    CHECK(equiv.clauses.size() == 2);
    CHECK(equiv.clauses[1] == std::vector<int>{-1, 2});

    CHECK_THROWS_AS(parse_dimacs("p cnf 2 3\n1 0\n"), CnfError);
    CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n5 0\n"), CnfError);
    CHECK_THROWS_AS(parse_dimacs("1 0\n"), CnfError);
    CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n1 2\n"), CnfError);

    // write/parse round trip on a generated instance
    Cnf q = gen_queens(4, true);
    std::ostringstream os;
    write_dimacs(q, os);
    Cnf back = parse_dimacs(os.str());
    CHECK(back.var_count == q.var_count);
    CHECK(back.clauses == q.clauses);
}

TEST_CASE("cnf compilation basics") {
    for (DiagramKind kind : kAllKinds) {
        Manager m = manager_for(kind, 2);
        INFO(kind_name(kind));
        // vacuous conjunction: the universe
        Cnf empty;
        empty.var_count = 2;
        CHECK(compile_cnf(m, empty) == m.universe_diagram(m.vtree().root()));
        // xor-ish constraint
        Cnf x = parse_dimacs("p cnf 2 2\n1 2 0\n-1 -2 0\n");
        CHECK(m.count_models(compile_cnf(m, x)) == 2);
    }
}

TEST_CASE("running example as a formula") {
    // x4 and (x1 or x2) and (x1 or x3) and (not x2 or x3)
    Cnf cnf = parse_dimacs("p cnf 4 4\n4 0\n1 2 0\n1 3 0\n-2 3 0\n");
    CHECK(truth_table_count(cnf) == 4);
    Manager nst = manager_for(DiagramKind::NSTSDD, 4);
    Part f = compile_cnf(nst, cnf);
    CHECK(nst.size(f) == 5);
    CHECK(nst.count_models(f) == 4);
    Manager sdd = manager_for(DiagramKind::SDD, 4);
    CHECK(sdd.size(compile_cnf(sdd, cnf)) == 9);
}

TEST_CASE("random cnf model counts agree with the truth table") {
    std::mt19937_64 rng(61);
    for (DiagramKind kind : kAllKinds) {
        for (int trial = 0; trial < 170; ++trial) {
            int n = 2 + int(rng() % 3);  // 2..4 vars
            Cnf cnf;
            cnf.var_count = n;
            int clause_count = int(rng() % 7);
            for (int i = 0; i < clause_count; ++i) {
                std::vector<int> clause;
                int width = 1 + int(rng() % 3);
                for (int j = 0; j < width; ++j) {
                    int v = 1 + int(rng() % n);
                    clause.push_back(rng() & 1 ? v : -v);
                }
                cnf.clauses.push_back(clause);
            }
            Manager m = manager_for(kind, n);
            Part f = compile_cnf(m, cnf);
            INFO(kind_name(kind) << " trial " << trial);
            REQUIRE(m.count_models(f) == truth_table_count(cnf));
        }
    }
}

TEST_CASE("queens encodings") {
    CHECK(queens_solutions(4) == 2);
    CHECK(queens_solutions(5) == 10);
    CHECK(queens_solutions(6) == 4);

    for (int n : {4, 5}) {
        for (bool onehot : {false, true}) {
            Cnf cnf = gen_queens(n, onehot);
            Manager m(DiagramKind::NSTSDD, Vtree::balanced(iota_vars(cnf.var_count)));
            Part f = compile_cnf(m, cnf);
            INFO("n=" << n << " onehot=" << onehot);
            CHECK(m.count_models(f) == queens_solutions(n));
        }
    }
    // both encodings across every kind at n=4
    for (DiagramKind kind : kAllKinds) {
        for (bool onehot : {false, true}) {
            Cnf cnf = gen_queens(4, onehot);
            Manager m(kind, Vtree::balanced(iota_vars(cnf.var_count)));
            INFO(kind_name(kind) << " onehot=" << onehot);
            CHECK(m.count_models(compile_cnf(m, cnf)) == 2);
        }
    }
    CHECK_THROWS_AS(gen_queens(0, true), CnfError);
}

TEST_CASE("dictionary encodings") {
    std::vector<std::string> one = {"a"};
    for (bool onehot : {false, true}) {
        DictionaryLayout layout = dictionary_layout(one, onehot, false);
        Manager m(DiagramKind::NZTSDD, Vtree::balanced(iota_vars(layout.var_count())));
        Part d = encode_dictionary(m, one, layout);
        CHECK(m.count_models(d) == 1);
    }

    std::vector<std::string> two = {"ab", "ba"};
    DictionaryLayout onehot_layout = dictionary_layout(two, true, false);
    CHECK(onehot_layout.alphabet.size() == 3);  // terminator, a, b
    CHECK(onehot_layout.var_count() == 6);
    Manager m(DiagramKind::NSTSDD, Vtree::balanced(iota_vars(onehot_layout.var_count())));
    Part d = encode_dictionary(m, two, onehot_layout);
    CHECK(m.count_models(d) == 2);
    CHECK(dictionary_contains(m, d, onehot_layout, "ab"));
    CHECK(dictionary_contains(m, d, onehot_layout, "ba"));
    CHECK_FALSE(dictionary_contains(m, d, onehot_layout, "aa"));
    CHECK_FALSE(dictionary_contains(m, d, onehot_layout, "b"));

    // binary-compact variable count arithmetic
    std::vector<std::string> words = {"cab", "bac", "cc"};
    DictionaryLayout bl = dictionary_layout(words, false, false);
    CHECK(bl.width == 3);
    CHECK(bl.alphabet.size() == 4);       // terminator + {a,b,c}
    CHECK(bl.vars_per_position == 2);     // ceil(log2 4)
    CHECK(bl.var_count() == 6);

    // membership on a larger random sample
    std::mt19937_64 rng(77);
    std::vector<std::string> sample;
    std::set<std::string> in_dict;
    for (int i = 0; i < 50; ++i) {
        std::string w;
        int len = 1 + int(rng() % 3);
        for (int j = 0; j < len; ++j) w += char('a' + rng() % 3);
        sample.push_back(w);
        in_dict.insert(w);
    }
    DictionaryLayout sl = dictionary_layout(sample, false, false);
    Manager sm(DiagramKind::NZTSDD, Vtree::balanced(iota_vars(sl.var_count())));
    Part sd = encode_dictionary(sm, sample, sl);
    CHECK(sm.count_models(sd) == in_dict.size());
    for (int i = 0; i < 60; ++i) {
        std::string w;
        int len = 1 + int(rng() % 3);
        for (int j = 0; j < len; ++j) w += char('a' + rng() % 3);
        CHECK(dictionary_contains(sm, sd, sl, w) == (in_dict.count(w) > 0));
    }

    // ascii form: the alphabet covers every 7-bit character
    DictionaryLayout al = dictionary_layout(one, false, true);
    CHECK(al.alphabet.size() == 128);
    CHECK(al.vars_per_position == 7);
}
