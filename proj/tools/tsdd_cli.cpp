// Command-line front end: compile DIMACS/word-list inputs into any of the
// six diagram kinds, generate n-queens instances, and run the canonicity
// fuzzer. Outputs are stats JSON records and optional DOT exports.

#include <chrono>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "tsdd/tsdd.hpp"

using namespace tsdd;
using json = nlohmann::json;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitParse = 2;
constexpr int kExitVtree = 3;
constexpr int kExitFuzzFailure = 4;

Vtree build_vtree(const std::string& mode, int var_count) {
    std::vector<int> vars(var_count);
    for (int i = 0; i < var_count; ++i) vars[i] = i + 1;
    if (mode == "balanced") return Vtree::balanced(vars);
    if (mode == "right-linear") return Vtree::right_linear(vars);
    if (mode.rfind("file:", 0) == 0) {
        std::ifstream in(mode.substr(5));
        if (!in) throw VtreeError("cannot open vtree file " + mode.substr(5));
        return Vtree::parse(in);
    }
    throw VtreeError("unknown vtree mode '" + mode + "'");
}

struct Stats {
    DiagramKind kind;
    uint64_t size = 0, bytes = 0, node_count = 0, model_count = 0;
    double wall_ms = 0;
    bool with_timing = false;

    json record() const {
        json j;
        j["kind"] = kind_name(kind);
        j["size"] = size;
        j["bytes"] = bytes;
        j["node_count"] = node_count;
        j["model_count"] = model_count;
        if (with_timing) j["wall_ms"] = wall_ms;
        return j;
    }
};

Stats collect(Manager& m, const Part& root, double wall_ms, bool with_timing) {
    Stats s;
    s.kind = m.kind();
    s.size = m.size(root);
    s.bytes = m.memory_bytes(root);
    s.node_count = m.node_count(root);
    s.model_count = m.count_models(root);
    s.wall_ms = wall_ms;
    s.with_timing = with_timing;
    return s;
}

void emit(const Stats& s, const std::string& stats_path) {
    json j = s.record();
    std::cout << j.dump(2) << "\n";
    if (!s.with_timing) std::cerr << "wall_ms " << s.wall_ms << "\n";
    if (!stats_path.empty()) {
        std::ofstream out(stats_path);
        out << j.dump(2) << "\n";
    }
}

void maybe_dot(Manager& m, const Part& root, const std::string& path) {
    if (path.empty()) return;
    std::ofstream out(path);
    m.export_dot(root, out);
}

std::vector<std::string> read_words(std::istream& in) {
    std::vector<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
        if (!line.empty()) words.push_back(line);
    }
    return words;
}

// random full binary tree over 1..n
Vtree random_vtree(int n, std::mt19937_64& rng) {
    std::function<std::string(int, int)> gen = [&](int from, int count) -> std::string {
        if (count == 1) return "x" + std::to_string(from);
        int split = 1 + int(rng() % (count - 1));
        return "(" + gen(from, split) + " " + gen(from + split, count - split) + ")";
    };
    std::string e = gen(1, n);
    std::vector<std::string> lines;
    int next = 0;
    std::function<int(const std::string&, size_t&)> emit_shape =
        [&](const std::string& s, size_t& pos) -> int {
        if (s[pos] == '(') {
            ++pos;
            int l = emit_shape(s, pos);
            ++pos;
            int r = emit_shape(s, pos);
            ++pos;
            lines.push_back("I " + std::to_string(next) + " " + std::to_string(l) + " " +
                            std::to_string(r));
            return next++;
        }
        size_t start = pos;
        while (pos < s.size() && s[pos] != ' ' && s[pos] != ')') ++pos;
        lines.push_back("L " + std::to_string(next) + " " + s.substr(start, pos - start));
        return next++;
    };
    size_t pos = 0;
    emit_shape(e, pos);
    std::string text = "vtree " + std::to_string(lines.size()) + "\n";
    for (const auto& l : lines) text += l + "\n";
    return Vtree::parse(text);
}

int run_compile(const std::string& input, const std::string& format,
                const std::string& kind_str, const std::string& vtree_mode,
                const std::string& dot_path, const std::string& stats_path,
                bool check_rewrites, bool with_timing, const std::string& encoding,
                const std::string& alphabet) {
    DiagramKind kind;
    if (!parse_kind(kind_str, kind)) {
        std::cerr << "unknown kind '" << kind_str << "'\n";
        return kExitUsage;
    }
    std::ifstream in(input);
    if (!in) {
        std::cerr << "cannot open " << input << "\n";
        return kExitParse;
    }
    try {
        Cnf cnf;
        std::vector<std::string> words;
        DictionaryLayout layout;
        int var_count = 0;
        if (format == "dimacs") {
            cnf = parse_dimacs(in);
            var_count = cnf.var_count;
        } else if (format == "words") {
            words = read_words(in);
            layout = dictionary_layout(words, encoding == "onehot", alphabet == "ascii");
            var_count = layout.var_count();
        } else {
            std::cerr << "unknown format '" << format << "'\n";
            return kExitUsage;
        }
        Vtree vt = build_vtree(vtree_mode, var_count);
        for (int v = 1; v <= var_count; ++v)
            if (!vt.has_var(v)) {
                std::cerr << "vtree misses x" << v << "\n";
                return kExitVtree;
            }
        if (check_rewrites && var_count > 5) {
            std::cerr << "--check-rewrites needs at most 5 variables\n";
            return kExitParse;
        }
        Manager m(kind, vt);
        RewriteCheckReport report;
        report.keep_trace = check_rewrites;
        if (check_rewrites) m.set_rewrite_hook(oracle_rewrite_checker(m, report));
        auto start = std::chrono::steady_clock::now();
        Part root =
            format == "dimacs" ? compile_cnf(m, cnf) : encode_dictionary(m, words, layout);
        double ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - start)
                        .count();
        if (check_rewrites) {
            for (const auto& line : report.trace) std::cerr << line << "\n";
            if (!report.violations.empty()) {
                for (const auto& v : report.violations)
                    std::cerr << "VIOLATION " << v << "\n";
                return kExitFuzzFailure;
            }
            std::cerr << "check-rewrites: " << report.firings << " firings verified\n";
        }
        emit(collect(m, root, ms, with_timing), stats_path);
        maybe_dot(m, root, dot_path);
        return 0;
    } catch (const CnfError& e) {
        std::cerr << e.what() << "\n";
        return kExitParse;
    } catch (const VtreeError& e) {
        std::cerr << e.what() << "\n";
        return kExitVtree;
    } catch (const ManagerError& e) {
        std::cerr << e.what() << "\n";
        return kExitVtree;
    }
}

int run_queens(int n, const std::string& encoding, const std::string& kind_str,
               const std::string& vtree_mode, const std::string& dot_path,
               const std::string& stats_path, bool with_timing,
               const std::string& dimacs_out) {
    DiagramKind kind;
    if (!parse_kind(kind_str, kind)) {
        std::cerr << "unknown kind '" << kind_str << "'\n";
        return kExitUsage;
    }
    if (n < 4) {
        std::cerr << "queens: n must be at least 4\n";
        return kExitParse;
    }
    Cnf cnf = gen_queens(n, encoding == "onehot");
    if (!dimacs_out.empty()) {
        std::ofstream out(dimacs_out);
        write_dimacs(cnf, out);
    }
    Vtree vt = build_vtree(vtree_mode, cnf.var_count);
    Manager m(kind, vt);
    auto start = std::chrono::steady_clock::now();
    Part root = compile_cnf(m, cnf);
    double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    emit(collect(m, root, ms, with_timing), stats_path);
    maybe_dot(m, root, dot_path);
    return 0;
}

int run_fuzz(int vars, int trials, uint64_t seed, std::vector<std::string> kind_names,
             const std::string& disable_rule, bool check_rewrites) {
    if (vars < 2 || vars > 5) {
        std::cerr << "fuzz: --vars must be between 2 and 5\n";
        return kExitParse;
    }
    if (kind_names.empty())
        kind_names = {"sdd", "zsdd", "nstsdd", "nztsdd", "estsdd", "eztsdd"};
    std::vector<DiagramKind> kinds;
    for (const auto& s : kind_names) {
        DiagramKind k;
        if (!parse_kind(s, k)) {
            std::cerr << "unknown kind '" << s << "'\n";
            return kExitUsage;
        }
        kinds.push_back(k);
    }
    size_t failures = 0;
    for (DiagramKind kind : kinds) {
        std::mt19937_64 rng(seed);
        size_t kind_failures = 0, firings = 0;
        for (int trial = 0; trial < trials; ++trial) {
            uint64_t trial_seed = rng();
            std::mt19937_64 trng(trial_seed);
            int n = 2 + int(trng() % (vars - 1));
            Vtree vt = random_vtree(n, trng);
            Manager m(kind, vt);
            if (!disable_rule.empty()) m.disable_rule(disable_rule);
            RewriteCheckReport report;
            report.keep_trace = true;
            if (check_rewrites) m.set_rewrite_hook(oracle_rewrite_checker(m, report));
            CombinationSet q(vt.vars(vt.root()));
            size_t universe = size_t{1} << n;
            for (uint32_t c = 0; c < universe; ++c)
                if (trng() & 1) q.insert_mask(c);
            auto combs = q.combinations();
            Part a = m.compile_combinations(combs, vt.root());
            std::shuffle(combs.begin(), combs.end(), trng);
            Part b = m.compile_combinations(combs, vt.root());
            bool bad = false;
            if (!(a == b)) bad = true;
            CombinationSet sem =
                std_semantics(kind) ? std_ext_sem(m, a) : zero_ext_sem(m, a);
            if (!sem.same_combinations(q)) bad = true;
            if (!report.violations.empty()) bad = true;
            firings += report.firings;
            if (bad) {
                ++kind_failures;
                std::cerr << "FAIL kind=" << kind_name(kind) << " seed=" << trial_seed
                          << " set=" << q.to_string() << "\n";
                for (const auto& v : report.violations) std::cerr << "  " << v << "\n";
                for (const auto& l : report.trace) std::cerr << "  " << l << "\n";
            }
        }
        std::cout << "kind=" << kind_name(kind) << " trials=" << trials
                  << " failures=" << kind_failures;
        if (check_rewrites) std::cout << " firings=" << firings;
        std::cout << "\n";
        failures += kind_failures;
    }
    return failures == 0 ? 0 : kExitFuzzFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tagged sentential decision diagram toolkit"};
    app.require_subcommand(1);

    auto* cmd_compile = app.add_subcommand("compile", "compile a DIMACS file or word list");
    std::string input, format = "dimacs", kind = "nstsdd", vtree_mode = "balanced";
    std::string dot_path, stats_path, encoding = "binary", alphabet = "compact";
    bool check_rewrites = false, with_timing = false;
    cmd_compile->add_option("--input", input, "input path")->required();
    cmd_compile->add_option("--format", format, "dimacs|words");
    cmd_compile->add_option("--kind", kind, "sdd|zsdd|nstsdd|nztsdd|estsdd|eztsdd");
    cmd_compile->add_option("--vtree", vtree_mode, "balanced|right-linear|file:PATH");
    cmd_compile->add_option("--dot", dot_path, "write DOT export here");
    cmd_compile->add_option("--stats", stats_path, "write the stats JSON here");
    cmd_compile->add_option("--encoding", encoding, "words: binary|onehot");
    cmd_compile->add_option("--alphabet", alphabet, "words: compact|ascii");
    cmd_compile->add_flag("--check-rewrites", check_rewrites,
                          "verify every rewrite against the oracle (max 5 variables)");
    cmd_compile->add_flag("--with-timing", with_timing,
                          "include wall_ms in the stats record (non-reproducible)");

    auto* cmd_queens = app.add_subcommand("queens", "compile an n-queens instance");
    int queens_n = 8;
    std::string q_encoding = "onehot", q_kind = "nstsdd", q_vtree = "balanced";
    std::string q_dot, q_stats, q_dimacs;
    bool q_timing = false;
    cmd_queens->add_option("-n", queens_n, "board size")->required();
    cmd_queens->add_option("--encoding", q_encoding, "binary|onehot");
    cmd_queens->add_option("--kind", q_kind, "diagram kind");
    cmd_queens->add_option("--vtree", q_vtree, "balanced|right-linear|file:PATH");
    cmd_queens->add_option("--dot", q_dot, "write DOT export here");
    cmd_queens->add_option("--stats", q_stats, "write the stats JSON here");
    cmd_queens->add_option("--dimacs", q_dimacs, "also write the generated CNF here");
    cmd_queens->add_flag("--with-timing", q_timing, "include wall_ms in the stats record");

    auto* cmd_fuzz = app.add_subcommand("fuzz", "canonicity and oracle fuzzing");
    int f_vars = 4, f_trials = 1000;
    uint64_t f_seed = 20240817;
    std::vector<std::string> f_kinds;
    std::string f_disable;
    bool f_check = false;
    cmd_fuzz->add_option("--vars", f_vars, "maximum variables (2..5)");
    cmd_fuzz->add_option("--trials", f_trials, "trials per kind");
    cmd_fuzz->add_option("--seed", f_seed, "64-bit seed");
    cmd_fuzz->add_option("--kinds", f_kinds, "kinds to fuzz (default all six)");
    cmd_fuzz->add_option("--disable-rule", f_disable,
                         "fault injection: skip the named rewrite rule");
    cmd_fuzz->add_flag("--check-rewrites", f_check, "verify every rewrite firing");

    CLI11_PARSE(app, argc, argv);

    if (cmd_compile->parsed())
        return run_compile(input, format, kind, vtree_mode, dot_path, stats_path,
                           check_rewrites, with_timing, encoding, alphabet);
    if (cmd_queens->parsed())
        return run_queens(queens_n, q_encoding, q_kind, q_vtree, q_dot, q_stats, q_timing,
                          q_dimacs);
    if (cmd_fuzz->parsed())
        return run_fuzz(f_vars, f_trials, f_seed, f_kinds, f_disable, f_check);
    return kExitUsage;
}
