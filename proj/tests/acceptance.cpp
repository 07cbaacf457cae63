// Acceptance gate: one pass/fail line per criterion, exit nonzero if any
// criterion fails.  argv[1] is the path to the CLI binary (used by the
// determinism criterion).

#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "wtree/blowup.hpp"
#include "wtree/enumerate.hpp"
#include "wtree/ops.hpp"
#include "wtree/phi.hpp"
#include "wtree/tree.hpp"
#include "wtree/verify.hpp"

using namespace wtree;

namespace {

int g_failures = 0;

void criterion(int num, const std::string& desc, const std::function<void()>& body) {
    try {
        body();
        std::cout << "[PASS] criterion " << num << ": " << desc << "\n";
    } catch (const std::exception& e) {
        ++g_failures;
        std::cout << "[FAIL] criterion " << num << ": " << desc << " -- " << e.what()
                  << "\n";
    }
    std::cout.flush();
}

void accept(bool cond, const std::string& msg) {
    if (!cond) throw std::runtime_error(msg);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void accept_suite(const SuiteResult& r, long long min_checks) {
    if (!r.failures.empty())
        throw std::runtime_error(r.suite + ": " + std::to_string(r.failures.size()) +
                                 " failure(s), first: " + r.failures.front());
    accept(r.checks >= min_checks,
           r.suite + ": suspiciously few checks (" + std::to_string(r.checks) + ")");
}

int by_label(const WeightedTree& t, const std::string& l) {
    auto id = t.find_label(l);
    accept(id.has_value(), "missing label " + l);
    return *id;
}

struct CliRun {
    int exit_code = -1;
    std::string output; // stdout and stderr interleaved
};

CliRun run_cli(const std::string& command) {
    CliRun r;
    FILE* pipe = popen((command + " 2>&1").c_str(), "r");
    accept(pipe != nullptr, "popen failed for: " + command);
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.output.append(buf, got);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

} // namespace

int main(int argc, char** argv) {
    std::string cli = argc > 1 ? argv[1] : "";

    criterion(1, "golden bracket examples reproduce exactly", [] {
        auto moved = [](const std::string& tree, const std::string& vertex,
                        WeightedTree (*op)(const WeightedTree&, int)) {
            WeightedTree t = parse(tree);
            auto id = t.find_label(vertex);
            accept(id.has_value(), "missing vertex " + vertex);
            return print(op(t, *id));
        };
        accept(print(parse("o[b[d(1),c(1)],a(2)]")) == "o[a(2),b[c(1),d(1)]]",
               "display normalization");
        accept(moved("o[a(2),b[c(1),d(1)]]", "b", advance) == "o[b[a(2),c(1),d(1)]]",
               "advance b");
        accept(moved("o[a(2),b[c(1),d(1)]]", "a", advance) == "o[a(4)]", "advance a");
        accept(moved("o[a(2),b[c(1),d(1)]]", "b", collapse) == "o[a(2),c(1),d(1)]",
               "collapse b");
        accept(moved("o[a(2),b[c(1),d(1)]]", "b", prune) == "o[a(2),b(2)]", "prune b");
        accept(moved("o[a[b[d(1),e(1)],c(1)]]", "b", advance) ==
                   "o[a[b[c(1),d(1),e(1)]]]",
               "advance inside a chain");
        accept(print(terminalize(parse("o[a(1)[b(1),c(2)]]"))) == "o[a(4)]",
               "terminalize");
        std::vector<WeightedTree> ms = mon(parse("o[a(2),b[c(1),d(1)]]"));
        accept(ms.size() == 2, "mon size");
        accept(print(ms[0]) == "o[a(4)]" && print(ms[1]) == "o[b[a(2),c(1),d(1)]]",
               "mon members");
    });

    criterion(2, "three equation routes agree (weight <= 5, n in 1..3, under 60 s)", [] {
        auto t0 = std::chrono::steady_clock::now();
        accept_suite(suite_phi_equiv(5, 3), 200);
        accept(seconds_since(t0) < 60.0, "budget exceeded");
    });

    criterion(3, "worked example system, exact term by term", [] {
        WeightedTree t = parse("o[a(2),b[c(1),d(1)]]");
        int a = by_label(t, "a"), b = by_label(t, "b");
        int c = by_label(t, "c"), d = by_label(t, "d");
        for (int n = 1; n <= 2; ++n) {
            PolySystem sys = phi_direct(t, n);
            for (int e = 1; e <= n; ++e) {
                Poly expected =
                    Poly::var(z_var(a)) * Poly::var(w_var(a, e)) +
                    Poly::var(z_var(b)) * Poly::var(z_var(c)) * Poly::var(w_var(c, e)) +
                    Poly::var(z_var(b)) * Poly::var(z_var(d)) * Poly::var(w_var(d, e));
                accept(sys.components[e - 1] == expected, "component mismatch");
            }
        }
        PolySystem sys = phi_bracket("o[a(2),b[c(1),d(1)]]", 1);
        accept(poly_to_string(sys.components[0], sys.names) ==
                   "z_b*z_c*w_c_1 + z_b*z_d*w_d_1 + z_a*w_a_1",
               "printed form");
    });

    criterion(4, "enumeration matches the brute-force oracle (d <= 3, under 300 s)", [] {
        auto t0 = std::chrono::steady_clock::now();
        accept(lambda(1).size() == 2, "weight-1 count");
        accept(lambda(2).size() == 4, "weight-2 count");
        for (long long d = 1; d <= 3; ++d)
            accept(lambda(d).keys() == oracle_lambda(d, static_cast<int>(2 * d + 1)).keys(),
                   "oracle mismatch at weight " + std::to_string(d));
        accept(seconds_since(t0) < 300.0, "budget exceeded");
    });

    criterion(5, "transforms strictly increase br or kill it (weight <= 5)", [] {
        accept_suite(suite_mon1(5), 500);
    });

    criterion(6, "staged members keep br outside 1..k (d <= 5)", [] {
        for (long long d = 1; d <= 5; ++d) accept_suite(suite_mon2(d), d);
    });

    criterion(7, "every chart verifies (d <= 4, n <= 2) and the worked charts match", [] {
        accept_suite(suite_zgk(4, 2), 100);
        std::vector<BlowupChart> charts = blowup_charts(parse("o[a(2),b[c(1),d(1)]]"), 1);
        accept(charts.size() == 2, "chart count");
        accept(charts[0].terminal_direction, "chart 1 direction");
        accept(canonical_form(charts[0].matched) == canonical_form(parse("o[a(4)]")),
               "chart 1 matched tree");
        accept(!charts[1].terminal_direction, "chart 2 direction");
        accept(canonical_form(charts[1].matched) ==
                   canonical_form(parse("o[b[a(2),c(1),d(1)]]")),
               "chart 2 matched tree");
    });

    criterion(8, "certified normal crossings for every final tree (d <= 4, n <= 2, under 300 s)", [] {
        auto t0 = std::chrono::steady_clock::now();
        for (long long d = 1; d <= 4; ++d)
            for (int n = 1; n <= 2; ++n) accept_suite(suite_nc(d, n), 1);
        // re-derive the certificates independently of the suite
        for (long long d = 1; d <= 4; ++d) {
            PipelineReport rep = run_pipeline(d, 2);
            for (const TerminalCertificate& cert : rep.terminal) {
                WeightedTree pt = parse(cert.tree);
                accept(classify(pt).path_tree, "final tree is not a path tree");
                accept(cert.z_monomial.size() == pt.size() - 1,
                       "certificate degree is not the trunk length");
                for (const auto& [v, e] : cert.z_monomial)
                    accept(e == 1, "certificate monomial is not squarefree");
                accept(cert.w_vars.size() == 2, "certificate slot count");
            }
        }
        accept(seconds_since(t0) < 300.0, "budget exceeded");
    });

    criterion(9, "parser survives 1000 seeded trees and rejects malformed input", [] {
        accept_suite(suite_roundtrip(3, 1000003), 1000);
        for (const std::string& bad :
             {std::string("o[a(1)"), std::string("o[a(1),a(2)]"), std::string("o[]"),
              std::string("o[a(-1)]"), std::string("o[a(99999999999999999999)]"),
              std::string("o[a(1)]x")}) {
            try {
                parse(bad);
                throw std::runtime_error("accepted malformed input: " + bad);
            } catch (const ParseError& e) {
                accept(e.position >= 1 && e.position <= bad.size() + 1,
                       "error position out of range for: " + bad);
            }
        }
    });

    criterion(10, "CLI output is byte-identical across repeated runs", [&cli] {
        accept(!cli.empty(), "CLI path missing (argv[1])");
        const std::string q = "\"" + cli + "\"";
        const std::string tree = "'o[a(2),b[c(1),d(1)]]'";
        std::vector<std::string> commands = {
            q + " --format json classify --tree " + tree,
            q + " mon --tree " + tree,
            q + " enumerate --d 4",
            q + " --format json phi --tree " + tree + " --n 2 --method bracket",
            q + " --format json blowup --tree " + tree + " --n 2",
            q + " pipeline --d 3 --n 2",
            "WTREE_SEED=42 " + q + " verify --suite roundtrip --d 3",
        };
        for (const std::string& cmd : commands) {
            CliRun first = run_cli(cmd);
            CliRun second = run_cli(cmd);
            accept(first.exit_code == 0, "nonzero exit: " + cmd + "\n" + first.output);
            accept(first.exit_code == second.exit_code && first.output == second.output,
                   "output drifted between runs: " + cmd);
            accept(!first.output.empty(), "no output: " + cmd);
        }
        // failure paths must be deterministic too
        std::string bad = q + " parse --tree 'o[['";
        CliRun first = run_cli(bad);
        CliRun second = run_cli(bad);
        accept(first.exit_code != 0, "malformed input was accepted by the CLI");
        accept(first.exit_code == second.exit_code && first.output == second.output,
               "error output drifted between runs");
    });

    std::cout << (10 - g_failures) << "/10 criteria passed\n";
    return g_failures == 0 ? 0 : 1;
}
