// Command line front end for the weighted-tree calculus: parsing and
// classification, the elementary moves, enumeration of the index sets,
// local equation systems, blowup charts, the full staged pipeline, and the
// property-sweep verifier.
//
// Exit codes: 0 success, 1 domain/parse error (with a machine readable
// error object in JSON mode), 2 verification suite failure.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "wtree/blowup.hpp"
#include "wtree/enumerate.hpp"
#include "wtree/errors.hpp"
#include "wtree/json_io.hpp"
#include "wtree/ops.hpp"
#include "wtree/phi.hpp"
#include "wtree/poly.hpp"
#include "wtree/random_trees.hpp"
#include "wtree/tree.hpp"
#include "wtree/verify.hpp"

namespace {

constexpr std::uint64_t kDefaultSeed = 1000003;

std::uint64_t seed_from_env() {
    const char* env = std::getenv("WTREE_SEED");
    if (!env || !*env) return kDefaultSeed;
    std::string s(env);
    std::uint64_t value = 0;
    for (char c : s) {
        if (c < '0' || c > '9')
            throw wtree::DomainError("WTREE_SEED must be a decimal integer");
        value = value * 10 + static_cast<std::uint64_t>(c - '0');
    }
    return value;
}

// Trees come from --tree (exactly one) or --file (one bracket string per
// line, blank lines skipped).
std::vector<wtree::WeightedTree> load_trees(const std::string& tree_arg,
                                            const std::string& file_arg,
                                            bool& from_file) {
    if (tree_arg.empty() == file_arg.empty())
        throw wtree::DomainError("provide exactly one of --tree or --file");
    std::vector<wtree::WeightedTree> out;
    if (!tree_arg.empty()) {
        from_file = false;
        out.push_back(wtree::parse(tree_arg));
        return out;
    }
    from_file = true;
    std::ifstream in(file_arg);
    if (!in) throw wtree::DomainError("cannot open file '" + file_arg + "'");
    std::string line;
    while (std::getline(in, line)) {
        std::string trimmed = line;
        trimmed.erase(0, trimmed.find_first_not_of(" \t\r"));
        if (trimmed.empty()) continue;
        out.push_back(wtree::parse(line));
    }
    if (out.empty()) throw wtree::DomainError("no trees in '" + file_arg + "'");
    return out;
}

int resolve_vertex(const wtree::WeightedTree& t, const std::string& label) {
    auto id = t.find_label(label);
    if (!id) throw wtree::DomainError("unknown vertex label '" + label + "'");
    return *id;
}

std::string classification_text(const wtree::WeightedTree& t) {
    wtree::TreeClassification c = wtree::classify(t);
    std::ostringstream os;
    os << "terminally_weighted: " << (c.terminally_weighted ? "true" : "false") << '\n'
       << "stable: " << (c.stable ? "true" : "false") << '\n'
       << "semistable: " << (c.semistable ? "true" : "false") << '\n'
       << "path_tree: " << (c.path_tree ? "true" : "false") << '\n'
       << "simple: " << (c.simple ? "true" : "false") << '\n';
    os << "trunk:";
    for (int v : c.trunk) os << ' ' << t.at(v).label;
    os << '\n';
    os << "branch_vertex: " << (c.branch_vertex ? t.at(*c.branch_vertex).label : "none")
       << '\n';
    os << "br: " << c.br << '\n';
    return os.str();
}

std::string system_text(const wtree::PolySystem& sys) {
    std::ostringstream os;
    for (int e = 1; e <= sys.n; ++e)
        os << "Phi_" << e << " = "
           << wtree::poly_to_string(sys.components[e - 1], sys.names) << '\n';
    return os.str();
}

std::string chart_text(const wtree::BlowupChart& c) {
    const auto& names = c.system.names;
    std::ostringstream os;
    os << "chart " << c.chart_index
       << (c.terminal_direction ? " (terminal direction)" : " (branch direction)") << '\n';
    os << "  substitution:";
    for (const auto& [v, p] : c.substitution)
        os << ' ' << wtree::var_name(v, names) << " -> " << wtree::poly_to_string(p, names);
    os << '\n';
    for (int e = 1; e <= c.system.n; ++e)
        os << "  Phi_" << e << " = "
           << wtree::poly_to_string(c.system.components[e - 1], names) << '\n';
    os << "  matched: " << wtree::print(c.matched) << '\n';
    if (!c.normalization.empty()) {
        os << "  normalization:";
        for (const auto& [v, p] : c.normalization)
            os << ' ' << wtree::var_name(v, names) << " -> "
               << wtree::poly_to_string(p, names);
        os << '\n';
    }
    std::ostringstream vm;
    for (const auto& [from, to] : c.variable_map)
        if (!(from == to)) vm << ' ' << wtree::var_name(from, names) << " -> "
                              << wtree::var_name(to, names);
    if (!vm.str().empty()) os << "  renamed:" << vm.str() << '\n';
    return os.str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"weighted rooted tree calculus: moves, index sets, local equations, blowup charts"};
    app.require_subcommand(1);

    std::string format = "text";
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"text", "json"}));

    std::string tree_arg, file_arg, vertex_arg, op_name, method = "inductive", suite;
    long long d = 3;
    int n = 2, chart_index = 0, stage_k = 0;
    bool show_zero = false, count_only = false, literal_staging = false;

    CLI::App* cmd_parse = app.add_subcommand("parse", "parse bracket text and echo it back");
    cmd_parse->add_option("--tree", tree_arg, "bracket text");
    cmd_parse->add_option("--file", file_arg, "file with one bracket string per line");

    CLI::App* cmd_print = app.add_subcommand("print", "canonical-order printing");
    cmd_print->add_option("--tree", tree_arg);
    cmd_print->add_option("--file", file_arg);
    cmd_print->add_flag("--show-zero", show_zero, "emit (0) weights too");

    CLI::App* cmd_classify = app.add_subcommand("classify", "structural classification");
    cmd_classify->add_option("--tree", tree_arg);
    cmd_classify->add_option("--file", file_arg);

    CLI::App* cmd_op = app.add_subcommand("op", "apply prune, collapse or advance at a vertex");
    cmd_op->add_option("operation", op_name, "prune|collapse|advance")
        ->required()
        ->check(CLI::IsMember({"prune", "collapse", "advance"}));
    cmd_op->add_option("--tree", tree_arg);
    cmd_op->add_option("--file", file_arg);
    cmd_op->add_option("--vertex", vertex_arg, "label of the vertex to act at")->required();

    CLI::App* cmd_mon = app.add_subcommand("mon", "monoidal transforms of a simple tree");
    cmd_mon->add_option("--tree", tree_arg);
    cmd_mon->add_option("--file", file_arg);

    CLI::App* cmd_enum = app.add_subcommand("enumerate", "index sets of a given total weight");
    cmd_enum->add_option("--d", d, "total weight (default 3)");
    cmd_enum->add_option("--k", stage_k, "stage index (default: unstaged)");
    cmd_enum->add_flag("--count-only", count_only);
    cmd_enum->add_flag("--literal-staging", literal_staging,
                       "drop path trees between stages instead of retaining them");

    CLI::App* cmd_phi = app.add_subcommand("phi", "local equation system of a tree");
    cmd_phi->add_option("--tree", tree_arg);
    cmd_phi->add_option("--file", file_arg);
    cmd_phi->add_option("--n", n, "number of components (default 2)");
    cmd_phi->add_option("--method", method, "direct|inductive|bracket")
        ->check(CLI::IsMember({"direct", "inductive", "bracket"}));

    CLI::App* cmd_blowup = app.add_subcommand("blowup", "charts of the blowup at the branch locus");
    cmd_blowup->add_option("--tree", tree_arg);
    cmd_blowup->add_option("--file", file_arg);
    cmd_blowup->add_option("--n", n, "number of components (default 2)");
    cmd_blowup->add_option("--chart", chart_index, "only this chart (1-based)");

    CLI::App* cmd_pipeline = app.add_subcommand("pipeline", "stage all blowups down to path trees");
    cmd_pipeline->add_option("--d", d, "total weight (default 3)");
    cmd_pipeline->add_option("--n", n, "number of components (default 2)");
    cmd_pipeline->add_flag("--literal-staging", literal_staging);

    CLI::App* cmd_verify = app.add_subcommand("verify", "run a property sweep");
    cmd_verify
        ->add_option("--suite", suite,
                     "roundtrip|mon1|mon2|phi-equiv|justk|zgk|nc|oracle")
        ->required();
    cmd_verify->add_option("--d", d, "weight bound (default 3)");
    cmd_verify->add_option("--n", n, "component bound (default 2)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    const bool json = format == "json";
    std::ostringstream text;
    wtree::ojson doc;

    try {
        if (app.got_subcommand(cmd_parse) || app.got_subcommand(cmd_print)) {
            bool from_file = false;
            auto trees = load_trees(tree_arg, file_arg, from_file);
            if (json) {
                wtree::ojson arr = wtree::ojson::array();
                for (const auto& t : trees) arr.push_back(wtree::tree_to_json(t));
                doc = from_file ? arr : arr.front();
            } else {
                for (const auto& t : trees) text << wtree::print(t, show_zero) << '\n';
            }
        } else if (app.got_subcommand(cmd_classify)) {
            bool from_file = false;
            auto trees = load_trees(tree_arg, file_arg, from_file);
            if (json) {
                wtree::ojson arr = wtree::ojson::array();
                for (const auto& t : trees) arr.push_back(wtree::classification_to_json(t));
                doc = from_file ? arr : arr.front();
            } else {
                for (const auto& t : trees) text << classification_text(t);
            }
        } else if (app.got_subcommand(cmd_op)) {
            bool from_file = false;
            auto trees = load_trees(tree_arg, file_arg, from_file);
            wtree::ojson arr = wtree::ojson::array();
            for (const auto& t : trees) {
                int v = resolve_vertex(t, vertex_arg);
                wtree::WeightedTree r = op_name == "prune"      ? wtree::prune(t, v)
                                        : op_name == "collapse" ? wtree::collapse(t, v)
                                                                : wtree::advance(t, v);
                if (json) arr.push_back(wtree::tree_to_json(r));
                else text << wtree::print(r) << '\n';
            }
            if (json) doc = from_file ? arr : arr.front();
        } else if (app.got_subcommand(cmd_mon)) {
            bool from_file = false;
            auto trees = load_trees(tree_arg, file_arg, from_file);
            wtree::ojson outer = wtree::ojson::array();
            for (const auto& t : trees) {
                wtree::ojson arr = wtree::ojson::array();
                for (const auto& m : wtree::mon(t)) {
                    if (json) arr.push_back(wtree::print(m));
                    else text << wtree::print(m) << '\n';
                }
                outer.push_back(arr);
            }
            if (json) doc = from_file ? outer : outer.front();
        } else if (app.got_subcommand(cmd_enum)) {
            wtree::TreeSet s = cmd_enum->count("--k")
                                   ? wtree::lambda_staged(d, stage_k, literal_staging)
                                   : wtree::lambda(d);
            if (json) {
                doc["d"] = s.d;
                if (s.k) doc["k"] = *s.k;
                doc["count"] = s.size();
                if (!count_only) doc["members"] = s.keys();
            } else if (count_only) {
                text << s.size() << '\n';
            } else {
                for (const auto& key : s.keys()) text << key << '\n';
                text << "count: " << s.size() << '\n';
            }
        } else if (app.got_subcommand(cmd_phi)) {
            bool from_file = false;
            auto trees = load_trees(tree_arg, file_arg, from_file);
            wtree::ojson arr = wtree::ojson::array();
            for (const auto& t : trees) {
                wtree::PolySystem sys = method == "direct" ? wtree::phi_direct(t, n)
                                        : method == "bracket"
                                            ? wtree::phi_bracket(wtree::print(t), n)
                                            : wtree::phi_inductive(t, n);
                if (json) arr.push_back(wtree::system_to_json(sys));
                else text << system_text(sys);
            }
            if (json) doc = from_file ? arr : arr.front();
        } else if (app.got_subcommand(cmd_blowup)) {
            bool from_file = false;
            auto trees = load_trees(tree_arg, file_arg, from_file);
            wtree::ojson arr = wtree::ojson::array();
            for (const auto& t : trees) {
                std::vector<wtree::BlowupChart> charts = wtree::blowup_charts(t, n);
                if (chart_index != 0 &&
                    (chart_index < 1 || chart_index > static_cast<int>(charts.size())))
                    throw wtree::DomainError("chart index out of range (tree has " +
                                             std::to_string(charts.size()) + " charts)");
                wtree::ojson jt;
                jt["source"] = wtree::print(t);
                jt["k"] = static_cast<int>(charts.size());
                jt["center"] = wtree::ojson::array();
                for (int a : charts.front().center)
                    jt["center"].push_back(wtree::var_name(wtree::z_var(a),
                                                           charts.front().system.names));
                jt["charts"] = wtree::ojson::array();
                if (!json) text << "source: " << wtree::print(t) << '\n';
                for (const auto& c : charts) {
                    if (chart_index != 0 && c.chart_index != chart_index) continue;
                    if (json) jt["charts"].push_back(wtree::chart_to_json(c));
                    else text << chart_text(c);
                }
                arr.push_back(jt);
            }
            if (json) doc = from_file ? arr : arr.front();
        } else if (app.got_subcommand(cmd_pipeline)) {
            wtree::PipelineReport rep = wtree::run_pipeline(d, n, literal_staging);
            if (json) {
                doc = wtree::pipeline_to_json(rep);
            } else {
                text << "weight " << rep.d << ", " << rep.n << " component"
                     << (rep.n == 1 ? "" : "s") << '\n';
                for (const auto& s : rep.stages) {
                    std::size_t charts = 0;
                    for (const auto& [src, cs] : s.blown) charts += cs.size();
                    text << "stage " << s.k << ": blew up " << s.blown.size()
                         << " tree(s) into " << charts << " chart(s), carried "
                         << s.survivors.size() << ", result " << s.result.size()
                         << " member(s)\n";
                }
                for (const auto& cert : rep.terminal) {
                    text << cert.tree << ": ";
                    wtree::Poly m;
                    m.terms[cert.z_monomial] = 1;
                    text << wtree::poly_to_string(m, cert.names) << " * {";
                    for (std::size_t i = 0; i < cert.w_vars.size(); ++i)
                        text << (i ? "," : "") << wtree::var_name(cert.w_vars[i], cert.names);
                    text << "}\n";
                }
            }
        } else if (app.got_subcommand(cmd_verify)) {
            wtree::SuiteResult r = wtree::run_suite(suite, d, n, seed_from_env());
            if (json) {
                doc["suite"] = r.suite;
                doc["checks"] = r.checks;
                doc["failures"] = r.failures;
            } else {
                text << r.suite << ": " << r.checks << " checks, " << r.failures.size()
                     << " failure(s)\n";
                for (const auto& f : r.failures) text << "  FAIL: " << f << '\n';
            }
            std::cout << (json ? doc.dump(2) + "\n" : text.str());
            return r.ok() ? 0 : 2;
        }
    } catch (const wtree::ParseError& e) {
        if (json) {
            wtree::ojson err;
            err["error"]["kind"] = "parse";
            err["error"]["message"] = e.what();
            err["error"]["position"] = e.position;
            std::cout << err.dump(2) << '\n';
        } else {
            std::cerr << "parse error: " << e.what() << '\n';
        }
        return 1;
    } catch (const wtree::VerifyError& e) {
        if (json) {
            wtree::ojson err;
            err["error"]["kind"] = "verification";
            err["error"]["message"] = e.what();
            std::cout << err.dump(2) << '\n';
        } else {
            std::cerr << "verification error: " << e.what() << '\n';
        }
        return 1;
    } catch (const wtree::DomainError& e) {
        if (json) {
            wtree::ojson err;
            err["error"]["kind"] = "domain";
            err["error"]["message"] = e.what();
            std::cout << err.dump(2) << '\n';
        } else {
            std::cerr << "error: " << e.what() << '\n';
        }
        return 1;
    }

    if (json) std::cout << doc.dump(2) << '\n';
    else std::cout << text.str();
    return 0;
}
