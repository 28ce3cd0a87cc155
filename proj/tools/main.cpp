// Command-line front end: exact counting, classification, representations,
// balance checks, and the reduction constructions over a shared problem-file
// format. Outputs are stable key=value lines.
//
// Exit codes: 0 success, 2 parse/validation error, 3 resource bound
// exceeded, 4 refusal (method preconditions not certified).

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "cspcount/corpus.hpp"
#include "cspcount/counter.hpp"
#include "cspcount/dichotomy.hpp"
#include "cspcount/errors.hpp"
#include "cspcount/oracle.hpp"
#include "cspcount/reductions.hpp"
#include "cspcount/textio.hpp"
#include "cspcount/vecrep.hpp"

namespace {

using namespace cspcount;

struct CommonOptions {
    std::string file;
    std::uint64_t bound = 10'000'000;
    int threads = 1;
    bool always_fraction = false;

    EnumLimits enumeration() const { return EnumLimits{bound, threads}; }
};

void add_common(CLI::App* cmd, CommonOptions& options, bool with_file = true) {
    if (with_file)
        cmd->add_option("file", options.file, "problem file")->required()->check(CLI::ExistingFile);
    cmd->add_option("--bound", options.bound, "enumeration bound (assignments)");
    cmd->add_option("--threads", options.threads, "threads for enumeration stages")
        ->check(CLI::PositiveNumber);
    cmd->add_flag("--always-fraction", options.always_fraction, "print integers as p/1");
}

std::string quadruple_str(const std::array<int, 4>& q) {
    std::ostringstream out;
    out << q[0] << " " << q[1] << " " << q[2] << " " << q[3];
    return out.str();
}

void print_verdict(const Verdict& verdict, bool always_fraction) {
    (void)always_fraction;
    if (verdict.tractable()) {
        std::cout << "verdict=TRACTABLE\n";
        std::cout << "maltsev=";
        for (std::size_t i = 0; i < verdict.maltsev->table.size(); ++i)
            std::cout << (i ? " " : "") << verdict.maltsev->table[i];
        std::cout << "\n";
        std::cout << "automorphisms=" << verdict.automorphisms.size() << "\n";
        for (const AutomorphismCert& cert : verdict.automorphisms) {
            std::cout << "automorphism " << cert.alpha << " " << cert.beta << " " << cert.kappa
                      << " " << cert.lambda << " =";
            for (std::size_t image : cert.pi) std::cout << " " << image + 1;
            std::cout << "\n";
        }
        return;
    }
    std::cout << "verdict=SHARP_P_HARD\n";
    switch (verdict.reason) {
        case HardReason::NoMaltsev: {
            std::cout << "reason=NoMaltsev\n";
            std::cout << "candidates_refuted=" << verdict.maltsev_failures.size() << "\n";
            for (const MaltsevFailure& failure : verdict.maltsev_failures) {
                std::cout << "candidate";
                for (int v : failure.op.table) std::cout << " " << v;
                std::cout << " : relation=" << failure.relation << " triple=";
                for (const Tuple& t : failure.check.violating) {
                    std::cout << "(";
                    for (std::size_t i = 0; i < t.size(); ++i) std::cout << (i ? "," : "") << t[i];
                    std::cout << ")";
                }
                std::cout << " image=(";
                for (std::size_t i = 0; i < failure.check.image.size(); ++i)
                    std::cout << (i ? "," : "") << failure.check.image[i];
                std::cout << ")\n";
            }
            break;
        }
        case HardReason::NoAutomorphism:
            std::cout << "reason=NoAutomorphism\n";
            std::cout << "quadruple=" << quadruple_str(*verdict.failed_quadruple) << "\n";
            break;
        default:
            std::cout << "reason=UnbalancedInstance\n";
            break;
    }
}

int cmd_count(const CommonOptions& options, const std::string& instance_name,
              const std::string& method) {
    ProblemFile problem = load_problem(options.file);
    const Instance& instance = problem.instance(instance_name);
    std::cout << "instance=" << instance_name << "\n";
    std::cout << "method=" << method << "\n";

    Rat brute, structured;
    if (method == "brute" || method == "both") {
        brute = partition_function(instance, options.enumeration());
        std::cout << "z_brute=" << rat_str(brute, options.always_fraction) << "\n";
    }
    if (method == "structured" || method == "both") {
        const Verdict verdict = classify(problem.language);
        if (!verdict.tractable()) {
            std::cout << "refusal=language is not certified tractable\n";
            print_verdict(verdict, options.always_fraction);
            return 4;
        }
        structured = structured_count(instance, verdict, options.enumeration());
        std::cout << "z_structured=" << rat_str(structured, options.always_fraction) << "\n";
    }
    if (method == "both") std::cout << "check=" << (brute == structured ? "PASS" : "FAIL") << "\n";
    if (method == "both" && brute != structured) return 1;
    return 0;
}

int cmd_classify(const CommonOptions& options, const SearchLimits& limits, bool witness_hunt) {
    ProblemFile problem = load_problem(options.file);
    Verdict verdict = classify(problem.language, limits);
    print_verdict(verdict, options.always_fraction);
    if (witness_hunt && !verdict.tractable()) {
        auto witness = find_unbalanced_witness(problem.language);
        if (witness) {
            std::cout << "unbalanced_instance_vars=" << witness->instance.num_vars() << "\n";
            for (const Application& app : witness->instance.applications()) {
                std::cout << "unbalanced_apply="
                          << problem.language->function(app.function).name();
                for (int v : app.vars) std::cout << " " << v;
                std::cout << "\n";
            }
            std::cout << "unbalanced_split=" << witness->a << " " << witness->b << "\n";
        } else {
            std::cout << "unbalanced_instance=none within bounds\n";
        }
    }
    return 0;
}

int cmd_vecrep(const CommonOptions& options, const std::string& function_name) {
    ProblemFile problem = load_problem(options.file);
    const FunctionTable& f =
        problem.language->function(problem.language->function_index(function_name));
    std::cout << "function=" << function_name << "\n";
    FunctionVecrep result = function_vecrep(f);
    if (!result.ok()) {
        std::cout << "result=NOT_BLOCK_RANK_1 level=" << result.not_block_rank_1_level << "\n";
        return 0;
    }
    std::cout << "result=OK\n";
    for (int j = 1; j <= result.rep->arity(); ++j) {
        std::cout << "s" << j << "=";
        for (int a = 1; a <= f.domain_size(); ++a)
            std::cout << (a > 1 ? " " : "") << rat_str(result.rep->at(j, a), options.always_fraction);
        std::cout << "\n";
    }
    return 0;
}

int cmd_check_balance(const CommonOptions& options, const std::string& instance_name,
                      const std::string& mode) {
    ProblemFile problem = load_problem(options.file);
    const Instance& instance = problem.instance(instance_name);
    BalanceVerdict verdict;
    if (mode == "balance")
        verdict = test_balance(instance, options.enumeration());
    else if (mode == "weak")
        verdict = test_weak_balance(instance, options.enumeration());
    else if (mode == "primitive")
        verdict = test_primitive_balance(instance, options.enumeration());
    else
        verdict = test_strong_balance(instance, options.enumeration());
    std::cout << "instance=" << instance_name << "\n";
    std::cout << "mode=" << mode << "\n";
    if (verdict.balanced) {
        std::cout << "outcome=BALANCED\n";
        return 0;
    }
    const BalanceViolation& violation = *verdict.violation;
    std::cout << "outcome=VIOLATED\n";
    std::cout << "split=" << violation.a << " " << violation.b;
    if (violation.c >= 0) std::cout << " " << violation.c;
    std::cout << "\n";
    if (violation.check.not_rectangular) {
        const auto& w = *violation.check.not_rectangular;
        std::cout << "witness=not_rectangular rows " << w.row1 + 1 << "," << w.row2 + 1
                  << " cols " << w.col1 + 1 << "," << w.col2 + 1 << "\n";
    } else if (violation.check.minor) {
        const auto& w = *violation.check.minor;
        std::cout << "witness=minor rows " << w.row1 + 1 << "," << w.row2 + 1 << " cols "
                  << w.col1 + 1 << "," << w.col2 + 1 << "\n";
    }
    return 0;
}

int cmd_gadget(const CommonOptions& options, const std::string& instance_name, int a, int b,
               const std::string& graph_name, const std::string& out_path) {
    ProblemFile problem = load_problem(options.file);
    const Instance& instance = problem.instance(instance_name);
    const Graph& graph = problem.graph(graph_name);
    Instance gadget = hardness_gadget(instance, a, b, graph);

    ProblemFile out;
    out.language = problem.language;
    const std::string gadget_name = instance_name + "_" + graph_name + "_gadget";
    out.instances.emplace_back(gadget_name, std::move(gadget));
    if (out_path.empty()) {
        write_problem(std::cout, out, options.always_fraction);
    } else {
        std::ofstream file(out_path);
        write_problem(file, out, options.always_fraction);
        std::cout << "gadget=" << gadget_name << "\n";
        std::cout << "vars=" << out.instances.front().second.num_vars() << "\n";
        std::cout << "out=" << out_path << "\n";
    }
    return 0;
}

int cmd_reduce_unweighted(const CommonOptions& options, const std::string& instance_name) {
    ProblemFile problem = load_problem(options.file);
    const Instance& instance = problem.instance(instance_name);
    std::cout << "instance=" << instance_name << "\n";
    std::cout << "support_count=" << count_support(instance, options.enumeration()) << "\n";
    return 0;
}

int cmd_corpus(std::uint64_t seed, const CorpusOptions& corpus, const std::string& out_path,
               bool always_fraction) {
    ProblemFile problem = random_problem(seed, corpus);
    if (out_path.empty()) {
        write_problem(std::cout, problem, always_fraction);
    } else {
        std::ofstream file(out_path);
        write_problem(file, problem, always_fraction);
        std::cout << "out=" << out_path << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact weighted #CSP counting, classification, and reductions"};
    app.require_subcommand(1);

    CommonOptions options;

    auto* count = app.add_subcommand("count", "evaluate the partition function");
    std::string instance_name, method = "both";
    add_common(count, options);
    count->add_option("-i,--instance", instance_name, "instance name")->required();
    count->add_option("-m,--method", method, "brute | structured | both")
        ->check(CLI::IsMember({"brute", "structured", "both"}));

    auto* classify_cmd = app.add_subcommand("classify", "decide tractable vs #P-hard");
    SearchLimits search;
    bool witness_hunt = false;
    add_common(classify_cmd, options);
    classify_cmd->add_option("--maltsev-bound", search.max_maltsev_domain,
                             "max domain size for the Mal'tsev search");
    classify_cmd->add_option("--power-bound", search.max_power_domain,
                             "max power domain size d^6 for the automorphism search");
    classify_cmd->add_option("--nodes", search.max_search_nodes, "backtracking node budget");
    classify_cmd->add_flag("--witness", witness_hunt,
                           "on a hard verdict, also hunt for an unbalanced instance");

    auto* vecrep_cmd = app.add_subcommand("vecrep", "vector representation of a function");
    std::string function_name;
    add_common(vecrep_cmd, options);
    vecrep_cmd->add_option("-f,--function", function_name, "function name")->required();

    auto* balance = app.add_subcommand("check-balance", "balance test battery for an instance");
    std::string mode = "balance";
    add_common(balance, options);
    balance->add_option("-i,--instance", instance_name, "instance name")->required();
    balance->add_option("--mode", mode, "balance | weak | primitive | strong")
        ->check(CLI::IsMember({"balance", "weak", "primitive", "strong"}));

    auto* gadget = app.add_subcommand("gadget", "emit the graph gadget instance");
    int split_a = 1, split_b = 2;
    std::string graph_name, out_path;
    add_common(gadget, options);
    gadget->add_option("-i,--instance", instance_name, "base instance name")->required();
    gadget->add_option("-a", split_a, "row split")->required();
    gadget->add_option("-b", split_b, "column split")->required();
    gadget->add_option("-g,--graph", graph_name, "graph name")->required();
    gadget->add_option("-o,--out", out_path, "write the problem file here instead of stdout");

    auto* reduce = app.add_subcommand("reduce-unweighted", "support size via the Vandermonde solve");
    add_common(reduce, options);
    reduce->add_option("-i,--instance", instance_name, "instance name")->required();

    auto* corpus_cmd = app.add_subcommand("corpus", "emit a reproducible random problem file");
    std::uint64_t seed = 1;
    CorpusOptions corpus;
    corpus_cmd->add_option("--seed", seed, "generator seed")->required();
    corpus_cmd->add_option("--domain", corpus.balanced_language.domain, "domain size");
    corpus_cmd->add_option("--functions", corpus.balanced_language.num_functions,
                           "number of functions");
    corpus_cmd->add_option("--arity", corpus.balanced_language.max_arity, "max arity");
    corpus_cmd->add_option("--instances", corpus.instances, "number of instances");
    corpus_cmd->add_option("--vars", corpus.max_vars, "max variables per instance");
    corpus_cmd->add_option("--apps", corpus.max_apps, "max applications per instance");
    corpus_cmd->add_option("--graphs", corpus.graphs, "number of graphs");
    bool unbalanced = false;
    corpus_cmd->add_flag("--unbalanced", unbalanced, "arbitrary tables instead of balanced ones");
    corpus_cmd->add_option("-o,--out", out_path, "write the problem file here instead of stdout");
    corpus_cmd->add_flag("--always-fraction", options.always_fraction, "print integers as p/1");

    CLI11_PARSE(app, argc, argv);

    try {
        if (count->parsed()) return cmd_count(options, instance_name, method);
        if (classify_cmd->parsed()) return cmd_classify(options, search, witness_hunt);
        if (vecrep_cmd->parsed()) return cmd_vecrep(options, function_name);
        if (balance->parsed()) return cmd_check_balance(options, instance_name, mode);
        if (gadget->parsed())
            return cmd_gadget(options, instance_name, split_a, split_b, graph_name, out_path);
        if (reduce->parsed()) return cmd_reduce_unweighted(options, instance_name);
        if (corpus_cmd->parsed()) {
            corpus.balanced = !unbalanced;
            corpus.arbitrary_language.domain = corpus.balanced_language.domain;
            corpus.arbitrary_language.num_functions = corpus.balanced_language.num_functions;
            corpus.arbitrary_language.max_arity = corpus.balanced_language.max_arity;
            return cmd_corpus(seed, corpus, out_path, options.always_fraction);
        }
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ResourceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const NotApplicableError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
