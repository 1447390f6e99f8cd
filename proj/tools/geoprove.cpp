// geoprove: saturate encoded geometry problems and emit the proof graph.
//
// solve            derive everything, report status, write JSON/DOT graphs
// list-properties  show the rules of a referential
// stats            summarize a previously exported graph
//
// Exit code: 0 every conclusion reached, 2 some conclusion unreachable,
// 1 parse/validation/resource failure.

#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "geoproof/engine.hpp"
#include "geoproof/hpdic.hpp"
#include "geoproof/problem.hpp"
#include "geoproof/referential.hpp"

using namespace geoproof;

namespace {

std::optional<std::string> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) return false;
    out << content;
    return bool(out);
}

std::string stem_of(const std::string& path) {
    size_t slash = path.find_last_of('/');
    std::string name = slash == std::string::npos ? path : path.substr(slash + 1);
    size_t dot = name.find_last_of('.');
    return dot == std::string::npos ? name : name.substr(0, dot);
}

const Referential* load_referential(const std::string& spec, std::string& err) {
    if (spec == "builtin") return &builtin_referential();
    static std::vector<Referential> loaded;  // keeps file referentials alive
    auto text = read_file(spec);
    if (!text) {
        err = "cannot read referential file '" + spec + "'";
        return nullptr;
    }
    ParsedReferential parsed = parse_rules(*text);
    if (!parsed.ok()) {
        err = "referential '" + spec + "' has errors:";
        for (const auto& d : parsed.diagnostics) err += "\n  " + format_diagnostic(d);
        return nullptr;
    }
    loaded.push_back(std::move(*parsed.referential));
    return &loaded.back();
}

struct SolveSettings {
    std::string referential = "builtin";
    std::string out, out_dir, dot;
    double tolerance = 0.01;
    size_t max_statements = 100000;
    std::string order = "fifo";
    unsigned seed = 0;
    bool no_gating = false;
    bool allow_reversal = false;
    bool trace = false;
    bool machine = false;
    size_t proof_limit = 100;
    size_t jobs = 1;
};

struct SolveOutcome {
    int status = 0;  // 0 ok, 1 error, 2 unreachable
    std::string human;
    std::string notes;  // diagnostics and traces, stderr
    nlohmann::ordered_json machine;
};

SolveOutcome solve_one(const std::string& path, const Referential& ref,
                       const SolveSettings& s) {
    SolveOutcome o;
    o.machine["problem"] = path;
    auto fail = [&](const std::string& msg) {
        o.status = 1;
        o.human = path + ": " + msg;
        o.machine["status"] = "error";
        o.machine["message"] = msg;
        return o;
    };

    auto text = read_file(path);
    if (!text) return fail("cannot read file");
    ParsedProblem parsed = parse_problem(*text);
    for (const auto& d : parsed.diagnostics) o.notes += path + ": " + format_diagnostic(d) + "\n";
    if (!parsed.ok()) return fail("problem file has errors");
    const Problem& problem = *parsed.problem;
    for (const auto& d : validate_problem(problem, ref))
        o.notes += path + ": " + format_diagnostic(d) + "\n";

    EngineConfig cfg;
    cfg.tolerance = s.tolerance;
    cfg.max_statements = s.max_statements;
    cfg.allow_reversal = s.allow_reversal;
    cfg.order = s.order == "lifo"   ? ExplorationOrder::Lifo
                : s.order == "random" ? ExplorationOrder::Random
                                      : ExplorationOrder::Fifo;
    cfg.random_seed = s.seed;
    cfg.useful_angle_gating = !s.no_gating;
    std::ostringstream trace;
    if (s.trace) cfg.trace = &trace;

    SaturationResult result;
    try {
        result = saturate(problem, ref, cfg);
    } catch (const SaturationLimitError& e) {
        return fail(e.what());
    } catch (const std::invalid_argument& e) {
        return fail(e.what());
    }
    if (s.trace) o.notes += trace.str();

    const SaturationStats& st = result.stats;
    auto put_stats = [&](nlohmann::ordered_json& j) {
        j["statements"] = st.statements;
        j["hypotheses"] = st.hypotheses;
        j["inferences"] = st.inferences;
        j["matcher_invocations"] = st.matcher_invocations;
        j["gated_results"] = st.gated_results;
        j["value_reuses"] = st.value_reuses;
        j["skipped_degenerate"] = st.skipped_degenerate;
    };

    if (!result.conclusion_reached) {
        o.status = 2;
        o.human = path + ": conclusion not derivable (" + problem.conclusion.text() + ")";
        o.machine["status"] = "unreachable";
        put_stats(o.machine);
        return o;
    }

    HpdicGraph graph = construct_graph(result, problem.conclusion, problem.dictionary);
    size_t useful_statements = 0, useful_inferences = 0;
    for (const auto& n : graph.statements) useful_statements += n.useful;
    for (const auto& n : graph.inferences) useful_inferences += n.useful;
    std::vector<Proof> proofs = enumerate_proofs(graph, s.proof_limit);

    std::string out_path = s.out;
    if (!s.out_dir.empty()) out_path = s.out_dir + "/" + stem_of(path) + ".graph.json";
    if (!out_path.empty() && !write_file(out_path, export_json(graph)))
        return fail("cannot write '" + out_path + "'");
    if (!s.dot.empty() && !write_file(s.dot, export_dot(graph, {s.allow_reversal})))
        return fail("cannot write '" + s.dot + "'");

    std::ostringstream h;
    h << path << ": conclusion reached\n"
      << "  statements " << st.statements << " (hypotheses " << st.hypotheses << ", useful "
      << useful_statements << "), inferences " << st.inferences << " (useful "
      << useful_inferences << ")\n"
      << "  proofs " << proofs.size() << (proofs.size() >= s.proof_limit ? " (at limit)" : "")
      << ", matcher invocations " << st.matcher_invocations << ", gated " << st.gated_results
      << ", value reuses " << st.value_reuses << ", degenerate " << st.skipped_degenerate;
    o.human = h.str();
    o.machine["status"] = "ok";
    put_stats(o.machine);
    o.machine["useful_statements"] = useful_statements;
    o.machine["useful_inferences"] = useful_inferences;
    o.machine["proofs"] = proofs.size();
    return o;
}

int run_solve(const std::vector<std::string>& problems, const SolveSettings& s) {
    std::string err;
    const Referential* ref = load_referential(s.referential, err);
    if (!ref) {
        std::cerr << err << "\n";
        return 1;
    }
    if (!s.out.empty() && problems.size() > 1) {
        std::cerr << "--out takes a single problem; use --out-dir for several\n";
        return 1;
    }
    if (!s.dot.empty() && problems.size() > 1) {
        std::cerr << "--dot takes a single problem\n";
        return 1;
    }

    std::vector<SolveOutcome> outcomes(problems.size());
    size_t jobs = std::max<size_t>(1, std::min(s.jobs, problems.size()));
    if (jobs <= 1) {
        for (size_t i = 0; i < problems.size(); ++i) outcomes[i] = solve_one(problems[i], *ref, s);
    } else {
        std::mutex mu;
        size_t next = 0;
        auto worker = [&] {
            for (;;) {
                size_t i;
                {
                    std::lock_guard<std::mutex> lock(mu);
                    if (next >= problems.size()) return;
                    i = next++;
                }
                outcomes[i] = solve_one(problems[i], *ref, s);
            }
        };
        std::vector<std::thread> pool;
        for (size_t t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    nlohmann::ordered_json all = nlohmann::ordered_json::array();
    int exit_code = 0;
    bool any_unreachable = false;
    for (const auto& o : outcomes) {
        if (!o.notes.empty()) std::cerr << o.notes;
        if (s.machine) all.push_back(o.machine);
        else std::cout << o.human << "\n";
        if (o.status == 1) exit_code = 1;
        if (o.status == 2) any_unreachable = true;
    }
    if (s.machine) std::cout << all.dump(2) << "\n";
    if (exit_code == 0 && any_unreachable) exit_code = 2;
    return exit_code;
}

int run_list(const std::string& referential, const std::string& granularity) {
    std::string err;
    const Referential* ref = load_referential(referential, err);
    if (!ref) {
        std::cerr << err << "\n";
        return 1;
    }
    for (const PropertyRule& r : ref->rules()) {
        if (!granularity.empty() && granularity_name(r.granularity) != granularity) continue;
        std::cout << r.id << " (" << granularity_name(r.granularity) << ")\n  premises:";
        for (const Term& p : r.premises) std::cout << " " << p.text;
        std::cout << "\n  \"" << r.justification << "\"\n";
    }
    return 0;
}

int run_stats(const std::string& path, size_t proof_limit, size_t cycle_cap) {
    auto text = read_file(path);
    if (!text) {
        std::cerr << "cannot read '" << path << "'\n";
        return 1;
    }
    HpdicGraph g;
    try {
        g = import_json(*text);
    } catch (const GraphError& e) {
        std::cerr << path << ": " << e.what() << "\n";
        return 1;
    }
    size_t useful_statements = 0, useful_inferences = 0, hyps = 0;
    for (const auto& n : g.statements) {
        useful_statements += n.useful;
        hyps += n.kind != NodeKind::Intermediate && n.kind != NodeKind::Conclusion;
    }
    for (const auto& n : g.inferences) useful_inferences += n.useful;
    auto proofs = enumerate_proofs(g, proof_limit);
    auto cycles = detect_cycles(g, cycle_cap);
    std::cout << path << ":\n"
              << "  statements " << g.statements.size() << " (hypotheses " << hyps
              << ", useful " << useful_statements << ")\n"
              << "  inferences " << g.inferences.size() << " (useful " << useful_inferences
              << ")\n"
              << "  conclusion " << g.statements[g.conclusion].stmt.text() << "\n"
              << "  proofs " << proofs.size()
              << (proofs.size() >= proof_limit ? " (at limit)" : "") << "\n"
              << "  cycles " << cycles.size() << " (length cap " << cycle_cap << ")\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"theorem prover for plane geometry problems"};
    app.require_subcommand(1);

    SolveSettings s;
    std::vector<std::string> problems, problem_flags;
    CLI::App* solve = app.add_subcommand("solve", "derive all consequences of a problem");
    solve->add_option("problems", problems, "problem files")->expected(-1);
    solve->add_option("--problem", problem_flags, "problem file (may repeat)");
    solve->add_option("-r,--referential", s.referential, "'builtin' or a rule file");
    solve->add_option("-o,--out", s.out, "write the proof graph JSON here");
    solve->add_option("--out-dir", s.out_dir, "write one <stem>.graph.json per problem");
    solve->add_option("--dot", s.dot, "write a Graphviz rendering here");
    solve->add_option("--tolerance", s.tolerance, "relative value tolerance, in (0, 0.1]");
    solve->add_option("--max-statements", s.max_statements, "statement cap");
    solve->add_option("--order", s.order, "exploration order")
        ->check(CLI::IsMember({"fifo", "lifo", "random"}));
    solve->add_option("--seed", s.seed, "seed for --order random");
    solve->add_flag("--no-angle-gating", s.no_gating, "keep every constructed angle");
    solve->add_flag("--allow-reversal", s.allow_reversal, "show reversed angle names too");
    solve->add_flag("--trace", s.trace, "log every inference to stderr");
    solve->add_flag("--machine", s.machine, "JSON report on stdout");
    solve->add_option("--proof-limit", s.proof_limit, "max proofs to enumerate");
    solve->add_option("--jobs", s.jobs, "solve problems in parallel");

    std::string list_ref = "builtin", list_gran;
    CLI::App* list = app.add_subcommand("list-properties", "show the rules of a referential");
    list->add_option("-r,--referential", list_ref, "'builtin' or a rule file");
    list->add_option("--granularity", list_gran, "only this granularity")
        ->check(CLI::IsMember({"low", "high"}));

    std::string stats_path;
    size_t stats_proof_limit = 100, stats_cycle_cap = 8;
    CLI::App* stats = app.add_subcommand("stats", "summarize an exported graph");
    stats->add_option("graph", stats_path, "graph JSON file")->required();
    stats->add_option("--proof-limit", stats_proof_limit, "max proofs to enumerate");
    stats->add_option("--cycle-cap", stats_cycle_cap, "max cycle length to search");

    CLI11_PARSE(app, argc, argv);

    if (solve->parsed()) {
        problems.insert(problems.end(), problem_flags.begin(), problem_flags.end());
        if (problems.empty()) {
            std::cerr << "solve: no problem files given\n";
            return 1;
        }
        return run_solve(problems, s);
    }
    if (list->parsed()) return run_list(list_ref, list_gran);
    return run_stats(stats_path, stats_proof_limit, stats_cycle_cap);
}
