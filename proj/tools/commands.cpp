#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "tracekc/compile/compiler.hpp"
#include "tracekc/compile/dimacs.hpp"
#include "tracekc/compile/nnf_io.hpp"
#include "tracekc/encode/encoder.hpp"
#include "tracekc/encode/trace_io.hpp"
#include "tracekc/error.hpp"
#include "tracekc/logic/validate.hpp"
#include "tracekc/query/theory.hpp"
#include "tracekc/rl/trainer.hpp"
#include "tracekc/tlc/episode.hpp"

namespace tracekc::cli {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace {

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw DataError("cannot read " + p.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw DataError("cannot write " + p.string());
    out << text;
}

fs::path sibling(const fs::path& p, const std::string& suffix) {
    fs::path s = p;
    s.replace_extension(suffix);
    return s;
}

std::string utc_now() {
    std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream out;
    out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return out.str();
}

// Records inputs and every produced artifact with its content hash.
class RunManifest {
public:
    RunManifest(std::string command, std::optional<std::uint64_t> seed) {
        j_["tool"] = "tracekc";
        j_["version"] = kVersion;
        j_["command"] = std::move(command);
        if (seed) j_["seed"] = *seed;
        j_["started"] = utc_now();
        j_["inputs"] = ojson::object();
        j_["artifacts"] = ojson::array();
    }
    void input(const std::string& key, const std::string& value) { j_["inputs"][key] = value; }
    void artifact(const fs::path& p) {
        j_["artifacts"].push_back({{"path", p.string()}, {"fnv1a64", content_hash(p)}});
    }
    void write(const fs::path& p) {
        j_["finished"] = utc_now();
        write_file(p, j_.dump(2) + "\n");
    }

private:
    ojson j_;
};

tlc::IntersectionConfig make_env(const EnvOptions& o) {
    auto c = tlc::IntersectionConfig::standard();
    for (auto& m : c.movements) {
        if (m.turn == tlc::Turn::Straight && o.straight_rate) m.arrival_rate = *o.straight_rate;
        if (m.turn == tlc::Turn::Left && o.left_rate) m.arrival_rate = *o.left_rate;
    }
    if (o.fixed_rates) c.rate_scale_min = c.rate_scale_max = 1.0;
    c.validate();
    return c;
}

tlc::Policy resolve_policy(const std::string& spec, const tlc::IntersectionConfig& env, std::size_t depth) {
    if (spec == "heuristic") return tlc::occupancy_policy(env, depth);
    if (spec.rfind("always:", 0) == 0) return tlc::fixed_policy(tlc::parse_phase(spec.substr(7)));
    auto policy = rl::GreedyPolicy::from_json(read_file(spec));
    for (const auto& [state, _] : policy.actions())
        if (state.size() != env.movements.size() * depth)
            throw DataError("policy state width " + std::to_string(state.size()) + " does not match depth " +
                            std::to_string(depth));
    return policy.as_function();
}

ojson stats_json(const CompileStats& s) {
    ojson j;
    j["node_count"] = s.node_count;
    j["edge_count"] = s.edge_count;
    j["cache_hits"] = s.cache_hits;
    j["decisions"] = s.decisions;
    j["propagations"] = s.propagations;
    j["wall_seconds"] = s.wall_seconds;
    return j;
}

// Reports the offending node by its line index in the exported NNF.
ojson violation_json(const NnfDag& dag, const CheckResult& r) {
    if (!r) return ojson{{"ok", true}};
    const auto& order = dag.reachable();
    auto it = std::lower_bound(order.begin(), order.end(), r->node);
    std::size_t line = it != order.end() && *it == r->node ? static_cast<std::size_t>(it - order.begin()) : r->node;
    return ojson{{"ok", false}, {"node", line}, {"message", r->message}};
}

// Runs `body`, mapping library exceptions onto exit codes.
template <typename F>
int guarded(std::ostream& err, F&& body) {
    try {
        return body();
    } catch (const NoSupport& e) {
        err << "error: " << e.what() << '\n';
        return kDataError;
    } catch (const DataError& e) {
        err << "error: " << e.what() << '\n';
        return kDataError;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
}

}  // namespace

std::string content_hash(const fs::path& path) {
    std::string data = read_file(path);
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : data) h = (h ^ c) * 0x100000001b3ull;
    std::ostringstream out;
    out << std::hex << std::setw(16) << std::setfill('0') << h;
    return out.str();
}

int cmd_simulate(const SimulateOptions& opts, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        if (opts.out.empty()) throw std::invalid_argument("--out is required");
        if (opts.episodes < 1) throw std::invalid_argument("--episodes must be positive");
        auto env = make_env(opts.env);
        tlc::Simulator sim(env);
        sim.observe(opts.depth);
        tlc::Policy policy = resolve_policy(opts.policy, env, opts.depth);

        TraceSet all(tlc::tlc_schema(env, opts.depth));
        std::ostringstream summaries;
        for (int k = 1; k <= opts.episodes; ++k) {
            auto ep = tlc::run_episode(sim, policy, opts.depth, opts.duration,
                                       tlc::derive_seed(opts.seed, static_cast<std::uint64_t>(k)));
            all.append(ep.traces);
            summaries << tlc::summary_to_json(ep.summary) << '\n';
        }
        all.provenance()["seed"] = std::to_string(opts.seed);
        all.provenance()["episodes"] = std::to_string(opts.episodes);
        all.provenance()["depth"] = std::to_string(opts.depth);
        all.provenance()["policy"] = opts.policy;
        save_traces(all, opts.out);
        fs::path summary_path = sibling(opts.out, ".episodes.jsonl");
        write_file(summary_path, summaries.str());

        RunManifest manifest("simulate", opts.seed);
        manifest.input("policy", opts.policy);
        manifest.input("depth", std::to_string(opts.depth));
        manifest.input("episodes", std::to_string(opts.episodes));
        manifest.artifact(opts.out);
        manifest.artifact(schema_path_for(opts.out));
        manifest.artifact(summary_path);
        manifest.write(sibling(opts.out, ".manifest.json"));

        out << ojson{{"observations", all.size()}, {"traces", opts.out.string()}}.dump() << '\n';
        return kOk;
    });
}

int cmd_train(const TrainOptions& opts, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        if (opts.out.empty()) throw std::invalid_argument("--out is required");
        if (opts.episodes < 1) throw std::invalid_argument("--episodes must be positive");
        rl::TrainerConfig cfg;
        cfg.env = make_env(opts.env);
        cfg.depth = opts.depth;
        cfg.episodes = opts.episodes;
        cfg.episode_seconds = opts.duration;
        auto result = rl::train(cfg, opts.seed);

        write_file(opts.out, result.policy.to_json());
        fs::path rewards = opts.rewards.empty() ? sibling(opts.out, ".rewards.csv") : opts.rewards;
        write_file(rewards, rl::rewards_csv(result.episode_rewards));

        RunManifest manifest("train", opts.seed);
        manifest.input("depth", std::to_string(opts.depth));
        manifest.input("episodes", std::to_string(opts.episodes));
        manifest.artifact(opts.out);
        manifest.artifact(rewards);
        manifest.write(sibling(opts.out, ".manifest.json"));

        out << ojson{{"states", result.policy.size()}, {"policy", opts.out.string()}, {"rewards", rewards.string()}}
                   .dump()
            << '\n';
        return kOk;
    });
}

int cmd_compile(const CompileOptions& opts, std::ostream& out, std::ostream& err) {
    return guarded(err, [&]() -> int {
        if (opts.out.empty()) throw std::invalid_argument("--out is required");
        if (opts.traces.empty() == opts.cnf.empty()) throw std::invalid_argument("give exactly one of --traces or --cnf");
        tracekc::CompileOptions copt;
        copt.component_cache = !opts.no_cache;

        CnfFormula cnf;
        VariableTablePtr vars;
        Metadata meta;
        ojson report;
        RunManifest manifest("compile", std::nullopt);
        if (!opts.traces.empty()) {
            TraceSet traces = load_traces(opts.traces);
            if (traces.empty()) throw DataError("trace file has no observations");
            auto conflicts = detect_policy_conflicts(traces);
            for (const auto& c : conflicts) {
                err << "warning: state " << to_bit_string(c.state) << " observed with actions";
                for (const auto& a : c.actions) err << ' ' << a;
                err << " (policy is not deterministic)\n";
            }
            DnfFormula dnf = encode_dnf(traces);
            SelectorEncoding enc = dnf_to_cnf(dnf);
            cnf = std::move(enc.cnf);
            vars = enc.vars;
            meta = traces.provenance();
            meta["observations"] = std::to_string(traces.size());
            meta["distinct_observations"] = std::to_string(dnf.terms.size());
            meta["source"] = opts.traces.filename().string();
            report["observations"] = traces.size();
            report["distinct_observations"] = dnf.terms.size();
            report["policy_conflicts"] = conflicts.size();
            manifest.input("traces", opts.traces.string());
        } else {
            std::ifstream in(opts.cnf);
            if (!in) throw DataError("cannot read " + opts.cnf.string());
            cnf = read_dimacs(in);
            meta["source"] = opts.cnf.filename().string();
            manifest.input("cnf", opts.cnf.string());
        }
        if (!opts.dimacs_out.empty()) {
            std::ofstream d(opts.dimacs_out);
            write_dimacs(cnf, d);
        }

        CompileResult result = compile(cnf, vars, copt);
        auto decomp = check_decomposability(result.dag);
        auto determ = check_determinism(result.dag);
        if (decomp || determ) {
            err << "error: compiled circuit failed validation\n";
            return kValidationFailure;
        }
        save_theory(opts.out, result.dag, meta);

        report["theory"] = opts.out.string();
        report["model_count"] = model_count(result.dag).str();
        report["stats"] = stats_json(result.stats);
        manifest.artifact(opts.out);
        manifest.artifact(vars_path_for(opts.out));
        if (opts.stats) {
            fs::path stats_path = sibling(opts.out, ".stats.json");
            write_file(stats_path, report.dump(2) + "\n");
            manifest.artifact(stats_path);
        }
        if (!opts.dimacs_out.empty()) manifest.artifact(opts.dimacs_out);
        manifest.write(sibling(opts.out, ".manifest.json"));
        out << report.dump(2) << '\n';
        return kOk;
    });
}

int cmd_query(const QueryOptions& opts, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        if (opts.theory.empty()) throw std::invalid_argument("--theory is required");
        Theory theory = load_theory(opts.theory);
        Evidence e = theory.parse_evidence(opts.evidence);
        QueryResult r;
        if (opts.target == "actions") {
            r = theory.action_likelihood(e);
        } else if (opts.target == "state") {
            r = theory.state_likelihood(e);
        } else if (opts.target.rfind("var:", 0) == 0) {
            r = theory.variable_likelihood(opts.target.substr(4), e);
        } else {
            throw std::invalid_argument("--target must be actions, state or var:<name>");
        }
        if (opts.pretty)
            out << render_table(r);
        else
            out << to_json(r).dump(2) << '\n';
        return kOk;
    });
}

int cmd_validate(const ValidateOptions& opts, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        if (opts.theory.empty()) throw std::invalid_argument("--theory is required");
        Theory theory = load_theory(opts.theory, false);
        const NnfDag& dag = theory.dag();

        auto decomp = check_decomposability(dag);
        auto determ = check_determinism(dag);
        auto smooth_check = check_smoothness(dag);

        std::string first = export_nnf(dag);
        NnfImportOptions io;
        io.require_decomposable = false;
        io.vars = dag.variables_ptr();
        NnfDag again = import_nnf(first, io);
        bool round_trip = export_nnf(again) == first;
        bool counts_match = !decomp && !determ ? model_count(again) == model_count(dag) : true;

        ojson report;
        report["theory"] = opts.theory.string();
        report["nodes"] = dag.node_count();
        report["edges"] = dag.edge_count();
        report["variables"] = dag.num_vars();
        report["decomposable"] = violation_json(dag, decomp);
        report["deterministic"] = violation_json(dag, determ);
        report["smooth"] = violation_json(dag, smooth_check);
        report["round_trip"] = round_trip && counts_match;
        if (!decomp && !determ) report["model_count"] = model_count(dag).str();
        out << report.dump(2) << '\n';
        bool ok = !decomp && !determ && round_trip && counts_match;
        return ok ? kOk : kValidationFailure;
    });
}

namespace {

// Car-key example: D = drive mode on, K = key inside car;
// actions dr (drive), sw (switch to drive mode), in (insert key).
constexpr const char* kCarKeyTraces =
    "{\"state\":{\"D\":0,\"K\":0},\"action\":\"in\"}\n"
    "{\"state\":{\"D\":0,\"K\":1},\"action\":\"sw\"}\n"
    "{\"state\":{\"D\":1,\"K\":1},\"action\":\"dr\"}\n";

}  // namespace

int cmd_demo(const DemoOptions& opts, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        if (opts.out_dir.empty()) throw std::invalid_argument("--out-dir is required");
        fs::create_directories(opts.out_dir);
        TraceSet meta(Schema{{"D", "K"}, {"dr", "sw", "in"}});
        meta.provenance()["source"] = "car-key demo";
        std::istringstream rows(kCarKeyTraces);
        TraceSet traces = read_jsonl(rows, meta.schema());
        traces.provenance() = meta.provenance();
        fs::path trace_path = opts.out_dir / "carkey.jsonl";
        save_traces(traces, trace_path);

        CompileOptions copt;
        copt.traces = trace_path;
        copt.out = opts.out_dir / "carkey.nnf";
        copt.stats = true;
        return cmd_compile(copt, out, err);
    });
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Compile controller traces into d-DNNF and query them", "tracekc"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    auto add_env = [](CLI::App* cmd, EnvOptions& env) {
        cmd->add_option("--straight-rate", env.straight_rate, "Arrivals per second on each straight movement");
        cmd->add_option("--left-rate", env.left_rate, "Arrivals per second on each left-turn movement");
        cmd->add_flag("--fixed-rates", env.fixed_rates, "Disable per-episode random rate scaling");
    };

    SimulateOptions sim;
    auto* simulate = app.add_subcommand("simulate", "Run seeded episodes under a policy and write traces");
    simulate->add_option("--episodes", sim.episodes)->check(CLI::PositiveNumber);
    simulate->add_option("--depth", sim.depth, "Observed cells per movement")->check(CLI::Range(1, 10));
    simulate->add_option("--seed", sim.seed);
    simulate->add_option("--duration", sim.duration, "Seconds per episode")->check(CLI::PositiveNumber);
    simulate->add_option("--out", sim.out, "Trace JSONL path")->required();
    simulate->add_option("--policy", sim.policy, "heuristic | always:<PHASE> | policy.json");
    add_env(simulate, sim.env);

    TrainOptions tr;
    auto* train = app.add_subcommand("train", "Train a tabular Q-learning controller");
    train->add_option("--episodes", tr.episodes)->check(CLI::PositiveNumber);
    train->add_option("--depth", tr.depth)->check(CLI::Range(1, 10));
    train->add_option("--seed", tr.seed);
    train->add_option("--duration", tr.duration)->check(CLI::PositiveNumber);
    train->add_option("--out", tr.out, "Policy JSON path")->required();
    train->add_option("--rewards", tr.rewards, "Reward CSV path");
    add_env(train, tr.env);

    CompileOptions co;
    auto* compile_cmd = app.add_subcommand("compile", "Compile traces (or DIMACS CNF) to a d-DNNF theory");
    compile_cmd->add_option("--traces", co.traces);
    compile_cmd->add_option("--cnf", co.cnf);
    compile_cmd->add_option("--out", co.out)->required();
    compile_cmd->add_option("--dimacs-out", co.dimacs_out, "Also write the intermediate CNF");
    compile_cmd->add_flag("--stats", co.stats, "Write <out>.stats.json");
    compile_cmd->add_flag("--no-cache", co.no_cache, "Disable the component cache");

    QueryOptions qo;
    auto* query = app.add_subcommand("query", "Action, state or variable likelihoods under evidence");
    query->add_option("--theory", qo.theory)->required();
    query->add_option("--evidence", qo.evidence, "name=0|1,...; action=<label> conditions on an action");
    query->add_option("--target", qo.target, "actions | state | var:<name>");
    query->add_flag("--pretty", qo.pretty, "Human-readable table");

    ValidateOptions vo;
    auto* validate = app.add_subcommand("validate", "Check d-DNNF properties and file round-trip");
    validate->add_option("--theory", vo.theory)->required();

    DemoOptions dm;
    auto* demo = app.add_subcommand("demo", "Write and compile the car-key example");
    demo->add_option("--out-dir", dm.out_dir)->required();

    std::vector<std::string> rev(args.rbegin(), args.rend());
    if (!rev.empty()) rev.pop_back();
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForVersion&) {
        out << kVersion << '\n';
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n' << "run with --help for usage\n";
        return kUsage;
    }

    if (simulate->parsed()) return cmd_simulate(sim, out, err);
    if (train->parsed()) return cmd_train(tr, out, err);
    if (compile_cmd->parsed()) return cmd_compile(co, out, err);
    if (query->parsed()) return cmd_query(qo, out, err);
    if (validate->parsed()) return cmd_validate(vo, out, err);
    if (demo->parsed()) return cmd_demo(dm, out, err);
    return kUsage;
}

}  // namespace tracekc::cli
