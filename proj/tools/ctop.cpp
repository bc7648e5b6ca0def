#include <CLI11.hpp>

#include <chrono>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "ctop/bench.hpp"
#include "ctop/generate.hpp"
#include "ctop/io.hpp"
#include "ctop/oracle.hpp"
#include "ctop/preprocess.hpp"
#include "ctop/solver.hpp"

namespace {

using namespace ctop;

constexpr int kExitFeasible = 0;
constexpr int kExitInfeasible = 1;
constexpr int kExitTimeout = 2;
constexpr int kExitUsage = 64;
constexpr int kExitData = 65;

int exit_for(SolveStatus status) {
    switch (status) {
        case SolveStatus::Feasible: return kExitFeasible;
        case SolveStatus::Infeasible: return kExitInfeasible;
        case SolveStatus::Timeout: return kExitTimeout;
    }
    return kExitData;
}

Model parse_model_name(const std::string& name) {
    if (name == "rank") return Model::Rank;
    if (name == "vertex") return Model::Vertex;
    return Model::Combined;
}

struct SolveFlags {
    int k = 3;
    std::string model = "combined";
    double time_limit = 0.0;
    bool no_checks = false;
    bool no_domred = false;
    bool no_sym = false;
    std::string vi = "off";
};

// Attaches the shared solve-configuration flags to a subcommand.
void add_solve_flags(CLI::App* cmd, SolveFlags& f, bool with_stages) {
    cmd->add_option("--k", f.k, "clique overlap parameter")->check(CLI::PositiveNumber);
    cmd->add_option("--model", f.model, "constraint model")
        ->check(CLI::IsMember({"rank", "vertex", "combined"}));
    cmd->add_option("--time-limit", f.time_limit, "seconds before giving up (0 = none)");
    if (with_stages) {
        cmd->add_flag("--no-checks", f.no_checks, "skip the infeasibility checks");
        cmd->add_flag("--no-domain-reduction", f.no_domred, "skip rank domain reduction");
        cmd->add_flag("--no-symmetry", f.no_sym, "skip symmetry-breaking constraints");
        cmd->add_option("--vi", f.vi, "stable-set inequalities: span, pairwise or off")
            ->check(CLI::IsMember({"span", "pairwise", "off"}));
    }
}

SolveOptions build_options(const SolveFlags& f) {
    SolveOptions o;
    o.model = parse_model_name(f.model);
    o.time_limit = f.time_limit;
    o.prep.use_checks = !f.no_checks;
    o.prep.use_domain_reduction = !f.no_domred;
    o.prep.use_symmetry = !f.no_sym;
    o.prep.use_inequalities = f.vi != "off";
    o.prep.vi_form = f.vi == "pairwise" ? ViForm::Pairwise : ViForm::Span;
    return o;
}

std::string order_str(const Order& order) {
    std::string out;
    for (std::size_t i = 0; i < order.size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(order[i]);
    }
    return out;
}

std::string vertex_list(const VertexSet& vs) {
    std::string out = "{";
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (i) out += ',';
        out += 'v';
        out += std::to_string(vs[i]);
    }
    out += '}';
    return out;
}

bool is_connected(const Graph& g) {
    int n = g.vertex_count();
    if (n <= 1) return true;
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::vector<Vertex> stack = {0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
        Vertex v = stack.back();
        stack.pop_back();
        for (Vertex u : g.neighbors(v))
            if (!seen[static_cast<std::size_t>(u)]) {
                seen[static_cast<std::size_t>(u)] = 1;
                ++reached;
                stack.push_back(u);
            }
    }
    return reached == n;
}

void emit_graph(const Graph& g, const std::string& out_path, const std::string& comment) {
    if (!is_connected(g))
        std::cerr << "warning: generated graph is disconnected; no valid order exists at any k\n";
    if (out_path.empty()) {
        std::cout << serialize_instance(g);
    } else {
        write_instance_file(out_path, g, comment);
        std::cout << "wrote " << out_path << "\n";
    }
}

void print_stats(const SearchStats& stats) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", stats.seconds);
    std::cout << "stats: " << stats.choice_points << " choice points, " << stats.fails
              << " fails, " << buf << " s\n";
}

int cmd_gen_random(int n, std::optional<double> density, std::optional<std::int64_t> edges,
                   std::uint64_t seed, const std::string& out_path) {
    GenSpec spec;
    spec.n = n;
    spec.density = density;
    spec.edge_count = edges;
    spec.seed = seed;
    Graph g = gen_random(spec);
    std::string comment = "random n=" + std::to_string(n) + " m=" + std::to_string(g.edge_count()) +
                          " seed=" + std::to_string(seed);
    emit_graph(g, out_path, comment);
    return kExitFeasible;
}

int cmd_gen_wheel(int n, const std::string& out_path) {
    Graph g = gen_wheel(n);
    emit_graph(g, out_path, "wheel n=" + std::to_string(n));
    return kExitFeasible;
}

int cmd_check(const std::string& file, int k) {
    Instance inst{read_instance_file(file), k};
    std::cout << "n " << inst.n() << "  m " << inst.graph.edge_count() << "  k " << k << "\n";
    std::optional<CheckOutcome> out = run_checks(inst);
    if (!out) {
        std::cout << "checks passed: no infeasibility detected\n";
        return kExitFeasible;
    }
    std::cout << "infeasible: check " << static_cast<int>(out->check) << " ("
              << check_name(out->check) << ")\n";
    std::cout << "observed: " << out->observed << "\n";
    std::cout << "bound: " << out->bound.str() << "\n";
    for (const DeltaTrigger& t : out->trigger_deltas)
        std::cout << "delta " << t.delta << ": class size " << t.class_size << ", available ranks "
                  << t.available << (t.certifies ? "" : " (textbook trigger only)") << "\n";
    if (!out->witness.empty()) std::cout << "witness: " << vertex_list(out->witness) << "\n";
    return kExitInfeasible;
}

int cmd_solve(const std::string& file, const SolveFlags& flags, bool all, std::uint64_t limit) {
    Instance inst{read_instance_file(file), flags.k};
    SolveOptions opts = build_options(flags);
    SolveResult res = all ? solve_all(inst, limit, opts) : solve(inst, opts);
    std::cout << "status: " << status_name(res.status) << "\n";
    if (res.fired_check)
        std::cout << "fired check: " << static_cast<int>(res.fired_check->check) << " ("
                  << check_name(res.fired_check->check) << ")\n";
    if (all) {
        for (const Order& o : res.orders) std::cout << "order: " << order_str(o) << "\n";
        std::cout << "count: " << res.count << (res.truncated ? " (at limit)" : "") << "\n";
    } else if (res.order) {
        std::cout << "order: " << order_str(*res.order) << "\n";
    }
    print_stats(res.stats);
    return exit_for(res.status);
}

int cmd_enumerate(const std::string& file, const SolveFlags& flags, std::uint64_t limit) {
    Instance inst{read_instance_file(file), flags.k};
    SolveOptions opts = build_options(flags);
    // checks and domain reduction preserve every valid order; symmetry
    // breaking and inequalities do not, so enumeration turns them off
    opts.prep.use_symmetry = false;
    opts.prep.use_inequalities = false;
    SolveResult res = solve_all(inst, limit, opts);
    for (const Order& o : res.orders) std::cout << "order: " << order_str(o) << "\n";
    std::cout << "count: " << res.count << (res.truncated ? " (at limit)" : "") << "\n";
    print_stats(res.stats);
    return exit_for(res.status);
}

int cmd_verify(const std::string& file, int k, const std::vector<int>& order_values) {
    Instance inst{read_instance_file(file), k};
    Order order(order_values.begin(), order_values.end());
    bool ok = verify_order(inst, order);
    std::cout << (ok ? "valid order\n" : "invalid order\n");
    return ok ? kExitFeasible : kExitInfeasible;
}

std::string iso8601(std::chrono::system_clock::time_point tp) {
    std::time_t t = std::chrono::system_clock::to_time_t(tp);
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << text;
    if (!out) throw std::runtime_error("cannot write " + path.string());
}

int cmd_bench(const std::string& dir, const SolveFlags& flags,
              const std::vector<std::string>& models, int jobs, const std::string& out_prefix) {
    std::vector<std::filesystem::path> files = collect_instances(dir);
    if (files.empty()) {
        std::cerr << "data error: no .ctop instances under " << dir << "\n";
        return kExitData;
    }

    std::vector<BenchConfig> matrix;
    for (const std::string& name : models) {
        BenchConfig cfg;
        cfg.model = parse_model_name(name);
        cfg.checks = !flags.no_checks;
        cfg.domred = !flags.no_domred;
        cfg.sym = !flags.no_sym;
        cfg.vi = flags.vi == "off" ? ViChoice::Off
               : flags.vi == "span" ? ViChoice::Span
                                    : ViChoice::Pairwise;
        matrix.push_back(cfg);
    }

    BenchOptions opts;
    opts.k = flags.k;
    opts.time_limit = flags.time_limit;
    opts.jobs = jobs;

    auto started = std::chrono::system_clock::now();
    auto t0 = std::chrono::steady_clock::now();
    std::vector<RunRecord> records = run_bench(files, matrix, opts);
    double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    auto finished = std::chrono::system_clock::now();

    std::int64_t max_us = 0;
    std::size_t feasible = 0, infeasible = 0, timeouts = 0, errors = 0;
    for (const RunRecord& r : records) {
        max_us = std::max(max_us, r.time_us);
        switch (r.status) {
            case RunStatus::Feasible: ++feasible; break;
            case RunStatus::Infeasible: ++infeasible; break;
            case RunStatus::Timeout: ++timeouts; break;
            case RunStatus::DataError: ++errors; break;
        }
    }

    double hi = flags.time_limit > 0.0 ? flags.time_limit
                                       : std::max(1.0, static_cast<double>(max_us) / 1e6);
    double lo = std::min(0.001, hi);
    std::vector<ProfilePoint> profile = emit_profile(records, log_time_grid(lo, hi, 4));

    std::filesystem::path csv_path = out_prefix + ".csv";
    std::filesystem::path jsonl_path = out_prefix + ".jsonl";
    std::filesystem::path profile_path = out_prefix + ".profile.csv";
    std::filesystem::path meta_path = out_prefix + ".meta";
    write_text_file(csv_path, records_to_csv(records));
    write_text_file(jsonl_path, records_to_jsonl(records));
    write_text_file(profile_path, profile_to_csv(profile));

    char dur[64];
    std::snprintf(dur, sizeof dur, "%.3f", elapsed);
    std::string meta;
    meta += "started: " + iso8601(started) + "\n";
    meta += "finished: " + iso8601(finished) + "\n";
    meta += "duration_s: " + std::string(dur) + "\n";
    meta += "instances: " + std::to_string(files.size()) + "\n";
    meta += "configurations: " + std::to_string(matrix.size()) + "\n";
    meta += "k: " + std::to_string(flags.k) + "\n";
    meta += "jobs: " + std::to_string(jobs) + "\n";
    char tl[64];
    std::snprintf(tl, sizeof tl, "%.3f", flags.time_limit);
    meta += "time_limit_s: " + std::string(tl) + "\n";
    write_text_file(meta_path, meta);

    std::cout << "ran " << records.size() << " solves over " << files.size() << " instances\n";
    std::cout << "feasible: " << feasible << "  infeasible: " << infeasible
              << "  timeout: " << timeouts << "  data_error: " << errors << "\n";
    std::cout << "wrote " << csv_path.string() << ", " << jsonl_path.string() << ", "
              << profile_path.string() << ", " << meta_path.string() << "\n";
    return kExitFeasible;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"contiguous trilateration ordering toolkit"};
    app.require_subcommand(1);

    // gen
    CLI::App* gen = app.add_subcommand("gen", "generate an instance file");
    gen->require_subcommand(1);
    int gen_n = 0;
    std::optional<double> gen_density;
    std::optional<std::int64_t> gen_edges;
    std::uint64_t gen_seed = 0;
    std::string gen_out;
    CLI::App* gen_random = gen->add_subcommand("random", "seeded uniform G(n,m) graph");
    gen_random->add_option("--n", gen_n, "vertex count")->required()->check(CLI::PositiveNumber);
    CLI::Option* density_opt =
        gen_random->add_option("--density", gen_density, "edge density in (0,1]");
    gen_random->add_option("--edges", gen_edges, "exact edge count")->excludes(density_opt);
    gen_random->add_option("--seed", gen_seed, "generator seed");
    gen_random->add_option("--out", gen_out, "output file (default: stdout)");

    int wheel_n = 0;
    std::string wheel_out;
    CLI::App* gen_wheel_cmd = gen->add_subcommand("wheel", "hub-plus-rim wheel graph");
    gen_wheel_cmd->add_option("--n", wheel_n, "total vertex count (>= 4)")->required();
    gen_wheel_cmd->add_option("--out", wheel_out, "output file (default: stdout)");

    // check
    std::string check_file;
    int check_k = 3;
    CLI::App* check = app.add_subcommand("check", "run the five infeasibility checks");
    check->add_option("file", check_file, "instance file")->required();
    check->add_option("--k", check_k, "clique overlap parameter")->check(CLI::PositiveNumber);

    // solve
    std::string solve_file;
    SolveFlags solve_flags;
    bool solve_all_flag = false;
    std::uint64_t solve_limit = 0;
    CLI::App* solve_cmd = app.add_subcommand("solve", "decide feasibility and find an order");
    solve_cmd->add_option("file", solve_file, "instance file")->required();
    add_solve_flags(solve_cmd, solve_flags, true);
    solve_cmd->add_flag("--all", solve_all_flag, "enumerate all solutions of the model");
    solve_cmd->add_option("--limit", solve_limit, "stop after this many solutions (0 = none)");

    // verify
    std::string verify_file;
    int verify_k = 3;
    std::vector<int> verify_values;
    CLI::App* verify_cmd = app.add_subcommand("verify", "test a claimed order");
    verify_cmd->add_option("file", verify_file, "instance file")->required();
    verify_cmd->add_option("--k", verify_k, "clique overlap parameter")->check(CLI::PositiveNumber);
    verify_cmd->add_option("--order", verify_values, "vertex ids in position order")
        ->required()
        ->delimiter(',')
        ->expected(-1);

    // enumerate
    std::string enum_file;
    SolveFlags enum_flags;
    std::uint64_t enum_limit = 0;
    CLI::App* enum_cmd = app.add_subcommand("enumerate", "list every valid order");
    enum_cmd->add_option("file", enum_file, "instance file")->required();
    add_solve_flags(enum_cmd, enum_flags, false);
    enum_cmd->add_option("--limit", enum_limit, "stop after this many orders (0 = none)");

    // bench
    std::string bench_dir;
    SolveFlags bench_flags;
    std::vector<std::string> bench_models = {"combined"};
    int bench_jobs = 0;
    std::string bench_out = "bench";
    CLI::App* bench_cmd = app.add_subcommand("bench", "run a solve matrix over a directory");
    bench_cmd->add_option("dir", bench_dir, "directory of .ctop instances")->required();
    add_solve_flags(bench_cmd, bench_flags, true);
    bench_cmd->add_option("--models", bench_models, "models to run")
        ->delimiter(',')
        ->check(CLI::IsMember({"rank", "vertex", "combined"}));
    bench_cmd->add_option("--jobs", bench_jobs, "worker threads (0 = hardware)");
    bench_cmd->add_option("--out", bench_out, "output path prefix");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitFeasible : kExitUsage;
    }

    try {
        if (gen_random->parsed()) {
            if (!gen_density && !gen_edges)
                throw std::invalid_argument("gen random: give --density or --edges");
            return cmd_gen_random(gen_n, gen_density, gen_edges, gen_seed, gen_out);
        }
        if (gen_wheel_cmd->parsed()) return cmd_gen_wheel(wheel_n, wheel_out);
        if (check->parsed()) return cmd_check(check_file, check_k);
        if (solve_cmd->parsed())
            return cmd_solve(solve_file, solve_flags, solve_all_flag, solve_limit);
        if (verify_cmd->parsed()) return cmd_verify(verify_file, verify_k, verify_values);
        if (enum_cmd->parsed()) return cmd_enumerate(enum_file, enum_flags, enum_limit);
        if (bench_cmd->parsed())
            return cmd_bench(bench_dir, bench_flags, bench_models, bench_jobs, bench_out);
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitData;
    }
    return kExitUsage;
}
