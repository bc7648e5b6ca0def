#include "ctop/bench.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <stdexcept>
#include <thread>
#include <utility>

#include "ctop/io.hpp"

namespace ctop {

const char* run_status_name(RunStatus s) {
    switch (s) {
        case RunStatus::Feasible: return "feasible";
        case RunStatus::Infeasible: return "infeasible";
        case RunStatus::Timeout: return "timeout";
        case RunStatus::DataError: return "data_error";
    }
    return "unknown";
}

const char* vi_choice_name(ViChoice c) {
    switch (c) {
        case ViChoice::Off: return "off";
        case ViChoice::Span: return "span";
        case ViChoice::Pairwise: return "pairwise";
    }
    return "unknown";
}

std::string BenchConfig::label() const {
    std::string out = model_name(model);
    if (checks) out += "+checks";
    if (domred) out += "+domred";
    if (sym) out += "+sym";
    if (vi != ViChoice::Off) {
        out += "+vi:";
        out += vi_choice_name(vi);
    }
    return out;
}

SolveOptions BenchConfig::solve_options(double time_limit) const {
    SolveOptions o;
    o.model = model;
    o.time_limit = time_limit;
    o.prep.use_checks = checks;
    o.prep.use_domain_reduction = domred;
    o.prep.use_symmetry = sym;
    o.prep.use_inequalities = vi != ViChoice::Off;
    o.prep.vi_form = vi == ViChoice::Pairwise ? ViForm::Pairwise : ViForm::Span;
    return o;
}

std::string RunRecord::config_label() const {
    BenchConfig cfg;
    cfg.model = model;
    cfg.checks = checks;
    cfg.domred = domred;
    cfg.sym = sym;
    cfg.vi = vi;
    return cfg.label();
}

namespace {

std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

std::string ms_string(std::int64_t us) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%lld.%03lld", static_cast<long long>(us / 1000),
                  static_cast<long long>(us % 1000));
    return buf;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

[[noreturn]] void bad_field(const char* what, const std::string& value) {
    throw std::runtime_error(std::string("records csv: bad ") + what + " '" + value + "'");
}

long long to_int(const std::string& s, const char* what) {
    try {
        std::size_t idx = 0;
        long long v = std::stoll(s, &idx);
        if (idx != s.size()) bad_field(what, s);
        return v;
    } catch (const std::logic_error&) {
        bad_field(what, s);
    }
}

std::uint64_t to_uint(const std::string& s, const char* what) {
    long long v = to_int(s, what);
    if (v < 0) bad_field(what, s);
    return static_cast<std::uint64_t>(v);
}

double to_double(const std::string& s, const char* what) {
    try {
        std::size_t idx = 0;
        double v = std::stod(s, &idx);
        if (idx != s.size()) bad_field(what, s);
        return v;
    } catch (const std::logic_error&) {
        bad_field(what, s);
    }
}

std::int64_t parse_ms(const std::string& s) {
    std::size_t dot = s.find('.');
    if (dot == std::string::npos || s.size() - dot - 1 != 3) bad_field("time_ms", s);
    long long whole = to_int(s.substr(0, dot), "time_ms");
    long long frac = to_int(s.substr(dot + 1), "time_ms");
    if (whole < 0 || frac < 0) bad_field("time_ms", s);
    return whole * 1000 + frac;
}

bool parse_on_off(const std::string& s, const char* what) {
    if (s == "on") return true;
    if (s == "off") return false;
    bad_field(what, s);
}

Model parse_model(const std::string& s) {
    if (s == "rank") return Model::Rank;
    if (s == "vertex") return Model::Vertex;
    if (s == "combined") return Model::Combined;
    bad_field("model", s);
}

ViChoice parse_vi(const std::string& s) {
    if (s == "off") return ViChoice::Off;
    if (s == "span") return ViChoice::Span;
    if (s == "pairwise") return ViChoice::Pairwise;
    bad_field("vi", s);
}

RunStatus parse_status(const std::string& s) {
    if (s == "feasible") return RunStatus::Feasible;
    if (s == "infeasible") return RunStatus::Infeasible;
    if (s == "timeout") return RunStatus::Timeout;
    if (s == "data_error") return RunStatus::DataError;
    bad_field("status", s);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"' && field.empty()) {
            quoted = true;
        } else if (c == ',') {
            out.push_back(std::move(field));
            field.clear();
        } else {
            field += c;
        }
    }
    if (quoted) throw std::runtime_error("records csv: unterminated quote");
    out.push_back(std::move(field));
    return out;
}

RunRecord run_one(const std::string& id, const std::optional<Graph>& graph,
                  const BenchConfig& cfg, const BenchOptions& opts) {
    RunRecord rec;
    rec.instance = id;
    rec.k = opts.k;
    rec.model = cfg.model;
    rec.checks = cfg.checks;
    rec.domred = cfg.domred;
    rec.sym = cfg.sym;
    rec.vi = cfg.vi;
    if (!graph) return rec;  // status stays data_error

    rec.n = graph->vertex_count();
    rec.m = graph->edge_count();
    if (rec.n >= 2)
        rec.density = std::round(2e6 * static_cast<double>(rec.m) /
                                 (static_cast<double>(rec.n) * (rec.n - 1))) /
                      1e6;
    Instance inst{*graph, opts.k};
    SolveResult res = solve(inst, cfg.solve_options(opts.time_limit));
    switch (res.status) {
        case SolveStatus::Feasible: rec.status = RunStatus::Feasible; break;
        case SolveStatus::Infeasible: rec.status = RunStatus::Infeasible; break;
        case SolveStatus::Timeout: rec.status = RunStatus::Timeout; break;
    }
    rec.time_us = std::llround(res.stats.seconds * 1e6);
    rec.choice_points = res.stats.choice_points;
    rec.fails = res.stats.fails;
    rec.fired_check = res.fired_check ? static_cast<int>(res.fired_check->check) : 0;
    return rec;
}

}  // namespace

std::string records_to_csv(const std::vector<RunRecord>& records) {
    std::string out = kRecordCsvHeader;
    out += '\n';
    for (const RunRecord& r : records) {
        out += csv_escape(r.instance);
        out += ',';
        out += std::to_string(r.n);
        out += ',';
        out += std::to_string(r.m);
        out += ',';
        out += fixed6(r.density);
        out += ',';
        out += std::to_string(r.k);
        out += ',';
        out += model_name(r.model);
        out += ',';
        out += r.checks ? "on" : "off";
        out += ',';
        out += r.domred ? "on" : "off";
        out += ',';
        out += r.sym ? "on" : "off";
        out += ',';
        out += vi_choice_name(r.vi);
        out += ',';
        out += run_status_name(r.status);
        out += ',';
        out += ms_string(r.time_us);
        out += ',';
        out += std::to_string(r.choice_points);
        out += ',';
        out += std::to_string(r.fails);
        out += ',';
        if (r.fired_check != 0) out += std::to_string(r.fired_check);
        out += '\n';
    }
    return out;
}

std::vector<RunRecord> records_from_csv(const std::string& text) {
    std::vector<std::string> lines;
    std::string line;
    for (char c : text) {
        if (c == '\n') {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            lines.push_back(std::move(line));
            line.clear();
        } else {
            line += c;
        }
    }
    if (!line.empty()) lines.push_back(std::move(line));
    if (lines.empty() || lines.front() != kRecordCsvHeader)
        throw std::runtime_error("records csv: missing or wrong header");

    std::vector<RunRecord> records;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        std::vector<std::string> f = split_csv_line(lines[i]);
        if (f.size() != 15)
            throw std::runtime_error("records csv: expected 15 fields, got " +
                                     std::to_string(f.size()));
        RunRecord r;
        r.instance = f[0];
        r.n = static_cast<int>(to_int(f[1], "n"));
        r.m = to_int(f[2], "m");
        r.density = to_double(f[3], "density");
        r.k = static_cast<int>(to_int(f[4], "k"));
        r.model = parse_model(f[5]);
        r.checks = parse_on_off(f[6], "checks");
        r.domred = parse_on_off(f[7], "domred");
        r.sym = parse_on_off(f[8], "sym");
        r.vi = parse_vi(f[9]);
        r.status = parse_status(f[10]);
        r.time_us = parse_ms(f[11]);
        r.choice_points = to_uint(f[12], "choice_points");
        r.fails = to_uint(f[13], "fails");
        r.fired_check = f[14].empty() ? 0 : static_cast<int>(to_int(f[14], "fired_check"));
        if (r.fired_check < 0 || r.fired_check > 5) bad_field("fired_check", f[14]);
        records.push_back(std::move(r));
    }
    return records;
}

std::string records_to_jsonl(const std::vector<RunRecord>& records) {
    std::string out;
    for (const RunRecord& r : records) {
        nlohmann::ordered_json j;
        j["instance"] = r.instance;
        j["n"] = r.n;
        j["m"] = r.m;
        j["density"] = r.density;
        j["k"] = r.k;
        j["model"] = model_name(r.model);
        j["checks"] = r.checks;
        j["domred"] = r.domred;
        j["sym"] = r.sym;
        j["vi"] = vi_choice_name(r.vi);
        j["status"] = run_status_name(r.status);
        j["time_us"] = r.time_us;
        j["choice_points"] = r.choice_points;
        j["fails"] = r.fails;
        j["fired_check"] = r.fired_check;
        out += j.dump();
        out += '\n';
    }
    return out;
}

std::vector<RunRecord> run_bench(const std::vector<std::filesystem::path>& instances,
                                 const std::vector<BenchConfig>& matrix,
                                 const BenchOptions& opts) {
    if (opts.k < 1) throw std::invalid_argument("bench: k must be at least 1");
    struct Loaded {
        std::string id;
        std::optional<Graph> graph;
    };
    std::vector<Loaded> loaded;
    loaded.reserve(instances.size());
    for (const auto& path : instances) {
        Loaded l;
        l.id = path.stem().string();
        try {
            l.graph = read_instance_file(path);
        } catch (const std::exception&) {
            l.graph.reset();
        }
        loaded.push_back(std::move(l));
    }

    std::size_t tasks = loaded.size() * matrix.size();
    std::vector<RunRecord> records(tasks);
    if (tasks == 0) return records;

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next.fetch_add(1); i < tasks; i = next.fetch_add(1)) {
            const Loaded& l = loaded[i / matrix.size()];
            records[i] = run_one(l.id, l.graph, matrix[i % matrix.size()], opts);
        }
    };

    std::size_t want = opts.jobs > 0 ? static_cast<std::size_t>(opts.jobs)
                                     : std::max(1u, std::thread::hardware_concurrency());
    std::size_t pool = std::min(want, tasks);
    if (pool <= 1) {
        worker();
        return records;
    }
    std::vector<std::thread> threads;
    threads.reserve(pool);
    for (std::size_t t = 0; t < pool; ++t) threads.emplace_back(worker);
    for (auto& th : threads) th.join();
    return records;
}

std::vector<std::filesystem::path> collect_instances(const std::filesystem::path& dir) {
    std::vector<std::filesystem::path> out;
    for (const auto& entry : std::filesystem::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".ctop")
            out.push_back(entry.path());
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<double> log_time_grid(double lo, double hi, int points_per_decade) {
    if (!(lo > 0.0) || !(hi >= lo) || points_per_decade < 1)
        throw std::invalid_argument("log_time_grid: need 0 < lo <= hi and points_per_decade >= 1");
    std::vector<double> grid;
    for (int i = 0;; ++i) {
        double t = lo * std::pow(10.0, static_cast<double>(i) / points_per_decade);
        if (t >= hi * (1.0 - 1e-9)) break;
        grid.push_back(t);
    }
    grid.push_back(hi);
    return grid;
}

std::vector<ProfilePoint> emit_profile(const std::vector<RunRecord>& records,
                                       const std::vector<double>& grid) {
    if (records.empty()) throw std::invalid_argument("emit_profile: no records");
    std::map<std::string, std::vector<const RunRecord*>> by_config;
    for (const RunRecord& r : records) by_config[r.config_label()].push_back(&r);

    std::vector<ProfilePoint> out;
    for (const auto& [label, recs] : by_config) {
        for (double t : grid) {
            std::size_t decided = 0;
            for (const RunRecord* r : recs) {
                bool done =
                    r->status == RunStatus::Feasible || r->status == RunStatus::Infeasible;
                if (done && static_cast<double>(r->time_us) <= t * 1e6) ++decided;
            }
            out.push_back(
                {label, t, static_cast<double>(decided) / static_cast<double>(recs.size())});
        }
    }
    return out;
}

std::string profile_to_csv(const std::vector<ProfilePoint>& points) {
    std::string out = "config,time_s,fraction\n";
    for (const ProfilePoint& p : points) {
        out += csv_escape(p.config);
        out += ',';
        out += fixed6(p.time_s);
        out += ',';
        out += fixed6(p.fraction);
        out += '\n';
    }
    return out;
}

}  // namespace ctop
