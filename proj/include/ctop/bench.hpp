#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "ctop/solver.hpp"

namespace ctop {

enum class RunStatus { Feasible, Infeasible, Timeout, DataError };
const char* run_status_name(RunStatus s);

enum class ViChoice { Off, Span, Pairwise };
const char* vi_choice_name(ViChoice c);

// One solver configuration of a benchmark matrix.
struct BenchConfig {
    Model model = Model::Combined;
    bool checks = true;
    bool domred = true;
    bool sym = true;
    ViChoice vi = ViChoice::Off;

    // Model name plus the enabled stages, e.g. "combined+checks+domred+sym".
    std::string label() const;
    SolveOptions solve_options(double time_limit) const;
};

// One (instance, configuration) run. Wall time is integer microseconds
// internally; the CSV reports milliseconds with three decimals, which
// round-trips without float drift.
struct RunRecord {
    std::string instance;
    int n = 0;
    std::int64_t m = 0;
    double density = 0.0;  // 2m / n(n-1), rounded to 6 decimals
    int k = 0;
    Model model = Model::Combined;
    bool checks = true;
    bool domred = true;
    bool sym = true;
    ViChoice vi = ViChoice::Off;
    RunStatus status = RunStatus::DataError;
    std::int64_t time_us = 0;
    std::uint64_t choice_points = 0;
    std::uint64_t fails = 0;
    int fired_check = 0;  // 1..5, or 0 when no check decided

    std::string config_label() const;
    bool operator==(const RunRecord&) const = default;
};

inline constexpr char kRecordCsvHeader[] =
    "instance,n,m,density,k,model,checks,domred,sym,vi,status,time_ms,"
    "choice_points,fails,fired_check";

std::string records_to_csv(const std::vector<RunRecord>& records);

// Strict parser for the exact schema records_to_csv emits; the round trip
// reproduces every field. Throws std::runtime_error on malformed input.
std::vector<RunRecord> records_from_csv(const std::string& text);

// The same records as line-delimited JSON, one object per line.
std::string records_to_jsonl(const std::vector<RunRecord>& records);

struct BenchOptions {
    int k = 3;
    double time_limit = 0.0;  // per run, in seconds; <= 0 runs unbounded
    int jobs = 0;             // worker threads; <= 0 uses the hardware count
};

// Runs every configuration against every instance file. Instances run
// concurrently on a bounded worker pool; records come back in matrix order
// (instance-major, then configuration) regardless of completion order.
// Unreadable or malformed files yield data_error records and the run
// continues.
std::vector<RunRecord> run_bench(const std::vector<std::filesystem::path>& instances,
                                 const std::vector<BenchConfig>& matrix,
                                 const BenchOptions& opts = {});

// The .ctop files directly under dir, sorted by filename.
std::vector<std::filesystem::path> collect_instances(const std::filesystem::path& dir);

struct ProfilePoint {
    std::string config;
    double time_s = 0.0;
    double fraction = 0.0;
    bool operator==(const ProfilePoint&) const = default;
};

// Logarithmic time grid from lo to hi inclusive, points_per_decade steps per
// factor of ten. Requires 0 < lo <= hi.
std::vector<double> log_time_grid(double lo, double hi, int points_per_decade = 4);

// Fraction of each configuration's records decided (feasible or infeasible)
// within each grid time, per configuration in label order; monotone in t by
// construction. Throws std::invalid_argument on an empty record set.
std::vector<ProfilePoint> emit_profile(const std::vector<RunRecord>& records,
                                       const std::vector<double>& grid);

std::string profile_to_csv(const std::vector<ProfilePoint>& points);

}  // namespace ctop
