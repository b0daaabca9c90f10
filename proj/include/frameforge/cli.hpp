#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "frameforge/core.hpp"
#include "frameforge/flow.hpp"

namespace frameforge::cli {

// Stable exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInadmissible = 2;
inline constexpr int kExitNotConverged = 3;
inline constexpr int kExitIo = 4;
inline constexpr int kExitCombinatorialBudget = 5;

struct GlobalOptions {
    Tolerances tolerances;
    bool json = false;               // machine-readable stdout for synth/sweep
    std::string manifest_path;       // empty: no manifest written
};

struct SynthOptions {
    int d = 0;                       // 0: take from spec file
    int n = 0;                       // 0: take from spec file
    Field field = Field::Real;
    std::string spec_path;
    std::uint64_t seed = 0;
    long max_iters = 0;              // 0: FlowConfig default
    std::string trace_path;          // empty: no trace CSV
    std::string out_path;
};

struct SweepOptions {
    std::vector<std::string> spec_paths;
    Field field = Field::Real;
    std::uint64_t seed_start = 0;
    long seed_count = 0;
    long max_iters = 0;              // 0: FlowConfig default
    std::string out_csv;
};

struct CheckOptions {
    std::string spec_path;
    std::string frame_path;          // empty: admissibility verdict only
    bool spark = false;
    bool stability = false;
    bool classify = false;           // none set with a frame: run all three
};

struct EnergyOptions {
    std::string frame_path;
    std::string spec_path;
};

struct ClassifyOptions {
    std::string frame_path;
    std::string spec_path;
};

struct TopologyOptions {
    std::string spec_path;
    Field field = Field::Real;
    int q = 0;
    int scan_n_max = 0;              // > 0: also scan for the smallest certified n
};

int cmd_synth(const SynthOptions& opt, const GlobalOptions& global, std::ostream& out, std::ostream& err);
int cmd_sweep(const SweepOptions& opt, const GlobalOptions& global, std::ostream& out, std::ostream& err);
int cmd_check(const CheckOptions& opt, const GlobalOptions& global, std::ostream& out, std::ostream& err);
int cmd_energy(const EnergyOptions& opt, const GlobalOptions& global, std::ostream& out, std::ostream& err);
int cmd_classify(const ClassifyOptions& opt, const GlobalOptions& global, std::ostream& out, std::ostream& err);
int cmd_topology(const TopologyOptions& opt, const GlobalOptions& global, std::ostream& out, std::ostream& err);

/// Worker cap for sweep: FRAMEFORGE_THREADS when set, otherwise the hardware
/// concurrency (at least 1 either way).
unsigned worker_count();

}  // namespace frameforge::cli
