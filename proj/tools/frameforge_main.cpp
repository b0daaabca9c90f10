#include <CLI11.hpp>

#include <iostream>

#include "frameforge/cli.hpp"
#include "frameforge/io.hpp"
#include "frameforge/stability.hpp"

namespace {

frameforge::Field parse_field(const std::string& name) { return frameforge::field_from_name(name); }

}  // namespace

int main(int argc, char** argv) {
    using namespace frameforge;
    using namespace frameforge::cli;

    CLI::App app{"Parseval frame construction and verification"};
    app.require_subcommand(1);

    GlobalOptions global;
    std::string field_name_arg = "real";
    app.add_option("--tol-grad", global.tolerances.grad_tol, "Gradient-norm termination tolerance");
    app.add_option("--tol-residual", global.tolerances.residual_tol, "Parseval/norm residual tolerance");
    app.add_option("--tol-rank", global.tolerances.rank_tol, "Relative singular-value cutoff for rank");
    app.add_flag("--json", global.json, "Machine-readable stdout");
    app.add_option("--manifest", global.manifest_path, "Write a run manifest to this path");

    SynthOptions synth;
    auto* synth_cmd = app.add_subcommand("synth", "Construct a Parseval frame with prescribed norms");
    synth_cmd->add_option("--d", synth.d, "Ambient dimension (defaults to the spec file's d)");
    synth_cmd->add_option("--n", synth.n, "Number of frame vectors (defaults to the spec file's n)");
    synth_cmd->add_option("--field", field_name_arg, "real|complex")->capture_default_str();
    synth_cmd->add_option("--spec", synth.spec_path, "NormSpec JSON file")->required();
    synth_cmd->add_option("--seed", synth.seed, "RNG seed")->capture_default_str();
    synth_cmd->add_option("--max-iters", synth.max_iters, "Iteration budget override");
    synth_cmd->add_option("--trace", synth.trace_path, "Write trace CSV here");
    synth_cmd->add_option("--out", synth.out_path, "Output frame JSON file")->required();

    SweepOptions sweep;
    auto* sweep_cmd = app.add_subcommand("sweep", "Batch seed sweep over specs");
    sweep_cmd->add_option("--spec", sweep.spec_paths, "NormSpec JSON file (repeatable)")->required();
    sweep_cmd->add_option("--field", field_name_arg, "real|complex")->capture_default_str();
    sweep_cmd->add_option("--seed-start", sweep.seed_start, "First seed")->capture_default_str();
    sweep_cmd->add_option("--seed-count", sweep.seed_count, "Number of seeds per spec")->required();
    sweep_cmd->add_option("--max-iters", sweep.max_iters, "Iteration budget override");
    sweep_cmd->add_option("--out", sweep.out_csv, "Output CSV file")->required();

    CheckOptions check;
    auto* check_cmd = app.add_subcommand("check", "Admissibility and structural checks");
    check_cmd->add_option("--spec", check.spec_path, "NormSpec JSON file")->required();
    check_cmd->add_option("--frame", check.frame_path, "Frame file (JSON, or CSV for real frames)");
    check_cmd->add_flag("--spark", check.spark, "Full-spark test");
    check_cmd->add_flag("--stability", check.stability, "Semistability oracle");
    check_cmd->add_flag("--classify", check.classify, "Critical-point classification");

    EnergyOptions energy_opt;
    auto* energy_cmd = app.add_subcommand("energy", "Total frame energy breakdown");
    energy_cmd->add_option("--frame", energy_opt.frame_path, "Frame file")->required();
    energy_cmd->add_option("--spec", energy_opt.spec_path, "NormSpec JSON file")->required();

    ClassifyOptions classify_opt;
    auto* classify_cmd = app.add_subcommand("classify", "Critical-point classification");
    classify_cmd->add_option("--frame", classify_opt.frame_path, "Frame file")->required();
    classify_cmd->add_option("--spec", classify_opt.spec_path, "NormSpec JSON file")->required();

    TopologyOptions topo;
    auto* topo_cmd = app.add_subcommand("topology", "Connectivity certificates and codimension bounds");
    topo_cmd->add_option("--spec", topo.spec_path, "NormSpec JSON file")->required();
    topo_cmd->add_option("--field", field_name_arg, "real|complex")->capture_default_str();
    topo_cmd->add_option("--q", topo.q, "Connectivity degree")->capture_default_str();
    topo_cmd->add_option("--scan-n", topo.scan_n_max, "Also scan equal-norm certificates up to this n");

    CLI11_PARSE(app, argc, argv);

    try {
        const Field field = parse_field(field_name_arg);
        if (synth_cmd->parsed()) {
            synth.field = field;
            return cmd_synth(synth, global, std::cout, std::cerr);
        }
        if (sweep_cmd->parsed()) {
            sweep.field = field;
            return cmd_sweep(sweep, global, std::cout, std::cerr);
        }
        if (check_cmd->parsed()) return cmd_check(check, global, std::cout, std::cerr);
        if (energy_cmd->parsed()) return cmd_energy(energy_opt, global, std::cout, std::cerr);
        if (classify_cmd->parsed()) return cmd_classify(classify_opt, global, std::cout, std::cerr);
        if (topo_cmd->parsed()) {
            topo.field = field;
            return cmd_topology(topo, global, std::cout, std::cerr);
        }
    } catch (const InadmissibleSpec& e) {
        std::cerr << "error: " << e.what() << "\n";
        return frameforge::cli::kExitInadmissible;
    } catch (const CombinatorialBudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return frameforge::cli::kExitCombinatorialBudget;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return frameforge::cli::kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return frameforge::cli::kExitUsage;
    }
    return frameforge::cli::kExitUsage;
}
