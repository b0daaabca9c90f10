#include "frameforge/cli.hpp"

#include <json.hpp>

#include <atomic>
#include <cstdlib>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

#include "frameforge/admissibility.hpp"
#include "frameforge/energy.hpp"
#include "frameforge/io.hpp"
#include "frameforge/stability.hpp"
#include "frameforge/topology.hpp"

namespace frameforge::cli {

using nlohmann::json;

namespace {

json admissibility_json(const NormSpec& spec) {
    const AdmissibilityVerdict v = check_admissible(spec);
    json j{{"admissible", v.admissible}, {"sum_r", v.sum_r.str()}, {"d", spec.d}, {"n", spec.n()}};
    if (v.first_violated_k) {
        j["first_violated_k"] = *v.first_violated_k;
        j["violated_partial_sum"] = v.violated_partial_sum->str();
    } else {
        j["first_violated_k"] = nullptr;
    }
    j["sorted_order"] = v.sorted_order;
    return j;
}

json spark_json(const SparkVerdict& v) {
    return json{{"full_spark", v.full_spark},
                {"worst_minor", std::vector<int>(v.worst_minor.begin(), v.worst_minor.end())},
                {"worst_sigma_min", v.worst_sigma_min}};
}

json stability_json(const StabilityVerdict& v) {
    json j{{"semistable", v.semistable}};
    if (v.witness) {
        j["witness"] = json{{"indices", std::vector<int>(v.witness->indices.begin(), v.witness->indices.end())},
                            {"rank", v.witness->witness_rank},
                            {"weight_sum", v.witness->weight_sum.str()},
                            {"fragile", v.witness->fragile}};
    } else {
        j["witness"] = nullptr;
    }
    return j;
}

json classify_json(const CriticalPointClass& c) {
    json blocks = json::array();
    for (const auto& b : c.blocks)
        blocks.push_back(json{{"columns", std::vector<int>(b.columns.begin(), b.columns.end())},
                              {"eigenvalue", b.eigenvalue},
                              {"subspace_dim", b.subspace_dim}});
    return json{{"kind", critical_point_kind_name(c.kind)},
                {"blocks", std::move(blocks)},
                {"zero_columns", std::vector<int>(c.zero_columns.begin(), c.zero_columns.end())},
                {"grad_norm", c.grad_norm}};
}

json flow_config_json(const FlowConfig& cfg) {
    return json{{"max_iters", cfg.max_iters},
                {"initial_step", cfg.initial_step},
                {"armijo_c", cfg.armijo_c},
                {"backtrack_factor", cfg.backtrack_factor},
                {"record_every", cfg.record_every},
                {"grad_tol", cfg.tolerances.grad_tol},
                {"residual_tol", cfg.tolerances.residual_tol},
                {"rank_tol", cfg.tolerances.rank_tol},
                {"spark_tol", cfg.tolerances.spark_tol}};
}

void write_manifest(const GlobalOptions& global, const std::string& command, const std::string& spec_hash,
                    std::uint64_t seed, const FlowConfig& cfg, const std::string& outcome_summary) {
    if (global.manifest_path.empty()) return;
    const json manifest{{"command", command},           {"spec_hash", spec_hash},
                        {"seed", seed},                 {"config", flow_config_json(cfg)},
                        {"outcome_summary", outcome_summary}, {"timestamp", iso8601_utc_now()}};
    write_text_file(global.manifest_path, manifest.dump(2) + "\n");
}

FlowConfig make_flow_config(const GlobalOptions& global, long max_iters) {
    FlowConfig cfg;
    cfg.tolerances = global.tolerances;
    if (max_iters > 0) cfg.max_iters = max_iters;
    return cfg;
}

int io_failure(std::ostream& err, const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
}

struct SweepRow {
    std::string spec_hash;
    std::uint64_t seed = 0;
    std::string outcome;
    long iterations = 0;
    double parseval_residual = 0.0;
    double norm_residual = 0.0;
};

}  // namespace

unsigned worker_count() {
    if (const char* env = std::getenv("FRAMEFORGE_THREADS")) {
        const long parsed = std::strtol(env, nullptr, 10);
        if (parsed >= 1) return static_cast<unsigned>(parsed);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

int cmd_synth(const SynthOptions& opt, const GlobalOptions& global, std::ostream& out, std::ostream& err) {
    NormSpec spec;
    std::string spec_hash;
    try {
        spec = read_spec(opt.spec_path);
        spec_hash = file_content_hash(opt.spec_path);
    } catch (const IoError& e) {
        return io_failure(err, e);
    }

    const int d = opt.d > 0 ? opt.d : spec.d;
    const int n = opt.n > 0 ? opt.n : spec.n();
    if (d != spec.d || n != spec.n())
        throw std::invalid_argument("synth: --d/--n (" + std::to_string(d) + "x" + std::to_string(n) +
                                    ") disagree with spec file (" + std::to_string(spec.d) + "x" +
                                    std::to_string(spec.n()) + ")");

    const AdmissibilityVerdict adm = check_admissible(spec);
    if (!adm.admissible) {
        err << "inadmissible spec: sum of r is " << adm.sum_r << " (d = " << spec.d << ")";
        if (adm.first_violated_k)
            err << "; top-" << *adm.first_violated_k << " partial sum " << *adm.violated_partial_sum
                << " exceeds " << *adm.first_violated_k;
        err << "\n";
        return kExitInadmissible;
    }

    const FlowConfig cfg = make_flow_config(global, opt.max_iters);
    const FrameMatrix init = random_full_spark_init(d, n, opt.field, opt.seed);
    const FlowReport report = descend(init, spec, cfg);

    try {
        write_frame(opt.out_path, report.terminal);
        if (!opt.trace_path.empty()) write_trace_csv(opt.trace_path, report.trace);
        write_manifest(global, "synth", spec_hash, opt.seed, cfg, flow_outcome_name(report.outcome));
    } catch (const IoError& e) {
        return io_failure(err, e);
    }

    if (global.json) {
        out << json{{"outcome", flow_outcome_name(report.outcome)},
                    {"iterations", report.iterations},
                    {"terminal_energy", report.terminal_energy},
                    {"terminal_grad_norm", report.terminal_grad_norm},
                    {"parseval_residual", report.parseval_residual},
                    {"norm_residual", report.norm_residual},
                    {"zero_columns", std::vector<int>(report.zero_column_indices.begin(),
                                                      report.zero_column_indices.end())},
                    {"out", opt.out_path}}
                   .dump(2)
            << "\n";
    } else {
        out << flow_outcome_name(report.outcome) << " after " << report.iterations
            << " iterations; parseval_residual " << std::scientific << std::setprecision(3)
            << report.parseval_residual << ", norm_residual " << report.norm_residual << "; wrote "
            << opt.out_path << "\n";
    }
    return report.outcome == FlowOutcome::ConvergedToPF ? kExitOk : kExitNotConverged;
}

int cmd_sweep(const SweepOptions& opt, const GlobalOptions& global, std::ostream& out, std::ostream& err) {
    struct Job {
        size_t spec_index;
        std::uint64_t seed;
    };
    struct SpecEntry {
        NormSpec spec;
        std::string hash;
        bool admissible = false;
    };

    std::vector<SpecEntry> specs;
    try {
        for (const auto& path : opt.spec_paths) {
            SpecEntry entry;
            entry.spec = read_spec(path);
            entry.hash = file_content_hash(path);
            entry.admissible = check_admissible(entry.spec).admissible;
            specs.push_back(std::move(entry));
        }
    } catch (const IoError& e) {
        return io_failure(err, e);
    }

    std::vector<Job> jobs;
    for (size_t s = 0; s < specs.size(); ++s)
        for (long k = 0; k < opt.seed_count; ++k)
            jobs.push_back({s, opt.seed_start + static_cast<std::uint64_t>(k)});

    const FlowConfig cfg = make_flow_config(global, opt.max_iters);
    std::vector<SweepRow> rows(jobs.size());

    // Workers pull jobs by index; rows land at fixed positions, so the CSV
    // order is deterministic regardless of the worker count.
    std::atomic<size_t> next{0};
    const unsigned workers = std::min<size_t>(worker_count(), std::max<size_t>(jobs.size(), 1));
    auto run_jobs = [&]() {
        for (size_t i = next.fetch_add(1); i < jobs.size(); i = next.fetch_add(1)) {
            const Job& job = jobs[i];
            const SpecEntry& entry = specs[job.spec_index];
            SweepRow row;
            row.spec_hash = entry.hash;
            row.seed = job.seed;
            if (!entry.admissible) {
                row.outcome = "REJECTED";
            } else {
                const FrameMatrix init =
                    random_full_spark_init(entry.spec.d, entry.spec.n(), opt.field, job.seed);
                const FlowReport report = descend(init, entry.spec, cfg);
                row.outcome = flow_outcome_name(report.outcome);
                row.iterations = report.iterations;
                row.parseval_residual = report.parseval_residual;
                row.norm_residual = report.norm_residual;
            }
            rows[i] = std::move(row);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(run_jobs);
    run_jobs();
    for (auto& t : pool) t.join();

    std::ostringstream csv;
    csv << "spec_hash,seed,outcome,iterations,parseval_residual,norm_residual\n" << std::setprecision(17);
    long ran = 0, converged = 0, rejected = 0;
    for (const auto& row : rows) {
        csv << row.spec_hash << ',' << row.seed << ',' << row.outcome << ',' << row.iterations << ','
            << row.parseval_residual << ',' << row.norm_residual << '\n';
        if (row.outcome == "REJECTED") {
            ++rejected;
        } else {
            ++ran;
            if (row.outcome == "ConvergedToPF") ++converged;
        }
    }
    try {
        write_text_file(opt.out_csv, csv.str());
        write_manifest(global, "sweep", specs.empty() ? "" : specs.front().hash, opt.seed_start, cfg,
                       std::to_string(converged) + "/" + std::to_string(ran) + " converged");
    } catch (const IoError& e) {
        return io_failure(err, e);
    }

    const double ratio = ran > 0 ? static_cast<double>(converged) / static_cast<double>(ran) : 0.0;
    if (global.json) {
        out << json{{"runs", ran},
                    {"converged", converged},
                    {"rejected", rejected},
                    {"success_ratio", ratio},
                    {"out", opt.out_csv}}
                   .dump(2)
            << "\n";
    } else {
        out << "ran " << ran << " flows (" << rejected << " rejected); success ratio " << std::fixed
            << std::setprecision(4) << ratio << "; wrote " << opt.out_csv << "\n";
    }
    return kExitOk;
}

int cmd_check(const CheckOptions& opt, const GlobalOptions& global, std::ostream& out, std::ostream& err) {
    NormSpec spec;
    try {
        spec = read_spec(opt.spec_path);
    } catch (const IoError& e) {
        return io_failure(err, e);
    }

    json report{{"admissibility", admissibility_json(spec)}};
    const bool admissible = report["admissibility"]["admissible"].get<bool>();

    if (!opt.frame_path.empty()) {
        FrameMatrix F(Field::Real, Eigen::MatrixXcd{});
        try {
            F = read_frame(opt.frame_path);
        } catch (const IoError& e) {
            return io_failure(err, e);
        }
        const bool all = !opt.spark && !opt.stability && !opt.classify;
        try {
            if (opt.spark || all) report["spark"] = spark_json(is_full_spark(F, global.tolerances));
            if (opt.stability || all)
                report["stability"] = stability_json(check_property_S(F, spec, global.tolerances));
            if (opt.classify || all)
                report["classification"] = classify_json(classify_critical_point(F, spec, global.tolerances));
        } catch (const CombinatorialBudgetExceeded& e) {
            err << "error: " << e.what() << "\n";
            return kExitCombinatorialBudget;
        }
        report["parseval_residual"] = parseval_residual(F);
        report["norm_residual"] = norm_residual(F, spec);
    }

    out << report.dump(2) << "\n";
    return admissible ? kExitOk : kExitInadmissible;
}

int cmd_energy(const EnergyOptions& opt, const GlobalOptions& global, std::ostream& out, std::ostream& err) {
    (void)global;
    try {
        const FrameMatrix F = read_frame(opt.frame_path);
        const NormSpec spec = read_spec(opt.spec_path);
        const EnergyBreakdown e = energy(F, spec);
        out << json{{"parseval_term", e.parseval_term},
                    {"norm_term", e.norm_term},
                    {"total", e.total},
                    {"frame_potential", frame_potential(F)},
                    {"frame_energy_bc", frame_energy_bc(F)}}
                   .dump(2)
            << "\n";
        return kExitOk;
    } catch (const IoError& e) {
        return io_failure(err, e);
    }
}

int cmd_classify(const ClassifyOptions& opt, const GlobalOptions& global, std::ostream& out, std::ostream& err) {
    try {
        const FrameMatrix F = read_frame(opt.frame_path);
        const NormSpec spec = read_spec(opt.spec_path);
        out << classify_json(classify_critical_point(F, spec, global.tolerances)).dump(2) << "\n";
        return kExitOk;
    } catch (const IoError& e) {
        return io_failure(err, e);
    }
}

int cmd_topology(const TopologyOptions& opt, const GlobalOptions& global, std::ostream& out, std::ostream& err) {
    (void)global;
    NormSpec spec;
    try {
        spec = read_spec(opt.spec_path);
    } catch (const IoError& e) {
        return io_failure(err, e);
    }

    const AdmissibilityVerdict adm = check_admissible(spec);
    if (!adm.admissible) {
        err << "inadmissible spec: topology certificates require admissibility\n";
        return kExitInadmissible;
    }

    json report{{"d", spec.d}, {"n", spec.n()}, {"field", field_name(opt.field)}, {"q", opt.q}};
    if (spec.d >= 2) {
        const AnsatzConstant ansatz = best_ansatz_constant(spec);
        json levels = json::array();
        for (const auto& level : ansatz.per_ell)
            levels.push_back(
                json{{"ell", level.ell}, {"k_ell", level.k_ell}, {"ratio", level.ratio.str()}});
        report["ansatz"] = json{{"c_best", ansatz.c_best.str()},
                                {"c_floor", ansatz.c_floor.str()},
                                {"per_ell", std::move(levels)}};
        report["codimension_bound_real"] = codimension_bound(spec, Field::Real).str();
        report["codimension_bound_complex"] = codimension_bound(spec, Field::Complex).str();
        const NeighborhoodCertificate nbhd = certify_neighborhood_connectivity(spec);
        report["neighborhood_certificate"] = json{{"certified", nbhd.certified},
                                                  {"c_used", nbhd.c_used.str()},
                                                  {"condition_c", nbhd.condition_c.str()},
                                                  {"reason", nbhd.reason}};
    }
    const ConnectivityCertificate cert = certify_connectivity(spec, opt.field, opt.q);
    report["certificate"] = json{{"field", field_name(cert.field)},
                                 {"q", cert.q},
                                 {"c_used", cert.c_used.str()},
                                 {"condition_c", cert.condition_c.str()},
                                 {"condition_d", cert.condition_d.str()},
                                 {"certified", cert.certified},
                                 {"reason", cert.reason}};
    if (opt.scan_n_max > 0) {
        json scan = json::array();
        for (int n = spec.d; n <= opt.scan_n_max; ++n) {
            const ConnectivityCertificate c = certify_connectivity(NormSpec::equal_norm(spec.d, n), opt.field, opt.q);
            scan.push_back(json{{"n", n}, {"certified", c.certified}});
        }
        report["equal_norm_scan"] = std::move(scan);
    }
    out << report.dump(2) << "\n";
    return kExitOk;
}

}  // namespace frameforge::cli
