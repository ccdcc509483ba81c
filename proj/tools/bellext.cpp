// Command-line driver: table verification, single-inequality maximization,
// critical-weight sweeps, vertex export and manifest replay.
//
// Exit codes: 0 success, 1 verification/replay failure, 2 usage or missing
// data, 3 internal numerical failure.

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <exception>
#include <optional>
#include <string>
#include <vector>

#include "bellext/analysis.hpp"
#include "bellext/behavior.hpp"
#include "bellext/manifest.hpp"
#include "bellext/polytope.hpp"
#include "bellext/seesaw.hpp"

namespace {

using namespace bellext;

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitRuntime = 3;

struct MissingData : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<Inequality> load_table_or_die(const std::string& data_path) {
    const std::string path = data_path.empty() ? default_table_path() : data_path;
    try {
        return load_inequality_table(path);
    } catch (const std::exception& e) {
        throw MissingData(std::string("cannot load inequality table: ") + e.what());
    }
}

std::string table_digest(const std::string& data_path) {
    const std::string path = data_path.empty() ? default_table_path() : data_path;
    return digest_hex(read_text_file(path));
}

void emit_output(const std::string& out_path, const std::string& content,
                 const std::string& command, const nlohmann::json& parameters) {
    write_text_file(out_path, content);
    RunManifest m;
    m.command = command;
    m.parameters = parameters;
    m.outputs.push_back({out_path, digest_hex(content)});
    write_manifest(manifest_path_for(out_path), m);
    std::printf("wrote %s (fnv1a64 %s) and %s\n", out_path.c_str(),
                m.outputs[0].digest.c_str(), manifest_path_for(out_path).c_str());
}

// --- verify-table -----------------------------------------------------------

struct VerifyOptions {
    std::string data;
    bool quantum = true;
    int seeds = 500;
    std::uint64_t master_seed = 1;
    int threads = 4;
    std::string out;
};

nlohmann::json verify_parameters(const VerifyOptions& opt) {
    return {{"quantum", opt.quantum},
            {"seeds", opt.seeds},
            {"master_seed", opt.master_seed},
            {"table_fnv1a64", table_digest(opt.data)}};
}

analysis::TableReport run_verify(const VerifyOptions& opt) {
    const std::vector<Inequality> table = load_table_or_die(opt.data);
    return analysis::verify_table(table, opt.quantum, opt.seeds, opt.master_seed, opt.threads);
}

int cmd_verify(const VerifyOptions& opt) {
    const analysis::TableReport report = run_verify(opt);
    std::printf("%-4s %-12s %-12s %-6s %-10s %-10s %-14s %-6s %s\n", "id", "beta_L(ref)",
                "beta_L", "facet", "tight_dim", "beta_Q", "seesaw", "seeds", "status");
    for (const auto& r : report.rows) {
        std::printf("%-4d %-12lld %-12lld %-6s %-10d ", r.id, r.beta_l_expected,
                    r.beta_l_computed, r.facet ? "yes" : "NO", r.tight_dimension);
        if (report.with_quantum) {
            std::printf("%-10.4f %-14.9f %-6d ", r.beta_q_ref, r.seesaw_value, r.seeds_used);
        } else {
            std::printf("%-10s %-14s %-6s ", "-", "-", "-");
        }
        std::printf("%s\n", r.pass(report.with_quantum) ? "pass" : "FAIL");
    }
    std::printf("%s\n", report.all_pass ? "ALL ROWS PASS" : "VERIFICATION FAILED");
    if (!opt.out.empty()) {
        emit_output(opt.out, table_report_csv(report), "verify-table", verify_parameters(opt));
    }
    return report.all_pass ? kExitOk : kExitVerificationFailure;
}

// --- max-violation ----------------------------------------------------------

struct MaxViolationOptions {
    std::string data;
    int ineq = 15;
    int seeds = 500;
    std::uint64_t master_seed = 1;
    bool stop_at_ref = false;
    std::string out;
};

nlohmann::json max_violation_parameters(const MaxViolationOptions& opt) {
    return {{"ineq", opt.ineq},
            {"seeds", opt.seeds},
            {"master_seed", opt.master_seed},
            {"stop_at_ref", opt.stop_at_ref},
            {"table_fnv1a64", table_digest(opt.data)}};
}

std::string run_max_violation(const MaxViolationOptions& opt) {
    const std::vector<Inequality> table = load_table_or_die(opt.data);
    const Inequality& ineq = table_row(table, opt.ineq);

    seesaw::Config cfg;
    cfg.seeds = opt.seeds;
    cfg.master_seed = opt.master_seed;
    cfg.stream_tags = {static_cast<std::uint64_t>(opt.ineq)};
    if (opt.stop_at_ref && ineq.quantum_bound_ref) {
        cfg.stop_at_value = *ineq.quantum_bound_ref - 1e-3;
    }
    const seesaw::Result r = seesaw::run_seesaw(seesaw::extended_problem(ineq), {}, cfg);

    const CorrelatorVector behavior =
        extract_behavior(seesaw::to_extended_model(seesaw::extended_problem(ineq), r.best));
    nlohmann::json j = {{"ineq", opt.ineq},
                        {"beta_l", ineq.local_bound},
                        {"beta_q_ref", ineq.quantum_bound_ref ? *ineq.quantum_bound_ref : 0.0},
                        {"best_value", format_real(r.best_value)},
                        {"best_value_check", format_real(ineq.evaluate(behavior))},
                        {"best_seed", r.best_seed},
                        {"seeds_used", r.seed_values.size()},
                        {"reached_target", r.reached_target}};
    nlohmann::json corr = nlohmann::json::array();
    for (double v : behavior.values) corr.push_back(format_real(v));
    j["behavior"] = corr;
    return j.dump(2) + "\n";
}

int cmd_max_violation(const MaxViolationOptions& opt) {
    const std::string result = run_max_violation(opt);
    std::fputs(result.c_str(), stdout);
    if (!opt.out.empty()) {
        emit_output(opt.out, result, "max-violation", max_violation_parameters(opt));
    }
    return kExitOk;
}

// --- sweep -------------------------------------------------------------------

struct SweepOptions {
    std::string data;
    std::string family = "rho";
    std::string ineq = "15";
    int alpha_grid = 100;
    double alpha = -1.0;  // >= 0: single-point sweep overriding the grid
    double w_start = 0.75;
    int steps = 8;
    int seeds = 500;
    std::uint64_t master_seed = 1;
    int threads = 4;
    std::string out;
};

nlohmann::json sweep_parameters(const SweepOptions& opt) {
    nlohmann::json j = {{"family", opt.family},
                        {"ineq", opt.ineq},
                        {"alpha_grid", opt.alpha_grid},
                        {"w_start", format_real(opt.w_start)},
                        {"steps", opt.steps},
                        {"seeds", opt.seeds},
                        {"master_seed", opt.master_seed}};
    if (opt.alpha >= 0.0) j["alpha"] = format_real(opt.alpha);
    if (opt.ineq != "chsh") j["table_fnv1a64"] = table_digest(opt.data);
    return j;
}

analysis::SweepResult run_sweep(const SweepOptions& opt) {
    analysis::SweepConfig cfg;
    cfg.family = analysis::family_from_name(opt.family);
    cfg.inequality = analysis::sweep_inequality_from_name(opt.ineq);
    cfg.alphas = opt.alpha >= 0.0 ? std::vector<double>{opt.alpha}
                                  : analysis::uniform_alpha_grid(opt.alpha_grid);
    cfg.w_start = opt.w_start;
    cfg.bisection_steps = opt.steps;
    cfg.seeds = opt.seeds;
    cfg.master_seed = opt.master_seed;
    cfg.threads = opt.threads;
    return analysis::critical_w_sweep(cfg);
}

int cmd_sweep(const SweepOptions& opt) {
    if (!opt.data.empty()) setenv("BELLEXT_DATA", opt.data.c_str(), 1);
    const analysis::SweepResult res = run_sweep(opt);
    const std::string csv = sweep_csv(res);
    std::fputs(csv.c_str(), stdout);
    if (!opt.out.empty()) {
        emit_output(opt.out, csv, "sweep", sweep_parameters(opt));
    }
    return kExitOk;
}

// --- vertices ----------------------------------------------------------------

struct VerticesOptions {
    int n = 4;
    std::string out;
};

int cmd_vertices(const VerticesOptions& opt) {
    const VertexSet vs = enumerate_vertices(Scenario(opt.n));
    std::printf("cycle length        %d\n", opt.n);
    std::printf("alice vertices      %zu\n", vs.alice.size());
    std::printf("bob noncontextual   %d\n", vs.n_bob_noncontextual);
    std::printf("bob contextual      %d\n", vs.n_bob_contextual);
    std::printf("product vertices    %zu\n", vs.products.size());
    if (!opt.out.empty()) {
        emit_output(opt.out, vertex_csv(vs), "vertices",
                    nlohmann::json{{"n", opt.n}});
    }
    return kExitOk;
}

// --- replay ------------------------------------------------------------------

int cmd_replay(const std::string& manifest_path) {
    RunManifest m;
    try {
        m = load_manifest(manifest_path);
    } catch (const std::exception& e) {
        throw MissingData(std::string("cannot load manifest: ") + e.what());
    }

    std::string regenerated;
    const nlohmann::json& p = m.parameters;
    if (m.command == "verify-table") {
        VerifyOptions opt;
        opt.quantum = p.at("quantum").get<bool>();
        opt.seeds = p.at("seeds").get<int>();
        opt.master_seed = p.at("master_seed").get<std::uint64_t>();
        if (table_digest(opt.data) != p.at("table_fnv1a64").get<std::string>()) {
            std::printf("REPLAY FAILED: inequality table changed since the recorded run\n");
            return kExitVerificationFailure;
        }
        regenerated = table_report_csv(run_verify(opt));
    } else if (m.command == "max-violation") {
        MaxViolationOptions opt;
        opt.ineq = p.at("ineq").get<int>();
        opt.seeds = p.at("seeds").get<int>();
        opt.master_seed = p.at("master_seed").get<std::uint64_t>();
        opt.stop_at_ref = p.at("stop_at_ref").get<bool>();
        if (table_digest(opt.data) != p.at("table_fnv1a64").get<std::string>()) {
            std::printf("REPLAY FAILED: inequality table changed since the recorded run\n");
            return kExitVerificationFailure;
        }
        regenerated = run_max_violation(opt);
    } else if (m.command == "sweep") {
        SweepOptions opt;
        opt.family = p.at("family").get<std::string>();
        opt.ineq = p.at("ineq").get<std::string>();
        if (p.contains("table_fnv1a64") &&
            table_digest(opt.data) != p.at("table_fnv1a64").get<std::string>()) {
            std::printf("REPLAY FAILED: inequality table changed since the recorded run\n");
            return kExitVerificationFailure;
        }
        opt.alpha_grid = p.at("alpha_grid").get<int>();
        if (p.contains("alpha")) opt.alpha = std::strtod(p.at("alpha").get<std::string>().c_str(), nullptr);
        opt.w_start = std::strtod(p.at("w_start").get<std::string>().c_str(), nullptr);
        opt.steps = p.at("steps").get<int>();
        opt.seeds = p.at("seeds").get<int>();
        opt.master_seed = p.at("master_seed").get<std::uint64_t>();
        regenerated = sweep_csv(run_sweep(opt));
    } else if (m.command == "vertices") {
        VerticesOptions opt;
        opt.n = p.at("n").get<int>();
        regenerated = vertex_csv(enumerate_vertices(Scenario(opt.n)));
    } else {
        throw MissingData("manifest has unknown command: " + m.command);
    }

    if (m.outputs.size() != 1) throw MissingData("manifest must record exactly one output");
    const std::string fresh = digest_hex(regenerated);
    if (fresh == m.outputs[0].digest) {
        std::printf("REPLAY OK: %s regenerated bit-identically (fnv1a64 %s)\n",
                    m.outputs[0].path.c_str(), fresh.c_str());
        return kExitOk;
    }
    std::printf("REPLAY FAILED: %s digest %s, recorded %s\n", m.outputs[0].path.c_str(),
                fresh.c_str(), m.outputs[0].digest.c_str());
    return kExitVerificationFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Local polytope and quantum-violation toolkit for Bell scenarios "
                 "with locally compatible measurements"};
    app.require_subcommand(1);

    VerifyOptions vo;
    CLI::App* verify = app.add_subcommand("verify-table",
                                          "Check local bounds, facet status and seesaw maxima "
                                          "of the bundled inequality table");
    verify->add_option("--data", vo.data, "Path to the inequality table CSV");
    verify->add_flag("--quantum,!--no-quantum", vo.quantum,
                     "Run the seesaw stage (--no-quantum skips it)");
    verify->add_option("--seeds", vo.seeds, "Seesaw restarts per row")->check(CLI::PositiveNumber);
    verify->add_option("--master-seed", vo.master_seed, "Master RNG seed");
    verify->add_option("--threads", vo.threads, "Worker threads")->check(CLI::PositiveNumber);
    verify->add_option("--out", vo.out, "Write a CSV report (plus manifest)");

    MaxViolationOptions mo;
    CLI::App* maxv = app.add_subcommand("max-violation",
                                        "Seesaw lower bound on the quantum maximum of one row");
    maxv->add_option("--data", mo.data, "Path to the inequality table CSV");
    maxv->add_option("--ineq", mo.ineq, "Row id (1-26)")->check(CLI::Range(1, 26));
    maxv->add_option("--seeds", mo.seeds, "Seesaw restarts")->check(CLI::PositiveNumber);
    maxv->add_option("--master-seed", mo.master_seed, "Master RNG seed");
    maxv->add_flag("--stop-at-ref", mo.stop_at_ref,
                   "Stop once the tabulated value is matched within 1e-3");
    maxv->add_option("--out", mo.out, "Write the JSON result (plus manifest)");

    SweepOptions so;
    CLI::App* sweep = app.add_subcommand("sweep",
                                         "Critical mixing weights over an alpha grid");
    sweep->add_option("--data", so.data, "Path to the inequality table CSV");
    sweep->add_option("--family", so.family, "State family: rho | sigma")
        ->check(CLI::IsMember({"rho", "sigma"}));
    sweep->add_option("--ineq", so.ineq, "Inequality: 15 | chsh | i3322")
        ->check(CLI::IsMember({"15", "chsh", "i3322"}));
    sweep->add_option("--alpha-grid", so.alpha_grid, "Grid size over [1/2, 1]")
        ->check(CLI::Range(2, 100000));
    sweep->add_option("--alpha", so.alpha, "Sweep a single alpha instead of the grid")
        ->check(CLI::Range(0.0, 1.0));
    sweep->add_option("--w-start", so.w_start, "First weight probed by the ladder")
        ->check(CLI::Range(0.0, 1.0));
    sweep->add_option("--steps", so.steps, "Ladder refinement steps")->check(CLI::PositiveNumber);
    sweep->add_option("--seeds", so.seeds, "Seesaw restarts per probe")
        ->check(CLI::PositiveNumber);
    sweep->add_option("--master-seed", so.master_seed, "Master RNG seed");
    sweep->add_option("--threads", so.threads, "Worker threads")->check(CLI::PositiveNumber);
    sweep->add_option("--out", so.out, "Write the CSV (plus manifest)");

    VerticesOptions xo;
    CLI::App* vertices = app.add_subcommand("vertices", "Enumerate the polytope's vertices");
    vertices->add_option("--n", xo.n, "Cycle length of Bob's compatibility graph")
        ->check(CLI::Range(3, 16));
    vertices->add_option("--out", xo.out, "Write the vertex CSV (plus manifest)");

    std::string replay_path;
    CLI::App* replay = app.add_subcommand("replay",
                                          "Re-run a recorded manifest and compare digests");
    replay->add_option("manifest", replay_path, "Path to a .manifest.json file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (verify->parsed()) return cmd_verify(vo);
        if (maxv->parsed()) return cmd_max_violation(mo);
        if (sweep->parsed()) return cmd_sweep(so);
        if (vertices->parsed()) return cmd_vertices(xo);
        if (replay->parsed()) return cmd_replay(replay_path);
    } catch (const MissingData& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitRuntime;
    }
    return kExitUsage;
}
