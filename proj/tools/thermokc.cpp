#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <CLI11.hpp>

#include "thermokc/config.hpp"
#include "thermokc/experiments.hpp"
#include "thermokc/format.hpp"
#include "thermokc/machine.hpp"
#include "thermokc/thermal.hpp"
#include "thermokc/trajectory.hpp"

namespace {

using namespace thermokc;

// Accepts either the microstate format (header "ROWS COLS") or raw 0/1
// text; whitespace between bits is ignored in the raw form.
BitString read_bits_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open '" + path + "'");
    std::stringstream buf;
    buf << is.rdbuf();
    const std::string content = buf.str();

    const auto eol = content.find('\n');
    const std::string first = content.substr(0, eol);
    int rows = 0, cols = 0;
    char extra = 0;
    std::istringstream hs(first);
    if (hs >> rows >> cols && !(hs >> extra)) {
        std::istringstream full(content);
        return pack_microstate(read_microstate(full));
    }

    BitString bits;
    for (const char ch : content) {
        if (ch == '0') bits.push_back(0);
        else if (ch == '1') bits.push_back(1);
        else if (ch == '\n' || ch == '\r' || ch == ' ' || ch == '\t') continue;
        else throw std::runtime_error("'" + path + "': expected only 0/1 and whitespace");
    }
    return bits;
}

struct OracleArgs {
    std::string alpha, data;
    int l_max = kExactKMaxBound;
    std::uint64_t steps = MachineConfig{}.step_budget;
};

struct ComplexityArgs {
    std::string y_path, x_path;
    std::string method = "primed";
};

struct SimulateArgs {
    int rows = 0, cols = 0, rungs = 0, sweeps = 1;
    double coupling = 1.0, field = 0.0, beta_max = 1.0, beta_min = 0.0;
    std::uint64_t seed = 1;
    std::string tag, out;
};

struct ExactArgs {
    int rows = 0, cols = 0;
    double coupling = 1.0, field = 0.0, beta = 0.0;
};

}  // namespace

int main(int argc, char** argv) {
#ifdef _OPENMP
    if (const int cap = thread_cap(); cap > 0) omp_set_num_threads(cap);
#endif

    CLI::App app{"bounded prefix complexity and Ising thermodynamics laboratory"};
    app.require_subcommand(1);
    int exit_code = 0;

    auto* oracle = app.add_subcommand("oracle", "exact bounded complexity by enumeration");
    OracleArgs oa;
    oracle->add_option("--alpha", oa.alpha, "target bits (0/1 string, may be empty)")->required();
    oracle->add_option("--data", oa.data, "conditioning data bits");
    oracle->add_option("--lmax", oa.l_max, "program length bound")->required();
    oracle->add_option("--steps", oa.steps, "interpreter step budget");
    oracle->callback([&] {
        MachineConfig cfg;
        cfg.step_budget = oa.steps;
        const ExactComplexity k =
            exact_k(BitString::from_string(oa.alpha), BitString::from_string(oa.data), oa.l_max,
                    cfg);
        if (k.found()) std::cout << *k.value << ',' << k.witness->code.str() << '\n';
        else std::cout << "UNKNOWN\n";
    });

    auto* kraft = app.add_subcommand("kraft", "exact Kraft sum over complete programs");
    int kraft_lmax = 0;
    kraft->add_option("--lmax", kraft_lmax, "program length bound")->required();
    kraft->callback([&] {
        std::cout << to_fraction_string(kraft_sum(kraft_lmax)) << '\n';
    });

    auto* complexity = app.add_subcommand("complexity", "conditional complexity estimate");
    ComplexityArgs ca;
    complexity->add_option("--y", ca.y_path, "subject bit file")->required();
    complexity->add_option("--x", ca.x_path, "conditioning bit file");
    complexity->add_option("--method", ca.method, "primed|diff")
        ->check(CLI::IsMember({"primed", "diff", "lz78-primed", "lz78-diff"}));
    complexity->callback([&] {
        const BitString y = read_bits_file(ca.y_path);
        const BitString x = ca.x_path.empty() ? BitString{} : read_bits_file(ca.x_path);
        const EstimatorMethod m = estimator_from_string(ca.method);
        const ComplexityEstimate est =
            m == EstimatorMethod::Lz78Diff ? cond_complexity_diff(y, x)
                                           : cond_complexity_primed(y, x);
        std::cout << est.bits << ',' << to_string(est.method) << ',' << est.input_length << '\n';
    });

    auto* simulate = app.add_subcommand("simulate", "anneal an Ising lattice along a ladder");
    simulate->set_help_flag("--help", "print help");  // frees -h for the field option
    SimulateArgs sa;
    simulate->add_option("--rows", sa.rows)->required();
    simulate->add_option("--cols", sa.cols)->required();
    simulate->add_option("--J", sa.coupling, "coupling");
    simulate->add_option("--h", sa.field, "external field");
    simulate->add_option("--T", sa.rungs, "ladder rungs")->required();
    simulate->add_option("--beta-max", sa.beta_max, "coldest rung beta")->required();
    simulate->add_option("--beta-min", sa.beta_min, "hottest rung beta");
    simulate->add_option("--sweeps", sa.sweeps, "sweeps per rung");
    simulate->add_option("--seed", sa.seed);
    simulate->add_option("--tag", sa.tag, "protocol time label");
    simulate->add_option("--out", sa.out, "trajectory file")->required();
    simulate->callback([&] {
        const Hamiltonian ham{sa.rows, sa.cols, sa.coupling, sa.field};
        LadderSchedule ladder;
        ladder.rungs = sa.rungs;
        ladder.beta_max = sa.beta_max;
        ladder.beta_min = sa.beta_min;
        ladder.sweeps_per_rung = sa.sweeps;
        const Trajectory traj = anneal_ladder(ham, ladder, sa.seed, sa.tag);
        std::ofstream os(sa.out, std::ios::binary);
        if (!os) throw std::runtime_error("cannot write '" + sa.out + "'");
        write_trajectory(os, traj);
    });

    auto* exact = app.add_subcommand("exact", "exact thermodynamics by full enumeration");
    exact->set_help_flag("--help", "print help");
    ExactArgs ea;
    exact->add_option("--rows", ea.rows)->required();
    exact->add_option("--cols", ea.cols)->required();
    exact->add_option("--J", ea.coupling, "coupling");
    exact->add_option("--h", ea.field, "external field");
    exact->add_option("--beta", ea.beta)->required();
    exact->callback([&] {
        const ExactThermo t = exact_thermo({ea.rows, ea.cols, ea.coupling, ea.field}, ea.beta);
        std::cout << fmt12(t.beta) << ',' << fmt12(t.log_z) << ',' << fmt12(t.mean_energy) << ','
                  << fmt12(t.entropy_bits) << '\n';
    });

    auto* experiment = app.add_subcommand("experiment", "run a configured experiment");
    std::string cfg_path, out_dir;
    experiment->add_option("--config", cfg_path, "KEY=VALUE config file")->required();
    experiment->add_option("--out", out_dir, "report directory (overrides config)");
    experiment->callback([&] {
        ExperimentConfig cfg = parse_config_file(cfg_path);
        if (!out_dir.empty()) cfg.out = out_dir;
        const ExperimentReport rep = run_experiment(cfg);
        write_report(rep, cfg.out);
        std::cout << "report: " << cfg.out << " (" << rep.rows.size() << " rows)\n";
        for (const auto& [name, value] : rep.summary)
            std::cout << name << '=' << value << '\n';
        bool all_met = true;
        for (const ThresholdOutcome& o : evaluate_thresholds(rep)) {
            std::cout << "threshold " << o.name << ": " << o.actual << " (target "
                      << fmt12(o.target) << ") " << (o.met ? "PASS" : "FAIL") << '\n';
            all_met = all_met && o.met;
        }
        if (!all_met) exit_code = 2;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return exit_code;
}
