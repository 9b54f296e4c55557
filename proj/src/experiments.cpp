#include "thermokc/experiments.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "thermokc/format.hpp"
#include "thermokc/machine.hpp"
#include "thermokc/stats.hpp"
#include "thermokc/thermal.hpp"
#include "thermokc/trajectory.hpp"

namespace thermokc {

int thread_cap() {
    const char* env = std::getenv("THERMOKC_THREADS");
    if (!env || !*env) return 0;
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1) return 0;
    return static_cast<int>(v);
}

int worker_count() {
#ifdef _OPENMP
    int n = omp_get_max_threads();
#else
    int n = 1;
#endif
    if (const int cap = thread_cap(); cap > 0 && cap < n) n = cap;
    return n;
}

namespace {

double parse_back(const std::string& s) { return std::strtod(s.c_str(), nullptr); }

std::string opt12(const std::optional<double>& v) { return v ? fmt12(*v) : "NA"; }

int sign_of(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }

int sign_of(const Rational& r) {
    // boost::rational keeps the denominator positive
    return r.numerator() > 0 ? 1 : (r.numerator() < 0 ? -1 : 0);
}

// Seed positions ordered by (value, position); rows are emitted in this
// order so the report never depends on work completion order.
std::vector<std::size_t> seed_order(const std::vector<std::uint64_t>& seeds) {
    std::vector<std::size_t> order(seeds.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return seeds[a] < seeds[b]; });
    return order;
}

// Paired (x, y) column values from formatted rows, skipping NA entries.
std::pair<std::vector<double>, std::vector<double>> column_pairs(
    const std::vector<std::vector<std::string>>& rows, std::size_t cx, std::size_t cy) {
    std::vector<double> x, y;
    for (const auto& row : rows) {
        if (row[cx] == "NA" || row[cy] == "NA") continue;
        x.push_back(parse_back(row[cx]));
        y.push_back(parse_back(row[cy]));
    }
    return {std::move(x), std::move(y)};
}

void require_kind(const ExperimentConfig& cfg, ExperimentKind kind) {
    if (cfg.kind != kind)
        throw ConfigError("experiment", "config is for " + to_string(cfg.kind));
}

// Mean conditional-complexity estimate over chained equilibrium pairs
// sampled at a fixed beta: burn in from the ground state, then estimate
// K_est(x_{j+1} | x_j) for `pairs` consecutive samples pair_gap sweeps
// apart.
double equilibrium_pair_bits(const ExperimentConfig& cfg, const Hamiltonian& ham, double beta,
                             std::uint64_t stream_seed) {
    SpinLattice lattice = ground_state(ham);
    LatticeRng rng(stream_seed);
    for (int s = 0; s < cfg.burnin; ++s) metropolis_sweep(lattice, ham, beta, rng);
    ExactBoundedParams params;
    params.l_max = cfg.l_max;
    BitString prev = pack_microstate(lattice);
    std::uint64_t total = 0;
    for (int p = 0; p < cfg.pairs; ++p) {
        for (int s = 0; s < cfg.pair_gap; ++s) metropolis_sweep(lattice, ham, beta, rng);
        BitString next = pack_microstate(lattice);
        total += estimate_step(next, prev, cfg.estimator, params).bits;
        prev = std::move(next);
    }
    return static_cast<double>(total) / cfg.pairs;
}

// Fraction of per-seed blocks whose hottest grid row exceeds the coldest
// one in the est column. Rows must come in complete blocks of grid_len.
std::string hot_gt_cold(const std::vector<std::vector<std::string>>& rows, std::size_t grid_len,
                        std::size_t beta_col, std::size_t est_col) {
    if (grid_len < 2 || rows.empty()) return "NA";
    std::size_t hot = 0, cold = 0;  // grid offsets of min and max beta
    for (std::size_t g = 1; g < grid_len; ++g) {
        if (parse_back(rows[g][beta_col]) < parse_back(rows[hot][beta_col])) hot = g;
        if (parse_back(rows[g][beta_col]) > parse_back(rows[cold][beta_col])) cold = g;
    }
    if (hot == cold) return "NA";
    int wins = 0;
    const std::size_t blocks = rows.size() / grid_len;
    for (std::size_t b = 0; b < blocks; ++b) {
        const double h = parse_back(rows[b * grid_len + hot][est_col]);
        const double c = parse_back(rows[b * grid_len + cold][est_col]);
        if (h > c) ++wins;
    }
    return fmt12(static_cast<double>(wins) / static_cast<double>(blocks));
}

}  // namespace

ExperimentReport run_entropy_correlation(const ExperimentConfig& cfg) {
    validate(cfg);
    require_kind(cfg, ExperimentKind::EntropyCorrelation);
    ExperimentReport rep;
    rep.config = cfg;
    rep.columns = {"seed", "grid", "beta", "entropy_bits_site", "est_bits_site"};

    const int n_sites = cfg.rows * cfg.cols;
    const double site = static_cast<double>(n_sites);
    const Hamiltonian ham{cfg.rows, cfg.cols, cfg.coupling, cfg.ti_field};
    const auto order = seed_order(cfg.seeds);

    if (n_sites <= kExactThermoMaxSites) {
        const std::vector<double>& grid = cfg.beta_grid;
        std::vector<double> entropy_site(grid.size());
        for (std::size_t g = 0; g < grid.size(); ++g)
            entropy_site[g] = exact_thermo(ham, grid[g]).entropy_bits / site;

        struct Unit {
            std::uint64_t seed;
            std::size_t g;
        };
        std::vector<Unit> units;
        units.reserve(order.size() * grid.size());
        for (const std::size_t si : order)
            for (std::size_t g = 0; g < grid.size(); ++g) units.push_back({cfg.seeds[si], g});

        std::vector<double> est(units.size());
#pragma omp parallel for schedule(dynamic) num_threads(worker_count())
        for (long long u = 0; u < static_cast<long long>(units.size()); ++u) {
            const Unit& unit = units[static_cast<std::size_t>(u)];
            // isolated stream per work unit: seed + replica (grid) index
            est[static_cast<std::size_t>(u)] =
                equilibrium_pair_bits(cfg, ham, grid[unit.g],
                                      unit.seed + static_cast<std::uint64_t>(unit.g)) /
                site;
        }
        for (std::size_t u = 0; u < units.size(); ++u)
            rep.rows.push_back({std::to_string(units[u].seed), std::to_string(units[u].g),
                                fmt12(grid[units[u].g]), fmt12(entropy_site[units[u].g]),
                                fmt12(est[u])});
        const auto [ent, estv] = column_pairs(rep.rows, 3, 4);
        rep.summary.emplace_back("points", std::to_string(ent.size()));
        rep.summary.emplace_back("pearson", opt12(pearson(ent, estv)));
        rep.summary.emplace_back("spearman", opt12(spearman(ent, estv)));
        rep.summary.emplace_back("hot-gt-cold", hot_gt_cold(rep.rows, grid.size(), 2, 4));
        return rep;
    }

    // No oracle beyond 20 sites: anneal along the ladder and report the
    // per-rung conditional complexity instead of equilibrium pairs.
    const int rungs = cfg.ladder.rungs;
    std::vector<std::vector<double>> per_seed(order.size());
#pragma omp parallel for schedule(dynamic) num_threads(worker_count())
    for (long long i = 0; i < static_cast<long long>(order.size()); ++i) {
        const std::uint64_t seed = cfg.seeds[order[static_cast<std::size_t>(i)]];
        const Trajectory traj = anneal_ladder(ham, cfg.ladder, seed, "run");
        ExactBoundedParams params;
        params.l_max = cfg.l_max;
        const TrajectoryComplexity tc = traj_complexity(traj, cfg.estimator, params);
        std::vector<double> bits(static_cast<std::size_t>(rungs));
        for (int k = 0; k < rungs; ++k)
            bits[static_cast<std::size_t>(k)] =
                static_cast<double>(tc.per_step[static_cast<std::size_t>(k)].bits) / site;
        per_seed[static_cast<std::size_t>(i)] = std::move(bits);
    }
    for (std::size_t i = 0; i < order.size(); ++i)
        for (int k = 0; k < rungs; ++k)
            rep.rows.push_back({std::to_string(cfg.seeds[order[i]]), std::to_string(k),
                                fmt12(cfg.ladder.beta_of(k)), "NA",
                                fmt12(per_seed[i][static_cast<std::size_t>(k)])});
    rep.summary.emplace_back("points", "0");
    rep.summary.emplace_back("pearson", "NA");
    rep.summary.emplace_back("spearman", "NA");
    rep.summary.emplace_back("hot-gt-cold",
                             hot_gt_cold(rep.rows, static_cast<std::size_t>(rungs), 2, 4));
    return rep;
}

ExperimentReport run_clausius(const ExperimentConfig& cfg) {
    validate(cfg);
    require_kind(cfg, ExperimentKind::Clausius);
    ExperimentReport rep;
    rep.config = cfg;
    rep.columns = {"seed",      "grid",   "h_f",    "delta_mean", "q",
                   "q_per_t",   "delta_sign", "q_sign", "agree"};

    const std::vector<double> grid = cfg.hf_grid.empty() ? std::vector<double>{cfg.tf_field}
                                                         : cfg.hf_grid;
    const Hamiltonian ham_i{cfg.rows, cfg.cols, cfg.coupling, cfg.ti_field};
    const auto order = seed_order(cfg.seeds);

    struct Unit {
        std::uint64_t seed;
        std::size_t g;
    };
    std::vector<Unit> units;
    units.reserve(order.size() * grid.size());
    for (const std::size_t si : order)
        for (std::size_t g = 0; g < grid.size(); ++g) units.push_back({cfg.seeds[si], g});

    std::vector<std::vector<std::string>> unit_rows(units.size());
#pragma omp parallel for schedule(dynamic) num_threads(worker_count())
    for (long long u = 0; u < static_cast<long long>(units.size()); ++u) {
        const Unit& unit = units[static_cast<std::size_t>(u)];
        const Hamiltonian ham_f{cfg.rows, cfg.cols, cfg.coupling, grid[unit.g]};
        const Trajectory traj_i = anneal_ladder(ham_i, cfg.ladder, unit.seed, "t_i");
        const Trajectory traj_f = anneal_ladder(ham_f, cfg.ladder, unit.seed, "t_f");
        ExactBoundedParams params;
        params.l_max = cfg.l_max;
        const TrajectoryComplexity tc_i = traj_complexity(traj_i, cfg.estimator, params);
        const TrajectoryComplexity tc_f = traj_complexity(traj_f, cfg.estimator, params);
        const ComplexityDelta delta = delta_complexity(tc_f, tc_i);
        const double q = heat_absorbed(traj_f, traj_i, ham_f, ham_i);
        const int dsign = sign_of(delta.delta_mean);
        const int qsign = sign_of(q);
        const std::string agree = (dsign == 0 && qsign == 0) ? "NA"
                                  : (dsign == qsign ? "1" : "0");
        unit_rows[static_cast<std::size_t>(u)] = {
            std::to_string(unit.seed),
            std::to_string(unit.g),
            fmt12(grid[unit.g]),
            fmt12(to_double(delta.delta_mean)),
            fmt12(q),
            fmt12(q / static_cast<double>(cfg.ladder.rungs)),
            std::to_string(dsign),
            std::to_string(qsign),
            agree};
    }
    for (auto& row : unit_rows) rep.rows.push_back(std::move(row));

    long long compared = 0, agreed = 0;
    for (const auto& row : rep.rows) {
        if (row[8] == "NA") continue;
        ++compared;
        if (row[8] == "1") ++agreed;
    }
    rep.summary.emplace_back("compared", std::to_string(compared));
    rep.summary.emplace_back("sign-agreement",
                             compared == 0 ? "NA"
                                           : fmt12(static_cast<double>(agreed) /
                                                   static_cast<double>(compared)));
    const auto [dm, qv] = column_pairs(rep.rows, 3, 4);
    rep.summary.emplace_back("spearman", opt12(spearman(dm, qv)));
    return rep;
}

ExperimentReport run_estimator_audit(const ExperimentConfig& cfg) {
    validate(cfg);
    require_kind(cfg, ExperimentKind::EstimatorAudit);
    ExperimentReport rep;
    rep.config = cfg;
    rep.columns = {"seed",       "grid",        "name",      "length",
                   "exact_bits", "exact_found", "primed_bits", "diff_bits"};

    const std::vector<SuiteEntry> suite = audit_suite(cfg.seeds.front());
    // outer loop serial: exact_k parallelizes internally
    for (std::size_t i = 0; i < suite.size(); ++i) {
        const SuiteEntry& entry = suite[i];
        const ExactComplexity k = exact_k(entry.bits, {}, cfg.l_max);
        const int exact_bits = k.found() ? *k.value : cfg.l_max + 1;  // censored
        const std::uint64_t primed = cond_complexity_primed(entry.bits, {}).bits;
        const std::uint64_t diff = cond_complexity_diff(entry.bits, {}).bits;
        rep.rows.push_back({std::to_string(cfg.seeds.front()), std::to_string(i), entry.name,
                            std::to_string(entry.bits.size()), std::to_string(exact_bits),
                            k.found() ? "1" : "0", std::to_string(primed),
                            std::to_string(diff)});
    }
    long long censored = 0;
    for (const auto& row : rep.rows)
        if (row[5] == "0") ++censored;
    const auto [ex_p, primed_v] = column_pairs(rep.rows, 4, 6);
    const auto [ex_d, diff_v] = column_pairs(rep.rows, 4, 7);
    rep.summary.emplace_back("censored", std::to_string(censored));
    rep.summary.emplace_back("spearman-primed", opt12(spearman(ex_p, primed_v)));
    rep.summary.emplace_back("spearman-diff", opt12(spearman(ex_d, diff_v)));
    return rep;
}

ExperimentReport run_kraft_audit(const ExperimentConfig& cfg) {
    validate(cfg);
    require_kind(cfg, ExperimentKind::KraftAudit);
    ExperimentReport rep;
    rep.config = cfg;
    rep.columns = {"seed", "grid", "lmax", "num", "den", "sum"};

    for (int l = 2; l <= cfg.l_max; ++l) {
        const Rational r = kraft_sum(l);
        rep.rows.push_back({std::to_string(cfg.seeds.front()), std::to_string(l - 2),
                            std::to_string(l), std::to_string(r.numerator()),
                            std::to_string(r.denominator()), fmt12(to_double(r))});
    }
    bool le_one = true, monotone = true;
    Rational prev{0};
    Rational max_sum{0};
    for (const auto& row : rep.rows) {
        const Rational r{std::stoll(row[3]), std::stoll(row[4])};
        if (r > Rational{1}) le_one = false;
        if (r < prev) monotone = false;
        if (r > max_sum) max_sum = r;
        prev = r;
    }
    rep.summary.emplace_back("le-one", le_one ? "1" : "0");
    rep.summary.emplace_back("monotone", monotone ? "1" : "0");
    rep.summary.emplace_back("max-kraft", fmt12(to_double(max_sum)));
    return rep;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
    switch (cfg.kind) {
        case ExperimentKind::EntropyCorrelation: return run_entropy_correlation(cfg);
        case ExperimentKind::Clausius: return run_clausius(cfg);
        case ExperimentKind::EstimatorAudit: return run_estimator_audit(cfg);
        case ExperimentKind::KraftAudit: return run_kraft_audit(cfg);
    }
    throw std::logic_error("unhandled experiment kind");
}

namespace {

std::string join_csv(const std::vector<std::string>& fields) {
    std::string line;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) line += ',';
        line += fields[i];
    }
    return line;
}

}  // namespace

void write_report(const ExperimentReport& report, const std::string& dir) {
    std::filesystem::create_directories(dir);
    {
        std::ofstream os(dir + "/rows.csv", std::ios::binary);
        if (!os) throw std::runtime_error("cannot write " + dir + "/rows.csv");
        os << join_csv(report.columns) << "\n";
        for (const auto& row : report.rows) os << join_csv(row) << "\n";
    }
    {
        std::ofstream os(dir + "/summary.csv", std::ios::binary);
        if (!os) throw std::runtime_error("cannot write " + dir + "/summary.csv");
        os << "name,value\n";
        os << "version," << report.version << "\n";
        for (const auto& [name, value] : report.summary) os << name << ',' << value << "\n";
    }
    {
        std::ofstream os(dir + "/config.echo", std::ios::binary);
        if (!os) throw std::runtime_error("cannot write " + dir + "/config.echo");
        os << serialize(report.config);
    }
}

namespace {

enum class Dir { Ge, Le };

const std::map<std::string, Dir>& threshold_dirs() {
    static const std::map<std::string, Dir> dirs = {
        {"pearson", Dir::Ge},         {"spearman", Dir::Ge},
        {"hot-gt-cold", Dir::Ge},     {"sign-agreement", Dir::Ge},
        {"spearman-primed", Dir::Ge}, {"spearman-diff", Dir::Ge},
        {"monotone", Dir::Ge},        {"le-one", Dir::Ge},
        {"compared", Dir::Ge},        {"points", Dir::Ge},
        {"censored", Dir::Le},        {"max-kraft", Dir::Le},
    };
    return dirs;
}

}  // namespace

std::vector<ThresholdOutcome> evaluate_thresholds(const ExperimentReport& report) {
    std::vector<ThresholdOutcome> out;
    for (const auto& [name, target] : report.config.thresholds) {
        ThresholdOutcome o{name, target, "NA", false};
        for (const auto& [sname, svalue] : report.summary)
            if (sname == name) o.actual = svalue;
        const auto dir = threshold_dirs().find(name);
        if (dir != threshold_dirs().end() && o.actual != "NA") {
            const double v = parse_back(o.actual);
            o.met = dir->second == Dir::Ge ? v >= target : v <= target;
        }
        out.push_back(std::move(o));
    }
    return out;
}

bool thresholds_met(const ExperimentReport& report) {
    for (const auto& o : evaluate_thresholds(report))
        if (!o.met) return false;
    return true;
}

std::vector<SuiteEntry> audit_suite(std::uint64_t seed) {
    std::vector<SuiteEntry> suite;
    const auto add = [&suite](const char* name, const char* bits) {
        suite.push_back({name, BitString::from_string(bits)});
    };
    add("empty", "");
    add("zero", "0");
    add("one", "1");
    add("pair-01", "01");
    add("zeros-4", "0000");
    add("ones-4", "1111");
    add("alt-4", "0101");
    add("zeros-8", "00000000");
    add("alt-8", "01010101");
    add("mixed-8", "10110010");
    add("zeros-12", "000000000000");
    add("alt-12", "010101010101");
    add("mixed-12", "101100101101");
    add("zeros-16", "0000000000000000");
    add("ones-16", "1111111111111111");
    add("alt-16", "0101010101010101");
    add("blocks-16", "0011001100110011");
    add("spike-16", "1000000000000001");
    suite.push_back({"random-12", random_bits(12, seed)});
    suite.push_back({"random-16", random_bits(16, seed + 1)});
    return suite;
}

}  // namespace thermokc
