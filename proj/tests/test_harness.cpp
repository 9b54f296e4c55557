#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "thermokc/experiments.hpp"
#include "thermokc/format.hpp"
#include "thermokc/rational.hpp"
#include "thermokc/stats.hpp"

using namespace thermokc;

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream is(p, std::ios::binary);
    REQUIRE(is.good());
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

std::filesystem::path temp_dir(const char* leaf) {
    const auto dir = std::filesystem::temp_directory_path() / "thermokc-tests" / leaf;
    std::filesystem::remove_all(dir);
    return dir;
}

}  // namespace

TEST_CASE("mean and its empty-input guard") {
    CHECK(mean({2.0, 4.0, 9.0}) == doctest::Approx(5.0));
    CHECK_THROWS(mean({}));
}

TEST_CASE("pearson on exact linear data") {
    const std::vector<double> x{1, 2, 3, 4, 5};
    const std::vector<double> up{2, 4, 6, 8, 10};
    const std::vector<double> down{5, 4, 3, 2, 1};
    CHECK(*pearson(x, up) == doctest::Approx(1.0));
    CHECK(*pearson(x, down) == doctest::Approx(-1.0));
    CHECK_FALSE(pearson({1, 2}, {3, 4}).has_value());
    CHECK_FALSE(pearson(x, {7, 7, 7, 7, 7}).has_value());
}

TEST_CASE("fractional ranks average over ties") {
    const auto r = fractional_ranks({10, 20, 20, 30});
    REQUIRE(r.size() == 4);
    CHECK(r[0] == 1.0);
    CHECK(r[1] == 2.5);
    CHECK(r[2] == 2.5);
    CHECK(r[3] == 4.0);
    const auto all_tied = fractional_ranks({5, 5, 5});
    for (double v : all_tied) CHECK(v == 2.0);
}

TEST_CASE("spearman sees through monotone nonlinearity") {
    const std::vector<double> x{1, 2, 3, 4, 5, 6};
    const std::vector<double> y{1, 8, 27, 64, 125, 216};
    CHECK(*spearman(x, y) == doctest::Approx(1.0));
    const std::vector<double> z{216, 125, 64, 27, 8, 1};
    CHECK(*spearman(x, z) == doctest::Approx(-1.0));
}

TEST_CASE("chi-square statistic by hand") {
    CHECK(chi_square_stat({5, 5}, {5.0, 5.0}) == 0.0);
    CHECK(chi_square_stat({8, 2}, {5.0, 5.0}) == doctest::Approx(3.6));
    CHECK_THROWS(chi_square_stat({1, 2, 3}, {1.0, 2.0}));
    CHECK_THROWS(chi_square_stat({1, 2}, {1.0, 0.0}));
}

TEST_CASE("chi-square p-values match tabulated quantiles") {
    // 95th and 99th percentiles of chi-square distributions
    CHECK(chi_square_pvalue(3.841458821, 1) == doctest::Approx(0.05).epsilon(1e-6));
    CHECK(chi_square_pvalue(24.99579014, 15) == doctest::Approx(0.05).epsilon(1e-6));
    CHECK(chi_square_pvalue(30.57791417, 15) == doctest::Approx(0.01).epsilon(1e-6));
    // dof 2 has the closed form exp(-x/2)
    CHECK(chi_square_pvalue(2.0, 2) == doctest::Approx(std::exp(-1.0)).epsilon(1e-10));
    CHECK(chi_square_pvalue(0.0, 5) == doctest::Approx(1.0));
    CHECK(chi_square_pvalue(500.0, 5) < 1e-12);
}

TEST_CASE("config text round trips through the canonical form") {
    std::istringstream is(
        "# comparison run\n"
        "experiment = entropy-correlation\n"
        "rows = 4\n"
        "cols = 4  # square lattice\n"
        "J = 1\n"
        "ti.h = 0\n"
        "ladder.T = 6\n"
        "ladder.beta-max = 2\n"
        "ladder.beta-min = 0.1\n"
        "ladder.sweeps = 3\n"
        "seeds = 1..3,9\n"
        "estimator = lz78-primed\n"
        "beta.grid = 0.1,0.5,1\n"
        "burnin = 50\n"
        "pairs = 4\n"
        "pair-gap = 2\n"
        "out = out/run1\n"
        "threshold.pearson = 0.9\n");
    const ExperimentConfig cfg = parse_config(is);
    CHECK(cfg.kind == ExperimentKind::EntropyCorrelation);
    CHECK(cfg.rows == 4);
    CHECK(cfg.seeds == std::vector<std::uint64_t>{1, 2, 3, 9});
    CHECK(cfg.beta_grid == std::vector<double>{0.1, 0.5, 1.0});
    CHECK(cfg.ladder.rungs == 6);
    CHECK(cfg.ladder.sweeps_per_rung == 3);
    CHECK(cfg.pair_gap == 2);
    CHECK(cfg.out == "out/run1");
    REQUIRE(cfg.thresholds.count("pearson") == 1);
    CHECK(cfg.thresholds.at("pearson") == 0.9);

    std::istringstream again(serialize(cfg));
    CHECK(parse_config(again) == cfg);
}

TEST_CASE("config errors name the offending key") {
    const auto parse_text = [](const std::string& text) {
        std::istringstream is(text);
        return parse_config(is);
    };
    try {
        parse_text("experiment = kraft-audit\nseeds = 1\nseeds = 2\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.key() == "seeds");
    }
    try {
        parse_text("experiment = kraft-audit\nseeds = 1\nwat = 1\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.key() == "wat");
    }
    CHECK_THROWS_AS(parse_text("experiment = time-machine\nseeds = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_text("experiment = kraft-audit\n"), ConfigError);       // no seeds
    CHECK_THROWS_AS(parse_text("experiment = kraft-audit\nseeds = 5..2\n"), ConfigError);
    CHECK_THROWS_AS(parse_text("experiment = kraft-audit\nseeds = 1\nlmax = 21\n"), ConfigError);
    CHECK_THROWS_AS(parse_text("experiment = estimator-audit\nseeds = 1\nlmax = 25\n"), ConfigError);
    CHECK_THROWS_AS(
        parse_text("experiment = clausius\nseeds = 1\nJ = 0\n"), ConfigError);
    CHECK_THROWS_AS(
        parse_text("experiment = entropy-correlation\nseeds = 1\nrows = 2\ncols = 2\n"),
        ConfigError);  // oracle lattice without beta.grid
    CHECK_THROWS_AS(
        parse_text("experiment = entropy-correlation\nseeds = 1\nrows = 5\ncols = 5\n"
                   "estimator = exact-bounded\n"),
        ConfigError);
}

TEST_CASE("experiment kind names round trip") {
    for (ExperimentKind k : {ExperimentKind::EntropyCorrelation, ExperimentKind::Clausius,
                             ExperimentKind::EstimatorAudit, ExperimentKind::KraftAudit})
        CHECK(experiment_kind_from_string(to_string(k)) == k);
}

TEST_CASE("audit suite is fixed-size, in-range and deterministic") {
    const auto suite = audit_suite(1);
    REQUIRE(suite.size() == 20);
    std::set<std::string> names;
    for (const auto& entry : suite) {
        CHECK(entry.bits.size() <= 16);
        names.insert(entry.name);
    }
    CHECK(names.size() == 20);  // names are unique
    const auto again = audit_suite(1);
    for (std::size_t i = 0; i < suite.size(); ++i) {
        CHECK(suite[i].name == again[i].name);
        CHECK(suite[i].bits == again[i].bits);
    }
    // the seed only moves the random entries
    const auto other = audit_suite(2);
    CHECK(other.size() == 20);
    bool any_differ = false;
    for (std::size_t i = 0; i < suite.size(); ++i) any_differ |= (suite[i].bits != other[i].bits);
    CHECK(any_differ);
    CHECK(suite[0].bits.empty());
}

TEST_CASE("kraft audit report") {
    ExperimentConfig cfg;
    cfg.kind = ExperimentKind::KraftAudit;
    cfg.l_max = 10;
    cfg.seeds = {1};
    const ExperimentReport rep = run_kraft_audit(cfg);
    REQUIRE(rep.rows.size() == 9);  // lmax 2..10
    CHECK(rep.rows.front()[2] == "2");
    CHECK(rep.rows.front()[3] == "1");
    CHECK(rep.rows.front()[4] == "4");
    REQUIRE(rep.summary.size() == 3);
    CHECK(rep.summary[0] == std::pair<std::string, std::string>{"le-one", "1"});
    CHECK(rep.summary[1] == std::pair<std::string, std::string>{"monotone", "1"});

    // the summary must hold for the rationals reconstructed from the rows
    Rational prev{0};
    for (const auto& row : rep.rows) {
        const Rational r{std::stoll(row[3]), std::stoll(row[4])};
        CHECK(r >= prev);
        CHECK(r <= Rational{1});
        prev = r;
    }
}

TEST_CASE("estimator audit report") {
    ExperimentConfig cfg;
    cfg.kind = ExperimentKind::EstimatorAudit;
    cfg.l_max = 14;
    cfg.seeds = {1};
    const ExperimentReport rep = run_estimator_audit(cfg);
    REQUIRE(rep.rows.size() == 20);
    REQUIRE(rep.columns.size() == 8);
    for (const auto& row : rep.rows) {
        const int exact_bits = std::stoi(row[4]);
        if (row[5] == "0") CHECK(exact_bits == cfg.l_max + 1);  // censored value
        else CHECK(exact_bits <= cfg.l_max);
    }
    // summary values recompute from the formatted rows
    std::vector<double> exact_v, primed_v;
    for (const auto& row : rep.rows) {
        exact_v.push_back(std::stod(row[4]));
        primed_v.push_back(std::stod(row[6]));
    }
    CHECK(rep.summary[1].second == fmt12(*spearman(exact_v, primed_v)));
}

TEST_CASE("entropy correlation on the exact-oracle branch") {
    ExperimentConfig cfg;
    cfg.kind = ExperimentKind::EntropyCorrelation;
    cfg.rows = 2;
    cfg.cols = 2;
    cfg.beta_grid = {0.05, 2.5};
    cfg.seeds = {3, 1};
    cfg.burnin = 100;
    cfg.pairs = 8;
    const ExperimentReport rep = run_entropy_correlation(cfg);
    REQUIRE(rep.rows.size() == 4);
    // rows come sorted by seed value, then grid index
    CHECK(rep.rows[0][0] == "1");
    CHECK(rep.rows[0][1] == "0");
    CHECK(rep.rows[1][1] == "1");
    CHECK(rep.rows[2][0] == "3");
    // the oracle column repeats per grid point independent of seed
    CHECK(rep.rows[0][3] == rep.rows[2][3]);
    CHECK(rep.rows[1][3] == rep.rows[3][3]);
    // hot grid point carries more entropy and, in expectation, more bits
    CHECK(std::stod(rep.rows[0][3]) > std::stod(rep.rows[1][3]));
    REQUIRE(rep.summary.size() == 4);
    CHECK(rep.summary[0].second == "4");

    const ExperimentReport again = run_entropy_correlation(cfg);
    CHECK(again.rows == rep.rows);
    CHECK(again.summary == rep.summary);
}

TEST_CASE("entropy correlation on the large-lattice branch") {
    ExperimentConfig cfg;
    cfg.kind = ExperimentKind::EntropyCorrelation;
    cfg.rows = 6;
    cfg.cols = 6;
    cfg.ladder.rungs = 4;
    cfg.ladder.beta_max = 2.0;
    cfg.ladder.beta_min = 0.1;
    cfg.ladder.sweeps_per_rung = 2;
    cfg.seeds = {1, 2, 3};
    const ExperimentReport rep = run_entropy_correlation(cfg);
    REQUIRE(rep.rows.size() == 12);  // 3 seeds x 4 rungs
    for (const auto& row : rep.rows) CHECK(row[3] == "NA");  // no oracle beyond 20 sites
    CHECK(rep.summary[1].second == "NA");
    CHECK(rep.summary[3].first == "hot-gt-cold");
    CHECK(rep.summary[3].second != "NA");
}

TEST_CASE("clausius report signs agree with its own columns") {
    ExperimentConfig cfg;
    cfg.kind = ExperimentKind::Clausius;
    cfg.rows = 4;
    cfg.cols = 4;
    cfg.ti_field = 0.0;
    cfg.hf_grid = {0.8};
    cfg.ladder.rungs = 4;
    cfg.ladder.beta_max = 2.0;
    cfg.ladder.beta_min = 0.3;
    cfg.ladder.sweeps_per_rung = 3;
    cfg.seeds = {1, 2, 3, 4};
    const ExperimentReport rep = run_clausius(cfg);
    REQUIRE(rep.rows.size() == 4);
    long long compared = 0, agreed = 0;
    for (const auto& row : rep.rows) {
        const double dm = std::stod(row[3]);
        const double q = std::stod(row[4]);
        const int dsign = dm > 0 ? 1 : dm < 0 ? -1 : 0;
        const int qsign = q > 0 ? 1 : q < 0 ? -1 : 0;
        CHECK(std::stoi(row[6]) == dsign);
        CHECK(std::stoi(row[7]) == qsign);
        if (row[8] != "NA") {
            ++compared;
            if (row[8] == "1") ++agreed;
        }
        CHECK(std::stod(row[5]) == doctest::Approx(q / 4.0));
    }
    CHECK(rep.summary[0].second == std::to_string(compared));
    if (compared > 0)
        CHECK(rep.summary[1].second ==
              fmt12(static_cast<double>(agreed) / static_cast<double>(compared)));
}

TEST_CASE("identical protocols compare as all-NA") {
    ExperimentConfig cfg;
    cfg.kind = ExperimentKind::Clausius;
    cfg.rows = 3;
    cfg.cols = 3;
    cfg.ti_field = 0.2;
    cfg.tf_field = 0.2;  // t_f identical to t_i
    cfg.ladder.rungs = 3;
    cfg.ladder.beta_max = 1.0;
    cfg.ladder.beta_min = 0.5;
    cfg.ladder.sweeps_per_rung = 2;
    cfg.seeds = {5, 6};
    const ExperimentReport rep = run_clausius(cfg);
    for (const auto& row : rep.rows) {
        CHECK(row[3] == "0");
        CHECK(row[4] == "0");
        CHECK(row[8] == "NA");
    }
    CHECK(rep.summary[0].second == "0");
    CHECK(rep.summary[1].second == "NA");
}

TEST_CASE("report files are stable across runs") {
    ExperimentConfig cfg;
    cfg.kind = ExperimentKind::KraftAudit;
    cfg.l_max = 8;
    cfg.seeds = {1};
    cfg.thresholds["le-one"] = 1.0;
    const ExperimentReport rep = run_kraft_audit(cfg);

    const auto dir_a = temp_dir("report-a");
    const auto dir_b = temp_dir("report-b");
    write_report(rep, dir_a.string());
    write_report(run_kraft_audit(cfg), dir_b.string());

    for (const char* leaf : {"rows.csv", "summary.csv", "config.echo"})
        CHECK(slurp(dir_a / leaf) == slurp(dir_b / leaf));

    const std::string summary = slurp(dir_a / "summary.csv");
    CHECK(summary.rfind("name,value\nversion,thermokc 0.1.0\n", 0) == 0);

    const std::string rows = slurp(dir_a / "rows.csv");
    CHECK(rows.rfind("seed,grid,lmax,num,den,sum\n", 0) == 0);

    // config.echo re-parses to the config that produced the report
    std::istringstream echo(slurp(dir_a / "config.echo"));
    CHECK(parse_config(echo) == cfg);

    std::filesystem::remove_all(dir_a.parent_path());
}

TEST_CASE("threshold evaluation directions") {
    ExperimentConfig cfg;
    cfg.kind = ExperimentKind::KraftAudit;
    cfg.l_max = 6;
    cfg.seeds = {1};
    cfg.thresholds["le-one"] = 1.0;     // >= : met
    cfg.thresholds["max-kraft"] = 0.5;  // <= : met (sum stays well under 1/2)
    cfg.thresholds["censored"] = 0.0;   // not in this report: NA, not met
    cfg.thresholds["nonsense"] = 1.0;   // unknown name: not met
    const ExperimentReport rep = run_kraft_audit(cfg);
    const auto outcomes = evaluate_thresholds(rep);
    REQUIRE(outcomes.size() == 4);
    for (const auto& o : outcomes) {
        if (o.name == "le-one") {
            CHECK(o.met);
            CHECK(o.actual == "1");
        } else if (o.name == "max-kraft") {
            CHECK(o.met);
        } else {
            CHECK_FALSE(o.met);
            CHECK(o.actual == "NA");
        }
    }
    CHECK_FALSE(thresholds_met(rep));

    ExperimentConfig ok = cfg;
    ok.thresholds.clear();
    ok.thresholds["monotone"] = 1.0;
    CHECK(thresholds_met(run_kraft_audit(ok)));
}

TEST_CASE("thread cap reads the environment") {
    unsetenv("THERMOKC_THREADS");
    CHECK(thread_cap() == 0);
    CHECK(worker_count() >= 1);
    setenv("THERMOKC_THREADS", "3", 1);
    CHECK(thread_cap() == 3);
    CHECK(worker_count() <= 3);
    // unparsable or non-positive values fall back to uncapped
    setenv("THERMOKC_THREADS", "zebra", 1);
    CHECK(thread_cap() == 0);
    setenv("THERMOKC_THREADS", "-2", 1);
    CHECK(thread_cap() == 0);
    unsetenv("THERMOKC_THREADS");
}
