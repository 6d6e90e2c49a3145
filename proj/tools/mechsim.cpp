// mechsim: command-line simulator for revenue-maximizing mechanisms that
// sell one non-excludable good to two buyers. Subcommands: solve an exact
// optimum for a finite-support distribution, simulate learner-vs-environment
// episodes, sweep horizons for regret slopes, dump the adversarial
// lower-bound trace, and emit figure polylines.

#include "CLI11.hpp"

#include "mechlearn/adversarial.hpp"
#include "mechlearn/augmentation.hpp"
#include "mechlearn/harness.hpp"
#include "mechlearn/io.hpp"
#include "mechlearn/solver.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>

using namespace mechlearn;
namespace fs = std::filesystem;

namespace {

struct InternalInvariantError : std::logic_error {
    using std::logic_error::logic_error;
};

void write_file(const fs::path& p, const std::string& content) {
    if (!p.parent_path().empty()) fs::create_directories(p.parent_path());
    std::ofstream out(p);
    if (!out) throw std::invalid_argument("cannot write " + p.string());
    out << content;
}

int run_solve(const std::string& dist_file, bool oracle, const std::string& out_file) {
    DiscreteDistribution d = load_distribution(dist_file);
    auto [mech, value] = best_mechanism(d);
    std::ostringstream os;
    os << "# optimal mechanism boundary polyline\n";
    os << "# expected revenue = " << value.to_string() << " (" << value.to_double() << ")\n";
    os << polyline_to_string(mech.polyline());
    if (out_file.empty()) std::cout << os.str();
    else
        write_file(out_file, os.str());
    std::cout << "expected_revenue " << value.to_string() << " = " << value.to_double() << "\n";
    if (oracle) {
        if (d.atoms.size() > 12) throw std::invalid_argument("--oracle needs support <= 12");
        auto [omech, ovalue] = brute_force_best(d);
        std::cout << "oracle_revenue " << ovalue.to_string() << "\n";
        if (ovalue != value)
            throw InternalInvariantError("solver and enumeration oracle disagree");
        std::cout << "oracle agreement: exact\n";
    }
    return 0;
}

int run_simulate(const std::string& config_file, const std::string& out_dir,
                 std::optional<std::uint64_t> seed_override) {
    ExperimentConfig cfg = load_config(config_file);
    if (seed_override) cfg.seeds = {*seed_override};
    fs::create_directories(out_dir);
    std::vector<SeedOutcome> outcomes;
    for (auto seed : cfg.seeds) {
        EpisodeResult ep = run_episode(cfg, seed);
        HindsightOptimum h = hindsight_opt(ep.records, cfg.coord_cap);
        outcomes.push_back({seed, ep.learner_total, h.total, h.total - ep.learner_total});
        write_file(fs::path(out_dir) / ("rounds_" + std::to_string(seed) + ".csv"),
                   rounds_to_csv(ep.records));
        write_file(fs::path(out_dir) / ("hindsight_" + std::to_string(seed) + ".txt"),
                   polyline_to_string(h.mechanism.polyline()));
    }
    RegretReport rep = regret_report(cfg.horizon, std::move(outcomes));
    write_file(fs::path(out_dir) / "report.csv", report_to_csv(rep));
    std::cout << "T=" << cfg.horizon << " learner=" << cfg.learner.name()
              << " mean_revenue=" << rep.mean_learner_total
              << " mean_hindsight=" << rep.mean_hindsight_total << " mean_regret=" << rep.mean_regret
              << "\n";
    return 0;
}

int run_sweep(const std::string& config_file, const std::string& horizons_csv,
              const std::string& out_dir, int threads) {
    ExperimentConfig base = load_config(config_file);
    std::vector<int> horizons;
    {
        std::istringstream is(horizons_csv);
        std::string tok;
        while (std::getline(is, tok, ',')) horizons.push_back(std::stoi(tok));
    }
    if (horizons.size() < 3)
        std::cerr << "note: slope fits need at least three horizons\n";
    std::vector<std::pair<double, double>> pts;
    std::ostringstream os;
    os << "# mechsim sweep v1\nT,mean_regret,mean_learner_total,mean_hindsight_total\n";
    for (int T : horizons) {
        ExperimentConfig cfg = base;
        cfg.horizon = T;
        RegretReport rep = run_experiment(cfg, threads);
        pts.push_back({static_cast<double>(T), rep.mean_regret});
        os << T << ',' << rep.mean_regret << ',' << rep.mean_learner_total << ','
           << rep.mean_hindsight_total << '\n';
        std::cout << "T=" << T << " mean_regret=" << rep.mean_regret << "\n";
    }
    auto fit = slope_estimate(pts);
    if (fit.degenerate) {
        std::cout << "slope: degenerate fit\n";
    } else {
        os << "# exponent=" << fit.exponent << " stderr=" << fit.stderr_ << '\n';
        std::cout << "regret exponent " << fit.exponent << " +- " << fit.stderr_ << "\n";
    }
    fs::create_directories(out_dir);
    write_file(fs::path(out_dir) / "sweep.csv", os.str());
    return 0;
}

int run_lb_adversarial(const std::string& delta_s, const std::string& zeta_s, int T,
                       std::uint64_t seed, const std::string& out_file) {
    AdversarialTrace tr(Rat::parse(delta_s), Rat::parse(zeta_s), T, Rng(seed));
    auto bad = tr.check_structure();
    if (!bad.empty()) throw InternalInvariantError("trace structure violated: " + bad.front());
    Rat tau = separating_threshold(tr);
    std::ostringstream os;
    os << "# mechsim adversarial-trace v1\n";
    os << "t,coin,a,b,v1,v2\n";
    os.precision(17);
    for (int t = 1; t <= T; ++t) {
        PointD v = tr.valuation_d(t);
        os << t << ',' << (tr.is_R(t) ? 'R' : 'L') << ','
           << AdversarialTrace::ratio(tr.a_num(t), tr.pow3(t)) * tr.delta().to_double() << ','
           << AdversarialTrace::ratio(tr.b_num(t), tr.pow3(t)) * tr.delta().to_double() << ',' << v.x
           << ',' << v.y << '\n';
    }
    os << "# tau = " << tau.to_string() << " = " << tau.to_double() << '\n';
    if (out_file.empty()) std::cout << os.str();
    else
        write_file(out_file, os.str());
    std::cout << "tau " << tau.to_double() << "\n";
    return 0;
}

std::string graph_edges_polylines(const OrthogonalGraph& g) {
    std::vector<std::vector<Point>> segs;
    for (auto [u, v] : g.edges()) segs.push_back({g.node(u), g.node(v)});
    return polylines_to_string(segs);
}

int run_figures(const std::string& what, const std::string& eps_s, const std::string& subset_s,
                std::uint64_t seed, const std::string& out_file) {
    std::ostringstream os;
    Rat eps = Rat::parse(eps_s);
    if (what == "grid") {
        os << "# uniform grid lattice, eps = " << eps.to_string() << "\n";
        os << graph_edges_polylines(uniform_grid(eps).graph);
    } else if (what == "equal-revenue") {
        os << "# equal-revenue support segment, optimal boundary, and grid\n";
        auto d = equal_revenue_dist(3, Rat(1, 6));
        auto [mech, value] = best_mechanism(d);
        std::vector<std::vector<Point>> segs;
        segs.push_back({Point(Rat(0), Rat(1)), Point(Rat(1, 6), Rat(0))});  // support segment
        segs.push_back(mech.polyline());
        os << polylines_to_string(segs) << '\n' << graph_edges_polylines(uniform_grid(eps).graph);
    } else if (what == "augmented") {
        os << "# half grid augmented with one interior, one vertical-edge and\n";
        os << "# one horizontal-edge point\n";
        auto aug = augment(uniform_grid(Rat(1, 2)),
                           {Point(Rat(1, 4), Rat(1, 4)), Point(Rat(1, 2), Rat(7, 10)),
                            Point(Rat(3, 4), Rat(1, 2))});
        os << graph_edges_polylines(aug.graph);
    } else if (what == "inner-hull") {
        os << "# quarter-circle region boundary and its inner hull\n";
        auto region = region_above_curve(
            [](double x) { return std::sqrt(std::max(0.0, 1.0 - x * x)); });
        Mechanism hull = inner_hull(region, eps);
        std::vector<std::vector<Point>> segs;
        std::vector<Point> arc;
        for (int i = 0; i <= 64; ++i) {
            double x = i / 64.0;
            arc.emplace_back(Rat::from_double(x),
                             Rat::from_double(std::sqrt(std::max(0.0, 1.0 - x * x))));
        }
        segs.push_back(arc);
        segs.push_back(hull.polyline());
        os << polylines_to_string(segs);
    } else if (what == "shatter") {
        std::vector<int> chosen;
        std::istringstream is(subset_s);
        std::string tok;
        while (std::getline(is, tok, ',')) {
            if (!tok.empty()) chosen.push_back(std::stoi(tok));
        }
        os << "# shattering staircase for the chosen antidiagonal points\n";
        os << polyline_to_string(shatter_path(eps, chosen).polyline());
    } else if (what == "regions") {
        os << "# optimal allocation boundaries: x^2 product marginals\n";
        os << "# (empirical, 4000 samples) and a finite-support example\n";
        auto env = EnvironmentSpec::product_cdf([](double x) { return x * x; },
                                                [](double x) { return x * x; }, 4.0);
        Rng rng(seed);
        std::vector<PointD> obs;
        for (int t = 1; t <= 4000; ++t) obs.push_back(sample_valuation(env, t, rng));
        auto emp = empirical_best_mechanism(obs);
        DiscreteDistribution d;
        d.atoms = {{Point(Rat(1, 5), Rat(4, 5)), Rat(1, 4)},
                   {Point(Rat(2, 5), Rat(2, 5)), Rat(1, 4)},
                   {Point(Rat(1, 2), Rat(7, 10)), Rat(1, 4)},
                   {Point(Rat(4, 5), Rat(1, 10)), Rat(1, 4)}};
        auto [mech, value] = best_mechanism(d);
        std::vector<std::vector<Point>> segs{emp.mechanism.polyline(), mech.polyline()};
        os << polylines_to_string(segs);
    } else {
        throw std::invalid_argument("unknown figure: " + what);
    }
    if (out_file.empty()) std::cout << os.str();
    else
        write_file(out_file, os.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"simulator for selling one non-excludable good to two buyers"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string out_dir = ".";
    std::uint64_t seed = 1;
    app.add_option("--out-dir", out_dir, "output directory");
    auto* seed_opt = app.add_option("--seed", seed, "global random seed");

    auto* solve = app.add_subcommand("solve", "optimal mechanism for a finite-support distribution");
    std::string dist_file, out_file;
    bool oracle = false;
    solve->add_option("--dist", dist_file, "distribution file: v1 v2 prob per line")->required();
    solve->add_flag("--oracle", oracle, "cross-check against subset enumeration (support <= 12)");
    solve->add_option("--out", out_file, "write the boundary polyline here");

    auto* simulate = app.add_subcommand("simulate", "run learner-vs-environment episodes");
    std::string sim_config;
    simulate->add_option("--config", sim_config, "experiment config file")->required();

    auto* sweep = app.add_subcommand("sweep", "regret slope across horizons");
    std::string sweep_config, horizons = "1000,10000,100000";
    int threads = 0;
    sweep->add_option("--config", sweep_config, "experiment config file")->required();
    sweep->add_option("--horizons", horizons, "comma-separated horizon list");
    sweep->add_option("--threads", threads, "worker threads (default: hardware)");

    auto* lb = app.add_subcommand("lb-adversarial", "dump an adversarial trace as CSV");
    std::string delta_s = "0.3", zeta_s = "0.25", lb_out;
    int lb_T = 500;
    lb->add_option("--delta", delta_s, "delta in (0,1)");
    lb->add_option("--zeta", zeta_s, "zeta in (0,1)");
    lb->add_option("--T", lb_T, "horizon");
    lb->add_option("--out", lb_out, "output CSV path");

    auto* figures = app.add_subcommand("figures", "emit boundary polylines");
    std::string what = "grid", eps_s = "1/6", subset_s, fig_out;
    figures->add_option("--what", what, "grid|equal-revenue|augmented|inner-hull|shatter|regions");
    figures->add_option("--epsilon", eps_s, "grid step, e.g. 1/6");
    figures->add_option("--subset", subset_s, "comma-separated antidiagonal indices for shatter");
    figures->add_option("--out", fig_out, "output path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) return run_solve(dist_file, oracle, out_file);
        if (simulate->parsed()) {
            std::optional<std::uint64_t> seed_override;
            if (seed_opt->count() > 0) seed_override = seed;
            return run_simulate(sim_config, out_dir, seed_override);
        }
        if (sweep->parsed()) return run_sweep(sweep_config, horizons, out_dir, threads);
        if (lb->parsed()) return run_lb_adversarial(delta_s, zeta_s, lb_T, seed, lb_out);
        if (figures->parsed()) return run_figures(what, eps_s, subset_s, seed, fig_out);
    } catch (const InternalInvariantError& e) {
        std::cerr << "internal invariant violation: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::logic_error& e) {
        std::cerr << "internal invariant violation: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
