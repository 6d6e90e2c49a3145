#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "mechlearn/environments.hpp"
#include "mechlearn/learners.hpp"
#include "mechlearn/solver.hpp"

namespace mechlearn {

// ---------------------------------------------------------------------------
// Experiment configuration
// ---------------------------------------------------------------------------

struct LearnerSpec {
    enum class Kind { full_square, posted_price, fixed_m1, fixed_m2, atbm, path_learning };
    Kind kind = Kind::full_square;
    Rat posted_p1, posted_p2;

    static LearnerSpec parse_kind(const std::string& s) {
        LearnerSpec l;
        if (s == "full_square") l.kind = Kind::full_square;
        else if (s == "posted_price")
            l.kind = Kind::posted_price;
        else if (s == "fixed_m1")
            l.kind = Kind::fixed_m1;
        else if (s == "fixed_m2")
            l.kind = Kind::fixed_m2;
        else if (s == "atbm")
            l.kind = Kind::atbm;
        else if (s == "path_learning")
            l.kind = Kind::path_learning;
        else
            throw std::invalid_argument("unknown learner: " + s);
        return l;
    }
    std::string name() const {
        switch (kind) {
            case Kind::full_square: return "full_square";
            case Kind::posted_price: return "posted_price";
            case Kind::fixed_m1: return "fixed_m1";
            case Kind::fixed_m2: return "fixed_m2";
            case Kind::atbm: return "atbm";
            case Kind::path_learning: return "path_learning";
        }
        return "?";
    }
};

struct ExperimentConfig {
    EnvironmentSpec env;
    LearnerSpec learner;
    int horizon = 0;
    std::vector<std::uint64_t> seeds;
    // hyperparameter overrides / knobs
    double atbm_constant = 14.0;
    int atbm_exact_until = 256;
    bool atbm_always_resolve = false;
    std::optional<double> eta_override;
    std::optional<int> grid_k_override;
    int coord_cap = 4096;

    std::vector<std::string> validate() const {
        std::vector<std::string> bad = env.validate();
        if (horizon < 1) bad.push_back("horizon must be >= 1");
        if (seeds.empty()) bad.push_back("at least one seed required");
        if (eta_override && !(*eta_override > 0 && *eta_override <= 1))
            bad.push_back("eta override outside (0,1]");
        if (grid_k_override && *grid_k_override < 1) bad.push_back("grid k override must be >= 1");
        return bad;
    }
};

inline std::unique_ptr<Learner> make_learner(const ExperimentConfig& cfg, std::uint64_t seed) {
    switch (cfg.learner.kind) {
        case LearnerSpec::Kind::full_square:
            return std::make_unique<FixedMechanismLearner>(Mechanism::full_square(), "full_square");
        case LearnerSpec::Kind::posted_price:
            return posted_price_learner(cfg.learner.posted_p1, cfg.learner.posted_p2);
        case LearnerSpec::Kind::fixed_m1:
            return std::make_unique<FixedMechanismLearner>(mechanism_M1(), "fixed_m1");
        case LearnerSpec::Kind::fixed_m2:
            return std::make_unique<FixedMechanismLearner>(mechanism_M2(), "fixed_m2");
        case LearnerSpec::Kind::atbm: {
            AtbmOptions opt;
            opt.constant = cfg.atbm_constant;
            opt.coord_cap = cfg.coord_cap;
            opt.exact_until = cfg.atbm_exact_until;
            opt.always_resolve = cfg.atbm_always_resolve;
            return std::make_unique<AtbmLearner>(cfg.horizon, opt);
        }
        case LearnerSpec::Kind::path_learning: {
            PathLearningOptions opt;
            opt.grid_k = cfg.grid_k_override;
            opt.eta = cfg.eta_override;
            return std::make_unique<PathLearningLearner>(cfg.horizon, Rng(seed).split(0x9a7e), opt);
        }
    }
    throw std::logic_error("unreachable");
}

// ---------------------------------------------------------------------------
// Episodes
// ---------------------------------------------------------------------------

struct RoundRecord {
    int t = 0;
    std::size_t mechanism_hash = 0;
    double v1 = 0, v2 = 0;
    double revenue = 0;
    double cumulative = 0;
};

struct EpisodeResult {
    std::uint64_t seed = 0;
    std::vector<RoundRecord> records;
    double learner_total = 0;
};

// The repeated protocol: the learner posts using only past rounds, the
// environment reveals the valuation pair, revenue accrues.
inline EpisodeResult run_episode(const ExperimentConfig& cfg, std::uint64_t seed,
                                 bool keep_records = true) {
    auto bad = cfg.validate();
    if (!bad.empty()) throw std::invalid_argument("invalid config: " + bad.front());
    EnvironmentSession env(cfg.env, seed, cfg.horizon);
    auto learner = make_learner(cfg, seed);
    EpisodeResult out;
    out.seed = seed;
    if (keep_records) out.records.reserve(cfg.horizon);
    double cum = 0;
    for (int t = 1; t <= cfg.horizon; ++t) {
        Mechanism m = learner->post(t);
        PointD v = env.valuation(t);
        double rev = m.revenue(v.x, v.y);
        cum += rev;
        if (keep_records) out.records.push_back({t, m.hash(), v.x, v.y, rev, cum});
        learner->observe(v);
    }
    out.learner_total = cum;
    return out;
}

// best fixed mechanism on the realized sequence, via the empirical solver
struct HindsightOptimum {
    Mechanism mechanism;
    double total = 0;
};

inline HindsightOptimum hindsight_opt(const std::vector<RoundRecord>& records, int coord_cap = 4096) {
    if (records.empty()) throw std::invalid_argument("hindsight_opt: no records");
    std::vector<PointD> vals;
    vals.reserve(records.size());
    for (const auto& r : records) vals.push_back({r.v1, r.v2});
    auto opt = empirical_best_mechanism(vals, coord_cap);
    return {opt.mechanism, opt.per_round_value * static_cast<double>(records.size())};
}

// ---------------------------------------------------------------------------
// Regret reports and sweeps
// ---------------------------------------------------------------------------

struct SeedOutcome {
    std::uint64_t seed = 0;
    double learner_total = 0;
    double hindsight_total = 0;
    double regret = 0;
};

struct RegretReport {
    int horizon = 0;
    std::vector<SeedOutcome> per_seed;
    double mean_learner_total = 0;
    double mean_hindsight_total = 0;
    double mean_regret = 0;
};

inline RegretReport regret_report(int horizon, std::vector<SeedOutcome> per_seed) {
    RegretReport r;
    r.horizon = horizon;
    r.per_seed = std::move(per_seed);
    for (const auto& s : r.per_seed) {
        r.mean_learner_total += s.learner_total;
        r.mean_hindsight_total += s.hindsight_total;
        r.mean_regret += s.regret;
    }
    double n = static_cast<double>(r.per_seed.size());
    if (n > 0) {
        r.mean_learner_total /= n;
        r.mean_hindsight_total /= n;
        r.mean_regret /= n;
    }
    return r;
}

struct SlopeFit {
    double exponent = 0;
    double stderr_ = 0;
    bool degenerate = false;
};

// least squares of log(regret) on log(T)
inline SlopeFit slope_estimate(const std::vector<std::pair<double, double>>& horizon_regret) {
    SlopeFit fit;
    if (horizon_regret.size() < 3) {
        fit.degenerate = true;
        return fit;
    }
    std::vector<double> xs, ys;
    for (auto [T, reg] : horizon_regret) {
        if (!(T > 0) || !(reg > 0)) {
            fit.degenerate = true;
            return fit;
        }
        xs.push_back(std::log(T));
        ys.push_back(std::log(reg));
    }
    double n = static_cast<double>(xs.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    if (sxx <= 0) {
        fit.degenerate = true;
        return fit;
    }
    fit.exponent = sxy / sxx;
    double ss = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double r = ys[i] - my - fit.exponent * (xs[i] - mx);
        ss += r * r;
    }
    fit.stderr_ = std::sqrt(ss / std::max(1.0, n - 2) / sxx);
    return fit;
}

// run all (seed) jobs of a config, optionally in parallel, and report
inline RegretReport run_experiment(const ExperimentConfig& cfg, int threads = 0) {
    std::vector<SeedOutcome> outcomes(cfg.seeds.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= cfg.seeds.size()) break;
            EpisodeResult ep = run_episode(cfg, cfg.seeds[i]);
            HindsightOptimum h = hindsight_opt(ep.records, cfg.coord_cap);
            outcomes[i] = {cfg.seeds[i], ep.learner_total, h.total, h.total - ep.learner_total};
        }
    };
    int nt = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    nt = std::max(1, std::min<int>(nt, static_cast<int>(cfg.seeds.size())));
    if (nt == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < nt; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return regret_report(cfg.horizon, std::move(outcomes));
}

}  // namespace mechlearn
