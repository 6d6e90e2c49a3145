#pragma once

#include <cmath>
#include <cstdint>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mechlearn/augmentation.hpp"
#include "mechlearn/hedge.hpp"
#include "mechlearn/mechanism.hpp"
#include "mechlearn/rng.hpp"
#include "mechlearn/solver.hpp"

namespace mechlearn {

// Online learner protocol: post a mechanism knowing only past rounds, then
// observe the round's valuation pair (full feedback).
class Learner {
  public:
    virtual ~Learner() = default;
    virtual Mechanism post(int t) = 0;
    virtual void observe(const PointD& v) = 0;
    virtual std::string name() const = 0;
};

class FixedMechanismLearner : public Learner {
  public:
    explicit FixedMechanismLearner(Mechanism m, std::string label = "fixed")
        : mech_(std::move(m)), label_(std::move(label)) {}
    Mechanism post(int) override { return mech_; }
    void observe(const PointD&) override {}
    std::string name() const override { return label_; }

  private:
    Mechanism mech_;
    std::string label_;
};

inline std::unique_ptr<Learner> posted_price_learner(const Rat& p1, const Rat& p2) {
    return std::make_unique<FixedMechanismLearner>(Mechanism::posted_price(p1, p2), "posted_price");
}

// ---------------------------------------------------------------------------
// Augment-the-best-mechanism (stochastic setting)
// ---------------------------------------------------------------------------

// raw precision parameter: constant * (log T / t)^(1/4)
inline double atbm_raw_epsilon(double constant, double log_horizon, int t) {
    return constant * std::pow(log_horizon / static_cast<double>(t), 0.25);
}

// round down to an admissible grid step 1/k (rounding down only refines)
inline int admissible_grid_k(double raw_eps) {
    if (raw_eps >= 1.0) return 1;
    double k = std::ceil(1.0 / raw_eps - 1e-12);
    return static_cast<int>(std::max(1.0, k));
}

struct AtbmOptions {
    double constant = 14.0;  // the schedule constant; a knob because the
                             // theory value keeps eps at 1 for any desk-scale horizon
    int coord_cap = 4096;    // empirical solver grid cap
    int exact_until = 256;   // re-solve every round up to this history size...
    bool always_resolve = false;  // ...then on doubling; set to force per-round solves
};

// Posts the grid-augmented version of the empirically optimal mechanism,
// with the precision parameter shrinking on a t^(-1/4) schedule.
class AtbmLearner : public Learner {
  public:
    AtbmLearner(int horizon, AtbmOptions opt = {})
        : T_(horizon), opt_(opt), log_T_(std::log(static_cast<double>(std::max(horizon, 2)))) {}

    Mechanism post(int t) override {
        if (t <= 1 || history_.empty()) return Mechanism::full_square();
        int k = admissible_grid_k(atbm_raw_epsilon(opt_.constant, log_T_, t));
        int n = static_cast<int>(history_.size());
        bool resolve = opt_.always_resolve || n <= opt_.exact_until || n >= 2 * last_solve_size_;
        if (resolve) {
            best_ = empirical_best_mechanism(history_, opt_.coord_cap).mechanism;
            last_solve_size_ = n;
            cached_k_ = -1;
        }
        if (k != cached_k_) {
            posted_ = associated_augmented_mechanism(best_, Rat(1, k)).mechanism;
            cached_k_ = k;
        }
        return posted_;
    }

    void observe(const PointD& v) override { history_.push_back(v); }
    std::string name() const override { return "atbm"; }

    const Mechanism& current_empirical_best() const { return best_; }
    const std::vector<PointD>& history() const { return history_; }

    // snapshot for resumable runs: the observed history is the whole state
    std::string to_text() const {
        std::ostringstream os;
        os.precision(17);
        os << T_ << ' ' << opt_.constant << ' ' << history_.size() << '\n';
        for (const auto& v : history_) os << v.x << ' ' << v.y << '\n';
        return os.str();
    }
    static AtbmLearner from_text(const std::string& text, AtbmOptions opt = {}) {
        std::istringstream in(text);
        int T = 0;
        double c = 0;
        std::size_t n = 0;
        if (!(in >> T >> c >> n)) throw std::invalid_argument("atbm snapshot: bad header");
        opt.constant = c;
        AtbmLearner l(T, opt);
        for (std::size_t i = 0; i < n; ++i) {
            PointD v;
            if (!(in >> v.x >> v.y)) throw std::invalid_argument("atbm snapshot: truncated history");
            l.history_.push_back(v);
        }
        return l;
    }

  private:
    int T_;
    AtbmOptions opt_;
    double log_T_;
    std::vector<PointD> history_;
    Mechanism best_ = Mechanism::full_square();
    Mechanism posted_ = Mechanism::full_square();
    int last_solve_size_ = 1;
    int cached_k_ = -1;
};

// ---------------------------------------------------------------------------
// Path learning (smooth setting)
// ---------------------------------------------------------------------------

struct PathLearningOptions {
    std::optional<int> grid_k;  // default: ceil(T^(1/3))
    std::optional<double> eta;  // default: the tuned Hedge rate below
};

// grid step for a horizon: eps = T^(-1/3) rounded down to an admissible 1/k
inline int path_learning_grid_k(int horizon) {
    return std::max<int>(1, static_cast<int>(std::ceil(
                                std::pow(static_cast<double>(horizon), 1.0 / 3.0) - 1e-9)));
}

// Hedge learning rate for N = C(2k, k) experts with rewards in [0, 2]:
// eta = sqrt(2 ln N / T), the rate under which the exponential-weights
// regret is O(sqrt(T log N)) and the overall bound lands at O(T^(2/3)).
inline double path_learning_eta(int horizon, int k) {
    double lnN = std::lgamma(2.0 * k + 1.0) - 2.0 * std::lgamma(k + 1.0);
    return std::sqrt(2.0 * std::max(lnN, 1e-9) / static_cast<double>(horizon));
}

class PathLearningLearner : public Learner {
  public:
    PathLearningLearner(int horizon, Rng rng, PathLearningOptions opt = {})
        : rng_(rng),
          state_(Rat(1, opt.grid_k ? *opt.grid_k : path_learning_grid_k(horizon)),
                 opt.eta ? *opt.eta
                         : path_learning_eta(horizon,
                                             opt.grid_k ? *opt.grid_k : path_learning_grid_k(horizon))) {}

    Mechanism post(int) override { return state_.sample_path(rng_).mechanism; }
    void observe(const PointD& v) override { state_.observe(v.x, v.y); }
    std::string name() const override { return "path_learning"; }

    PathHedgeState& state() { return state_; }

  private:
    Rng rng_;
    PathHedgeState state_;
};

}  // namespace mechlearn
