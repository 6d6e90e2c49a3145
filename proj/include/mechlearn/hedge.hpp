#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mechlearn/mechanism.hpp"
#include "mechlearn/rng.hpp"

namespace mechlearn {

inline double log_add_exp(double a, double b) {
    if (a < b) std::swap(a, b);
    if (b == -std::numeric_limits<double>::infinity()) return a;
    return a + std::log1p(std::exp(b - a));
}

// Exponential-weights state over the complete (0,1)->(1,0) paths of the
// uniform grid, maintained on edges instead of paths. Each edge keeps the
// count of past valuations inside its influence region; its weight is
// exp(eta * intrinsic_weight * count), held in log space so horizons up to
// 1e6 cannot overflow. Node weights follow by dynamic programming from the
// sink, and sampling one edge at a time reproduces the Hedge distribution
// over paths exactly.
class PathHedgeState {
  public:
    PathHedgeState(const Rat& epsilon, double eta) : eta_(eta) {
        if (epsilon.sign() <= 0 || epsilon > Rat(1) || epsilon.num() != BigInt(1))
            throw std::invalid_argument("PathHedgeState: 1/epsilon must be a positive integer");
        if (!(eta > 0)) throw std::invalid_argument("PathHedgeState: eta must be positive");
        k_ = static_cast<int>(epsilon.den().to_i64());
        vcount_.assign(static_cast<std::size_t>(k_ + 1) * k_, 0);
        hcount_.assign(static_cast<std::size_t>(k_) * (k_ + 1), 0);
        node_lw_.assign(static_cast<std::size_t>(k_ + 1) * (k_ + 1), 0.0);
        dirty_ = true;
    }

    int k() const { return k_; }
    Rat epsilon() const { return Rat(1, k_); }
    double eta() const { return eta_; }
    std::int64_t rounds_observed() const { return rounds_; }

    // counts the observation into every influence region containing it
    void observe(double x, double y) {
        int jb = band_index(y);
        int imax = std::min(static_cast<int>(std::floor(x * k_)), k_);
        for (int i = 0; i <= imax; ++i) ++vcount_[static_cast<std::size_t>(i) * k_ + jb];
        int ib = band_index(x);
        int jmax = std::min(static_cast<int>(std::floor(y * k_)), k_);
        for (int j = 0; j <= jmax; ++j) ++hcount_[static_cast<std::size_t>(ib) * (k_ + 1) + j];
        ++rounds_;
        dirty_ = true;
    }

    // exact-band variant for rational-valued observations
    void observe(const Point& v) {
        int jb = band_index_exact(v.y);
        std::int64_t imax = (v.x * Rat(k_)).floor().to_i64();
        for (int i = 0; i <= std::min<std::int64_t>(imax, k_); ++i)
            ++vcount_[static_cast<std::size_t>(i) * k_ + jb];
        int ib = band_index_exact(v.x);
        std::int64_t jmax = (v.y * Rat(k_)).floor().to_i64();
        for (int j = 0; j <= std::min<std::int64_t>(jmax, k_); ++j)
            ++hcount_[static_cast<std::size_t>(ib) * (k_ + 1) + j];
        ++rounds_;
        dirty_ = true;
    }

    // log w_e for the vertical edge (i/k, (j+1)/k) -> (i/k, j/k)
    double vlog_weight(int i, int j) const {
        return eta_ * (static_cast<double>(i) / k_) * static_cast<double>(vcount_[static_cast<std::size_t>(i) * k_ + j]);
    }
    // log w_e for the horizontal edge (i/k, j/k) -> ((i+1)/k, j/k)
    double hlog_weight(int i, int j) const {
        return eta_ * (static_cast<double>(j) / k_) * static_cast<double>(hcount_[static_cast<std::size_t>(i) * (k_ + 1) + j]);
    }
    std::int64_t vcount(int i, int j) const { return vcount_[static_cast<std::size_t>(i) * k_ + j]; }
    std::int64_t hcount(int i, int j) const { return hcount_[static_cast<std::size_t>(i) * (k_ + 1) + j]; }

    // log node weight: log sum over suffix paths of their edge-weight products
    double node_log_weight(int i, int j) {
        refresh();
        return node_lw_[static_cast<std::size_t>(i) * (k_ + 1) + j];
    }
    double node_weight(int i, int j) { return std::exp(node_log_weight(i, j)); }

    struct Sample {
        std::vector<std::pair<int, int>> nodes;  // grid indices, (0,k) .. (k,0)
        Mechanism mechanism;
        double log_probability = 0;
    };

    // draws a path with the Hedge law over all N_eps complete paths
    Sample sample_path(Rng& rng) {
        refresh();
        Sample s;
        int i = 0, j = k_;
        s.nodes.emplace_back(i, j);
        while (i != k_ || j != 0) {
            double qd = down_probability(i, j);
            if (!(qd >= 0.0 && qd <= 1.0))
                throw std::logic_error("sample_path: edge probability outside [0,1]");
            bool down;
            if (qd >= 1.0) down = true;
            else if (qd <= 0.0)
                down = false;
            else
                down = rng.uniform01() < qd;
            s.log_probability += std::log(down ? qd : 1.0 - qd);
            if (down) --j;
            else
                ++i;
            s.nodes.emplace_back(i, j);
        }
        s.mechanism = mechanism_of(s.nodes);
        return s;
    }

    // state snapshot for resumable runs: parameters plus raw counts
    std::string to_text() const {
        std::string out = std::to_string(k_) + " " + std::to_string(eta_) + " " +
                          std::to_string(rounds_) + "\n";
        for (auto c : vcount_) out += std::to_string(c) + " ";
        out += "\n";
        for (auto c : hcount_) out += std::to_string(c) + " ";
        out += "\n";
        return out;
    }

    static PathHedgeState from_text(const std::string& text) {
        std::istringstream in(text);
        int k = 0;
        double eta = 0;
        std::int64_t rounds = 0;
        if (!(in >> k >> eta >> rounds)) throw std::invalid_argument("hedge snapshot: bad header");
        PathHedgeState st(Rat(1, k), eta);
        st.rounds_ = rounds;
        for (auto& c : st.vcount_)
            if (!(in >> c)) throw std::invalid_argument("hedge snapshot: truncated counts");
        for (auto& c : st.hcount_)
            if (!(in >> c)) throw std::invalid_argument("hedge snapshot: truncated counts");
        st.dirty_ = true;
        return st;
    }

    // probability that the sampler walks exactly this node sequence
    double path_log_probability(const std::vector<std::pair<int, int>>& nodes) {
        refresh();
        double lp = 0;
        for (std::size_t t = 0; t + 1 < nodes.size(); ++t) {
            auto [i, j] = nodes[t];
            bool down = nodes[t + 1].second < j;
            double qd = down_probability(i, j);
            lp += std::log(down ? qd : 1.0 - qd);
        }
        return lp;
    }

    // conditional probability of stepping down at node (i,j); with both moves
    // available it is w_down*w_below / (w_down*w_below + w_right*w_right_node)
    double down_probability(int i, int j) {
        refresh();
        if (j == 0) return 0.0;
        if (i == k_) return 1.0;
        double ld = vlog_weight(i, j - 1) + node_lw_[static_cast<std::size_t>(i) * (k_ + 1) + j - 1];
        double lr = hlog_weight(i, j) + node_lw_[static_cast<std::size_t>(i + 1) * (k_ + 1) + j];
        return 1.0 / (1.0 + std::exp(lr - ld));
    }

    Mechanism mechanism_of(const std::vector<std::pair<int, int>>& nodes) const {
        std::vector<Point> pts;
        pts.reserve(nodes.size());
        for (auto [i, j] : nodes) pts.emplace_back(Rat(i, k_), Rat(j, k_));
        return Mechanism::from_points(std::move(pts));
    }

    // cumulative log path weight via the edge decomposition (Hedge exponent)
    double path_log_weight(const std::vector<std::pair<int, int>>& nodes) const {
        double lw = 0;
        for (std::size_t t = 0; t + 1 < nodes.size(); ++t) {
            auto [i, j] = nodes[t];
            if (nodes[t + 1].second < j) lw += vlog_weight(i, j - 1);
            else
                lw += hlog_weight(i, j);
        }
        return lw;
    }

  private:
    int k_ = 0;
    double eta_ = 0;
    std::int64_t rounds_ = 0;
    std::vector<std::int64_t> vcount_, hcount_;
    std::vector<double> node_lw_;
    bool dirty_ = true;

    int band_index(double v) const {
        int b = static_cast<int>(std::floor(v * k_));
        if (b < 0) b = 0;
        if (b > k_ - 1) b = k_ - 1;  // v == 1 falls in the top band (closed at 1)
        return b;
    }
    int band_index_exact(const Rat& v) const {
        std::int64_t b = (v * Rat(k_)).floor().to_i64();
        if (b < 0) b = 0;
        if (b > k_ - 1) b = k_ - 1;
        return static_cast<int>(b);
    }

    void refresh() {
        if (!dirty_) return;
        auto at = [&](int i, int j) -> double& { return node_lw_[static_cast<std::size_t>(i) * (k_ + 1) + j]; };
        for (int i = k_; i >= 0; --i)
            for (int j = 0; j <= k_; ++j) {
                if (i == k_ && j == 0) {
                    at(i, j) = 0.0;
                    continue;
                }
                double acc = -std::numeric_limits<double>::infinity();
                if (j > 0) acc = vlog_weight(i, j - 1) + at(i, j - 1);
                if (i < k_) acc = log_add_exp(acc, hlog_weight(i, j) + at(i + 1, j));
                at(i, j) = acc;
            }
        dirty_ = false;
    }
};

// Explicit Hedge over every complete path, with weights built directly from
// realized mechanism revenues. Enumeration blows up quickly, so the grid is
// capped; this is the oracle the edge sampler is checked against.
struct ExplicitHedge {
    std::vector<std::vector<std::pair<int, int>>> paths;
    std::vector<double> probabilities;
    std::vector<Mechanism> mechanisms;
};

inline ExplicitHedge explicit_hedge(const Rat& epsilon, double eta, const std::vector<Point>& history,
                                    int max_k = 5) {
    if (epsilon.num() != BigInt(1)) throw std::invalid_argument("explicit_hedge: 1/epsilon must be integer");
    const int k = static_cast<int>(epsilon.den().to_i64());
    if (k > max_k) throw std::invalid_argument("explicit_hedge: grid too fine to enumerate");

    ExplicitHedge out;
    std::vector<std::pair<int, int>> cur{{0, k}};
    // depth-first over down/right moves
    struct Rec {
        static void go(int k, std::vector<std::pair<int, int>>& cur,
                       std::vector<std::vector<std::pair<int, int>>>& acc) {
            auto [i, j] = cur.back();
            if (i == k && j == 0) {
                acc.push_back(cur);
                return;
            }
            if (j > 0) {
                cur.emplace_back(i, j - 1);
                go(k, cur, acc);
                cur.pop_back();
            }
            if (i < k) {
                cur.emplace_back(i + 1, j);
                go(k, cur, acc);
                cur.pop_back();
            }
        }
    };
    Rec::go(k, cur, out.paths);

    std::vector<double> lw(out.paths.size(), 0.0);
    for (std::size_t p = 0; p < out.paths.size(); ++p) {
        std::vector<Point> pts;
        for (auto [i, j] : out.paths[p]) pts.emplace_back(Rat(i, k), Rat(j, k));
        Mechanism m = Mechanism::from_points(std::move(pts));
        double total = 0;
        for (const auto& v : history) total += m.revenue(v).to_double();
        lw[p] = eta * total;
        out.mechanisms.push_back(std::move(m));
    }
    double logz = -std::numeric_limits<double>::infinity();
    for (double w : lw) logz = log_add_exp(logz, w);
    out.probabilities.resize(lw.size());
    for (std::size_t p = 0; p < lw.size(); ++p) out.probabilities[p] = std::exp(lw[p] - logz);
    return out;
}

}  // namespace mechlearn
