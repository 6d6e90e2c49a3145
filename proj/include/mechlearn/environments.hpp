#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mechlearn/adversarial.hpp"
#include "mechlearn/distribution.hpp"
#include "mechlearn/mechanism.hpp"
#include "mechlearn/rng.hpp"

namespace mechlearn {

// ---------------------------------------------------------------------------
// Named instances
// ---------------------------------------------------------------------------

// Equal-revenue instance: atoms (delta(1 - 2^-i), 2^-i), probability 2^(1-n)
// for i = 1 and 2^(i-n-1) for i = 2..n. Every posted price earns the same
// revenue from the second agent, which is what defeats fixed grids.
inline DiscreteDistribution equal_revenue_dist(int n, const Rat& delta) {
    if (n < 1) throw std::invalid_argument("equal_revenue_dist: n must be >= 1");
    if (delta.sign() <= 0 || delta >= Rat(1))
        throw std::invalid_argument("equal_revenue_dist: delta must lie in (0,1)");
    DiscreteDistribution d;
    for (int i = 1; i <= n; ++i) {
        BigInt p2i = BigInt::pow(BigInt(2), i);
        Point atom(delta * Rat(p2i - BigInt(1), p2i), Rat(BigInt(1), p2i));
        Rat prob = i == 1 ? Rat(BigInt(1), BigInt::pow(BigInt(2), n - 1))
                          : Rat(BigInt::pow(BigInt(2), i - 1), BigInt::pow(BigInt(2), n));
        d.atoms.push_back({atom, prob});
    }
    return d;
}

// Two-square smooth family: uniform on Q1 = [1/2,3/4]^2 with weight alpha,
// uniform on Q2 = [3/4,1]^2 otherwise. 1/12-smooth for admissible alpha.
inline Mechanism mechanism_M1() { return Mechanism::posted_price(Rat(1, 2), Rat(1, 2)); }
inline Mechanism mechanism_M2() { return Mechanism::posted_price(Rat(3, 4), Rat(3, 4)); }

inline std::pair<double, double> smooth_family_revenues(double alpha) {
    return {1.0, 1.5 * (1.0 - alpha)};
}

// Shattering witness: the staircase through a subset of the antidiagonal
// points (i eps, 1 - i eps). Revenue is exactly 1 on the chosen points and
// 0 on the rest of the antidiagonal.
inline Mechanism shatter_path(const Rat& eps, const std::vector<int>& chosen) {
    if (eps.num() != BigInt(1)) throw std::invalid_argument("shatter_path: 1/eps must be integer");
    const int k = static_cast<int>(eps.den().to_i64());
    std::vector<Point> corners;
    for (int i : chosen) {
        if (i < 1 || i > k) throw std::invalid_argument("shatter_path: index out of range");
        corners.emplace_back(Rat(i, k), Rat(k - i, k));
    }
    if (corners.empty()) return Mechanism::top_corner();
    return Mechanism::from_points(std::move(corners));
}

// ---------------------------------------------------------------------------
// Environment specification and sampling
// ---------------------------------------------------------------------------

struct EnvironmentSpec {
    enum class Kind { discrete, product_cdf, smooth_mixture, smooth_sequence, adversarial, custom };
    Kind kind = Kind::discrete;

    DiscreteDistribution dist;
    std::function<double(double)> cdf1, cdf2;
    std::optional<double> product_density_sup;
    double alpha = 0;
    std::vector<EnvironmentSpec> sequence;
    Rat adv_delta, adv_zeta;
    std::function<PointD(std::uint64_t, Rng&)> custom_sampler;
    std::string label;

    static EnvironmentSpec discrete(DiscreteDistribution d, std::string label = "discrete") {
        EnvironmentSpec e;
        e.kind = Kind::discrete;
        e.dist = std::move(d);
        e.label = std::move(label);
        return e;
    }
    static EnvironmentSpec product_cdf(std::function<double(double)> f1, std::function<double(double)> f2,
                                       std::optional<double> density_sup = std::nullopt) {
        EnvironmentSpec e;
        e.kind = Kind::product_cdf;
        e.cdf1 = std::move(f1);
        e.cdf2 = std::move(f2);
        e.product_density_sup = density_sup;
        e.label = "product_cdf";
        return e;
    }
    static EnvironmentSpec smooth_mixture(double alpha) {
        EnvironmentSpec e;
        e.kind = Kind::smooth_mixture;
        e.alpha = alpha;
        e.label = "smooth_mixture";
        return e;
    }
    static EnvironmentSpec smooth_sequence(std::vector<EnvironmentSpec> seq) {
        EnvironmentSpec e;
        e.kind = Kind::smooth_sequence;
        e.sequence = std::move(seq);
        e.label = "smooth_sequence";
        return e;
    }
    static EnvironmentSpec adversarial(const Rat& delta, const Rat& zeta) {
        EnvironmentSpec e;
        e.kind = Kind::adversarial;
        e.adv_delta = delta;
        e.adv_zeta = zeta;
        e.label = "adversarial";
        return e;
    }
    static EnvironmentSpec custom(std::function<PointD(std::uint64_t, Rng&)> fn) {
        EnvironmentSpec e;
        e.kind = Kind::custom;
        e.custom_sampler = std::move(fn);
        e.label = "custom";
        return e;
    }

    std::vector<std::string> validate() const {
        std::vector<std::string> bad;
        switch (kind) {
            case Kind::discrete:
                for (auto& m : dist.validate()) bad.push_back(m);
                break;
            case Kind::product_cdf:
                if (!cdf1 || !cdf2) bad.push_back("product_cdf: missing marginal");
                else {
                    for (auto* f : {&cdf1, &cdf2}) {
                        if (std::abs((*f)(1.0) - 1.0) > 1e-9) bad.push_back("product_cdf: F(1) != 1");
                        double prev = -1e-12;
                        for (int i = 0; i <= 20; ++i) {
                            double v = (*f)(i / 20.0);
                            if (v < prev - 1e-12) bad.push_back("product_cdf: F not nondecreasing");
                            prev = v;
                        }
                    }
                }
                break;
            case Kind::smooth_mixture:
                if (!(alpha > 4.0 / 15.0 && alpha < 2.0 / 5.0))
                    bad.push_back("smooth_mixture: alpha outside (4/15, 2/5)");
                break;
            case Kind::smooth_sequence:
                if (sequence.empty()) bad.push_back("smooth_sequence: empty");
                for (const auto& s : sequence)
                    for (auto& m : s.validate()) bad.push_back(m);
                break;
            case Kind::adversarial:
                if (adv_delta.sign() <= 0 || adv_delta >= Rat(1) || adv_zeta.sign() <= 0 ||
                    adv_zeta >= Rat(1))
                    bad.push_back("adversarial: delta, zeta must lie in (0,1)");
                break;
            case Kind::custom:
                if (!custom_sampler) bad.push_back("custom: missing sampler");
                break;
        }
        return bad;
    }
};

inline double invert_cdf(const std::function<double(double)>& f, double u, double tol = 1e-12) {
    double lo = 0.0, hi = 1.0;
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        (f(mid) < u ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// One round's valuation; stateless in (spec, seed, t) except for the
// adversarial variant, which is handled by EnvironmentSession below.
inline PointD sample_valuation(const EnvironmentSpec& env, std::uint64_t t, const Rng& seed_rng) {
    Rng rng = seed_rng.split(t);
    switch (env.kind) {
        case EnvironmentSpec::Kind::discrete: {
            double u = rng.uniform01(), acc = 0;
            for (const auto& [p, w] : env.dist.atoms) {
                acc += w.to_double();
                if (u < acc) return {p.x.to_double(), p.y.to_double()};
            }
            const auto& last = env.dist.atoms.back().first;
            return {last.x.to_double(), last.y.to_double()};
        }
        case EnvironmentSpec::Kind::product_cdf:
            return {invert_cdf(env.cdf1, rng.uniform01()), invert_cdf(env.cdf2, rng.uniform01())};
        case EnvironmentSpec::Kind::smooth_mixture: {
            bool q1 = rng.uniform01() < env.alpha;
            double lo = q1 ? 0.50 : 0.75, hi = q1 ? 0.75 : 1.0;
            return {rng.uniform(lo, hi), rng.uniform(lo, hi)};
        }
        case EnvironmentSpec::Kind::smooth_sequence: {
            const auto& sub = env.sequence[(t - 1) % env.sequence.size()];
            return sample_valuation(sub, t, seed_rng);
        }
        case EnvironmentSpec::Kind::custom:
            return env.custom_sampler(t, rng);
        case EnvironmentSpec::Kind::adversarial:
            throw std::logic_error("adversarial environments need an EnvironmentSession");
    }
    throw std::logic_error("unreachable");
}

// Per-episode environment view: stateless samplers forward to
// sample_valuation; the adversarial trace is generated once and replayed.
class EnvironmentSession {
  public:
    EnvironmentSession(const EnvironmentSpec& spec, std::uint64_t seed, int horizon)
        : spec_(&spec), rng_(seed) {
        if (spec.kind == EnvironmentSpec::Kind::adversarial)
            trace_ = std::make_unique<AdversarialTrace>(spec.adv_delta, spec.adv_zeta, horizon,
                                                        rng_.split(0));
    }

    PointD valuation(int t) const {
        if (trace_) return trace_->valuation_d(t);
        return sample_valuation(*spec_, static_cast<std::uint64_t>(t), rng_);
    }

    const AdversarialTrace* trace() const { return trace_.get(); }

  private:
    const EnvironmentSpec* spec_;
    Rng rng_;
    std::unique_ptr<AdversarialTrace> trace_;
};

// sigma such that the environment's density is bounded by 1/sigma times the
// uniform density; rejects variants with atoms (they are not smooth)
inline double smoothness_bound(const EnvironmentSpec& env) {
    switch (env.kind) {
        case EnvironmentSpec::Kind::smooth_mixture: {
            double sup = 16.0 * std::max(env.alpha, 1.0 - env.alpha);
            return 1.0 / sup;
        }
        case EnvironmentSpec::Kind::product_cdf:
            if (!env.product_density_sup)
                throw std::invalid_argument("smoothness_bound: product_cdf needs a density bound");
            return 1.0 / *env.product_density_sup;
        case EnvironmentSpec::Kind::smooth_sequence: {
            double s = 1.0;
            for (const auto& sub : env.sequence) s = std::min(s, smoothness_bound(sub));
            return s;
        }
        default:
            throw std::invalid_argument("smoothness_bound: environment is not smooth");
    }
}

// ---------------------------------------------------------------------------
// Rectangle virtual-surplus revenue
// ---------------------------------------------------------------------------

// Expected revenue of `mech` against independent uniforms on
// [a,b] x [c,d], computed as the integral of the virtual surplus
// 2(v1+v2) - (b+d) over the allocation region, by adaptive Simpson over v1
// with the inner v2 integral in closed form.
inline double rectangle_virtual_revenue(double a, double b, double c, double d, const Mechanism& mech,
                                        double tol = 1e-6) {
    if (!(b > a && d > c)) throw std::invalid_argument("rectangle_virtual_revenue: empty rectangle");
    auto inner = [&](double x) {
        double ymin = mech.col_min_d(x);
        double lo = std::max(c, ymin), hi = d;
        if (lo >= hi) return 0.0;
        // integral of 2(x+y) - (b+d) over y in [lo, hi]
        return (2.0 * x - (b + d)) * (hi - lo) + (hi * hi - lo * lo);
    };
    std::function<double(double, double, double, double, double, double, int)> simpson =
        [&](double x0, double x1, double f0, double f1, double fm, double whole, int depth) -> double {
        double xm = 0.5 * (x0 + x1);
        double xl = 0.5 * (x0 + xm), xr = 0.5 * (xm + x1);
        double fl = inner(xl), fr = inner(xr);
        double left = (xm - x0) / 6.0 * (f0 + 4.0 * fl + fm);
        double right = (x1 - xm) / 6.0 * (fm + 4.0 * fr + f1);
        if (depth > 40 || std::abs(left + right - whole) < 15.0 * tol * (x1 - x0))
            return left + right + (left + right - whole) / 15.0;
        return simpson(x0, xm, f0, fm, fl, left, depth + 1) +
               simpson(xm, x1, fm, f1, fr, right, depth + 1);
    };
    double f0 = inner(a), f1 = inner(b), fm = inner(0.5 * (a + b));
    double whole = (b - a) / 6.0 * (f0 + 4.0 * fm + f1);
    double integral = simpson(a, b, f0, f1, fm, whole, 0);
    return integral / ((b - a) * (d - c));
}

// Monte Carlo check that the appropriate two-square mechanism weakly
// dominates `mech` under the alpha mixture, within `z` standard errors.
inline bool domination_check(double alpha, const Mechanism& mech, Rng rng, std::size_t samples = 1000000,
                             double z = 2.0) {
    Mechanism champ = mech.allocates(0.75, 0.75) ? mechanism_M1() : mechanism_M2();
    double sum = 0, sumsq = 0;
    for (std::size_t s = 0; s < samples; ++s) {
        bool q1 = rng.uniform01() < alpha;
        double lo = q1 ? 0.50 : 0.75, hi = q1 ? 0.75 : 1.0;
        double x = rng.uniform(lo, hi), y = rng.uniform(lo, hi);
        double diff = champ.revenue(x, y) - mech.revenue(x, y);
        sum += diff;
        sumsq += diff * diff;
    }
    double n = static_cast<double>(samples);
    double mean = sum / n;
    double var = std::max(0.0, sumsq / n - mean * mean);
    double se = std::sqrt(var / n);
    return mean >= -z * se;
}

}  // namespace mechlearn
