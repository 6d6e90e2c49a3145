#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "mechlearn/mechanism.hpp"
#include "mechlearn/rng.hpp"

namespace mechlearn {

// The coin-driven hard instance. With probability zeta the round is an
// R round emitting (b_t, 1) and the pair jumps above b_t; otherwise an L
// round emits (a_t, zeta) and the pair drops below a_t. Steps shrink as
// delta/3^t, so every value is delta * n / 3^t for an integer n; we keep
// those numerators exactly (doubles lose the 3^-t separation gap after a
// few hundred rounds) and only form rationals on demand.
class AdversarialTrace {
  public:
    AdversarialTrace(const Rat& delta, const Rat& zeta, int horizon, Rng rng)
        : delta_(delta), zeta_(zeta) {
        if (delta.sign() <= 0 || delta >= Rat(1) || zeta.sign() <= 0 || zeta >= Rat(1))
            throw std::invalid_argument("adversarial trace: delta, zeta must lie in (0,1)");
        coin_R_.reserve(horizon);
        na_.reserve(horizon);
        nb_.reserve(horizon);
        pow3_.reserve(horizon + 1);
        pow3_.push_back(BigInt(1));
        double zz = zeta.to_double();
        BigInt a(1), b(2);  // numerators of (a_1, b_1) = (delta/3, 2delta/3) over 3^1
        for (int t = 1; t <= horizon; ++t) {
            pow3_.push_back(pow3_.back() * BigInt(3));
            na_.push_back(a);
            nb_.push_back(b);
            bool R = rng.uniform01() < zz;
            coin_R_.push_back(R);
            // numerator recurrences over 3^(t+1):
            //   R: a <- b + Delta, b <- b + 2 Delta
            //   L: a <- a - Delta, b <- a - 2 Delta
            if (R) {
                BigInt nb3 = b * BigInt(3);
                a = nb3 + BigInt(1);
                b = nb3 + BigInt(2);
            } else {
                BigInt na3 = a * BigInt(3);
                a = na3 - BigInt(1);
                b = na3 - BigInt(2);
            }
        }
    }

    int horizon() const { return static_cast<int>(coin_R_.size()); }
    const Rat& delta() const { return delta_; }
    const Rat& zeta() const { return zeta_; }

    bool is_R(int t) const { return coin_R_[t - 1]; }        // 1-based rounds
    const BigInt& a_num(int t) const { return na_[t - 1]; }  // a_t = delta * a_num / 3^t
    const BigInt& b_num(int t) const { return nb_[t - 1]; }
    const BigInt& pow3(int t) const { return pow3_[t]; }

    Rat a(int t) const { return delta_ * Rat(na_[t - 1], pow3_[t]); }
    Rat b(int t) const { return delta_ * Rat(nb_[t - 1], pow3_[t]); }
    Point valuation(int t) const {
        return is_R(t) ? Point(b(t), Rat(1)) : Point(a(t), zeta_);
    }
    PointD valuation_d(int t) const {
        if (is_R(t)) return {delta_.to_double() * ratio(nb_[t - 1], pow3_[t]), 1.0};
        return {delta_.to_double() * ratio(na_[t - 1], pow3_[t]), zeta_.to_double()};
    }

    // checks every structural property; returns human-readable violations
    std::vector<std::string> check_structure() const;

    // largest emitted b over R rounds and smallest emitted a over L rounds,
    // as numerators rescaled to the common denominator 3^horizon
    struct Extremes {
        bool any_R = false, any_L = false;
        BigInt max_R_b, min_L_a;  // over 3^horizon, scaled by delta
    };
    Extremes extremes() const {
        Extremes e;
        BigInt rb, la;
        for (int t = 1; t <= horizon(); ++t) {
            rb = rb * BigInt(3);
            la = la * BigInt(3);
            if (is_R(t)) {
                BigInt scaled = nb_[t - 1];  // already over 3^t; bring to 3^t then grow
                if (!e.any_R) {
                    rb = scaled;
                    e.any_R = true;
                } else if (scaled > rb) {
                    rb = scaled;
                }
            } else {
                BigInt scaled = na_[t - 1];
                if (!e.any_L) {
                    la = scaled;
                    e.any_L = true;
                } else if (scaled < la) {
                    la = scaled;
                }
            }
        }
        e.max_R_b = rb;
        e.min_L_a = la;
        return e;
    }

    static double ratio(const BigInt& a, const BigInt& b) {
        int shift = b.bit_length() - 62;
        if (shift <= 0) return a.to_double() / b.to_double();
        // scale both down so the divisor fits in a double exactly enough
        BigInt q, r;
        BigInt::divmod(a.shifted_left(64), b, q, r);
        return q.to_double() * 0x1.0p-64;
    }

  private:
    Rat delta_, zeta_;
    std::vector<bool> coin_R_;
    std::vector<BigInt> na_, nb_;
    std::vector<BigInt> pow3_;
};

// tau strictly separating all R-round b values (below) from all L-round a
// values (above); throws if separation fails, which would falsify the
// construction. Returned in (0, delta).
inline Rat separating_threshold(const AdversarialTrace& trace) {
    auto ex = trace.extremes();
    const int T = trace.horizon();
    // defaults per side: 0 below, delta above (numerator 3^T)
    BigInt lo = ex.any_R ? ex.max_R_b : BigInt(0);
    BigInt hi = ex.any_L ? ex.min_L_a : trace.pow3(T);
    if (!(lo < hi)) throw std::logic_error("adversarial trace: separation violated");
    Rat tau = trace.delta() * Rat(lo + hi, trace.pow3(T) * BigInt(2));
    if (!(tau > Rat(0) && tau < trace.delta()))
        throw std::logic_error("adversarial trace: tau outside (0, delta)");
    return tau;
}

// the threshold mechanism: accepts (x, 1) for every x, and (x, y) with
// x >= tau, y >= zeta; trades every round of the trace
inline Mechanism threshold_mechanism(const Rat& tau, const Rat& zeta) {
    return Mechanism::from_points({Point(Rat(0), Rat(1)), Point(tau, zeta)});
}

inline std::vector<std::string> AdversarialTrace::check_structure() const {
    std::vector<std::string> bad;
    const int T = horizon();
    // closed-form accumulator: S_t = sum_{j<=t} gamma_j alpha_j 3^{t-j}
    // where alpha = 2 on R rounds, 1 on L; gamma_t = sign of the previous
    // coin (round 0 counts as R)
    BigInt S(0);
    bool prevR = true;
    for (int t = 1; t <= T; ++t) {
        int gamma = prevR ? 1 : -1;
        // bounds: 0 <= a_t, b_t <= delta
        if (na_[t - 1].sign() < 0 || na_[t - 1] > pow3_[t])
            bad.push_back("a_" + std::to_string(t) + " outside [0, delta]");
        if (nb_[t - 1].sign() < 0 || nb_[t - 1] > pow3_[t])
            bad.push_back("b_" + std::to_string(t) + " outside [0, delta]");
        // closed forms: a_t = gamma_t Delta_t + sum_{j<t} ..., b_t same with 2 gamma_t Delta_t
        BigInt base = S * BigInt(3);
        if (na_[t - 1] != base + BigInt(gamma))
            bad.push_back("closed form mismatch for a_" + std::to_string(t));
        if (nb_[t - 1] != base + BigInt(2 * gamma))
            bad.push_back("closed form mismatch for b_" + std::to_string(t));
        int alpha = is_R(t) ? 2 : 1;
        S = base + BigInt(gamma * alpha);
        prevR = is_R(t);
    }
    // monotonicity of the emitted values: b increases along R rounds,
    // a decreases along L rounds
    BigInt last_Rb, last_La;
    bool haveR = false, haveL = false;
    for (int t = 1; t <= T; ++t) {
        last_Rb = last_Rb * BigInt(3);
        last_La = last_La * BigInt(3);
        if (is_R(t)) {
            if (haveR && !(nb_[t - 1] > last_Rb))
                bad.push_back("emitted b not increasing at R round " + std::to_string(t));
            last_Rb = nb_[t - 1];
            haveR = true;
        } else {
            if (haveL && !(na_[t - 1] < last_La))
                bad.push_back("emitted a not decreasing at L round " + std::to_string(t));
            last_La = na_[t - 1];
            haveL = true;
        }
    }
    return bad;
}

// Analytic supremum, over all mechanisms supported on the uniform grid with
// step 1/k, of the conditional expected revenue against the round's
// two-point law {(b_t,1) w.p. zeta, (a_t,zeta) w.p. 1-zeta}. The best
// mechanism of each trade pattern is a one- or two-corner staircase, so the
// supremum is a finite max. Exact; avoids rational normalization of the
// huge trace numerators by comparing g/k <= delta*n/3^t in integers.
inline Rat grid_learner_conditional_cap(const AdversarialTrace& trace, int t, int k) {
    const Rat& zeta = trace.zeta();
    const Rat& delta = trace.delta();
    BigInt base = delta.den() * trace.pow3(t);  // q * 3^t
    auto scaled = [&](const BigInt& n) { return BigInt(k) * delta.num() * n; };
    BigInt sb = scaled(trace.b_num(t)), sa = scaled(trace.a_num(t));
    auto grid_floor = [&](const BigInt& s) {
        int best = 0;
        for (int g = 1; g <= k; ++g) {
            if (BigInt(g) * base <= s) best = g;
            else
                break;
        }
        return best;
    };
    int xb = grid_floor(sb), xa = grid_floor(sa);
    Rat yz(0);
    for (int g = 1; g <= k; ++g)
        if (Rat(g, k) <= zeta) yz = Rat(g, k);
        else
            break;
    bool xa_right_of_b = BigInt(xa) * base > sb;  // a grid column strictly between b_t and a_t

    Rat sup = zeta * (Rat(xb, k) + Rat(1));  // trade only (b_t, 1)
    if (xa_right_of_b) {
        Rat only_a = (Rat(1) - zeta) * (Rat(xa, k) + yz);
        if (only_a > sup) sup = only_a;
    }
    Rat p2b = xa_right_of_b ? Rat(1) : yz;
    Rat both = zeta * (Rat(xb, k) + p2b) + (Rat(1) - zeta) * (Rat(xa, k) + yz);
    if (both > sup) sup = both;
    return sup;
}

}  // namespace mechlearn
