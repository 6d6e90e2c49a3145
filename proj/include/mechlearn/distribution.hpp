#pragma once

#include <string>
#include <vector>

#include "mechlearn/geometry.hpp"

namespace mechlearn {

// Finite-support joint valuation distribution.
struct DiscreteDistribution {
    std::vector<std::pair<Point, Rat>> atoms;

    std::vector<std::string> validate() const {
        std::vector<std::string> bad;
        Rat sum(0);
        for (const auto& [p, w] : atoms) {
            if (!p.in_unit_square()) bad.push_back("atom outside the unit square: " + p.to_string());
            if (w.sign() < 0) bad.push_back("negative probability at " + p.to_string());
            sum += w;
        }
        if (sum != Rat(1)) bad.push_back("probabilities sum to " + sum.to_string() + ", not 1");
        for (std::size_t i = 0; i < atoms.size(); ++i)
            for (std::size_t j = i + 1; j < atoms.size(); ++j)
                if (atoms[i].first == atoms[j].first)
                    bad.push_back("duplicate atom " + atoms[i].first.to_string());
        return bad;
    }

    Rat mass_in(const Box& b) const {
        Rat m(0);
        for (const auto& [p, w] : atoms)
            if (b.contains(p)) m += w;
        return m;
    }

    static DiscreteDistribution point_mass(const Point& p) { return DiscreteDistribution{{{p, Rat(1)}}}; }
};

}  // namespace mechlearn
