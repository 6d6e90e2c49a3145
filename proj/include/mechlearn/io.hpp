#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mechlearn/distribution.hpp"
#include "mechlearn/harness.hpp"
#include "mechlearn/mechanism.hpp"

namespace mechlearn {

// ---------------------------------------------------------------------------
// Polylines: "x y" per line (rational or decimal), blank line between segments
// ---------------------------------------------------------------------------

inline std::string polyline_to_string(const std::vector<Point>& pts) {
    std::ostringstream os;
    for (const auto& p : pts) os << p.x.to_string() << ' ' << p.y.to_string() << '\n';
    return os.str();
}

inline std::string polylines_to_string(const std::vector<std::vector<Point>>& segs) {
    std::string out;
    for (std::size_t i = 0; i < segs.size(); ++i) {
        if (i) out += '\n';
        out += polyline_to_string(segs[i]);
    }
    return out;
}

inline std::vector<std::vector<Point>> parse_polylines(std::istream& in) {
    std::vector<std::vector<Point>> segs(1);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) {
            if (!segs.back().empty()) segs.emplace_back();
            continue;
        }
        if (line[0] == '#') continue;
        std::istringstream ls(line);
        std::string xs, ys;
        if (!(ls >> xs >> ys)) throw std::invalid_argument("polyline: bad line: " + line);
        segs.back().emplace_back(Rat::parse(xs), Rat::parse(ys));
    }
    if (segs.back().empty()) segs.pop_back();
    return segs;
}

// ---------------------------------------------------------------------------
// Distribution files: "v1 v2 prob" records, '#' comments
// ---------------------------------------------------------------------------

inline DiscreteDistribution parse_distribution(std::istream& in) {
    DiscreteDistribution d;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        std::string a, b, c;
        if (!(ls >> a)) continue;
        if (!(ls >> b >> c)) throw std::invalid_argument("distribution: bad record: " + line);
        d.atoms.push_back({Point(Rat::parse(a), Rat::parse(b)), Rat::parse(c)});
    }
    auto bad = d.validate();
    if (!bad.empty()) throw std::invalid_argument("distribution: " + bad.front());
    return d;
}

inline DiscreteDistribution load_distribution(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open distribution file: " + path);
    return parse_distribution(in);
}

// ---------------------------------------------------------------------------
// CSV emission (schema versioned in a header comment)
// ---------------------------------------------------------------------------

inline std::string rounds_to_csv(const std::vector<RoundRecord>& records) {
    std::ostringstream os;
    os << "# mechsim rounds v1\n";
    os << "t,mechanism,v1,v2,revenue,cumulative\n";
    os.precision(17);
    for (const auto& r : records)
        os << r.t << ',' << r.mechanism_hash << ',' << r.v1 << ',' << r.v2 << ',' << r.revenue << ','
           << r.cumulative << '\n';
    return os.str();
}

inline std::string report_to_csv(const RegretReport& rep) {
    std::ostringstream os;
    os << "# mechsim regret-report v1\n";
    os << "seed,learner_total,hindsight_total,regret\n";
    os.precision(17);
    for (const auto& s : rep.per_seed)
        os << s.seed << ',' << s.learner_total << ',' << s.hindsight_total << ',' << s.regret << '\n';
    os << "# mean_learner_total=" << rep.mean_learner_total
       << " mean_hindsight_total=" << rep.mean_hindsight_total << " mean_regret=" << rep.mean_regret
       << '\n';
    return os.str();
}

// ---------------------------------------------------------------------------
// Experiment config files: `key = value` lines, '#' comments
// ---------------------------------------------------------------------------

inline std::map<std::string, std::string> parse_key_values(std::istream& in) {
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            auto b = s.find_first_not_of(" \t\r");
            auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
        if (!key.empty()) kv[key] = val;
    }
    return kv;
}

inline std::vector<std::uint64_t> parse_seed_list(const std::string& s) {
    std::vector<std::uint64_t> seeds;
    std::istringstream is(s);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        if (tok.empty()) continue;
        seeds.push_back(std::stoull(tok));
    }
    return seeds;
}

inline ExperimentConfig config_from_key_values(const std::map<std::string, std::string>& kv) {
    ExperimentConfig cfg;
    auto get = [&](const std::string& k) -> const std::string* {
        auto it = kv.find(k);
        return it == kv.end() ? nullptr : &it->second;
    };
    auto need = [&](const std::string& k) -> const std::string& {
        auto* v = get(k);
        if (!v) throw std::invalid_argument("config: missing key '" + k + "'");
        return *v;
    };

    const std::string& env = need("env");
    if (env == "smooth_mixture") {
        cfg.env = EnvironmentSpec::smooth_mixture(Rat::parse(need("alpha")).to_double());
    } else if (env == "equal_revenue") {
        int n = std::stoi(need("n"));
        cfg.env = EnvironmentSpec::discrete(equal_revenue_dist(n, Rat::parse(need("delta"))),
                                            "equal_revenue");
    } else if (env == "point_mass") {
        cfg.env = EnvironmentSpec::discrete(
            DiscreteDistribution::point_mass(Point(Rat::parse(need("px")), Rat::parse(need("py")))),
            "point_mass");
    } else if (env == "discrete_file") {
        cfg.env = EnvironmentSpec::discrete(load_distribution(need("dist_file")), "discrete_file");
    } else if (env == "adversarial") {
        cfg.env = EnvironmentSpec::adversarial(Rat::parse(need("delta")), Rat::parse(need("zeta")));
    } else if (env == "uniform_square") {
        cfg.env = EnvironmentSpec::product_cdf([](double x) { return x; }, [](double x) { return x; }, 1.0);
    } else {
        throw std::invalid_argument("config: unknown env '" + env + "'");
    }

    cfg.learner = LearnerSpec::parse_kind(need("learner"));
    if (cfg.learner.kind == LearnerSpec::Kind::posted_price) {
        cfg.learner.posted_p1 = Rat::parse(need("posted_p1"));
        cfg.learner.posted_p2 = Rat::parse(need("posted_p2"));
    }

    cfg.horizon = std::stoi(need("T"));
    cfg.seeds = parse_seed_list(need("seeds"));
    if (auto* v = get("atbm_constant")) cfg.atbm_constant = Rat::parse(*v).to_double();
    if (auto* v = get("atbm_exact_until")) cfg.atbm_exact_until = std::stoi(*v);
    if (auto* v = get("atbm_always_resolve")) cfg.atbm_always_resolve = (*v == "true" || *v == "1");
    if (auto* v = get("eta")) cfg.eta_override = Rat::parse(*v).to_double();
    if (auto* v = get("grid_k")) cfg.grid_k_override = std::stoi(*v);
    if (auto* v = get("coord_cap")) cfg.coord_cap = std::stoi(*v);
    auto bad = cfg.validate();
    if (!bad.empty()) throw std::invalid_argument("config: " + bad.front());
    return cfg;
}

inline ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    return config_from_key_values(parse_key_values(in));
}

}  // namespace mechlearn
