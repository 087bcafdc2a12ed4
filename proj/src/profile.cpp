#include "gbik/profile.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace gbik {

namespace {

constexpr double kPi = 3.14159265358979323846;

int parse_quarter_angle(const std::string& tok) {
    if (tok == "0") return 0;
    if (tok == "pi/2") return 1;
    if (tok == "-pi/2") return -1;
    if (tok == "pi" || tok == "-pi") return 2;
    throw std::invalid_argument("profile: angle must be 0, pi/2, -pi/2 or pi, got '" +
                                tok + "'");
}

std::string quarter_angle_str(int q) {
    switch (((q % 4) + 4) % 4) {
        case 0: return "0";
        case 1: return "pi/2";
        case 2: return "pi";
        default: return "-pi/2";
    }
}

}  // namespace

RobotGeometry parse_profile(const std::string& text) {
    RobotGeometry g{};
    for (auto& lim : g.limits) lim = {-kPi, kPi};
    std::size_t joints_seen = 0;
    bool named = false;

    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key)) continue;
        auto fail = [&](const std::string& why) {
            throw std::invalid_argument("profile line " + std::to_string(lineno) + ": " +
                                        why);
        };
        if (key == "name") {
            if (!(ls >> g.name)) fail("missing name");
            named = true;
        } else if (key == "joint") {
            if (joints_seen == 6) fail("more than six joint rows");
            std::string a, alpha, d, delta;
            if (!(ls >> a >> alpha >> d >> delta)) fail("expected: joint a alpha d delta");
            JointRow& r = g.rows[joints_seen++];
            r.a = rat_from_string(a);
            r.alpha_q = parse_quarter_angle(alpha);
            r.d = rat_from_string(d);
            r.delta_q = parse_quarter_angle(delta);
        } else if (key == "limits_deg") {
            double lo, hi;
            if (!(ls >> lo >> hi)) fail("expected: limits_deg lo hi");
            if (lo >= hi) fail("limits need lo < hi");
            for (auto& lim : g.limits) lim = {lo * kPi / 180.0, hi * kPi / 180.0};
        } else if (key == "limit_deg") {
            int j;
            double lo, hi;
            if (!(ls >> j >> lo >> hi)) fail("expected: limit_deg joint lo hi");
            if (j < 1 || j > 6) fail("joint index out of range");
            if (lo >= hi) fail("limits need lo < hi");
            g.limits[static_cast<std::size_t>(j - 1)] = {lo * kPi / 180.0,
                                                         hi * kPi / 180.0};
        } else {
            fail("unknown key '" + key + "'");
        }
    }
    if (!named) throw std::invalid_argument("profile: missing name");
    if (joints_seen != 6)
        throw std::invalid_argument("profile: expected six joint rows, got " +
                                    std::to_string(joints_seen));
    return g;
}

RobotGeometry load_profile(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open profile: " + path);
    std::ostringstream buf;
    buf << f.rdbuf();
    return parse_profile(buf.str());
}

std::string profile_to_string(const RobotGeometry& geom) {
    std::ostringstream out;
    out << "name " << geom.name << "\n";
    for (const auto& r : geom.rows)
        out << "joint " << rat_to_string(r.a) << " " << quarter_angle_str(r.alpha_q)
            << " " << rat_to_string(r.d) << " " << quarter_angle_str(r.delta_q) << "\n";
    for (std::size_t i = 0; i < 6; ++i) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "limit_deg %zu %.17g %.17g\n", i + 1,
                      geom.limits[i].first * 180.0 / kPi,
                      geom.limits[i].second * 180.0 / kPi);
        out << buf;
    }
    return out.str();
}

}  // namespace gbik
