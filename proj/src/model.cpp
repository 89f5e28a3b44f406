#include "fodechain/model.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>

namespace fodechain::model {
namespace {

void require_positive(double v, const char* name) {
    if (!std::isfinite(v) || v <= 0.0) {
        throw std::invalid_argument(std::string("parameter '") + name +
                                    "' must be strictly positive, got " + std::to_string(v));
    }
}

} // namespace

void DimParams::validate() const {
    require_positive(a0, "a0");
    require_positive(b0, "b0");
    require_positive(v0, "v0");
    require_positive(v1, "v1");
    require_positive(v2, "v2");
    require_positive(v3, "v3");
    require_positive(d0, "d0");
    require_positive(d1, "d1");
    require_positive(d2, "d2");
    require_positive(d3, "d3");
    require_positive(a1, "a1");
    require_positive(c3, "c3");
}

void NondimParams::validate() const {
    require_positive(a, "a");
    require_positive(b, "b");
    require_positive(c, "c");
    require_positive(d, "d");
    require_positive(p, "p");
    require_positive(q, "q");
    require_positive(r, "r");
    require_positive(s, "s");
    require_positive(beta, "beta");
}

NondimParams nondimensionalize(const DimParams& p) {
    p.validate();
    const double a0sq = p.a0 * p.a0;
    NondimParams q;
    q.a = p.b0 * p.b0 * p.d1 / a0sq;
    q.b = p.a1 / p.a0;
    q.c = p.b0 * p.v1 / a0sq;
    q.d = p.d2 * p.v0 * p.b0 / a0sq;
    q.p = p.c3 * a0sq / (p.b0 * p.v0 * p.v2);
    q.q = p.v3 / p.v2;
    q.r = p.d3 * p.v0 * p.b0 / a0sq;
    q.s = p.b0 / p.a0;
    q.beta = p.v1 / p.a0;
    return q;
}

State rhs_dimensional(const DimParams& p, const State& s) {
    const double X = s.x, Y = s.y, Z = s.z;
    State d;
    d.x = p.a0 * X - p.b0 * X * X - p.v0 * X * Y / (p.d0 + X * X);
    d.y = -p.a1 * Y + p.v1 * X * Y / (p.d1 + X * X) - p.v2 * Y * Z / (p.d2 + Y);
    d.z = p.c3 * Z * Z - p.v3 * Z * Z / (p.d3 + Y);
    return d;
}

State rhs_nondimensional(const NondimParams& q, const State& s) {
    const double x = s.x, y = s.y, z = s.z;
    State d;
    d.x = x * (1.0 - x) - q.s * x * y / (x * x + q.a);
    d.y = q.c * x * y / (x * x + q.a) - q.b * y - y * z / (y + q.d);
    d.z = q.p * z * z - q.q * z * z / (y + q.r);
    return d;
}

Mat3 jacobian(const NondimParams& q, const State& s) {
    const double x = s.x, y = s.y, z = s.z;
    const double ax2 = q.a + x * x;
    const double dy2 = (q.d + y) * (q.d + y);
    const double ry = q.r + y;
    Mat3 J{};
    J[0][0] = 1.0 - 2.0 * x - q.s * y * (q.a - x * x) / (ax2 * ax2);
    J[0][1] = -q.s * x / ax2;
    J[0][2] = 0.0;
    J[1][0] = q.c * y * (q.a - x * x) / (ax2 * ax2);
    J[1][1] = -q.b + q.c * x / ax2 - q.d * z / dy2;
    J[1][2] = -y / (q.d + y);
    J[2][0] = 0.0;
    J[2][1] = q.q * z * z / (ry * ry);
    J[2][2] = 2.0 * z * (q.p - q.q / ry);
    return J;
}

State state_to_nondim(const DimParams& p, const State& S) {
    const double a0sq = p.a0 * p.a0;
    return State{p.b0 / p.a0 * S.x,
                 p.b0 * p.v0 / a0sq * S.y,
                 p.b0 * p.v0 * p.v2 / (a0sq * p.a0) * S.z};
}

State state_to_dim(const DimParams& p, const State& s) {
    const double a0sq = p.a0 * p.a0;
    return State{p.a0 / p.b0 * s.x,
                 a0sq / (p.b0 * p.v0) * s.y,
                 a0sq * p.a0 / (p.b0 * p.v0 * p.v2) * s.z};
}

DimParams parse_params(std::istream& in) {
    std::map<std::string, double> values;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        // trim
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("parameter file line " + std::to_string(line_no) +
                                        ": expected 'name = value'");
        }
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        static const std::set<std::string> known = {"a0", "b0", "v0", "v1", "v2", "v3",
                                                    "d0", "d1", "d2", "d3", "a1", "c3"};
        if (!known.count(key)) {
            throw std::invalid_argument("parameter file line " + std::to_string(line_no) +
                                        ": unknown key '" + key + "'");
        }
        if (values.count(key)) {
            throw std::invalid_argument("parameter file line " + std::to_string(line_no) +
                                        ": duplicate key '" + key + "'");
        }
        std::size_t pos = 0;
        double parsed = 0.0;
        try {
            parsed = std::stod(val, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (pos != val.size() || val.empty()) {
            throw std::invalid_argument("parameter file line " + std::to_string(line_no) +
                                        ": bad numeric value for '" + key + "': '" + val + "'");
        }
        values[key] = parsed;
    }

    auto get = [&](const char* key) {
        const auto it = values.find(key);
        if (it == values.end()) {
            throw std::invalid_argument(std::string("parameter file: missing key '") + key + "'");
        }
        return it->second;
    };

    DimParams p;
    p.a0 = get("a0");
    p.b0 = get("b0");
    p.v0 = get("v0");
    p.v1 = get("v1");
    p.v2 = get("v2");
    p.v3 = get("v3");
    p.d1 = get("d1");
    p.d2 = get("d2");
    p.d3 = get("d3");
    p.a1 = get("a1");
    p.c3 = get("c3");
    p.d0 = values.count("d0") ? values["d0"] : p.d1; // d0 defaults to d1
    p.validate();
    return p;
}

DimParams load_params_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open parameter file: " + path.string());
    }
    try {
        return parse_params(in);
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(path.string() + ": " + e.what());
    }
}

} // namespace fodechain::model
