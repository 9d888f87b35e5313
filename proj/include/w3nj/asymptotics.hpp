#pragma once

#include "w3nj/geometry.hpp"
#include "w3nj/twelvej_input.hpp"
#include "w3nj/wigner_d.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace w3nj {

enum class Region { allowed, caustic, forbidden };

inline std::string to_string(Region r) {
    switch (r) {
        case Region::allowed: return "allowed";
        case Region::caustic: return "caustic";
        case Region::forbidden: return "forbidden";
    }
    return "?";
}

/// Both branches of one set of lengths, or the reason there are none.
struct ClassicalGeometry {
    Region region = Region::forbidden;
    std::array<BranchGeometry, 2> branch{};
};

inline ClassicalGeometry classical_geometry(const JLengths& L, const GeometryTolerances& tol = {}) {
    ClassicalGeometry out;
    BranchSolution sol = solve_branches(L, tol);
    if (sol.caustic) {
        out.region = Region::caustic;
        return out;
    }
    if (sol.roots.empty()) return out;
    try {
        for (int k = 0; k < 2; ++k) {
            VectorConfig c = realize_vectors(L, sol.roots[k], tol);
            out.branch[k] = branch_geometry(c, sol.roots[k], tol);
            const auto& g = out.branch[k];
            bool finite = std::isfinite(g.S) && std::isfinite(g.D) && std::isfinite(g.phi12) &&
                          std::isfinite(g.phi13) && std::isfinite(g.theta);
            if (!finite) throw DegenerateGeometry("non-finite geometry");
        }
    } catch (const DegenerateGeometry&) {
        out.region = Region::caustic;
        return out;
    }
    out.region = Region::allowed;
    return out;
}

struct AsymptoticResult {
    double value = 0;                     // meaningful only when allowed
    std::array<double, 2> branch_terms{};  // cosine branch, sine branch, before the prefactor
    std::array<double, 2> phase{};         // arguments of cos and sin
    double prefactor = 0;
    bool allowed = false;
    bool caustic_flag = false;
    Region region = Region::forbidden;
};

namespace asym_detail {

inline AsymptoticResult not_allowed(Region r) {
    AsymptoticResult a;
    a.region = r;
    a.caustic_flag = r == Region::caustic;
    return a;
}

inline void finish(AsymptoticResult& a) {
    a.value = a.prefactor * (a.branch_terms[0] + a.branch_terms[1]);
    if (!std::isfinite(a.value)) {
        a = not_allowed(Region::caustic);
        return;
    }
    a.allowed = true;
    a.region = Region::allowed;
}

}  // namespace asym_detail

/// All-large 9j {j1 j2 j12; j3 j4 j34; j13 j24 j6}:
/// [cos S1 / sqrt|D1| + sin S2 / sqrt|D2|] / 4pi.
inline AsymptoticResult asym9j(const NineJInput& n, const GeometryTolerances& tol = {}) {
    if (!ninej_triangular(n)) return asym_detail::not_allowed(Region::forbidden);
    ClassicalGeometry g = classical_geometry(quantize_lengths(n), tol);
    if (g.region != Region::allowed) return asym_detail::not_allowed(g.region);
    AsymptoticResult a;
    a.phase = {g.branch[0].S, g.branch[1].S};
    a.branch_terms = {std::cos(a.phase[0]) / std::sqrt(std::abs(g.branch[0].D)),
                      std::sin(a.phase[1]) / std::sqrt(std::abs(g.branch[1].D))};
    a.prefactor = 1.0 / (4.0 * std::numbers::pi);
    asym_detail::finish(a);
    return a;
}

struct AsymOptions {
    HalfInt s_max = HalfInt::from_int(3);
    GeometryTolerances tol{};
};

/// 12j with small s5, mu = j125 - j12, nu = j135 - j13:
///   1/(4pi sqrt((2j125+1)(2j135+1))) * sum_k d^s_{mu nu}(theta_k) trig_k(S_k + mu phi12_k + nu phi13_k - pi mu) / sqrt|D_k|
/// with trig_1 = cos, trig_2 = sin, both branches realized with J6.(J12 x J13) < 0.
inline AsymptoticResult asym12j(const TwelveJInput& in, const AsymOptions& opt = {}) {
    if (in.s5 > opt.s_max) throw std::invalid_argument("s5 exceeds the small-spin bound s_max");
    if (!in.is_triangular()) return asym_detail::not_allowed(Region::forbidden);
    ClassicalGeometry g = classical_geometry(quantize_lengths(in), opt.tol);
    if (g.region != Region::allowed) return asym_detail::not_allowed(g.region);
    const HalfInt mu = in.j125 - in.j12, nu = in.j135 - in.j13;
    const double m = mu.value(), n = nu.value();
    AsymptoticResult a;
    for (int k = 0; k < 2; ++k) {
        const BranchGeometry& b = g.branch[k];
        a.phase[k] = b.S + m * b.phi12 + n * b.phi13 - std::numbers::pi * m;
        const double trig = k == 0 ? std::cos(a.phase[k]) : std::sin(a.phase[k]);
        a.branch_terms[k] = wigner_d(in.s5, mu, nu, b.theta) * trig / std::sqrt(std::abs(b.D));
    }
    a.prefactor = 1.0 / (4.0 * std::numbers::pi * std::sqrt(double(in.j125.dim()) * double(in.j135.dim())));
    asym_detail::finish(a);
    return a;
}

/// Classification of each j6 in `j6_values` with the other labels of `in` fixed.
inline std::vector<std::pair<HalfInt, Region>> allowed_region(const TwelveJInput& in, const std::vector<HalfInt>& j6_values,
                                                              const GeometryTolerances& tol = {}) {
    std::vector<std::pair<HalfInt, Region>> out;
    out.reserve(j6_values.size());
    for (HalfInt j6 : j6_values) {
        TwelveJInput t = in;
        t.j6 = j6;
        Region r = Region::forbidden;
        if (t.is_triangular()) r = classical_geometry(quantize_lengths(t), tol).region;
        out.emplace_back(j6, r);
    }
    return out;
}

}  // namespace w3nj
