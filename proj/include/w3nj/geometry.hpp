#pragma once

#include "w3nj/twelvej_input.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <vector>

namespace w3nj {

/// Degenerate classical geometry: collinear edges, a vanishing triple product, or a non-PSD Gram matrix.
struct DegenerateGeometry : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Edge order used by every per-edge array.
enum Edge : int { E1, E2, E3, E4, E6, E12, E34, E13, E24 };
inline constexpr int kEdges = 9;
inline constexpr const char* kEdgeNames[kEdges] = {"J1", "J2", "J3", "J4", "J6", "J12", "J34", "J13", "J24"};

struct JLengths {
    std::array<double, kEdges> J{};

    double& operator[](Edge e) { return J[e]; }
    double operator[](Edge e) const { return J[e]; }
    double max() const { return *std::max_element(J.begin(), J.end()); }

    JLengths scaled(double lambda) const {
        JLengths r = *this;
        for (double& v : r.J) v *= lambda;
        return r;
    }
};

/// J = j + 1/2 for the nine large labels (s5 is not an edge).
inline JLengths quantize_lengths(const TwelveJInput& in) {
    JLengths L;
    L[E1] = in.j1.value() + 0.5;
    L[E2] = in.j2.value() + 0.5;
    L[E3] = in.j3.value() + 0.5;
    L[E4] = in.j4.value() + 0.5;
    L[E6] = in.j6.value() + 0.5;
    L[E12] = in.j12.value() + 0.5;
    L[E34] = in.j34.value() + 0.5;
    L[E13] = in.j13.value() + 0.5;
    L[E24] = in.j24.value() + 0.5;
    return L;
}

/// Same map for a 9j laid out as {j1 j2 j12; j3 j4 j34; j13 j24 j6}.
inline JLengths quantize_lengths(const NineJInput& n) {
    JLengths L;
    const Edge order[9] = {E1, E2, E12, E3, E4, E34, E13, E24, E6};
    for (int k = 0; k < 9; ++k) L[order[k]] = n[k].value() + 0.5;
    return L;
}

/// x + y with x = J1.J4, y = J2.J3.
inline double xy_sum(const JLengths& L) {
    auto sq = [](double v) { return v * v; };
    return 0.5 * (sq(L[E1]) + sq(L[E2]) + sq(L[E3]) + sq(L[E4]) + sq(L[E6]) - sq(L[E12]) - sq(L[E34]) -
                  sq(L[E13]) - sq(L[E24]));
}

/// Gram matrix of (J1, J2, J3, J4).
inline Eigen::Matrix4d gram_matrix(const JLengths& L, double x, double y) {
    auto dot = [&](Edge a, Edge b, Edge ab) { return 0.5 * (L[ab] * L[ab] - L[a] * L[a] - L[b] * L[b]); };
    const double g12 = dot(E1, E2, E12), g34 = dot(E3, E4, E34), g13 = dot(E1, E3, E13), g24 = dot(E2, E4, E24);
    Eigen::Matrix4d G;
    G << L[E1] * L[E1], g12, g13, x,
         g12, L[E2] * L[E2], y, g24,
         g13, y, L[E3] * L[E3], g34,
         x, g24, g34, L[E4] * L[E4];
    return G;
}

inline double gram_det(const JLengths& L, double x, double y) { return gram_matrix(L, x, y).determinant(); }

namespace geom_detail {

template <class T>
using PolyT = std::array<T, 5>;

template <class T>
PolyT<T> poly_mul(const PolyT<T>& a, const PolyT<T>& b) {
    PolyT<T> r{};
    for (int i = 0; i < 5; ++i)
        for (int j = 0; i + j < 5; ++j) r[i + j] += a[i] * b[j];
    return r;
}

/// det G(x, s - x) as a quartic in u = x / sigma, divided by sigma^4. Every entry is formed in T.
template <class T>
PolyT<T> quartic_t(const JLengths& L, double sigma_d) {
    const T sigma = sigma_d;
    auto sq = [&](Edge e) { return T(L[e]) * T(L[e]) / sigma; };
    auto dot = [&](Edge a, Edge b, Edge ab) { return (sq(ab) - sq(a) - sq(b)) / 2; };
    const T s = (sq(E1) + sq(E2) + sq(E3) + sq(E4) + sq(E6) - sq(E12) - sq(E34) - sq(E13) - sq(E24)) / 2;
    const T g[4][4] = {{sq(E1), dot(E1, E2, E12), dot(E1, E3, E13), 0},
                       {dot(E1, E2, E12), sq(E2), 0, dot(E2, E4, E24)},
                       {dot(E1, E3, E13), 0, sq(E3), dot(E3, E4, E34)},
                       {0, dot(E2, E4, E24), dot(E3, E4, E34), sq(E4)}};
    std::array<std::array<PolyT<T>, 4>, 4> M{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) M[i][j] = PolyT<T>{g[i][j], 0, 0, 0, 0};
    M[0][3] = M[3][0] = PolyT<T>{0, 1, 0, 0, 0};
    M[1][2] = M[2][1] = PolyT<T>{s, -1, 0, 0, 0};
    PolyT<T> det{};
    std::array<int, 4> p = {0, 1, 2, 3};
    do {
        int inversions = 0;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) inversions += p[i] > p[j];
        PolyT<T> term = poly_mul(poly_mul(M[0][p[0]], M[1][p[1]]), poly_mul(M[2][p[2]], M[3][p[3]]));
        for (int k = 0; k < 5; ++k) det[k] += (inversions & 1) ? -term[k] : term[k];
    } while (std::next_permutation(p.begin(), p.end()));
    return det;
}

using Poly = PolyT<double>;

inline Poly quartic(const JLengths& L, double sigma) { return quartic_t<double>(L, sigma); }

/// Newton refinement of a simple real root in extended precision; the double-precision
/// coefficients lose digits to cancellation in the determinant expansion.
inline double polish_real_root(const PolyT<long double>& c, double u0) {
    long double u = u0;
    for (int it = 0; it < 6; ++it) {
        long double f = c[4], d = 4 * c[4];
        for (int k = 3; k >= 0; --k) f = f * u + c[k];
        for (int k = 3; k >= 1; --k) d = d * u + k * c[k];
        if (d == 0) break;
        const long double step = f / d;
        if (!std::isfinite(static_cast<double>(step)) || std::abs(step) > 1e-6L) break;
        u -= step;
        if (std::abs(step) <= 1e-19L * std::max(1.0L, std::abs(u))) break;
    }
    return static_cast<double>(u);
}

inline std::complex<double> poly_eval(const Poly& c, std::complex<double> u) {
    std::complex<double> r = c[4];
    for (int k = 3; k >= 0; --k) r = r * u + c[k];
    return r;
}

inline std::complex<double> poly_deriv(const Poly& c, std::complex<double> u) {
    std::complex<double> r = 4.0 * c[4];
    for (int k = 3; k >= 1; --k) r = r * u + double(k) * c[k];
    return r;
}

/// Product of two triple products, (Ja.(Jb x Jc)) (Jd.(Je x Jf)), from Gram entries.
inline double triple_pair(const Eigen::Matrix4d& G, std::array<int, 3> l, std::array<int, 3> r) {
    Eigen::Matrix3d M;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) M(i, j) = G(l[i], r[j]);
    return M.determinant();
}

}  // namespace geom_detail

/// V123 V432 - V214 V341 computed from the Gram matrix alone.
inline double amplitude_denominator(const Eigen::Matrix4d& G) {
    using geom_detail::triple_pair;
    return triple_pair(G, {0, 1, 2}, {3, 2, 1}) - triple_pair(G, {1, 0, 3}, {2, 3, 0});
}

struct GeometryTolerances {
    double imag_root = 1e-7;     // |Im u| below which a root counts as real
    double caustic_root = 1e-6;  // |u1 - u2| below which the two roots have merged
    double minor = 1e-9;         // principal 3x3 minors >= -minor * sigma^3
    double amplitude = 1e-10;    // |D| >= amplitude * sigma^3 away from caustics
    double collinear = 1e-9;     // |a x b| >= collinear * |a||b|
};

struct RootPair {
    double x = 0, y = 0;
    int branch = 0;  // 1 or 2
};

struct BranchSolution {
    std::vector<RootPair> roots;  // empty or two, branch 1 first
    bool caustic = false;
};

/// Real roots of det G(x, s - x) = 0 whose Gram matrix is positive semidefinite, labelled by branch.
/// Branch 1 is the root with V123 V432 - V214 V341 > 0.
inline BranchSolution solve_branches(const JLengths& L, const GeometryTolerances& tol = {}) {
    using namespace geom_detail;
    BranchSolution out;
    const double sigma = L.max() * L.max();
    const double s = xy_sum(L);
    Poly c = quartic(L, sigma);
    if (!(std::abs(c[4]) > 0) || !std::isfinite(c[4])) {
        out.caustic = true;
        return out;
    }

    Eigen::Matrix4d comp = Eigen::Matrix4d::Zero();
    for (int k = 0; k < 3; ++k) comp(k + 1, k) = 1.0;
    for (int k = 0; k < 4; ++k) comp(k, 3) = -c[k] / c[4];
    Eigen::EigenSolver<Eigen::Matrix4d> es(comp, false);
    std::vector<std::complex<double>> z;
    for (int k = 0; k < 4; ++k) {
        std::complex<double> u = es.eigenvalues()[k];
        for (int it = 0; it < 3; ++it) {
            std::complex<double> d = poly_deriv(c, u);
            if (std::abs(d) == 0.0) break;
            std::complex<double> step = poly_eval(c, u) / d;
            if (!std::isfinite(step.real()) || !std::isfinite(step.imag()) || std::abs(step) > 1e-3) break;
            u -= step;
        }
        z.push_back(u);
    }

    auto realizable = [&](double u) {
        Eigen::Matrix4d G = gram_matrix(L, u * sigma, s - u * sigma) / sigma;
        for (int drop = 0; drop < 4; ++drop) {
            Eigen::Matrix3d m;
            for (int i = 0, a = 0; i < 4; ++i) {
                if (i == drop) continue;
                for (int j = 0, b = 0; j < 4; ++j) {
                    if (j == drop) continue;
                    m(a, b++) = G(i, j);
                }
                ++a;
            }
            if (m.determinant() < -tol.minor) return false;
        }
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> se(G, Eigen::EigenvaluesOnly);
        return se.eigenvalues()[0] >= -tol.minor;
    };

    std::vector<double> good;
    bool merged_pair = false;
    for (const auto& u : z) {
        if (std::abs(u.imag()) <= tol.imag_root) {
            if (realizable(u.real())) good.push_back(u.real());
        } else if (std::abs(u.imag()) <= tol.caustic_root && realizable(u.real())) {
            merged_pair = true;  // a complex pair just off the real axis: roots have just merged
        }
    }
    if (good.size() == 2 && std::abs(good[1] - good[0]) > tol.caustic_root) {
        const PolyT<long double> cl = quartic_t<long double>(L, sigma);
        for (double& u : good) u = polish_real_root(cl, u);
    }
    std::sort(good.begin(), good.end());
    if (merged_pair) {
        out.caustic = true;
        return out;
    }
    if (good.size() != 2) {
        // 1 or 3 realizable roots only happen on the edge within tolerance
        out.caustic = !good.empty();
        return out;
    }
    if (std::abs(good[1] - good[0]) <= tol.caustic_root) {
        out.caustic = true;
        return out;
    }
    std::array<RootPair, 2> rp;
    std::array<double, 2> D{};
    for (int k = 0; k < 2; ++k) {
        rp[k].x = good[k] * sigma;
        rp[k].y = s - rp[k].x;
        D[k] = amplitude_denominator(gram_matrix(L, rp[k].x, rp[k].y) / sigma);
    }
    const double dtol = tol.amplitude;
    if (!(std::abs(D[0]) > dtol) || !(std::abs(D[1]) > dtol) || (D[0] > 0) == (D[1] > 0)) {
        out.caustic = true;
        return out;
    }
    if (D[0] < 0) std::swap(rp[0], rp[1]);
    rp[0].branch = 1;
    rp[1].branch = 2;
    out.roots = {rp[0], rp[1]};
    return out;
}

/// Realized vectors for one root. Indexed by Edge.
struct VectorConfig {
    std::array<Eigen::Vector3d, kEdges> v;

    const Eigen::Vector3d& operator[](Edge e) const { return v[e]; }
    Eigen::Vector3d& operator[](Edge e) { return v[e]; }

    /// J6 . (J12 x J13)
    double orientation() const { return v[E6].dot(v[E12].cross(v[E13])); }

    VectorConfig transformed(const Eigen::Matrix3d& R) const {
        VectorConfig c;
        for (int k = 0; k < kEdges; ++k) c.v[k] = R * v[k];
        return c;
    }
};

namespace geom_detail {

inline VectorConfig complete(const std::array<Eigen::Vector3d, 4>& J) {
    VectorConfig c;
    c[E1] = J[0];
    c[E2] = J[1];
    c[E3] = J[2];
    c[E4] = J[3];
    c[E6] = -(J[0] + J[1] + J[2] + J[3]);
    c[E12] = J[0] + J[1];
    c[E34] = J[2] + J[3];
    c[E13] = J[0] + J[2];
    c[E24] = J[1] + J[3];
    return c;
}

/// Reflection through the plane spanned by J12 and J6 when J6.(J12 x J13) > 0.
inline VectorConfig orient(VectorConfig c, double scale, const GeometryTolerances& tol) {
    const double V = c.orientation();
    if (!(std::abs(V) > tol.amplitude * scale * scale * scale)) throw DegenerateGeometry("J6.(J12 x J13) vanishes");
    if (V < 0) return c;
    Eigen::Vector3d n = c[E12].cross(c[E6]);
    const double nn = n.norm();
    if (!(nn > tol.collinear * c[E12].norm() * c[E6].norm())) throw DegenerateGeometry("J12 and J6 are collinear");
    n /= nn;
    for (auto& w : c.v) w -= 2.0 * w.dot(n) * n;
    return c;
}

}  // namespace geom_detail

/// Vectors from the rank-3 eigendecomposition of the full Gram matrix, oriented so that V < 0.
inline VectorConfig realize_vectors(const JLengths& L, const RootPair& r, const GeometryTolerances& tol = {}) {
    const double sigma = L.max() * L.max();
    Eigen::Matrix4d G = gram_matrix(L, r.x, r.y);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(G);
    if (es.info() != Eigen::Success) throw DegenerateGeometry("Gram eigendecomposition failed");
    if (es.eigenvalues()[0] < -1e-6 * sigma) throw DegenerateGeometry("Gram matrix is not positive semidefinite");
    // eigenvalues at roundoff level carry no geometry; their square roots would fake a third dimension
    std::array<double, 3> root;
    for (int k = 0; k < 3; ++k) {
        const double lam = es.eigenvalues()[k + 1];
        root[k] = lam > 1e-12 * sigma ? std::sqrt(lam) : 0.0;
    }
    std::array<Eigen::Vector3d, 4> J;
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 3; ++k) J[i][k] = es.eigenvectors()(i, k + 1) * root[k];
    return geom_detail::orient(geom_detail::complete(J), std::sqrt(sigma), tol);
}

/// Alternative construction: Cholesky of the leading 3x3 block for J1..J3, then J4 from J_i.J4 = G_i4.
inline VectorConfig realize_vectors_g3(const JLengths& L, const RootPair& r, const GeometryTolerances& tol = {}) {
    const double sigma = L.max() * L.max();
    Eigen::Matrix4d G = gram_matrix(L, r.x, r.y);
    Eigen::LLT<Eigen::Matrix3d> llt(G.topLeftCorner<3, 3>());
    if (llt.info() != Eigen::Success) throw DegenerateGeometry("leading 3x3 Gram block is not positive definite");
    Eigen::Matrix3d Lc = llt.matrixL();
    std::array<Eigen::Vector3d, 4> J;
    for (int i = 0; i < 3; ++i) J[i] = Lc.row(i).transpose();
    J[3] = Lc.triangularView<Eigen::Lower>().solve(G.block<3, 1>(0, 3));
    return geom_detail::orient(geom_detail::complete(J), std::sqrt(sigma), tol);
}

struct BranchGeometry {
    RootPair root;
    double V123 = 0, V432 = 0, V214 = 0, V341 = 0, V = 0;
    double D = 0;  // V123 V432 - V214 V341
    std::array<double, kEdges> psi{};
    double phi12 = 0, phi13 = 0, theta = 0;
    double S = 0;
};

namespace geom_detail {

struct Triangle {
    std::array<Edge, 3> e;
    std::array<int, 3> s;
};

/// Consistent orientation of the six triangles as one closed surface.
inline constexpr Triangle kTriangles[6] = {
    {{E1, E2, E12}, {+1, +1, -1}},
    {{E3, E4, E34}, {+1, +1, -1}},
    {{E12, E34, E6}, {+1, +1, +1}},
    {{E1, E3, E13}, {-1, -1, +1}},
    {{E2, E4, E24}, {-1, -1, +1}},
    {{E13, E24, E6}, {-1, -1, -1}},
};

inline double safe_acos(double c) { return std::acos(std::clamp(c, -1.0, 1.0)); }

}  // namespace geom_detail

/// Triple products, dihedral angles and action for one branch. The configuration must have V < 0.
/// psi_r = atan2((nB x nA).J_r/|J_r|, nA.nB) where triangle A traverses J_r forwards and B backwards;
/// branch 1 keeps (-pi, pi], branch 2 maps to [0, 2pi). S = sum_r J_r psi_r.
inline BranchGeometry branch_geometry(const VectorConfig& c, const RootPair& r, const GeometryTolerances& tol = {}) {
    using namespace geom_detail;
    BranchGeometry g;
    g.root = r;
    auto triple = [&](Edge a, Edge b, Edge d) { return c[a].dot(c[b].cross(c[d])); };
    g.V123 = triple(E1, E2, E3);
    g.V432 = triple(E4, E3, E2);
    g.V214 = triple(E2, E1, E4);
    g.V341 = triple(E3, E4, E1);
    g.V = c.orientation();
    g.D = g.V123 * g.V432 - g.V214 * g.V341;

    std::array<Eigen::Vector3d, 6> n;
    for (int t = 0; t < 6; ++t) {
        const auto& T = kTriangles[t];
        Eigen::Vector3d a = T.s[0] * c[T.e[0]], b = T.s[1] * c[T.e[1]];
        Eigen::Vector3d m = a.cross(b);
        const double mn = m.norm();
        if (!(mn > tol.collinear * a.norm() * b.norm())) throw DegenerateGeometry("flat triangle");
        n[t] = m / mn;
    }
    for (int e = 0; e < kEdges; ++e) {
        int A = -1, B = -1;
        for (int t = 0; t < 6; ++t)
            for (int k = 0; k < 3; ++k)
                if (kTriangles[t].e[k] == e) (kTriangles[t].s[k] > 0 ? A : B) = t;
        const Eigen::Vector3d u = c.v[e].normalized();
        double psi = std::atan2(n[B].cross(n[A]).dot(u), n[A].dot(n[B]));
        if (r.branch == 2 && psi < 0) psi += 2.0 * std::numbers::pi;
        g.psi[e] = psi;
        g.S += c.v[e].norm() * psi;
    }

    auto interior = [&](Edge axis, Edge p, Edge q) {
        Eigen::Vector3d a = c[axis].cross(c[p]), b = c[axis].cross(c[q]);
        const double na = a.norm(), nb = b.norm();
        if (!(na > tol.collinear * c[axis].norm() * c[p].norm()) || !(nb > tol.collinear * c[axis].norm() * c[q].norm()))
            throw DegenerateGeometry("collinear edge pair");
        return std::numbers::pi - safe_acos(a.dot(b) / (na * nb));
    };
    g.phi12 = interior(E12, E13, E6);
    g.phi13 = interior(E13, E12, E6);
    g.theta = safe_acos(c[E12].dot(c[E13]) / (c[E12].norm() * c[E13].norm()));
    return g;
}

}  // namespace w3nj
