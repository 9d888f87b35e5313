#include "w3nj/asymptotics.hpp"
#include "w3nj/geometry.hpp"

#include <gtest/gtest.h>
#include <gmpxx.h>

#include <numbers>
#include <random>

using namespace w3nj;

namespace {

TwelveJInput case1(int twice_j6) {
    return TwelveJInput::from_twice({51, 59, 42, 44, 55, 53, 54, 52, 54, 50, 2, twice_j6});
}

double cofactor_det(const std::vector<std::vector<double>>& m) {
    const std::size_t n = m.size();
    if (n == 1) return m[0][0];
    double det = 0;
    for (std::size_t c = 0; c < n; ++c) {
        std::vector<std::vector<double>> sub;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<double> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != c) row.push_back(m[r][k]);
            sub.push_back(row);
        }
        det += ((c & 1) ? -1.0 : 1.0) * m[0][c] * cofactor_det(sub);
    }
    return det;
}

double wrap(double a) {
    a = std::fmod(a, 2 * std::numbers::pi);
    if (a > std::numbers::pi) a -= 2 * std::numbers::pi;
    if (a <= -std::numbers::pi) a += 2 * std::numbers::pi;
    return a;
}

Eigen::Matrix3d random_rotation(std::mt19937_64& rng) {
    std::normal_distribution<double> n(0, 1);
    Eigen::Quaterniond q(n(rng), n(rng), n(rng), n(rng));
    q.normalize();
    return q.toRotationMatrix();
}

struct Realized {
    JLengths L;
    BranchSolution sol;
    std::array<VectorConfig, 2> cfg;
    std::array<BranchGeometry, 2> geo;
};

Realized realize(const JLengths& L) {
    Realized r;
    r.L = L;
    r.sol = solve_branches(L);
    if (r.sol.roots.size() != 2) throw std::runtime_error("expected two roots");
    for (int k = 0; k < 2; ++k) {
        r.cfg[k] = realize_vectors(L, r.sol.roots[k]);
        r.geo[k] = branch_geometry(r.cfg[k], r.sol.roots[k]);
    }
    return r;
}

void expect_same_geometry(const BranchGeometry& a, const BranchGeometry& b, double scale, double tol) {
    const double s3 = scale * scale * scale;
    EXPECT_NEAR(a.V123, b.V123, tol * s3);
    EXPECT_NEAR(a.V432, b.V432, tol * s3);
    EXPECT_NEAR(a.V214, b.V214, tol * s3);
    EXPECT_NEAR(a.V341, b.V341, tol * s3);
    EXPECT_NEAR(a.V, b.V, tol * s3);
    EXPECT_NEAR(a.D, b.D, tol * s3 * s3);
    for (int e = 0; e < kEdges; ++e) EXPECT_NEAR(a.psi[e], b.psi[e], tol) << kEdgeNames[e];
    EXPECT_NEAR(a.phi12, b.phi12, tol);
    EXPECT_NEAR(a.phi13, b.phi13, tol);
    EXPECT_NEAR(a.theta, b.theta, tol);
    EXPECT_NEAR(a.S, b.S, tol * scale);
}

}  // namespace

TEST(Quantize, CaseOneLabels) {
    JLengths L = quantize_lengths(case1(20));
    EXPECT_DOUBLE_EQ(L[E1], 26.0);
    EXPECT_DOUBLE_EQ(L[E12], 21.5);
    EXPECT_DOUBLE_EQ(L[E6], 10.5);
    JLengths Z = quantize_lengths(TwelveJInput::from_twice({0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0}));
    for (double v : Z.J) EXPECT_DOUBLE_EQ(v, 0.5);
}

TEST(Quantize, NineJLayout) {
    JLengths L = quantize_lengths(ninej_from_twice({1, 3, 5, 7, 9, 11, 13, 15, 17}));
    EXPECT_DOUBLE_EQ(L[E1], 1.0);
    EXPECT_DOUBLE_EQ(L[E2], 2.0);
    EXPECT_DOUBLE_EQ(L[E12], 3.0);
    EXPECT_DOUBLE_EQ(L[E3], 4.0);
    EXPECT_DOUBLE_EQ(L[E4], 5.0);
    EXPECT_DOUBLE_EQ(L[E34], 6.0);
    EXPECT_DOUBLE_EQ(L[E13], 7.0);
    EXPECT_DOUBLE_EQ(L[E24], 8.0);
    EXPECT_DOUBLE_EQ(L[E6], 9.0);
}

TEST(XYSum, Values) {
    JLengths ones;
    ones.J.fill(1.0);
    EXPECT_DOUBLE_EQ(xy_sum(ones), 0.5);

    // exact rational evaluation with J = (2j+1)/2
    const TwelveJInput in = case1(20);
    auto q = [](HalfInt j) { return mpq_class(j.twice + 1, 2); };
    mpq_class s = q(in.j1) * q(in.j1) + q(in.j2) * q(in.j2) + q(in.j3) * q(in.j3) + q(in.j4) * q(in.j4) +
                  q(in.j6) * q(in.j6) - q(in.j12) * q(in.j12) - q(in.j34) * q(in.j34) - q(in.j13) * q(in.j13) -
                  q(in.j24) * q(in.j24);
    s /= 2;
    EXPECT_DOUBLE_EQ(xy_sum(quantize_lengths(in)), s.get_d());
    EXPECT_EQ(s, mpq_class(2297, 8));

    JLengths L = quantize_lengths(in);
    EXPECT_NEAR(xy_sum(L.scaled(3.0)), 9.0 * xy_sum(L), 1e-9);
}

TEST(GramDet, MatchesCofactorExpansion) {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(-5, 5);
    for (int it = 0; it < 50; ++it) {
        JLengths L;
        for (double& v : L.J) v = 1 + std::abs(u(rng));
        const double x = u(rng), y = u(rng);
        Eigen::Matrix4d G = gram_matrix(L, x, y);
        std::vector<std::vector<double>> m(4, std::vector<double>(4));
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) m[i][j] = G(i, j);
        const double ref = cofactor_det(m);
        EXPECT_NEAR(gram_det(L, x, y), ref, 1e-9 * std::max(1.0, std::abs(ref)));
        EXPECT_TRUE(G.isApprox(G.transpose()));
    }
}

TEST(GramDet, FixedEntriesFromLengths) {
    JLengths L = quantize_lengths(case1(30));
    Eigen::Matrix4d G = gram_matrix(L, 1.0, 2.0);
    EXPECT_DOUBLE_EQ(G(0, 0), L[E1] * L[E1]);
    EXPECT_DOUBLE_EQ(G(0, 1), 0.5 * (L[E12] * L[E12] - L[E1] * L[E1] - L[E2] * L[E2]));
    EXPECT_DOUBLE_EQ(G(2, 3), 0.5 * (L[E34] * L[E34] - L[E3] * L[E3] - L[E4] * L[E4]));
    EXPECT_DOUBLE_EQ(G(0, 2), 0.5 * (L[E13] * L[E13] - L[E1] * L[E1] - L[E3] * L[E3]));
    EXPECT_DOUBLE_EQ(G(1, 3), 0.5 * (L[E24] * L[E24] - L[E2] * L[E2] - L[E4] * L[E4]));
    EXPECT_DOUBLE_EQ(G(0, 3), 1.0);
    EXPECT_DOUBLE_EQ(G(1, 2), 2.0);
}

TEST(SolveBranches, InteriorHasTwoRealizableRoots) {
    for (int twice = 12; twice <= 96; twice += 2) {
        JLengths L = quantize_lengths(case1(twice));
        BranchSolution sol = solve_branches(L);
        ASSERT_EQ(sol.roots.size(), 2u) << twice;
        EXPECT_FALSE(sol.caustic);
        const double sigma = L.max() * L.max();
        for (const auto& r : sol.roots) {
            EXPECT_NEAR(r.x + r.y, xy_sum(L), 1e-9 * sigma);
            EXPECT_LE(std::abs(gram_det(L, r.x, r.y)), 1e-8 * std::pow(L.max(), 8));
            Eigen::Matrix4d G = gram_matrix(L, r.x, r.y);
            std::vector<std::vector<double>> m(4, std::vector<double>(4));
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) m[i][j] = G(i, j);
            EXPECT_LE(std::abs(cofactor_det(m)), 1e-8 * std::pow(L.max(), 8));
        }
        EXPECT_EQ(sol.roots[0].branch, 1);
        EXPECT_EQ(sol.roots[1].branch, 2);
        EXPECT_GT(std::abs(sol.roots[0].x - sol.roots[1].x), 1e-6 * sigma);
        // perturbing a root leaves the zero set
        EXPECT_GT(std::abs(gram_det(L, sol.roots[0].x + 1, sol.roots[0].y - 1)), 1e-6 * std::pow(L.max(), 8));
    }
}

TEST(SolveBranches, FarOutsideIsForbidden) {
    JLengths L = quantize_lengths(case1(0));
    EXPECT_TRUE(solve_branches(L).roots.empty());
    L[E6] = 500;
    EXPECT_TRUE(solve_branches(L).roots.empty());
    EXPECT_FALSE(solve_branches(L).caustic);
}

TEST(RealizeVectors, ReproducesGramData) {
    for (int twice : {12, 20, 38, 60, 80, 96}) {
        JLengths L = quantize_lengths(case1(twice));
        Realized r = realize(L);
        for (int k = 0; k < 2; ++k) {
            const VectorConfig& c = r.cfg[k];
            for (int e = 0; e < kEdges; ++e) EXPECT_NEAR(c.v[e].norm(), L.J[e], 1e-10 * L.J[e]);
            Eigen::Vector3d closure = c[E1] + c[E2] + c[E3] + c[E4] + c[E6];
            EXPECT_LE(closure.norm(), 1e-10 * L.max());
            Eigen::Matrix4d G = gram_matrix(L, r.sol.roots[k].x, r.sol.roots[k].y);
            const Edge four[4] = {E1, E2, E3, E4};
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j)
                    EXPECT_NEAR(c[four[i]].dot(c[four[j]]), G(i, j), 1e-9 * L.max() * L.max());
            EXPECT_LT(c.orientation(), 0);
            EXPECT_TRUE((c[E12] - c[E1] - c[E2]).norm() < 1e-12 * L.max());
            EXPECT_TRUE((c[E24] - c[E2] - c[E4]).norm() < 1e-12 * L.max());
        }
    }
}

TEST(BranchGeometry, AlternativeFactorizationAgrees) {
    // J1, J2, J3 are far from coplanar here, so the Cholesky route is well conditioned
    for (int twice : {30, 60, 80}) {
        JLengths L = quantize_lengths(case1(twice));
        Realized r = realize(L);
        for (int k = 0; k < 2; ++k) {
            VectorConfig alt = realize_vectors_g3(L, r.sol.roots[k]);
            expect_same_geometry(branch_geometry(alt, r.sol.roots[k]), r.geo[k], L.max(), 1e-8);
        }
    }
}

TEST(BranchGeometry, BranchConventions) {
    for (int twice = 12; twice <= 96; twice += 4) {
        Realized r = realize(quantize_lengths(case1(twice)));
        EXPECT_GT(r.geo[0].D, 0);
        EXPECT_LT(r.geo[1].D, 0);
        for (int e = 0; e < kEdges; ++e) {
            EXPECT_GT(r.geo[0].psi[e], -std::numbers::pi);
            EXPECT_LE(r.geo[0].psi[e], std::numbers::pi);
            EXPECT_GE(r.geo[1].psi[e], 0);
            EXPECT_LT(r.geo[1].psi[e], 2 * std::numbers::pi);
        }
        for (const auto& g : r.geo) {
            EXPECT_GE(g.theta, 0);
            EXPECT_LE(g.theta, std::numbers::pi);
            EXPECT_GE(g.phi12, 0);
            EXPECT_LE(g.phi12, std::numbers::pi);
            EXPECT_GE(g.phi13, 0);
            EXPECT_LE(g.phi13, std::numbers::pi);
            EXPECT_NEAR(g.D, g.V123 * g.V432 - g.V214 * g.V341, 1e-12 * std::abs(g.D) + 1e-6);
        }
    }
}

TEST(BranchGeometry, ThetaTwoWays) {
    JLengths L = quantize_lengths(case1(40));
    Realized r = realize(L);
    for (int k = 0; k < 2; ++k) {
        Eigen::Matrix4d G = gram_matrix(L, r.sol.roots[k].x, r.sol.roots[k].y);
        // J12.J13 = J1.J1 + J1.J3 + J2.J1 + J2.J3
        const double d = G(0, 0) + G(0, 2) + G(1, 0) + G(1, 2);
        EXPECT_NEAR(std::acos(d / (L[E12] * L[E13])), r.geo[k].theta, 1e-10);
    }
}

TEST(BranchGeometry, TimeReversal) {
    const TwelveJInput in = case1(50);
    JLengths L = quantize_lengths(in);
    Realized r = realize(L);
    double sum_j = 0;
    for (HalfInt j : {in.j1, in.j2, in.j3, in.j4, in.j6, in.j12, in.j34, in.j13, in.j24}) sum_j += j.value();
    std::array<double, 2> S_rev{};
    for (int k = 0; k < 2; ++k) {
        VectorConfig rev = r.cfg[k].transformed(-Eigen::Matrix3d::Identity());
        EXPECT_GT(rev.orientation(), 0);
        S_rev[k] = branch_geometry(rev, r.sol.roots[k]).S;
    }
    EXPECT_NEAR(wrap(S_rev[0] + r.geo[0].S), 0, 1e-9);
    EXPECT_NEAR(wrap(S_rev[1] - (-r.geo[1].S + 2 * std::numbers::pi * sum_j + 9 * std::numbers::pi)), 0, 1e-9);
}

TEST(BranchGeometry, RotationInvariant) {
    std::mt19937_64 rng(4);
    JLengths L = quantize_lengths(case1(44));
    Realized r = realize(L);
    for (int it = 0; it < 20; ++it) {
        Eigen::Matrix3d R = random_rotation(rng);
        for (int k = 0; k < 2; ++k)
            expect_same_geometry(branch_geometry(r.cfg[k].transformed(R), r.sol.roots[k]), r.geo[k], L.max(), 1e-9);
    }
}

TEST(BranchGeometry, ScalingHomogeneity) {
    JLengths L = quantize_lengths(case1(44));
    Realized a = realize(L), b = realize(L.scaled(2.5));
    for (int k = 0; k < 2; ++k) {
        const double l3 = 2.5 * 2.5 * 2.5;
        EXPECT_NEAR(b.geo[k].V123, l3 * a.geo[k].V123, 1e-9 * std::abs(l3 * a.geo[k].V123));
        EXPECT_NEAR(b.geo[k].V, l3 * a.geo[k].V, 1e-9 * std::abs(l3 * a.geo[k].V));
        EXPECT_NEAR(b.geo[k].S, 2.5 * a.geo[k].S, 1e-9 * std::abs(2.5 * a.geo[k].S));
        for (int e = 0; e < kEdges; ++e) EXPECT_NEAR(b.geo[k].psi[e], a.geo[k].psi[e], 1e-9);
        EXPECT_NEAR(b.geo[k].theta, a.geo[k].theta, 1e-9);
        EXPECT_NEAR(b.geo[k].phi12, a.geo[k].phi12, 1e-9);
    }
}

TEST(BranchGeometry, AmplitudeDenominatorVanishesTowardEdges) {
    std::vector<std::array<double, 2>> D;
    std::vector<int> allowed;
    for (int twice = 0; twice <= 120; twice += 2) {
        ClassicalGeometry g = classical_geometry(quantize_lengths(case1(twice)));
        if (g.region != Region::allowed) continue;
        allowed.push_back(twice);
        D.push_back({std::abs(g.branch[0].D), std::abs(g.branch[1].D)});
    }
    ASSERT_GE(D.size(), 6u);
    EXPECT_EQ(allowed.front(), 12);
    EXPECT_EQ(allowed.back(), 96);
    const std::size_t n = D.size();
    for (int k = 0; k < 2; ++k) {
        EXPECT_LT(D[0][k], D[1][k]);
        EXPECT_LT(D[1][k], D[2][k]);
        EXPECT_LT(D[n - 1][k], D[n - 2][k]);
        EXPECT_LT(D[n - 2][k], D[n - 3][k]);
        for (const auto& d : D) EXPECT_GT(d[k], 0);
    }
}

TEST(Degeneracy, FlatConfigurationThrows) {
    // all four vectors in one plane: J6.(J12 x J13) = 0
    std::array<Eigen::Vector3d, 4> J = {Eigen::Vector3d(3, 0, 0), Eigen::Vector3d(0, 2, 0), Eigen::Vector3d(-1, 1, 0),
                                        Eigen::Vector3d(1, -4, 0)};
    JLengths L;
    L[E1] = J[0].norm();
    L[E2] = J[1].norm();
    L[E3] = J[2].norm();
    L[E4] = J[3].norm();
    L[E6] = (J[0] + J[1] + J[2] + J[3]).norm();
    L[E12] = (J[0] + J[1]).norm();
    L[E34] = (J[2] + J[3]).norm();
    L[E13] = (J[0] + J[2]).norm();
    L[E24] = (J[1] + J[3]).norm();
    RootPair r{J[0].dot(J[3]), J[1].dot(J[2]), 1};
    EXPECT_THROW(realize_vectors(L, r), DegenerateGeometry);
    EXPECT_NE(classical_geometry(L).region, Region::allowed);
}

TEST(Caustic, RootsMergeAtBothEdges) {
    JLengths L = quantize_lengths(case1(60));
    auto classify = [&](double j6) {
        L[E6] = j6;
        return solve_branches(L);
    };
    for (auto [in, out] : {std::pair{6.2, 6.0}, std::pair{48.5, 49.0}}) {
        for (int it = 0; it < 60; ++it) {
            const double m = 0.5 * (in + out);
            BranchSolution s = classify(m);
            (s.roots.size() == 2 && !s.caustic ? in : out) = m;
        }
        EXPECT_LT(std::abs(in - out), 1e-13);
        const double dir = out > in ? 1.0 : -1.0;
        EXPECT_TRUE(classify(out).caustic);
        EXPECT_EQ(classify(out + dir * 1e-4).roots.size(), 0u);
        EXPECT_FALSE(classify(out + dir * 1e-4).caustic);

        // separation grows like the square root of the distance to the edge
        BranchSolution a = classify(in - dir * 1e-6), b = classify(in - dir * 1e-4);
        ASSERT_EQ(a.roots.size(), 2u);
        ASSERT_EQ(b.roots.size(), 2u);
        const double ra = std::abs(a.roots[1].x - a.roots[0].x), rb = std::abs(b.roots[1].x - b.roots[0].x);
        EXPECT_NEAR(rb / ra, 10.0, 0.1);
    }
}
