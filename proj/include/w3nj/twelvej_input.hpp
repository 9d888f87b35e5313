#pragma once

#include "w3nj/half_int.hpp"

#include <array>
#include <string>

namespace w3nj {

/// 9j layout {a b c; d e f; g h i}, row-major.
using NineJInput = std::array<HalfInt, 9>;

inline NineJInput ninej_from_twice(const std::array<int, 9>& t) {
    NineJInput n;
    for (int k = 0; k < 9; ++k) n[k] = HalfInt::from_twice(t[k]);
    return n;
}

/// The six triads of a 9j: three rows and three columns.
inline bool ninej_triangular(const NineJInput& n) {
    for (int r = 0; r < 3; ++r)
        if (!triangle_ok(n[3 * r], n[3 * r + 1], n[3 * r + 2])) return false;
    for (int c = 0; c < 3; ++c)
        if (!triangle_ok(n[c], n[c + 3], n[c + 6])) return false;
    return true;
}

inline NineJInput ninej_transpose(const NineJInput& n) {
    return {n[0], n[3], n[6], n[1], n[4], n[7], n[2], n[5], n[8]};
}

/// 12j of the first kind in the layout
///   { j1  j2  j12  j125 }
///   { j3  j4  j34  j135 }
///   { j13 j24 s5   j6   }
/// with s5 the (possibly small) spin coupled to j12 and j13.
struct TwelveJInput {
    HalfInt j1, j2, j12, j125, j3, j4, j34, j135, j13, j24, s5, j6;

    /// Twice-values in layout order j1 j2 j12 j125 j3 j4 j34 j135 j13 j24 s5 j6.
    static TwelveJInput from_twice(const std::array<int, 12>& t) {
        TwelveJInput r;
        HalfInt* f[12] = {&r.j1, &r.j2, &r.j12, &r.j125, &r.j3, &r.j4, &r.j34, &r.j135, &r.j13, &r.j24, &r.s5, &r.j6};
        for (int k = 0; k < 12; ++k) *f[k] = HalfInt::from_twice(t[k]);
        return r;
    }
    std::array<int, 12> twice() const {
        return {j1.twice, j2.twice, j12.twice, j125.twice, j3.twice, j4.twice,
                j34.twice, j135.twice, j13.twice, j24.twice, s5.twice, j6.twice};
    }

    std::array<std::array<HalfInt, 3>, 8> triads() const {
        return {{{j1, j2, j12}, {j3, j4, j34}, {j1, j3, j13}, {j2, j4, j24},
                 {j12, s5, j125}, {j13, s5, j135}, {j125, j34, j6}, {j135, j24, j6}}};
    }

    bool is_triangular() const {
        for (const auto& t : triads())
            if (!triangle_ok(t[0], t[1], t[2])) return false;
        return true;
    }

    bool operator==(const TwelveJInput&) const = default;

    std::string str() const {
        return "{" + j1.str() + " " + j2.str() + " " + j12.str() + " " + j125.str() + "; " +
               j3.str() + " " + j4.str() + " " + j34.str() + " " + j135.str() + "; " +
               j13.str() + " " + j24.str() + " " + s5.str() + " " + j6.str() + "}";
    }
};

/// Ring form of the 12j with triads
///   (J_k, J_{k+1}, L_k), (K_k, K_{k+1}, L_k)  for k = 1..3
///   (J1, K4, L4), (K1, J4, L4)                  closing the strip with a twist.
/// Layout map: J = (j2 j12 j125 j34), K = (j3 j13 j135 j24), L = (j1 s5 j6 j4).
struct Ring12 {
    std::array<int, 4> J{}, K{}, L{};

    bool operator==(const Ring12&) const = default;
};

inline TwelveJInput from_ring(const Ring12& r) {
    return TwelveJInput::from_twice({r.L[0], r.J[0], r.J[1], r.J[2], r.K[0], r.L[3],
                                     r.J[3], r.K[2], r.K[1], r.K[3], r.L[1], r.L[2]});
}

inline Ring12 to_ring(const TwelveJInput& t) {
    Ring12 r;
    r.J = {t.j2.twice, t.j12.twice, t.j125.twice, t.j34.twice};
    r.K = {t.j3.twice, t.j13.twice, t.j135.twice, t.j24.twice};
    r.L = {t.j1.twice, t.s5.twice, t.j6.twice, t.j4.twice};
    return r;
}

/// Slide of the strip by one column.
inline TwelveJInput mobius_slide(const TwelveJInput& t) {
    Ring12 r = to_ring(t), s;
    s.J = {r.J[1], r.J[2], r.J[3], r.K[0]};
    s.L = {r.L[1], r.L[2], r.L[3], r.L[0]};
    s.K = {r.K[1], r.K[2], r.K[3], r.J[0]};
    return from_ring(s);
}

/// Reflection of the strip about its centre.
inline TwelveJInput mobius_reflect(const TwelveJInput& t) {
    Ring12 r = to_ring(t), s;
    s.J = {r.J[3], r.J[2], r.J[1], r.J[0]};
    s.L = {r.L[2], r.L[1], r.L[0], r.L[3]};
    s.K = {r.K[3], r.K[2], r.K[1], r.K[0]};
    return from_ring(s);
}

}  // namespace w3nj
