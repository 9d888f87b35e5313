#pragma once

#include <compare>
#include <cstdlib>
#include <ostream>
#include <string>

namespace w3nj {

/// Angular momentum quantum number stored as twice its value.
struct HalfInt {
    int twice = 0;

    static constexpr HalfInt from_twice(int t) { return HalfInt{t}; }
    static constexpr HalfInt from_int(int j) { return HalfInt{2 * j}; }

    constexpr bool is_integer() const { return (twice & 1) == 0; }
    constexpr double value() const { return 0.5 * twice; }
    /// 2j + 1
    constexpr int dim() const { return twice + 1; }

    constexpr HalfInt operator-() const { return HalfInt{-twice}; }
    constexpr HalfInt operator+(HalfInt o) const { return HalfInt{twice + o.twice}; }
    constexpr HalfInt operator-(HalfInt o) const { return HalfInt{twice - o.twice}; }
    constexpr HalfInt& operator+=(HalfInt o) { twice += o.twice; return *this; }
    constexpr HalfInt& operator-=(HalfInt o) { twice -= o.twice; return *this; }

    constexpr auto operator<=>(const HalfInt&) const = default;

    /// "3", "5/2", "-1/2"
    std::string str() const {
        if (is_integer()) return std::to_string(twice / 2);
        return std::to_string(twice) + "/2";
    }
    /// "3", "2.5", "-0.5"
    std::string decimal() const {
        if (is_integer()) return std::to_string(twice / 2);
        std::string s = twice < 0 ? "-" : "";
        return s + std::to_string(std::abs(twice) / 2) + ".5";
    }
};

inline std::ostream& operator<<(std::ostream& os, HalfInt h) { return os << h.str(); }

namespace literals {
constexpr HalfInt operator""_j(unsigned long long j) { return HalfInt{static_cast<int>(2 * j)}; }
constexpr HalfInt operator""_tw(unsigned long long t) { return HalfInt{static_cast<int>(t)}; }
}  // namespace literals

constexpr bool triangle_ok_twice(int a, int b, int c) {
    if (a < 0 || b < 0 || c < 0) return false;
    if (((a + b + c) & 1) != 0) return false;
    int d = a - b;
    if (d < 0) d = -d;
    return d <= c && c <= a + b;
}

/// |a-b| <= c <= a+b with a+b+c integral.
constexpr bool triangle_ok(HalfInt a, HalfInt b, HalfInt c) {
    return triangle_ok_twice(a.twice, b.twice, c.twice);
}

}  // namespace w3nj
