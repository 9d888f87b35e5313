#pragma once

#include "w3nj/oracle.hpp"
#include "w3nj/racah.hpp"

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace w3nj {

struct CheckResult {
    std::uint64_t checked = 0;
    std::uint64_t failures = 0;
    std::string first_failure;

    bool ok() const { return checked > 0 && failures == 0; }
    void fail(const std::string& what) {
        if (failures++ == 0) first_failure = what;
    }
};

/// Visits every triangular 12j with all twice-labels in [0, max_twice].
inline void for_each_triangular_12j(int max_twice, const std::function<void(const TwelveJInput&)>& fn) {
    std::array<int, 12> t{};
    int &j1 = t[0], &j2 = t[1], &j12 = t[2], &j125 = t[3], &j3 = t[4], &j4 = t[5], &j34 = t[6], &j135 = t[7],
        &j13 = t[8], &j24 = t[9], &s = t[10], &j6 = t[11];
    const int M = max_twice;
    for (j1 = 0; j1 <= M; ++j1)
    for (j2 = 0; j2 <= M; ++j2)
    for (j3 = 0; j3 <= M; ++j3)
    for (j4 = 0; j4 <= M; ++j4)
    for (s = 0; s <= M; ++s)
    for (j12 = 0; j12 <= M; ++j12) {
        if (!triangle_ok_twice(j1, j2, j12)) continue;
        for (j13 = 0; j13 <= M; ++j13) {
            if (!triangle_ok_twice(j1, j3, j13)) continue;
            for (j34 = 0; j34 <= M; ++j34) {
                if (!triangle_ok_twice(j3, j4, j34)) continue;
                for (j24 = 0; j24 <= M; ++j24) {
                    if (!triangle_ok_twice(j2, j4, j24)) continue;
                    for (j125 = 0; j125 <= M; ++j125) {
                        if (!triangle_ok_twice(j12, s, j125)) continue;
                        for (j135 = 0; j135 <= M; ++j135) {
                            if (!triangle_ok_twice(j13, s, j135)) continue;
                            for (j6 = 0; j6 <= M; ++j6)
                                if (triangle_ok_twice(j125, j34, j6) && triangle_ok_twice(j135, j24, j6))
                                    fn(TwelveJInput::from_twice(t));
                        }
                    }
                }
            }
        }
    }
}

/// Random triangular 12j with twice-labels in [0, max_twice].
inline TwelveJInput random_triangular_12j(std::mt19937_64& rng, int max_twice) {
    std::uniform_int_distribution<int> d(0, max_twice);
    for (;;) {
        std::array<int, 12> t{};
        for (int& v : t) v = d(rng);
        TwelveJInput in = TwelveJInput::from_twice(t);
        if (in.is_triangular()) return in;
    }
}

/// Exact equality of the single-sum 12j and the brute-force contraction.
inline CheckResult check_oracle_equivalence(const std::vector<TwelveJInput>& inputs) {
    CheckResult r;
    for (const auto& in : inputs) {
        ++r.checked;
        if (!(wigner12j_first(in) == oracle_12j_bruteforce(in))) r.fail(in.str());
    }
    return r;
}

inline CheckResult check_oracle_equivalence_all(int max_twice) {
    CheckResult r;
    for_each_triangular_12j(max_twice, [&r](const TwelveJInput& in) {
        ++r.checked;
        if (!(wigner12j_first(in) == oracle_12j_bruteforce(in))) r.fail(in.str());
    });
    return r;
}

inline CheckResult check_mobius(std::size_t samples, int max_twice, std::uint64_t seed) {
    CheckResult r;
    std::mt19937_64 rng(seed);
    for (std::size_t k = 0; k < samples; ++k) {
        TwelveJInput in = random_triangular_12j(rng, max_twice);
        const SurdSum v = wigner12j_first(in);
        ++r.checked;
        if (!(wigner12j_first(mobius_slide(in)) == v)) r.fail("slide " + in.str());
        if (!(wigner12j_first(mobius_reflect(in)) == v)) r.fail("reflect " + in.str());
    }
    return r;
}

/// Σ_x (2x+1){a b x; c d p}{a b x; c d q} = δ_pq/(2p+1) for all twice-labels <= max_twice.
inline CheckResult check_sixj_orthogonality(int max_twice) {
    CheckResult r;
    const int M = max_twice;
    for (int a = 0; a <= M; ++a)
    for (int b = 0; b <= M; ++b)
    for (int c = 0; c <= M; ++c)
    for (int d = 0; d <= M; ++d)
    for (int p = 0; p <= 2 * M; ++p) {
        if (!triangle_ok_twice(a, d, p) || !triangle_ok_twice(c, b, p)) continue;
        for (int q = p & 1; q <= 2 * M; q += 2) {
            if (!triangle_ok_twice(a, d, q) || !triangle_ok_twice(c, b, q)) continue;
            SurdSum sum;
            for (int x = 0; x <= 2 * M; ++x) {
                if (!triangle_ok_twice(a, b, x) || !triangle_ok_twice(c, d, x)) continue;
                SurdSum t = wigner6j_twice({a, b, x, c, d, p}) * wigner6j_twice({a, b, x, c, d, q});
                t *= mpq_class(x + 1);
                sum += t;
            }
            const SurdSum expect = p == q ? SurdSum(mpq_class(1, p + 1)) : SurdSum();
            ++r.checked;
            if (!(sum == expect))
                r.fail("6j orthogonality a=" + std::to_string(a) + " b=" + std::to_string(b) + " c=" +
                       std::to_string(c) + " d=" + std::to_string(d) + " p=" + std::to_string(p) +
                       " q=" + std::to_string(q) + " (twice)");
        }
    }
    return r;
}

/// Transpose invariance and the column-swap sign (-1)^{sum of all nine} over every triangular 9j.
inline CheckResult check_ninej_symmetries(int max_twice) {
    CheckResult r;
    std::array<int, 9> t{};
    const int M = max_twice;
    std::function<void(int)> rec = [&](int k) {
        if (k == 9) {
            NineJInput n = ninej_from_twice(t);
            if (!ninej_triangular(n)) return;
            const SurdSum v = wigner9j(n);
            int total = 0;
            for (int x : t) total += x;
            const SurdSum swapped = wigner9j({n[1], n[0], n[2], n[4], n[3], n[5], n[7], n[6], n[8]});
            const SurdSum expect_swap = ((total / 2) & 1) ? -v : v;
            ++r.checked;
            if (!(wigner9j(ninej_transpose(n)) == v)) r.fail("9j transpose");
            if (!(swapped == expect_swap)) r.fail("9j column swap");
            return;
        }
        for (int v = 0; v <= M; ++v) {
            t[k] = v;
            // prune completed rows early
            if (k % 3 == 2 && !triangle_ok_twice(t[k - 2], t[k - 1], t[k])) continue;
            if (k >= 6 && !triangle_ok_twice(t[k - 6], t[k - 3], t[k])) continue;
            rec(k + 1);
        }
    };
    rec(0);
    return r;
}

}  // namespace w3nj
