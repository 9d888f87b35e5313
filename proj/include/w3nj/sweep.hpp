#pragma once

#include "w3nj/asymptotics.hpp"
#include "w3nj/racah.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <cstring>
#include <exception>
#include <fstream>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace w3nj {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class SweepMode { exact, asym, compare };

inline std::string to_string(SweepMode m) {
    switch (m) {
        case SweepMode::exact: return "exact";
        case SweepMode::asym: return "asym";
        case SweepMode::compare: return "compare";
    }
    return "?";
}

struct SweepConfig {
    TwelveJInput base;  // j6 is overwritten per row
    int j6_min = 0, j6_max = 0, j6_step = 2;  // twice-values
    SweepMode mode = SweepMode::compare;
    ExactOptions exact{};
    AsymOptions asym{};
    std::string output;
    unsigned threads = 1;

    std::vector<HalfInt> j6_values() const {
        std::vector<HalfInt> v;
        for (int t = j6_min; t <= j6_max; t += j6_step) v.push_back(HalfInt::from_twice(t));
        return v;
    }
};

struct CompareRow {
    HalfInt j6;
    double exact = 0;
    std::optional<double> asym;
    std::optional<double> abs_error;
    Region status = Region::forbidden;

    bool operator==(const CompareRow&) const = default;
};

inline CompareRow evaluate_row(const SweepConfig& cfg, HalfInt j6) {
    CompareRow row;
    row.j6 = j6;
    TwelveJInput in = cfg.base;
    in.j6 = j6;
    row.exact = wigner12j_value(in, cfg.exact);
    if (!in.is_triangular()) return row;
    if (cfg.mode == SweepMode::exact) {
        row.status = classical_geometry(quantize_lengths(in), cfg.asym.tol).region;
        return row;
    }
    AsymptoticResult a = asym12j(in, cfg.asym);
    row.status = a.region;
    if (a.allowed) {
        row.asym = a.value;
        row.abs_error = std::abs(a.value - row.exact);
    }
    return row;
}

/// One row per j6 in ascending order; rows are computed by `cfg.threads` workers.
inline std::vector<CompareRow> run_sweep(const SweepConfig& cfg) {
    const std::vector<HalfInt> js = cfg.j6_values();
    std::vector<CompareRow> rows(js.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mu;
    auto work = [&] {
        for (std::size_t k; (k = next.fetch_add(1)) < js.size();) {
            try {
                rows[k] = evaluate_row(cfg, js[k]);
            } catch (...) {
                std::lock_guard lock(failure_mu);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    const unsigned n = std::max(1u, std::min<unsigned>(cfg.threads, static_cast<unsigned>(js.size())));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < n; ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
    return rows;
}

struct SweepSummary {
    std::size_t rows_used = 0;
    double max_abs_error = 0;
    double rms_error = 0;
    double rms_exact = 0;
    double ratio = 0;  // rms_error / rms_exact
};

/// Rows that enter the summary: allowed rows with an asymptotic value, minus the two rows at each end
/// of every contiguous allowed run. Runs of four rows or fewer are kept whole.
inline std::vector<std::size_t> summary_rows(const std::vector<CompareRow>& rows) {
    std::vector<std::size_t> used;
    std::size_t k = 0;
    while (k < rows.size()) {
        if (rows[k].status != Region::allowed || !rows[k].asym) {
            ++k;
            continue;
        }
        std::size_t end = k;
        while (end < rows.size() && rows[end].status == Region::allowed && rows[end].asym) ++end;
        const std::size_t n = end - k, trim = n > 4 ? 2 : 0;
        for (std::size_t i = k + trim; i < end - trim; ++i) used.push_back(i);
        k = end;
    }
    return used;
}

inline SweepSummary summarize(const std::vector<CompareRow>& rows) {
    SweepSummary s;
    double se = 0, sx = 0;
    for (std::size_t i : summary_rows(rows)) {
        const double e = *rows[i].abs_error;
        s.max_abs_error = std::max(s.max_abs_error, e);
        se += e * e;
        sx += rows[i].exact * rows[i].exact;
        ++s.rows_used;
    }
    if (s.rows_used == 0) return s;
    s.rms_error = std::sqrt(se / double(s.rows_used));
    s.rms_exact = std::sqrt(sx / double(s.rows_used));
    s.ratio = s.rms_exact > 0 ? s.rms_error / s.rms_exact : 0.0;
    return s;
}

/// Shortest decimal that reads back to the same double.
inline std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

inline std::string to_csv(const std::vector<CompareRow>& rows) {
    std::string out = "j6,exact,asym,abs_error,status\n";
    for (const auto& r : rows) {
        out += r.j6.decimal();
        out += ',';
        out += format_double(r.exact);
        out += ',';
        if (r.asym) out += format_double(*r.asym);
        out += ',';
        if (r.abs_error) out += format_double(*r.abs_error);
        out += ',';
        out += to_string(r.status);
        out += '\n';
    }
    return out;
}

namespace sweep_detail {

inline std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> f;
    std::string cur;
    for (char ch : line) {
        if (ch == sep) {
            f.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    f.push_back(cur);
    return f;
}

inline double parse_double(const std::string& s, std::size_t line) {
    double v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw std::invalid_argument("line " + std::to_string(line) + ": bad number '" + s + "'");
    return v;
}

inline HalfInt parse_j6(const std::string& s, std::size_t line) {
    std::string t = s;
    bool half = false;
    if (t.size() > 2 && t.compare(t.size() - 2, 2, ".5") == 0) {
        half = true;
        t.resize(t.size() - 2);
    }
    int v = 0;
    auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (res.ec != std::errc() || res.ptr != t.data() + t.size() || v < 0)
        throw std::invalid_argument("line " + std::to_string(line) + ": bad j6 '" + s + "'");
    return HalfInt::from_twice(2 * v + (half ? 1 : 0));
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(path + ": cannot open for writing: " + std::strerror(errno));
    out << text;
    out.flush();
    if (!out) throw IoError(path + ": write failed: " + std::strerror(errno));
}

}  // namespace sweep_detail

inline std::vector<CompareRow> parse_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "j6,exact,asym,abs_error,status")
        throw std::invalid_argument("line 1: unexpected CSV header");
    std::vector<CompareRow> rows;
    for (std::size_t n = 2; std::getline(in, line); ++n) {
        if (line.empty()) continue;
        auto f = sweep_detail::split(line, ',');
        if (f.size() != 5) throw std::invalid_argument("line " + std::to_string(n) + ": expected 5 fields");
        CompareRow r;
        r.j6 = sweep_detail::parse_j6(f[0], n);
        r.exact = sweep_detail::parse_double(f[1], n);
        if (!f[2].empty()) r.asym = sweep_detail::parse_double(f[2], n);
        if (!f[3].empty()) r.abs_error = sweep_detail::parse_double(f[3], n);
        if (f[4] == "allowed") r.status = Region::allowed;
        else if (f[4] == "caustic") r.status = Region::caustic;
        else if (f[4] == "forbidden") r.status = Region::forbidden;
        else throw std::invalid_argument("line " + std::to_string(n) + ": bad status '" + f[4] + "'");
        rows.push_back(r);
    }
    return rows;
}

inline void emit_csv(const std::vector<CompareRow>& rows, const std::string& path) {
    sweep_detail::write_file(path, to_csv(rows));
}

/// Gnuplot-style blocks "exact", "asym", "abs_error", each a two-column table, separated by two blank lines.
inline std::string to_plotdata(const std::vector<CompareRow>& rows) {
    std::string out = "# exact\n";
    for (const auto& r : rows) out += r.j6.decimal() + " " + format_double(r.exact) + "\n";
    out += "\n\n# asym\n";
    for (const auto& r : rows)
        if (r.asym) out += r.j6.decimal() + " " + format_double(*r.asym) + "\n";
    out += "\n\n# abs_error\n";
    for (const auto& r : rows)
        if (r.abs_error) out += r.j6.decimal() + " " + format_double(*r.abs_error) + "\n";
    return out;
}

inline void emit_plotdata(const std::vector<CompareRow>& rows, const std::string& path) {
    sweep_detail::write_file(path, to_plotdata(rows));
}

}  // namespace w3nj
