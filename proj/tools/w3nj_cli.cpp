#include "w3nj/config.hpp"
#include "w3nj/selftest.hpp"
#include "w3nj/w3nj.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

namespace {

enum Exit { kOk = 0, kConfig = 1, kDegenerate = 2, kIo = 3, kSelftestFailed = 4 };

struct Common {
    std::string config;
    std::string out;
    std::string plot;
    std::string cache;
    std::optional<int> precision_bits;
    std::optional<unsigned> threads;
    std::optional<std::string> backend;
};

w3nj::SweepConfig load(const Common& c) {
    w3nj::SweepConfig cfg = w3nj::load_sweep_config(c.config);
    if (c.precision_bits) {
        if (*c.precision_bits < 113) throw w3nj::ConfigError("--precision-bits must be at least 113");
        cfg.exact.precision_bits = *c.precision_bits;
    }
    if (c.threads) cfg.threads = std::max(1u, *c.threads);
    if (c.backend) cfg.exact.backend = *c.backend == "bigfloat" ? w3nj::ExactBackend::bigfloat : w3nj::ExactBackend::surd;
    if (!c.out.empty()) cfg.output = c.out;
    return cfg;
}

void load_cache(const Common& c) {
    if (c.cache.empty()) return;
    if (w3nj::SixJCache::global().load(c.cache))
        std::cerr << "loaded " << w3nj::SixJCache::global().size() << " cached 6j values from " << c.cache << "\n";
}

void save_cache(const Common& c) {
    if (c.cache.empty()) return;
    if (!w3nj::SixJCache::global().save(c.cache)) throw w3nj::IoError(c.cache + ": cannot write 6j cache");
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    w3nj::sweep_detail::write_file(path, text);
}

int cmd_exact(const Common& c) {
    w3nj::SweepConfig cfg = load(c);
    load_cache(c);
    w3nj::TwelveJInput in = cfg.base;
    std::string text = "12j " + in.str() + "\n";
    if (cfg.exact.backend == w3nj::ExactBackend::surd) {
        w3nj::SurdSum v = w3nj::wigner12j_first(in);
        text += "exact = " + v.str() + "\n";
        text += "value = " + v.to_bigfloat(cfg.exact.precision_bits).str(30) + "\n";
    } else {
        text += "value = " + w3nj::wigner12j_first_bf(in, cfg.exact.precision_bits).str(30) + "\n";
    }
    write_output(cfg.output, text);
    save_cache(c);
    return kOk;
}

int cmd_asym(const Common& c) {
    w3nj::SweepConfig cfg = load(c);
    w3nj::TwelveJInput in = cfg.base;
    w3nj::AsymptoticResult a = w3nj::asym12j(in, cfg.asym);
    std::string text = "12j " + in.str() + "\nregion = " + w3nj::to_string(a.region) + "\n";
    if (a.allowed) {
        text += "asym = " + w3nj::format_double(a.value) + "\n";
        text += "branch_terms = " + w3nj::format_double(a.branch_terms[0]) + " " +
                w3nj::format_double(a.branch_terms[1]) + "\n";
    }
    write_output(cfg.output, text);
    if (a.caustic_flag) {
        std::cerr << "caustic: the asymptotic formula is undefined at this point\n";
        return kDegenerate;
    }
    return kOk;
}

int cmd_sweep(const Common& c) {
    w3nj::SweepConfig cfg = load(c);
    load_cache(c);
    auto rows = w3nj::run_sweep(cfg);
    write_output(cfg.output, w3nj::to_csv(rows));
    if (!c.plot.empty()) w3nj::emit_plotdata(rows, c.plot);
    save_cache(c);
    if (cfg.mode != w3nj::SweepMode::exact) {
        auto s = w3nj::summarize(rows);
        std::fprintf(stderr, "rows_used=%zu max_abs_error=%s rms_error=%s rms_exact=%s ratio=%s\n", s.rows_used,
                     w3nj::format_double(s.max_abs_error).c_str(), w3nj::format_double(s.rms_error).c_str(),
                     w3nj::format_double(s.rms_exact).c_str(), w3nj::format_double(s.ratio).c_str());
    }
    return kOk;
}

int cmd_selftest(std::size_t samples) {
    bool all = true;
    auto report = [&all](const char* name, const w3nj::CheckResult& r) {
        std::printf("%-28s %s  checked=%llu failures=%llu%s%s\n", name, r.ok() ? "PASS" : "FAIL",
                    static_cast<unsigned long long>(r.checked), static_cast<unsigned long long>(r.failures),
                    r.failures ? "  first: " : "", r.first_failure.c_str());
        all = all && r.ok();
    };
    std::mt19937_64 rng(20240611);
    std::vector<w3nj::TwelveJInput> sample;
    for (std::size_t k = 0; k < samples; ++k) sample.push_back(w3nj::random_triangular_12j(rng, 4));
    report("oracle equivalence (2j<=4)", w3nj::check_oracle_equivalence(sample));
    report("mobius symmetries (2j<=8)", w3nj::check_mobius(samples, 8, 7));
    report("6j orthogonality (2j<=4)", w3nj::check_sixj_orthogonality(4));
    report("9j symmetries (2j<=2)", w3nj::check_ninej_symmetries(2));
    return all ? kOk : kSelftestFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact Wigner 6j/9j/12j symbols and small-spin 12j asymptotics"};
    app.require_subcommand(1);
    Common c;
    std::string backend;
    std::size_t samples = 200;

    auto add_common = [&](CLI::App* sub, bool with_out) {
        sub->add_option("--config", c.config, "JSON config (angular momenta as twice-integers)")->required();
        if (with_out) sub->add_option("--out", c.out, "output path ('-' for stdout)");
        sub->add_option_function<int>("--precision-bits", [&](const int& v) { c.precision_bits = v; },
                                      "binary precision of floating evaluation (>= 113)");
        sub->add_option_function<unsigned>("--threads", [&](const unsigned& v) { c.threads = v; }, "worker threads");
        sub->add_option_function<std::string>("--exact-backend", [&](const std::string& v) { c.backend = v; },
                                              "surd or bigfloat")
            ->check(CLI::IsMember({"surd", "bigfloat"}));
        sub->add_option("--cache", c.cache, "binary 6j cache file, loaded and saved");
    };

    auto* exact = app.add_subcommand("exact", "exact 12j at 2j6 (or 2j6_min)");
    add_common(exact, true);
    auto* asym = app.add_subcommand("asym", "asymptotic 12j at 2j6 (or 2j6_min)");
    add_common(asym, true);
    auto* sweep = app.add_subcommand("sweep", "sweep j6 and write CSV");
    add_common(sweep, true);
    sweep->add_option("--plot", c.plot, "also write gnuplot blocks to this path");
    auto* self = app.add_subcommand("selftest", "oracle-equivalence and symmetry suites");
    self->add_option("--samples", samples, "random 12j inputs per suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kConfig;
    }

    try {
        if (*exact) return cmd_exact(c);
        if (*asym) return cmd_asym(c);
        if (*sweep) return cmd_sweep(c);
        if (*self) return cmd_selftest(samples);
    } catch (const w3nj::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfig;
    } catch (const w3nj::IoError& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return kIo;
    } catch (const w3nj::DegenerateGeometry& e) {
        std::cerr << "degenerate geometry: " << e.what() << "\n";
        return kDegenerate;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfig;
    }
    return kOk;
}
