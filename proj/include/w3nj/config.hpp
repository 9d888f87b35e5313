#pragma once

#include "w3nj/sweep.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>

namespace w3nj {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace config_detail {

inline const char* const kLabelKeys[11] = {"2j1", "2j2", "2j12", "2j125", "2j3", "2j4",
                                           "2j34", "2j135", "2j13", "2j24", "2s5"};

inline int get_int(const nlohmann::json& j, const std::string& key, std::optional<int> fallback, int min_value) {
    if (!j.contains(key)) {
        if (fallback) return *fallback;
        throw ConfigError("field '" + key + "': required");
    }
    const auto& v = j.at(key);
    if (!v.is_number_integer()) throw ConfigError("field '" + key + "': expected an integer");
    const long long x = v.get<long long>();
    if (x < min_value || x > (1 << 20)) throw ConfigError("field '" + key + "': value " + std::to_string(x) + " out of range");
    return static_cast<int>(x);
}

inline std::string get_str(const nlohmann::json& j, const std::string& key, const std::string& fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_string()) throw ConfigError("field '" + key + "': expected a string");
    return j.at(key).get<std::string>();
}

}  // namespace config_detail

/// Flat JSON object; all angular momenta are twice-values (keys "2j1" ... "2s5", "2j6_min", "2j6_max", "2j6_step"
/// or a single "2j6").
inline SweepConfig parse_sweep_config(const std::string& text) {
    using namespace config_detail;
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config must be a JSON object");

    std::set<std::string> known(std::begin(kLabelKeys), std::end(kLabelKeys));
    for (const char* k : {"2j6", "2j6_min", "2j6_max", "2j6_step", "mode", "exact_backend", "precision_bits",
                          "surd_max_twice", "2s_max", "output", "threads"})
        known.insert(k);
    for (const auto& item : j.items())
        if (!known.count(item.key())) throw ConfigError("field '" + item.key() + "': unknown key");

    SweepConfig cfg;
    std::array<int, 12> t{};
    for (int k = 0; k < 11; ++k) t[k] = get_int(j, kLabelKeys[k], std::nullopt, 0);
    if (j.contains("2j6")) {
        if (j.contains("2j6_min") || j.contains("2j6_max"))
            throw ConfigError("field '2j6': give either 2j6 or the 2j6_min/2j6_max range");
        cfg.j6_min = cfg.j6_max = get_int(j, "2j6", std::nullopt, 0);
    } else {
        cfg.j6_min = get_int(j, "2j6_min", std::nullopt, 0);
        cfg.j6_max = get_int(j, "2j6_max", std::nullopt, 0);
    }
    cfg.j6_step = get_int(j, "2j6_step", 2, 1);
    t[11] = cfg.j6_min;
    cfg.base = TwelveJInput::from_twice(t);

    const auto& b = cfg.base;
    const std::pair<const char*, std::array<HalfInt, 3>> parity[] = {
        {"2j1+2j2+2j12", {b.j1, b.j2, b.j12}},     {"2j3+2j4+2j34", {b.j3, b.j4, b.j34}},
        {"2j1+2j3+2j13", {b.j1, b.j3, b.j13}},     {"2j2+2j4+2j24", {b.j2, b.j4, b.j24}},
        {"2j12+2s5+2j125", {b.j12, b.s5, b.j125}}, {"2j13+2s5+2j135", {b.j13, b.s5, b.j135}},
        {"2j125+2j34+2j6_min", {b.j125, b.j34, b.j6}}, {"2j135+2j24+2j6_min", {b.j135, b.j24, b.j6}}};
    for (const auto& [name, v] : parity)
        if ((v[0].twice + v[1].twice + v[2].twice) & 1) throw ConfigError("parity: " + std::string(name) + " must be even");
    if (cfg.j6_step & 1) throw ConfigError("field '2j6_step': must be even so that every j6 keeps the parity");
    if (cfg.j6_min > cfg.j6_max) throw ConfigError("field '2j6_max': empty j6 range");

    const std::string mode = get_str(j, "mode", "compare");
    if (mode == "exact") cfg.mode = SweepMode::exact;
    else if (mode == "asym") cfg.mode = SweepMode::asym;
    else if (mode == "compare") cfg.mode = SweepMode::compare;
    else throw ConfigError("field 'mode': expected exact, asym or compare");

    const std::string backend = get_str(j, "exact_backend", "surd");
    if (backend == "surd") cfg.exact.backend = ExactBackend::surd;
    else if (backend == "bigfloat") cfg.exact.backend = ExactBackend::bigfloat;
    else throw ConfigError("field 'exact_backend': expected surd or bigfloat");

    cfg.exact.precision_bits = get_int(j, "precision_bits", 256, 113);
    cfg.exact.surd_max_twice = get_int(j, "surd_max_twice", 0, 0);
    cfg.asym.s_max = HalfInt::from_twice(get_int(j, "2s_max", 6, 0));
    cfg.output = get_str(j, "output", "");
    cfg.threads = static_cast<unsigned>(get_int(j, "threads", 1, 1));
    return cfg;
}

inline SweepConfig load_sweep_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(path + ": cannot open config");
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
        return parse_sweep_config(ss.str());
    } catch (const ConfigError& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

}  // namespace w3nj
