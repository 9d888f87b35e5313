#pragma once

#include "w3nj/surd.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <cstdint>
#include <fstream>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>

namespace w3nj {

/// Key of a 6j under its 24 symmetries (column permutations and paired upper/lower swaps).
/// Returns nullopt when an entry does not fit in 10 bits.
inline std::optional<std::uint64_t> sixj_canonical_key(const std::array<int, 6>& t) {
    for (int v : t)
        if (v < 0 || v >= 1024) return std::nullopt;
    // columns (top, bottom)
    std::array<std::array<int, 2>, 3> col = {{{t[0], t[3]}, {t[1], t[4]}, {t[2], t[5]}}};
    std::array<int, 6> best{};
    bool have = false;
    static constexpr int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    static constexpr int flips[4][3] = {{0, 0, 0}, {1, 1, 0}, {1, 0, 1}, {0, 1, 1}};
    for (const auto& p : perms) {
        for (const auto& f : flips) {
            std::array<int, 6> c{};
            for (int k = 0; k < 3; ++k) {
                c[k] = col[p[k]][f[k]];
                c[k + 3] = col[p[k]][1 - f[k]];
            }
            if (!have || c < best) { best = c; have = true; }
        }
    }
    std::uint64_t key = 0;
    for (int v : best) key = (key << 10) | static_cast<std::uint64_t>(v);
    return key;
}

/// Memo of exact 6j values. Readers share a lock; insertion keeps the first value stored.
/// Element references stay valid until clear().
class SixJCache {
public:
    static constexpr std::uint32_t kFormatVersion = 1;

    const SurdSum* find(std::uint64_t key) const {
        std::shared_lock lock(mu_);
        auto it = map_.find(key);
        return it == map_.end() ? nullptr : &it->second;
    }

    const SurdSum& insert_if_absent(std::uint64_t key, SurdSum value) {
        std::unique_lock lock(mu_);
        return map_.try_emplace(key, std::move(value)).first->second;
    }

    std::size_t size() const {
        std::shared_lock lock(mu_);
        return map_.size();
    }

    /// Not safe against concurrent readers holding references.
    void clear() {
        std::unique_lock lock(mu_);
        map_.clear();
    }

    /// Binary file: magic, version, count, then per entry key + (coefficient, radicand) strings.
    bool save(const std::string& path) const {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) return false;
        std::shared_lock lock(mu_);
        out.write(kMagic, sizeof kMagic);
        write_pod(out, kFormatVersion);
        write_pod(out, static_cast<std::uint64_t>(map_.size()));
        for (const auto& [key, v] : map_) {
            write_pod(out, key);
            write_pod(out, static_cast<std::uint32_t>(v.terms().size()));
            for (const auto& [r, q] : v.terms()) {
                write_str(out, q.get_str(62));
                write_str(out, r.get_str(62));
            }
        }
        return static_cast<bool>(out);
    }

    /// Returns false (and leaves the cache untouched) on a missing, truncated or stale file.
    bool load(const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) return false;
        char magic[sizeof kMagic];
        in.read(magic, sizeof magic);
        if (!in || !std::equal(magic, magic + sizeof magic, kMagic)) return false;
        std::uint32_t version = 0;
        std::uint64_t count = 0;
        if (!read_pod(in, version) || version != kFormatVersion) return false;
        if (!read_pod(in, count)) return false;
        std::unordered_map<std::uint64_t, SurdSum> loaded;
        for (std::uint64_t n = 0; n < count; ++n) {
            std::uint64_t key = 0;
            std::uint32_t nterms = 0;
            if (!read_pod(in, key) || !read_pod(in, nterms)) return false;
            SurdSum v;
            for (std::uint32_t k = 0; k < nterms; ++k) {
                std::string qs, rs;
                if (!read_str(in, qs) || !read_str(in, rs)) return false;
                try {
                    v += SurdSum::term(mpq_class(qs, 62), mpz_class(rs, 62));
                } catch (const std::exception&) {
                    return false;
                }
            }
            loaded.emplace(key, std::move(v));
        }
        std::unique_lock lock(mu_);
        for (auto& kv : loaded) map_.try_emplace(kv.first, std::move(kv.second));
        return true;
    }

    static SixJCache& global() {
        static SixJCache cache;
        return cache;
    }

private:
    static constexpr char kMagic[8] = {'W', '3', 'N', 'J', '6', 'J', 'C', '\0'};

    template <class T>
    static void write_pod(std::ostream& out, const T& v) {
        out.write(reinterpret_cast<const char*>(&v), sizeof v);
    }
    template <class T>
    static bool read_pod(std::istream& in, T& v) {
        in.read(reinterpret_cast<char*>(&v), sizeof v);
        return static_cast<bool>(in);
    }
    static void write_str(std::ostream& out, const std::string& s) {
        write_pod(out, static_cast<std::uint32_t>(s.size()));
        out.write(s.data(), static_cast<std::streamsize>(s.size()));
    }
    static bool read_str(std::istream& in, std::string& s) {
        std::uint32_t n = 0;
        if (!read_pod(in, n) || n > (1u << 24)) return false;
        s.resize(n);
        in.read(s.data(), n);
        return static_cast<bool>(in);
    }

    mutable std::shared_mutex mu_;
    std::unordered_map<std::uint64_t, SurdSum> map_;
};

}  // namespace w3nj
