#include "khsq_app/cache.hpp"

#include "khsq/error.hpp"

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>

namespace khsq::app {

namespace {

constexpr char kMagic[8] = {'K', 'H', 'S', 'Q', 'C', 'A', 'C', 'H'};
constexpr std::uint8_t kHomology = 1, kSt = 2;

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

class Writer {
public:
    void u64(std::uint64_t v) {
        for (int k = 0; k < 8; ++k) buf_.push_back(static_cast<char>(v >> (8 * k) & 0xff));
    }
    void i64(std::int64_t v) { u64(static_cast<std::uint64_t>(v)); }
    const std::string& str() const { return buf_; }

private:
    std::string buf_;
};

class Reader {
public:
    explicit Reader(const std::string& s) : s_(s) {}
    std::uint64_t u64() {
        if (pos_ + 8 > s_.size()) throw Error(ErrorKind::IOFailure, "cli", "truncated cache entry");
        std::uint64_t v = 0;
        for (int k = 0; k < 8; ++k) v |= std::uint64_t(static_cast<unsigned char>(s_[pos_ + k])) << (8 * k);
        pos_ += 8;
        return v;
    }
    std::int64_t i64() { return static_cast<std::int64_t>(u64()); }
    bool done() const { return pos_ == s_.size(); }

private:
    const std::string& s_;
    std::size_t pos_ = 0;
};

} // namespace

ResultCache::ResultCache(std::string dir) : dir_(std::move(dir)) {
    if (!enabled()) return;
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) throw Error(ErrorKind::IOFailure, "cli", "cannot create cache directory " + dir_);
}

std::string ResultCache::key(const std::string& kind, const LinkDiagram& d, const std::string& params) {
    std::string text = kind + "\n" + render_pd(d) + "\n" + params + "\nv" + std::to_string(kVersion);
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(text)));
    return kind + "-" + buf;
}

std::optional<std::string> ResultCache::read(const std::string& key, std::uint8_t kind) const {
    if (!enabled()) return std::nullopt;
    std::ifstream in(std::filesystem::path(dir_) / (key + ".bin"), std::ios::binary);
    if (!in) return std::nullopt;
    std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    const std::size_t header = sizeof kMagic + 4 + 1 + 8;
    if (data.size() < header + 8 || std::memcmp(data.data(), kMagic, sizeof kMagic) != 0) return std::nullopt;
    std::uint32_t version = 0;
    for (int k = 0; k < 4; ++k) version |= std::uint32_t(static_cast<unsigned char>(data[8 + k])) << (8 * k);
    if (version != kVersion || static_cast<std::uint8_t>(data[12]) != kind) return std::nullopt;
    std::string tail = data.substr(13);
    Reader rt(tail);
    std::uint64_t len = rt.u64();
    if (tail.size() != 8 + len + 8) return std::nullopt;
    std::string payload = tail.substr(8, len);
    std::string sum = tail.substr(8 + len);
    Reader rs(sum);
    if (rs.u64() != fnv1a(payload)) return std::nullopt;
    return payload;
}

void ResultCache::write(const std::string& key, std::uint8_t kind, const std::string& payload) const {
    if (!enabled()) return;
    std::string data(kMagic, sizeof kMagic);
    for (int k = 0; k < 4; ++k) data.push_back(static_cast<char>(kVersion >> (8 * k) & 0xff));
    data.push_back(static_cast<char>(kind));
    Writer w;
    w.u64(payload.size());
    data += w.str() + payload;
    Writer s;
    s.u64(fnv1a(payload));
    data += s.str();
    auto path = std::filesystem::path(dir_) / (key + ".bin");
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out.write(data.data(), static_cast<std::streamsize>(data.size())))
            throw Error(ErrorKind::IOFailure, "cli", "cannot write cache entry " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

std::optional<std::vector<HomologyGroup>> ResultCache::load_homology(const std::string& key) const {
    auto p = read(key, kHomology);
    if (!p) return std::nullopt;
    Reader r(*p);
    std::vector<HomologyGroup> out(r.u64());
    for (auto& g : out) {
        g.i = static_cast<int>(r.i64());
        g.j = static_cast<int>(r.i64());
        g.rank = r.u64();
        g.torsion.resize(r.u64());
        for (auto& t : g.torsion) t = r.u64();
    }
    if (!r.done()) return std::nullopt;
    return out;
}

void ResultCache::store_homology(const std::string& key, const std::vector<HomologyGroup>& groups) const {
    Writer w;
    w.u64(groups.size());
    for (const auto& g : groups) {
        w.i64(g.i);
        w.i64(g.j);
        w.u64(g.rank);
        w.u64(g.torsion.size());
        for (auto t : g.torsion) w.u64(t);
    }
    write(key, kHomology, w.str());
}

std::optional<std::vector<StEntry>> ResultCache::load_st(const std::string& key) const {
    auto p = read(key, kSt);
    if (!p) return std::nullopt;
    Reader r(*p);
    std::vector<StEntry> out(r.u64());
    for (auto& e : out) {
        e.i = static_cast<int>(r.i64());
        e.j = static_cast<int>(r.i64());
        for (auto& v : e.x) v = static_cast<int>(r.i64());
        for (auto& v : e.r) v = static_cast<int>(r.i64());
    }
    if (!r.done()) return std::nullopt;
    return out;
}

void ResultCache::store_st(const std::string& key, const std::vector<StEntry>& entries) const {
    Writer w;
    w.u64(entries.size());
    for (const auto& e : entries) {
        w.i64(e.i);
        w.i64(e.j);
        for (auto v : e.x) w.i64(v);
        for (auto v : e.r) w.i64(v);
    }
    write(key, kSt, w.str());
}

} // namespace khsq::app
