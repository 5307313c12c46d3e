#pragma once

#include "khsq/classify.hpp"
#include "khsq/integer.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace khsq::app {

// On-disk store of computed results, one file per content hash. An empty directory disables it.
class ResultCache {
public:
    static constexpr std::uint32_t kVersion = 1;

    explicit ResultCache(std::string dir);
    bool enabled() const { return !dir_.empty(); }

    // Key from the rendered diagram and the parameters that shape the result.
    static std::string key(const std::string& kind, const LinkDiagram& d, const std::string& params);

    std::optional<std::vector<HomologyGroup>> load_homology(const std::string& key) const;
    void store_homology(const std::string& key, const std::vector<HomologyGroup>& groups) const;
    std::optional<std::vector<StEntry>> load_st(const std::string& key) const;
    void store_st(const std::string& key, const std::vector<StEntry>& entries) const;

private:
    std::optional<std::string> read(const std::string& key, std::uint8_t kind) const;
    void write(const std::string& key, std::uint8_t kind, const std::string& payload) const;

    std::string dir_;
};

} // namespace khsq::app
