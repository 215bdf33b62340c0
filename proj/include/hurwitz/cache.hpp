#pragma once

#include <map>
#include <optional>
#include <string>

#include <json.hpp>

namespace hurwitz {

// Bumped whenever the rule set changes; stale records are ignored.
inline constexpr const char* kEngineVersion = "1.0";

struct CacheRecord {
    std::string key; // canonical datum string
    std::string status;
    std::string method;
    nlohmann::json evidence;
    std::string version = kEngineVersion;
    std::string timestamp;
    unsigned long long budget = 0; // stored for unknown verdicts only
};

// Append-only JSONL verdict store. Corrupt lines are skipped with a warning
// on standard error; the last record per key wins. Appends take an advisory
// lock so concurrent writers cannot interleave lines.
class VerdictCache {
public:
    explicit VerdictCache(std::string path);

    // HURWITZ_CACHE or ./hurwitz-cache.jsonl
    static std::string default_path();

    const std::string& path() const { return path_; }

    std::optional<CacheRecord> lookup(const std::string& key) const;
    void store(CacheRecord record);

private:
    std::string path_;
    std::map<std::string, CacheRecord> records_;
};

} // namespace hurwitz
