#include "hurwitz/cache.hpp"

#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include "hurwitz/error.hpp"

namespace hurwitz {

namespace {

std::string now_utc() {
    std::time_t t = std::time(nullptr);
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

} // namespace

std::string VerdictCache::default_path() {
    if (const char* env = std::getenv("HURWITZ_CACHE"); env && *env) return env;
    return "./hurwitz-cache.jsonl";
}

VerdictCache::VerdictCache(std::string path) : path_(std::move(path)) {
    std::ifstream in(path_);
    if (!in) return;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object() || !j.contains("key") || !j.contains("status") ||
            !j.contains("version")) {
            std::cerr << "warning: skipping corrupt cache line " << lineno << " in " << path_ << "\n";
            continue;
        }
        if (j["version"].get<std::string>() != kEngineVersion) continue;
        CacheRecord rec;
        rec.key = j["key"].get<std::string>();
        rec.status = j["status"].get<std::string>();
        rec.method = j.value("method", std::string{});
        rec.evidence = j.value("evidence", nlohmann::json::object());
        rec.version = j["version"].get<std::string>();
        rec.timestamp = j.value("timestamp", std::string{});
        rec.budget = j.value("budget", 0ULL);
        records_[rec.key] = std::move(rec);
    }
}

std::optional<CacheRecord> VerdictCache::lookup(const std::string& key) const {
    auto it = records_.find(key);
    if (it == records_.end()) return std::nullopt;
    return it->second;
}

void VerdictCache::store(CacheRecord record) {
    record.version = kEngineVersion;
    if (record.timestamp.empty()) record.timestamp = now_utc();

    nlohmann::json j;
    j["key"] = record.key;
    j["status"] = record.status;
    j["method"] = record.method;
    j["evidence"] = record.evidence;
    j["version"] = record.version;
    j["timestamp"] = record.timestamp;
    if (record.status == "unknown") j["budget"] = record.budget;
    std::string line = j.dump();
    line.push_back('\n');

    int fd = ::open(path_.c_str(), O_WRONLY | O_CREAT | O_APPEND, 0644);
    if (fd < 0) throw Error(Errc::BadParams, "cannot open cache file " + path_);
    ::flock(fd, LOCK_EX);
    ssize_t written = ::write(fd, line.data(), line.size());
    ::flock(fd, LOCK_UN);
    ::close(fd);
    if (written != static_cast<ssize_t>(line.size()))
        throw Error(Errc::BadParams, "short write to cache file " + path_);

    records_[record.key] = std::move(record);
}

} // namespace hurwitz
