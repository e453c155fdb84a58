#include "refdiff/cache.hpp"

#include <array>
#include <cerrno>
#include <cstring>
#include <filesystem>
#include <fstream>

#include <fcntl.h>
#include <sys/file.h>
#include <sys/stat.h>
#include <unistd.h>

#include "refdiff/json_io.hpp"

namespace refdiff {

namespace fs = std::filesystem;
using nlohmann::json;

std::uint32_t crc32_ieee(const void* data, std::size_t size) {
    static const auto table = [] {
        std::array<std::uint32_t, 256> t{};
        for (std::uint32_t i = 0; i < 256; ++i) {
            std::uint32_t c = i;
            for (int k = 0; k < 8; ++k) c = (c & 1) ? 0xedb88320u ^ (c >> 1) : c >> 1;
            t[i] = c;
        }
        return t;
    }();
    std::uint32_t crc = 0xffffffffu;
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < size; ++i) crc = table[(crc ^ p[i]) & 0xff] ^ (crc >> 8);
    return crc ^ 0xffffffffu;
}

namespace {

constexpr std::size_t kHeaderSize = 17; // 16-byte magic + version byte

std::string cache_key(const std::string& sha, const std::string& version) {
    return sha + "|" + version;
}

void put_u64le(std::string& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_u32le(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

std::uint64_t get_u64le(const unsigned char* p) {
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
    return v;
}

std::uint32_t get_u32le(const unsigned char* p) {
    std::uint32_t v = 0;
    for (int i = 3; i >= 0; --i) v = (v << 8) | p[i];
    return v;
}

bool read_at(int fd, std::uint64_t offset, void* buf, std::size_t n) {
    std::size_t done = 0;
    auto* p = static_cast<char*>(buf);
    while (done < n) {
        ssize_t got = pread(fd, p + done, n - done, static_cast<off_t>(offset + done));
        if (got > 0) done += static_cast<std::size_t>(got);
        else if (got == 0) return false;
        else if (errno != EINTR) return false;
    }
    return true;
}

} // namespace

ReportCache::ReportCache(const std::string& directory) : dir_(directory) {
    log_path_ = dir_ + "/reports.log";
    idx_path_ = dir_ + "/reports.idx";
    open_or_create();
}

ReportCache::~ReportCache() {
    if (log_fd_ >= 0) close(log_fd_);
    if (lock_fd_ >= 0) close(lock_fd_);
}

void ReportCache::open_or_create() {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) throw StoreUnavailable("cannot create cache directory " + dir_ + ": " + ec.message());

    lock_fd_ = open((dir_ + "/lock").c_str(), O_CREAT | O_RDWR, 0644);
    if (lock_fd_ < 0)
        throw StoreUnavailable("cannot open cache lock: " + std::string(strerror(errno)));
    if (flock(lock_fd_, LOCK_EX | LOCK_NB) != 0)
        throw StoreUnavailable("cache is locked by another process: " + dir_);

    log_fd_ = open(log_path_.c_str(), O_CREAT | O_RDWR, 0644);
    if (log_fd_ < 0)
        throw StoreUnavailable("cannot open cache log: " + std::string(strerror(errno)));

    struct stat st{};
    if (fstat(log_fd_, &st) != 0)
        throw StoreUnavailable("cannot stat cache log: " + std::string(strerror(errno)));
    std::uint64_t size = static_cast<std::uint64_t>(st.st_size);

    if (size == 0) {
        std::string header(kMagic, 16);
        header.push_back(static_cast<char>(kFormatVersion));
        if (pwrite(log_fd_, header.data(), header.size(), 0) !=
            static_cast<ssize_t>(header.size()))
            throw StoreUnavailable("cannot initialize cache log");
        fsync(log_fd_);
        log_size_ = kHeaderSize;
        write_index_file();
        return;
    }

    char header[kHeaderSize] = {0};
    if (size < kHeaderSize || !read_at(log_fd_, 0, header, kHeaderSize) ||
        std::memcmp(header, kMagic, 16) != 0 ||
        static_cast<unsigned char>(header[16]) != kFormatVersion) {
        // unusable store: start over, keeping the old bytes out of the way
        warnings_.push_back("cache log header invalid; resetting store");
        if (ftruncate(log_fd_, 0) != 0)
            throw StoreUnavailable("cannot reset corrupt cache log");
        std::string fresh(kMagic, 16);
        fresh.push_back(static_cast<char>(kFormatVersion));
        pwrite(log_fd_, fresh.data(), fresh.size(), 0);
        fsync(log_fd_);
        log_size_ = kHeaderSize;
        write_index_file();
        return;
    }

    if (!load_index_file(size)) scan_log();
    log_size_ = size;
}

void ReportCache::scan_log() {
    index_.clear();
    insertion_order_.clear();
    struct stat st{};
    fstat(log_fd_, &st);
    std::uint64_t size = static_cast<std::uint64_t>(st.st_size);
    std::uint64_t pos = kHeaderSize;
    std::uint64_t valid_end = pos;
    while (pos + 8 <= size) {
        unsigned char lenbuf[8];
        if (!read_at(log_fd_, pos, lenbuf, 8)) break;
        std::uint64_t len = get_u64le(lenbuf);
        if (len == 0 || len > (1ull << 32) || pos + 8 + len + 4 > size) break; // torn tail
        std::string payload(len, '\0');
        if (!read_at(log_fd_, pos + 8, payload.data(), len)) break;
        unsigned char crcbuf[4];
        if (!read_at(log_fd_, pos + 8 + len, crcbuf, 4)) break;
        if (get_u32le(crcbuf) != crc32_ieee(payload.data(), payload.size())) break;
        try {
            json j = json::parse(payload);
            std::string key = cache_key(j.at("sha").get<std::string>(),
                                        j.at("detector_version").get<std::string>());
            if (!index_.count(key)) insertion_order_.push_back(key);
            index_[key] = {pos, len};
        } catch (const std::exception&) {
            warnings_.push_back("skipping undecodable cache entry at offset " +
                                std::to_string(pos));
        }
        pos += 8 + len + 4;
        valid_end = pos;
    }
    if (valid_end < size)
        warnings_.push_back("cache log has a torn tail after offset " +
                            std::to_string(valid_end) + "; ignoring it");
    log_size_ = valid_end;
}

bool ReportCache::load_index_file(std::uint64_t log_size) {
    std::ifstream in(idx_path_, std::ios::binary);
    if (!in) return false;
    try {
        json j = json::parse(in);
        if (j.at("log_size").get<std::uint64_t>() != log_size) return false;
        if (j.at("format").get<int>() != kFormatVersion) return false;
        index_.clear();
        insertion_order_.clear();
        for (const auto& e : j.at("entries")) {
            std::string key = cache_key(e.at("sha").get<std::string>(),
                                        e.at("version").get<std::string>());
            Slot slot{e.at("offset").get<std::uint64_t>(), e.at("length").get<std::uint64_t>()};
            if (!index_.count(key)) insertion_order_.push_back(key);
            index_[key] = slot;
        }
        return true;
    } catch (const std::exception&) {
        return false;
    }
}

void ReportCache::write_index_file() {
    json entries = json::array();
    for (const auto& key : insertion_order_) {
        auto it = index_.find(key);
        if (it == index_.end()) continue;
        auto bar = key.find('|');
        entries.push_back(json{{"sha", key.substr(0, bar)},
                               {"version", key.substr(bar + 1)},
                               {"offset", it->second.offset},
                               {"length", it->second.length}});
    }
    json j{{"format", kFormatVersion}, {"log_size", log_size_}, {"entries", std::move(entries)}};
    // best effort: the log remains the source of truth
    std::string tmp = idx_path_ + ".tmp";
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) return;
    out << j.dump();
    out.close();
    std::error_code ec;
    fs::rename(tmp, idx_path_, ec);
}

std::optional<std::string> ReportCache::read_payload(const Slot& slot) {
    std::string payload(slot.length, '\0');
    if (!read_at(log_fd_, slot.offset + 8, payload.data(), slot.length)) return std::nullopt;
    unsigned char crcbuf[4];
    if (!read_at(log_fd_, slot.offset + 8 + slot.length, crcbuf, 4)) return std::nullopt;
    if (get_u32le(crcbuf) != crc32_ieee(payload.data(), payload.size())) return std::nullopt;
    return payload;
}

std::optional<CommitReport> ReportCache::get(const std::string& sha,
                                             const std::string& detector_version) {
    auto it = index_.find(cache_key(sha, detector_version));
    if (it == index_.end()) return std::nullopt;
    auto payload = read_payload(it->second);
    if (!payload) {
        warnings_.push_back("corrupt cache entry for " + sha + "; treating as absent");
        return std::nullopt;
    }
    try {
        json j = json::parse(*payload);
        CommitReport report = commit_report_from_json(j.at("report"));
        return report;
    } catch (const std::exception& e) {
        warnings_.push_back("undecodable cache entry for " + sha + ": " + e.what());
        return std::nullopt;
    }
}

void ReportCache::put(const CommitReport& report) {
    json payload{{"sha", report.sha},
                 {"detector_version", report.detector_version},
                 {"written_at", static_cast<std::int64_t>(time(nullptr))},
                 {"report", to_json(report)}};
    std::string bytes = payload.dump();
    std::string entry;
    entry.reserve(bytes.size() + 12);
    put_u64le(entry, bytes.size());
    entry += bytes;
    put_u32le(entry, crc32_ieee(bytes.data(), bytes.size()));

    if (pwrite(log_fd_, entry.data(), entry.size(), static_cast<off_t>(log_size_)) !=
        static_cast<ssize_t>(entry.size()))
        throw StoreUnavailable("cache write failed: " + std::string(strerror(errno)));
    if (fsync(log_fd_) != 0)
        throw StoreUnavailable("cache fsync failed: " + std::string(strerror(errno)));

    std::string key = cache_key(report.sha, report.detector_version);
    if (!index_.count(key)) insertion_order_.push_back(key);
    index_[key] = {log_size_, bytes.size()};
    log_size_ += entry.size();
    write_index_file();
}

std::vector<CommitReport> ReportCache::all_reports(const std::string& detector_version) {
    std::vector<CommitReport> out;
    for (const auto& key : insertion_order_) {
        auto bar = key.find('|');
        if (key.substr(bar + 1) != detector_version) continue;
        auto it = index_.find(key);
        if (it == index_.end()) continue;
        auto payload = read_payload(it->second);
        if (!payload) continue;
        try {
            json j = json::parse(*payload);
            out.push_back(commit_report_from_json(j.at("report")));
        } catch (const std::exception&) {
            warnings_.push_back("undecodable cache entry skipped in scan");
        }
    }
    return out;
}

void ReportCache::clear(const std::string& directory) {
    std::error_code ec;
    fs::remove(directory + "/reports.log", ec);
    fs::remove(directory + "/reports.idx", ec);
    fs::remove(directory + "/reports.idx.tmp", ec);
    fs::remove(directory + "/lock", ec);
}

} // namespace refdiff
