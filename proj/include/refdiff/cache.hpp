#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "refdiff/report.hpp"

namespace refdiff {

// Append-only local store of commit reports keyed by (sha, detector version).
//
// On-disk layout, under the cache directory:
//   reports.log  16-byte magic "RFDI-CACHE" + 6 NULs, 1 format version byte,
//                then entries of [u64le payload length][payload][u32le crc32].
//                Payload is the UTF-8 JSON of {sha, detector_version,
//                written_at, report}. An entry exists once its crc is fully
//                on disk; truncated or corrupt tails are ignored on open.
//   reports.idx  JSON {log_size, entries:[{sha, version, offset}]} — a fast
//                open hint, rebuilt from the log whenever it is stale.
//   lock         advisory flock taken for the lifetime of a writable store.
//
// Later entries with the same key shadow earlier ones, which makes overwrite
// atomic by construction.
class ReportCache {
public:
    // Opens or creates the store. Throws StoreUnavailable if the directory
    // cannot be created or the writer lock cannot be taken.
    explicit ReportCache(const std::string& directory);
    ~ReportCache();

    ReportCache(const ReportCache&) = delete;
    ReportCache& operator=(const ReportCache&) = delete;

    // Absent on missing key, version mismatch, or corrupt entry (the latter
    // also appends to warnings()).
    std::optional<CommitReport> get(const std::string& sha, const std::string& detector_version);

    // Durable once it returns: data is flushed and fsynced.
    void put(const CommitReport& report);

    // Every live (latest-per-key) report for one detector version, ordered
    // by insertion.
    std::vector<CommitReport> all_reports(const std::string& detector_version);

    std::size_t entry_count() const { return index_.size(); }
    const std::vector<std::string>& warnings() const { return warnings_; }

    const std::string& directory() const { return dir_; }

    // Removes the store files. The instance must not be used afterwards.
    static void clear(const std::string& directory);

    static constexpr char kMagic[17] = "RFDI-CACHE\0\0\0\0\0\0"; // 16 bytes + NUL
    static constexpr unsigned char kFormatVersion = 1;

private:
    struct Slot {
        std::uint64_t offset; // of the length prefix
        std::uint64_t length; // payload length
    };

    void open_or_create();
    void scan_log();
    bool load_index_file(std::uint64_t log_size);
    void write_index_file();
    std::optional<std::string> read_payload(const Slot& slot);

    std::string dir_;
    std::string log_path_;
    std::string idx_path_;
    int log_fd_ = -1;
    int lock_fd_ = -1;
    std::uint64_t log_size_ = 0;
    std::map<std::string, Slot> index_; // key "sha|version" -> latest slot
    std::vector<std::string> insertion_order_;
    std::vector<std::string> warnings_;
};

// crc32 (IEEE, reflected) used by the cache entry trailer.
std::uint32_t crc32_ieee(const void* data, std::size_t size);

} // namespace refdiff
