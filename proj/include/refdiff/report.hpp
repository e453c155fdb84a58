#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "refdiff/detection.hpp"
#include "refdiff/git_repo.hpp"

namespace refdiff {

struct ChangedFileEntry {
    std::string path;     // new path (old path for deletions)
    std::string old_path; // set for renames
    ChangeKind kind = ChangeKind::Modified;

    bool operator==(const ChangedFileEntry&) const = default;
};

// Everything detection produced for one commit.
struct CommitReport {
    std::string sha;
    std::string detector_version;
    std::vector<RefactoringRecord> records;
    std::vector<RefactoringGroup> groups;
    std::vector<ChangedFileEntry> changed_files;
    std::vector<std::string> warnings;
    std::int64_t processing_time_ns = 0;

    bool content_equal(const CommitReport& o) const {
        auto key = [](const CommitReport& r) {
            return std::tie(r.sha, r.detector_version, r.records, r.changed_files, r.warnings);
        };
        if (!(key(*this) == key(o))) return false;
        if (groups.size() != o.groups.size()) return false;
        for (std::size_t i = 0; i < groups.size(); ++i)
            if (groups[i].group_key != o.groups[i].group_key ||
                groups[i].record_indexes != o.groups[i].record_indexes)
                return false;
        return true;
    }
};

struct ElementHistoryEntry {
    std::string qualified_name; // the alias that appears in the record
    std::string sha;
    std::int64_t author_time = 0;
    RefactoringRecord record;
};

struct TimingStats {
    std::int64_t median_ns = 0;
    std::int64_t q1_ns = 0;
    std::int64_t q3_ns = 0;
    std::int64_t min_ns = 0;
    std::int64_t max_ns = 0;
};

// Linear-interpolation percentile over a copy of the samples; p in [0,1].
std::int64_t percentile_ns(std::vector<std::int64_t> samples, double p);
TimingStats timing_stats(const std::vector<std::int64_t>& samples);

struct MiningSummary {
    std::string range_spec;
    std::size_t commits_total = 0;   // non-merge commits in range
    std::size_t commits_mined = 0;   // freshly mined this run
    std::size_t cache_hits = 0;
    std::size_t merges_excluded = 0;
    std::size_t total_refactorings = 0;
    std::vector<std::pair<std::string, std::size_t>> counts_by_type; // stable wire names
    TimingStats timing;
    std::vector<std::int64_t> per_commit_ns;
};

} // namespace refdiff
