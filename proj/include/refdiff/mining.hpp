#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "refdiff/cache.hpp"
#include "refdiff/config.hpp"
#include "refdiff/git_repo.hpp"
#include "refdiff/report.hpp"

namespace refdiff {

// One changed source file of a commit with both blob contents.
struct ChangedFile {
    FileChange change;
    std::optional<std::string> before_text; // absent for additions
    std::optional<std::string> after_text;  // absent for deletions
};

// Files of the commit that carry the configured source extension, renames
// included, byte-identical content excluded (git never reports it).
std::vector<ChangedFile> changed_files(GitRepo& repo, const CommitMeta& commit,
                                       const ToolConfig& config);

// Full detection pipeline for one non-merge commit: read blobs, parse both
// sides, match, detect, group. Per-file parse failures downgrade to report
// warnings. processing_time_ns covers the whole pipeline on a monotonic
// nanosecond clock.
CommitReport mine_commit(GitRepo& repo, const CommitMeta& commit, const ToolConfig& config);

struct MiningOptions {
    bool bypass_cache = false; // benchmark mode: never read or write the cache
};

struct MiningResult {
    MiningSummary summary;
    std::vector<CommitMeta> commits;        // non-merge, oldest first
    std::vector<CommitReport> reports;      // parallel to commits
};

// Walks the range oldest-first with a bounded worker pool, consulting the
// cache before mining and storing fresh reports. Output content does not
// depend on scheduling or cache state.
MiningResult mine_history(const std::string& repo_path, const std::string& range_spec,
                          ReportCache* cache, const ToolConfig& config,
                          const MiningOptions& options = {});

// Chronological refactoring history of one qualified element name across the
// given reports (which must be in commit order). Rename/move records union
// old and new names into one alias chain; querying any alias yields the same
// entries. Throws UnknownElement when the name appears in no record.
std::vector<ElementHistoryEntry> element_history(const std::vector<CommitMeta>& commits,
                                                 const std::vector<CommitReport>& reports,
                                                 const std::string& qualified_name);

} // namespace refdiff
