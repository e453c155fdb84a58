#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "refdiff/errors.hpp"
#include "refdiff/subprocess.hpp"

namespace refdiff {

struct CommitMeta {
    std::string sha;                       // 40-hex
    std::optional<std::string> parent_sha; // first parent; absent for roots
    std::int64_t author_time = 0;          // unix epoch, UTC
    std::string message_first_line;
    int parent_count = 0;

    bool is_merge() const { return parent_count >= 2; }
    bool is_root() const { return parent_count == 0; }
};

enum class ChangeKind { Added, Deleted, Modified, Renamed };

const char* to_string(ChangeKind k);

struct FileChange {
    ChangeKind kind = ChangeKind::Modified;
    std::string old_path; // empty for additions
    std::string new_path; // empty for deletions
    std::string old_blob; // blob ids; all-zero sha means absent
    std::string new_blob;

    const std::string& display_path() const { return new_path.empty() ? old_path : new_path; }
};

// Read access to a local git repository through the git binary. One instance
// per worker; the embedded `cat-file --batch` child is not thread-safe.
class GitRepo {
public:
    explicit GitRepo(const std::string& path); // throws NotARepository

    const std::string& root() const { return root_; }

    // Throws UnknownRevision when the name cannot be resolved to a commit.
    std::string resolve(const std::string& rev) const;

    // Range spec: "all" (first-parent history of HEAD), a single revision,
    // or "base..head". Oldest first; merge commits are included with their
    // parent count so callers can exclude them.
    std::vector<CommitMeta> enumerate_commits(const std::string& range_spec) const;

    // Raw per-commit change entries (rename detection on, -M).
    std::vector<FileChange> changed_entries(const CommitMeta& commit) const;

    // Blob contents by id through a persistent cat-file process.
    std::string read_blob(const std::string& blob_id);

private:
    CommandResult git(const std::vector<std::string>& args) const;

    std::string root_;
    std::unique_ptr<PipeProcess> cat_file_;
};

} // namespace refdiff
