#include "refdiff/git_repo.hpp"

#include <algorithm>
#include <cstdlib>

namespace refdiff {

const char* to_string(ChangeKind k) {
    switch (k) {
    case ChangeKind::Added: return "added";
    case ChangeKind::Deleted: return "deleted";
    case ChangeKind::Modified: return "modified";
    case ChangeKind::Renamed: return "renamed";
    }
    return "modified";
}

namespace {
constexpr char kZeroSha[] = "0000000000000000000000000000000000000000";

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        std::size_t p = s.find(sep, start);
        if (p == std::string::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, p - start));
        start = p + 1;
    }
}
} // namespace

GitRepo::GitRepo(const std::string& path) : root_(path) {
    auto res = run_command({"git", "-C", path, "rev-parse", "--git-dir"});
    if (res.exit_code != 0) throw NotARepository(path);
}

CommandResult GitRepo::git(const std::vector<std::string>& args) const {
    std::vector<std::string> argv = {"git", "-C", root_};
    argv.insert(argv.end(), args.begin(), args.end());
    return run_command(argv);
}

std::string GitRepo::resolve(const std::string& rev) const {
    auto res = git({"rev-parse", "--verify", "--quiet", rev + "^{commit}"});
    if (res.exit_code != 0) throw UnknownRevision(rev);
    std::string sha = res.out;
    while (!sha.empty() && (sha.back() == '\n' || sha.back() == '\r')) sha.pop_back();
    return sha;
}

std::vector<CommitMeta> GitRepo::enumerate_commits(const std::string& range_spec) const {
    // record separator \x1e, field separator \x1f
    const std::string fmt = "--format=%H%x1f%P%x1f%at%x1f%s%x1e";
    std::vector<std::string> args = {"log", "--first-parent", "--reverse", fmt};
    if (range_spec == "all") {
        resolve("HEAD");
        args.push_back("HEAD");
    } else if (range_spec.find("..") != std::string::npos) {
        auto dots = range_spec.find("..");
        std::string base = range_spec.substr(0, dots);
        std::string head = range_spec.substr(dots + 2);
        resolve(base);
        resolve(head);
        args.push_back(range_spec);
    } else {
        std::string sha = resolve(range_spec);
        args.push_back("-1");
        args.push_back(sha);
    }
    auto res = git(args);
    if (res.exit_code != 0) throw UnknownRevision(range_spec);

    std::vector<CommitMeta> commits;
    for (const std::string& rec : split(res.out, '\x1e')) {
        std::string body = rec;
        while (!body.empty() && (body.front() == '\n' || body.front() == '\r')) body.erase(0, 1);
        if (body.empty()) continue;
        auto fields = split(body, '\x1f');
        if (fields.size() < 4) continue;
        CommitMeta meta;
        meta.sha = fields[0];
        std::vector<std::string> parents;
        for (const auto& p : split(fields[1], ' '))
            if (!p.empty()) parents.push_back(p);
        meta.parent_count = static_cast<int>(parents.size());
        if (!parents.empty()) meta.parent_sha = parents[0];
        meta.author_time = std::strtoll(fields[2].c_str(), nullptr, 10);
        meta.message_first_line = fields[3];
        commits.push_back(std::move(meta));
    }
    return commits;
}

std::vector<FileChange> GitRepo::changed_entries(const CommitMeta& commit) const {
    std::vector<std::string> args = {"diff-tree", "-r", "-M", "--no-commit-id", "-z"};
    if (commit.parent_sha) {
        args.push_back(*commit.parent_sha);
        args.push_back(commit.sha);
    } else {
        args.push_back("--root");
        args.push_back(commit.sha);
    }
    auto res = git(args);
    if (res.exit_code != 0) throw ObjectReadFailure(commit.sha);

    // -z format per entry:
    //   :<old_mode> <new_mode> <old_sha> <new_sha> <status>\0<path>\0[<path2>\0]
    std::vector<FileChange> changes;
    const std::string& out = res.out;
    std::size_t pos = 0;
    while (pos < out.size()) {
        if (out[pos] != ':') break;
        std::size_t meta_end = out.find('\0', pos);
        if (meta_end == std::string::npos) break;
        auto fields = split(out.substr(pos + 1, meta_end - pos - 1), ' ');
        if (fields.size() < 5) break;
        const std::string& old_mode = fields[0];
        const std::string& new_mode = fields[1];
        FileChange fc;
        fc.old_blob = fields[2];
        fc.new_blob = fields[3];
        char status = fields[4].empty() ? 'M' : fields[4][0];
        std::size_t p1_end = out.find('\0', meta_end + 1);
        if (p1_end == std::string::npos) break;
        std::string path1 = out.substr(meta_end + 1, p1_end - meta_end - 1);
        pos = p1_end + 1;
        std::string path2;
        if (status == 'R' || status == 'C') {
            std::size_t p2_end = out.find('\0', pos);
            if (p2_end == std::string::npos) break;
            path2 = out.substr(pos, p2_end - pos);
            pos = p2_end + 1;
        }
        // skip submodules and other non-blob entries
        if (old_mode == "160000" || new_mode == "160000") continue;
        switch (status) {
        case 'A':
            fc.kind = ChangeKind::Added;
            fc.new_path = path1;
            break;
        case 'D':
            fc.kind = ChangeKind::Deleted;
            fc.old_path = path1;
            break;
        case 'R':
            fc.kind = ChangeKind::Renamed;
            fc.old_path = path1;
            fc.new_path = path2;
            break;
        case 'C':
            fc.kind = ChangeKind::Added; // copies surface as additions
            fc.new_path = path2;
            fc.old_blob = kZeroSha;
            break;
        default:
            fc.kind = ChangeKind::Modified;
            fc.old_path = path1;
            fc.new_path = path1;
            break;
        }
        if (fc.old_blob == kZeroSha) fc.old_blob.clear();
        if (fc.new_blob == kZeroSha) fc.new_blob.clear();
        changes.push_back(std::move(fc));
    }
    return changes;
}

std::string GitRepo::read_blob(const std::string& blob_id) {
    if (!cat_file_)
        cat_file_ = std::make_unique<PipeProcess>(
            std::vector<std::string>{"git", "-C", root_, "cat-file", "--batch"});
    cat_file_->write_line(blob_id);
    std::string header;
    if (!cat_file_->read_line(header)) throw ObjectReadFailure(blob_id);
    // header: "<sha> <type> <size>" or "<id> missing"
    auto fields = split(header, ' ');
    if (fields.size() < 3 || fields[1] == "missing") throw ObjectReadFailure(blob_id);
    std::size_t size = std::strtoull(fields[2].c_str(), nullptr, 10);
    std::string data;
    if (!cat_file_->read_exact(size + 1, data)) throw ObjectReadFailure(blob_id); // + trailing \n
    data.pop_back();
    return data;
}

} // namespace refdiff
