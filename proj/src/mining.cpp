#include "refdiff/mining.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <map>
#include <mutex>
#include <set>
#include <thread>

namespace refdiff {

std::int64_t percentile_ns(std::vector<std::int64_t> samples, double p) {
    if (samples.empty()) return 0;
    std::sort(samples.begin(), samples.end());
    double rank = p * static_cast<double>(samples.size() - 1);
    std::size_t lo = static_cast<std::size_t>(rank);
    std::size_t hi = std::min(lo + 1, samples.size() - 1);
    double frac = rank - static_cast<double>(lo);
    return static_cast<std::int64_t>(static_cast<double>(samples[lo]) * (1.0 - frac) +
                                     static_cast<double>(samples[hi]) * frac);
}

TimingStats timing_stats(const std::vector<std::int64_t>& samples) {
    TimingStats stats;
    if (samples.empty()) return stats;
    stats.median_ns = percentile_ns(samples, 0.5);
    stats.q1_ns = percentile_ns(samples, 0.25);
    stats.q3_ns = percentile_ns(samples, 0.75);
    stats.min_ns = *std::min_element(samples.begin(), samples.end());
    stats.max_ns = *std::max_element(samples.begin(), samples.end());
    return stats;
}

namespace {

bool has_extension(const std::string& path, const std::string& ext) {
    return path.size() >= ext.size() &&
           path.compare(path.size() - ext.size(), ext.size(), ext) == 0;
}

} // namespace

std::vector<ChangedFile> changed_files(GitRepo& repo, const CommitMeta& commit,
                                       const ToolConfig& config) {
    std::vector<ChangedFile> out;
    for (FileChange& change : repo.changed_entries(commit)) {
        bool src = (!change.old_path.empty() && has_extension(change.old_path, config.source_extension)) ||
                   (!change.new_path.empty() && has_extension(change.new_path, config.source_extension));
        if (!src) continue;
        ChangedFile cf;
        cf.change = change;
        if (!change.old_blob.empty()) cf.before_text = repo.read_blob(change.old_blob);
        if (!change.new_blob.empty()) cf.after_text = repo.read_blob(change.new_blob);
        out.push_back(std::move(cf));
    }
    // deterministic order regardless of git's internal sorting
    std::sort(out.begin(), out.end(), [](const ChangedFile& a, const ChangedFile& b) {
        return a.change.display_path() < b.change.display_path();
    });
    return out;
}

CommitReport mine_commit(GitRepo& repo, const CommitMeta& commit, const ToolConfig& config) {
    auto t0 = std::chrono::steady_clock::now();

    CommitReport report;
    report.sha = commit.sha;
    report.detector_version = detector_version(config);

    std::vector<ChangedFile> files = changed_files(repo, commit, config);

    std::vector<std::unique_ptr<CodeEntity>> before_owned, after_owned;
    std::vector<const CodeEntity*> before_roots, after_roots;
    for (const ChangedFile& cf : files) {
        ChangedFileEntry entry;
        entry.path = cf.change.display_path();
        if (cf.change.kind == ChangeKind::Renamed) entry.old_path = cf.change.old_path;
        entry.kind = cf.change.kind;
        report.changed_files.push_back(entry);
        try {
            std::unique_ptr<CodeEntity> before_root, after_root;
            if (cf.before_text)
                before_root = parse_source(*cf.before_text, cf.change.old_path.empty()
                                                                ? cf.change.new_path
                                                                : cf.change.old_path);
            if (cf.after_text)
                after_root = parse_source(*cf.after_text, cf.change.new_path.empty()
                                                              ? cf.change.old_path
                                                              : cf.change.new_path);
            if (before_root) {
                before_roots.push_back(before_root.get());
                before_owned.push_back(std::move(before_root));
            }
            if (after_root) {
                after_roots.push_back(after_root.get());
                after_owned.push_back(std::move(after_root));
            }
        } catch (const MalformedSource& e) {
            report.warnings.push_back(std::string("skipped unparsable file: ") + e.what());
        }
    }

    MatchThresholds thresholds{config.method_threshold, config.class_threshold};
    MatchSet match = match_snapshots(before_roots, after_roots, thresholds);
    report.records = detect(match, before_roots, after_roots, {config.extract_threshold});
    report.groups = group_related(report.records);

    auto t1 = std::chrono::steady_clock::now();
    report.processing_time_ns =
        std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count();
    return report;
}

MiningResult mine_history(const std::string& repo_path, const std::string& range_spec,
                          ReportCache* cache, const ToolConfig& config,
                          const MiningOptions& options) {
    GitRepo repo(repo_path);
    std::vector<CommitMeta> all = repo.enumerate_commits(range_spec);

    MiningResult result;
    result.summary.range_spec = range_spec;
    for (CommitMeta& meta : all) {
        if (meta.is_merge()) {
            ++result.summary.merges_excluded;
            continue;
        }
        result.commits.push_back(std::move(meta));
    }
    result.summary.commits_total = result.commits.size();
    result.reports.resize(result.commits.size());

    const std::string version = detector_version(config);
    std::vector<bool> cached(result.commits.size(), false);

    std::mutex cache_mutex;
    if (cache && !options.bypass_cache) {
        for (std::size_t i = 0; i < result.commits.size(); ++i) {
            auto hit = cache->get(result.commits[i].sha, version);
            if (hit) {
                result.reports[i] = std::move(*hit);
                cached[i] = true;
                ++result.summary.cache_hits;
            }
        }
    }

    std::vector<std::size_t> todo;
    for (std::size_t i = 0; i < result.commits.size(); ++i)
        if (!cached[i]) todo.push_back(i);

    unsigned workers = std::min<unsigned>(config.effective_workers(),
                                          std::max<std::size_t>(todo.size(), 1));
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr first_error;

    auto worker_fn = [&]() {
        try {
            GitRepo worker_repo(repo_path); // own read handle per worker
            for (;;) {
                std::size_t k = next.fetch_add(1);
                if (k >= todo.size()) return;
                std::size_t i = todo[k];
                CommitReport report = mine_commit(worker_repo, result.commits[i], config);
                if (cache && !options.bypass_cache) {
                    std::lock_guard<std::mutex> lock(cache_mutex);
                    try {
                        cache->put(report);
                    } catch (const StoreUnavailable& e) {
                        report.warnings.push_back(std::string("cache write failed: ") + e.what());
                    }
                }
                result.reports[i] = std::move(report);
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!first_error) first_error = std::current_exception();
        }
    };

    if (workers <= 1) {
        worker_fn();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker_fn);
        for (auto& t : pool) t.join();
    }
    if (first_error) std::rethrow_exception(first_error);

    result.summary.commits_mined = todo.size();

    std::map<std::string, std::size_t> counts;
    for (std::size_t i = 0; i < result.reports.size(); ++i) {
        const CommitReport& r = result.reports[i];
        result.summary.total_refactorings += r.records.size();
        for (const auto& rec : r.records) ++counts[to_string(rec.type)];
        result.summary.per_commit_ns.push_back(r.processing_time_ns);
    }
    for (auto& [name, n] : counts) result.summary.counts_by_type.emplace_back(name, n);
    result.summary.timing = timing_stats(result.summary.per_commit_ns);
    return result;
}

namespace {

// Union-find over qualified names linked by same-element records.
struct AliasChains {
    std::map<std::string, std::string> parent;

    std::string find(const std::string& x) {
        auto it = parent.find(x);
        if (it == parent.end()) {
            parent[x] = x;
            return x;
        }
        if (it->second == x) return x;
        std::string root = find(it->second);
        parent[x] = root;
        return root;
    }

    void unite(const std::string& a, const std::string& b) {
        std::string ra = find(a), rb = find(b);
        if (ra != rb) parent[ra] = rb;
    }
};

} // namespace

std::vector<ElementHistoryEntry> element_history(const std::vector<CommitMeta>& commits,
                                                 const std::vector<CommitReport>& reports,
                                                 const std::string& qualified_name) {
    AliasChains aliases;
    for (const CommitReport& report : reports)
        for (const RefactoringRecord& rec : report.records) {
            for (const auto& n : rec.before_names) aliases.find(n);
            for (const auto& n : rec.after_names) aliases.find(n);
            // the leading before/after names denote the same element across
            // the change (rename, move, signature change, donor method)
            if (!rec.before_names.empty() && !rec.after_names.empty())
                aliases.unite(rec.before_names.front(), rec.after_names.front());
        }

    if (!aliases.parent.count(qualified_name)) throw UnknownElement(qualified_name);
    std::string root = aliases.find(qualified_name);

    std::map<std::string, std::size_t> commit_order;
    std::map<std::string, std::int64_t> commit_time;
    for (std::size_t i = 0; i < commits.size(); ++i) {
        commit_order[commits[i].sha] = i;
        commit_time[commits[i].sha] = commits[i].author_time;
    }

    std::vector<ElementHistoryEntry> entries;
    for (const CommitReport& report : reports) {
        for (const RefactoringRecord& rec : report.records) {
            std::string matched_name;
            for (const auto& n : rec.before_names)
                if (aliases.find(n) == root) {
                    matched_name = n;
                    break;
                }
            if (matched_name.empty())
                for (const auto& n : rec.after_names)
                    if (aliases.find(n) == root) {
                        matched_name = n;
                        break;
                    }
            if (matched_name.empty()) continue;
            ElementHistoryEntry entry;
            entry.qualified_name = matched_name;
            entry.sha = report.sha;
            entry.author_time = commit_time.count(report.sha) ? commit_time[report.sha] : 0;
            entry.record = rec;
            entries.push_back(std::move(entry));
        }
    }
    std::stable_sort(entries.begin(), entries.end(),
                     [&](const ElementHistoryEntry& a, const ElementHistoryEntry& b) {
                         auto ia = commit_order.count(a.sha) ? commit_order[a.sha] : SIZE_MAX;
                         auto ib = commit_order.count(b.sha) ? commit_order[b.sha] : SIZE_MAX;
                         return ia < ib;
                     });
    if (entries.empty()) throw UnknownElement(qualified_name);
    return entries;
}

} // namespace refdiff
