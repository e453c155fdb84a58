#include "refdiff/diff_annotation.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "refdiff/matching.hpp"

namespace refdiff {

namespace {

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t nl = text.find('\n', start);
        if (nl == std::string::npos) {
            lines.push_back(text.substr(start));
            break;
        }
        lines.push_back(text.substr(start, nl - start));
        start = nl + 1;
    }
    return lines;
}

// Line-level LCS alignment via interning + DP with common prefix/suffix
// trimming. Returns matched (before_index, after_index) pairs, 0-based.
std::vector<std::pair<std::size_t, std::size_t>> line_lcs(const std::vector<std::string>& a,
                                                          const std::vector<std::string>& b) {
    std::size_t prefix = 0;
    while (prefix < a.size() && prefix < b.size() && a[prefix] == b[prefix]) ++prefix;
    std::size_t suffix = 0;
    while (suffix + prefix < a.size() && suffix + prefix < b.size() &&
           a[a.size() - 1 - suffix] == b[b.size() - 1 - suffix])
        ++suffix;

    std::map<std::string, int> dict;
    auto intern = [&](const std::vector<std::string>& v, std::size_t from, std::size_t to) {
        std::vector<int> out;
        for (std::size_t i = from; i < to; ++i) {
            auto [it, _] = dict.emplace(v[i], static_cast<int>(dict.size()));
            out.push_back(it->second);
        }
        return out;
    };
    std::vector<int> ia = intern(a, prefix, a.size() - suffix);
    std::vector<int> ib = intern(b, prefix, b.size() - suffix);

    std::vector<std::vector<int>> dp(ia.size() + 1, std::vector<int>(ib.size() + 1, 0));
    for (std::size_t i = 1; i <= ia.size(); ++i)
        for (std::size_t j = 1; j <= ib.size(); ++j)
            dp[i][j] = ia[i - 1] == ib[j - 1] ? dp[i - 1][j - 1] + 1
                                              : std::max(dp[i - 1][j], dp[i][j - 1]);

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < prefix; ++i) pairs.emplace_back(i, i);
    std::vector<std::pair<std::size_t, std::size_t>> mid;
    std::size_t i = ia.size(), j = ib.size();
    while (i > 0 && j > 0) {
        if (ia[i - 1] == ib[j - 1]) {
            mid.emplace_back(prefix + i - 1, prefix + j - 1);
            --i;
            --j;
        } else if (dp[i - 1][j] >= dp[i][j - 1]) {
            --i;
        } else {
            --j;
        }
    }
    std::reverse(mid.begin(), mid.end());
    pairs.insert(pairs.end(), mid.begin(), mid.end());
    for (std::size_t k = suffix; k > 0; --k)
        pairs.emplace_back(a.size() - k, b.size() - k);
    return pairs;
}

} // namespace

std::vector<DiffHunk> compute_diff(const std::string& before_text, const std::string& after_text,
                                   int context_lines) {
    std::vector<std::string> a = split_lines(before_text);
    std::vector<std::string> b = split_lines(after_text);
    auto matches = line_lcs(a, b);

    // Edit script: walk matches, emitting removed/added runs between them.
    struct Edit {
        LineKind kind;
        std::size_t a_index; // valid for Context/Removed
        std::size_t b_index; // valid for Context/Added
    };
    std::vector<Edit> script;
    std::size_t ai = 0, bi = 0;
    auto emit_gap = [&](std::size_t a_to, std::size_t b_to) {
        while (ai < a_to) script.push_back({LineKind::Removed, ai++, 0});
        while (bi < b_to) script.push_back({LineKind::Added, 0, bi++});
    };
    for (auto [ma, mb] : matches) {
        emit_gap(ma, mb);
        script.push_back({LineKind::Context, ai++, bi++});
    }
    emit_gap(a.size(), b.size());

    bool any_change = std::any_of(script.begin(), script.end(),
                                  [](const Edit& e) { return e.kind != LineKind::Context; });
    if (!any_change) return {};

    // Positions consumed on each side before script index k, so hunk starts
    // are O(1) even for hunks with no lines on one side.
    std::size_t n = script.size();
    std::vector<std::size_t> a_before(n + 1, 0), b_before(n + 1, 0);
    for (std::size_t k = 0; k < n; ++k) {
        a_before[k + 1] = a_before[k] + (script[k].kind != LineKind::Added ? 1 : 0);
        b_before[k + 1] = b_before[k] + (script[k].kind != LineKind::Removed ? 1 : 0);
    }

    // Group into hunks with the requested context window.
    std::vector<DiffHunk> hunks;
    std::size_t pos = 0;
    while (pos < n) {
        if (script[pos].kind == LineKind::Context) {
            ++pos;
            continue;
        }
        std::size_t start = pos >= static_cast<std::size_t>(context_lines)
                                ? pos - context_lines
                                : 0;
        // extend until a gap of more than 2*context consecutive context lines
        std::size_t end = pos;
        std::size_t last_change = pos;
        while (end < n) {
            if (script[end].kind != LineKind::Context) {
                last_change = end;
            } else if (end - last_change > static_cast<std::size_t>(2 * context_lines)) {
                break;
            }
            ++end;
        }
        end = std::min(n, last_change + 1 + static_cast<std::size_t>(context_lines));

        DiffHunk hunk;
        for (std::size_t k = start; k < end; ++k) {
            const Edit& e = script[k];
            DiffLine line;
            line.kind = e.kind;
            if (e.kind == LineKind::Context) {
                line.text = a[e.a_index];
                line.before_line = static_cast<int>(e.a_index) + 1;
                line.after_line = static_cast<int>(e.b_index) + 1;
            } else if (e.kind == LineKind::Removed) {
                line.text = a[e.a_index];
                line.before_line = static_cast<int>(e.a_index) + 1;
            } else {
                line.text = b[e.b_index];
                line.after_line = static_cast<int>(e.b_index) + 1;
            }
            if (e.kind != LineKind::Added) ++hunk.before_count;
            if (e.kind != LineKind::Removed) ++hunk.after_count;
            hunk.lines.push_back(std::move(line));
        }
        // unified-diff convention: a side with zero lines reports the line
        // before the edit position (0 at file start)
        hunk.before_start = hunk.before_count ? static_cast<int>(a_before[start]) + 1
                                              : static_cast<int>(a_before[start]);
        hunk.after_start = hunk.after_count ? static_cast<int>(b_before[start]) + 1
                                            : static_cast<int>(b_before[start]);
        hunks.push_back(std::move(hunk));
        pos = end;
    }

    // Mark modified pairs: a run of removed lines immediately followed by a
    // run of added lines pairs index-wise; excess added lines stay green.
    for (DiffHunk& hunk : hunks) {
        std::size_t k = 0;
        while (k < hunk.lines.size()) {
            if (hunk.lines[k].kind != LineKind::Removed) {
                if (hunk.lines[k].kind == LineKind::Added)
                    hunk.lines[k].highlight = LineHighlight::Added;
                ++k;
                continue;
            }
            std::size_t rem_begin = k;
            while (k < hunk.lines.size() && hunk.lines[k].kind == LineKind::Removed) ++k;
            std::size_t rem_end = k;
            std::size_t add_begin = k;
            while (k < hunk.lines.size() && hunk.lines[k].kind == LineKind::Added) ++k;
            std::size_t add_end = k;
            std::size_t pairs = std::min(rem_end - rem_begin, add_end - add_begin);
            for (std::size_t t = 0; t < pairs; ++t) {
                hunk.lines[rem_begin + t].highlight = LineHighlight::Modified;
                hunk.lines[add_begin + t].highlight = LineHighlight::Modified;
            }
            for (std::size_t t = add_begin + pairs; t < add_end; ++t)
                hunk.lines[t].highlight = LineHighlight::Added;
        }
    }
    return hunks;
}

namespace {

// Per-side view of one record's ranges within one file.
struct SideRanges {
    std::vector<const CodeRange*> ranges;
    bool covers(int line) const {
        for (const CodeRange* r : ranges)
            if (line >= r->start_line && line <= r->end_line) return true;
        return false;
    }
    bool empty() const { return ranges.empty(); }
};

SideRanges side_ranges(const std::vector<CodeRange>& ranges, const std::string& path) {
    SideRanges out;
    for (const CodeRange& r : ranges)
        if (r.file_path == path) out.ranges.push_back(&r);
    return out;
}

struct LineSpan {
    int start = 0;
    int end = 0;
};

// Statement spans of the text inside a record side, split into the spans of
// statements that the statement-level LCS kept (unchanged) and all spans.
struct StatementSpans {
    std::vector<LineSpan> matched;
    std::vector<LineSpan> all;

    bool in_matched(int line) const { return contains(matched, line); }
    bool in_any(int line) const { return contains(all, line); }

    static bool contains(const std::vector<LineSpan>& spans, int line) {
        for (const LineSpan& s : spans)
            if (line >= s.start && line <= s.end) return true;
        return false;
    }
};

StatementSeq normalize_side(const SideRanges& side, const std::string& text) {
    StatementSeq out;
    for (const CodeRange* r : side.ranges) {
        std::size_t from = std::min(r->start_offset, text.size());
        std::size_t to = std::min(r->end_offset, text.size());
        if (to <= from) continue;
        StatementSeq part = normalize_body(text.substr(from, to - from), r->start_line);
        for (auto& st : part.statements) out.statements.push_back(std::move(st));
    }
    return out;
}

} // namespace

void classify_lines(std::vector<DiffHunk>& hunks, const std::vector<RefactoringRecord>& records,
                    const std::string& before_path, const std::string& after_path,
                    const std::string& before_text, const std::string& after_text) {
    struct RecordView {
        SideRanges before;
        SideRanges after;
        bool pure = false;
        StatementSpans before_spans;
        StatementSpans after_spans;
    };
    std::vector<RecordView> views;
    for (const RefactoringRecord& rec : records) {
        RecordView v;
        v.before = side_ranges(rec.before_ranges, before_path);
        v.after = side_ranges(rec.after_ranges, after_path);
        if (v.before.empty() && v.after.empty()) continue;
        v.pure = rec.pure;
        if (!rec.pure) {
            StatementSeq sb = normalize_side(v.before, before_text);
            StatementSeq sa = normalize_side(v.after, after_text);
            auto lcs = statement_lcs(sb, sa);
            std::set<std::size_t> mb, ma;
            for (auto [i, j] : lcs) {
                mb.insert(i);
                ma.insert(j);
            }
            for (std::size_t i = 0; i < sb.size(); ++i) {
                LineSpan span{sb.statements[i].start_line, sb.statements[i].end_line};
                v.before_spans.all.push_back(span);
                if (mb.count(i)) v.before_spans.matched.push_back(span);
            }
            for (std::size_t j = 0; j < sa.size(); ++j) {
                LineSpan span{sa.statements[j].start_line, sa.statements[j].end_line};
                v.after_spans.all.push_back(span);
                if (ma.count(j)) v.after_spans.matched.push_back(span);
            }
        }
        views.push_back(std::move(v));
    }

    auto classify = [&](int line, bool before_side) {
        for (const RecordView& v : views) {
            const SideRanges& side = before_side ? v.before : v.after;
            if (!side.covers(line)) continue;
            if (v.pure) return LineClass::Refactoring;
            const StatementSpans& spans = before_side ? v.before_spans : v.after_spans;
            if (spans.in_matched(line) || !spans.in_any(line)) return LineClass::Refactoring;
        }
        return LineClass::Behavioral;
    };

    for (DiffHunk& hunk : hunks)
        for (DiffLine& line : hunk.lines) {
            if (line.kind == LineKind::Context) {
                line.classification = LineClass::Context;
            } else if (line.kind == LineKind::Removed) {
                line.classification = classify(line.before_line, true);
            } else {
                line.classification = classify(line.after_line, false);
            }
        }
}

std::vector<FoldRegion> fold_regions(const std::vector<RefactoringRecord>& records,
                                     const std::vector<DiffHunk>& hunks,
                                     const std::string& before_path,
                                     const std::string& after_path) {
    // Changed lines per pane, with their classification.
    std::map<int, LineClass> changed_before, changed_after;
    for (const DiffHunk& hunk : hunks)
        for (const DiffLine& line : hunk.lines) {
            if (line.kind == LineKind::Removed) changed_before[line.before_line] = line.classification;
            if (line.kind == LineKind::Added) changed_after[line.after_line] = line.classification;
        }

    auto all_refactoring = [](const std::map<int, LineClass>& changed, int start, int end) {
        auto it = changed.lower_bound(start);
        for (; it != changed.end() && it->first <= end; ++it)
            if (it->second != LineClass::Refactoring) return false;
        return true;
    };

    std::vector<FoldRegion> candidates;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const RefactoringRecord& rec = records[i];
        if (rec.element_level != ElementLevel::Method) continue;
        for (const CodeRange& r : rec.before_ranges) {
            if (r.file_path != before_path) continue;
            if (!all_refactoring(changed_before, r.start_line, r.end_line)) continue;
            candidates.push_back(
                {PaneSide::Before, r.start_line, r.end_line, describe(rec), static_cast<int>(i)});
        }
        for (const CodeRange& r : rec.after_ranges) {
            if (r.file_path != after_path) continue;
            if (!all_refactoring(changed_after, r.start_line, r.end_line)) continue;
            candidates.push_back(
                {PaneSide::After, r.start_line, r.end_line, describe(rec), static_cast<int>(i)});
        }
    }

    // Merge overlapping regions per pane; adjacent regions stay separate.
    auto merge_pane = [](std::vector<FoldRegion> regions) {
        std::sort(regions.begin(), regions.end(), [](const FoldRegion& x, const FoldRegion& y) {
            if (x.start_line != y.start_line) return x.start_line < y.start_line;
            return x.end_line < y.end_line;
        });
        std::vector<FoldRegion> out;
        for (FoldRegion& r : regions) {
            if (!out.empty() && r.start_line <= out.back().end_line) {
                out.back().end_line = std::max(out.back().end_line, r.end_line);
                if (r.hint != out.back().hint) out.back().hint += "; " + r.hint;
                if (out.back().record_ref != r.record_ref) out.back().record_ref = -1;
            } else {
                out.push_back(std::move(r));
            }
        }
        return out;
    };
    std::vector<FoldRegion> before_pane, after_pane;
    for (FoldRegion& r : candidates)
        (r.pane == PaneSide::Before ? before_pane : after_pane).push_back(std::move(r));
    std::vector<FoldRegion> out = merge_pane(std::move(before_pane));
    auto merged_after = merge_pane(std::move(after_pane));
    out.insert(out.end(), merged_after.begin(), merged_after.end());
    return out;
}

AnnotatedDiff annotate_file(const std::string& before_text, const std::string& after_text,
                            const std::string& before_path, const std::string& after_path,
                            const std::vector<RefactoringRecord>& records) {
    AnnotatedDiff diff;
    diff.before_path = before_path;
    diff.after_path = after_path;
    diff.hunks = compute_diff(before_text, after_text);
    classify_lines(diff.hunks, records, before_path, after_path, before_text, after_text);
    diff.fold_regions = fold_regions(records, diff.hunks, before_path, after_path);
    return diff;
}

namespace {

constexpr const char* kGreen = "\x1b[32m";
constexpr const char* kBlue = "\x1b[34m";
constexpr const char* kReset = "\x1b[0m";

bool line_in_region(const DiffLine& line, const FoldRegion& region) {
    if (region.pane == PaneSide::Before)
        return line.before_line >= region.start_line && line.before_line <= region.end_line &&
               line.before_line != 0;
    return line.after_line >= region.start_line && line.after_line <= region.end_line &&
           line.after_line != 0;
}

} // namespace

std::string render_text(const AnnotatedDiff& diff, const RenderOptions& options) {
    std::string out;
    if (diff.hunks.empty()) return out;
    out += "--- a/" + diff.before_path + "\n";
    out += "+++ b/" + diff.after_path + "\n";
    for (std::size_t h = 0; h < diff.hunks.size(); ++h) {
        const DiffHunk& hunk = diff.hunks[h];
        out += "@@ -" + std::to_string(hunk.before_start) + "," + std::to_string(hunk.before_count) +
               " +" + std::to_string(hunk.after_start) + "," + std::to_string(hunk.after_count) +
               " @@\n";
        std::set<const FoldRegion*> printed;
        for (const DiffLine& line : hunk.lines) {
            const FoldRegion* fold = nullptr;
            if (options.fold) {
                for (const FoldRegion& region : diff.fold_regions) {
                    if (line_in_region(line, region)) {
                        fold = &region;
                        break;
                    }
                }
            }
            if (fold) {
                if (!printed.count(fold)) {
                    printed.insert(fold);
                    int n = fold->end_line - fold->start_line + 1;
                    out += "⟪ folded: " + fold->hint + " (" + std::to_string(n) +
                           " lines) ⟫\n";
                }
                continue;
            }
            char marker = line.kind == LineKind::Removed ? '-'
                          : line.kind == LineKind::Added ? '+'
                                                         : ' ';
            const char* color = nullptr;
            if (options.color) {
                if (line.highlight == LineHighlight::Added) color = kGreen;
                else if (line.highlight == LineHighlight::Modified) color = kBlue;
            }
            if (color) out += color;
            out += marker;
            out += line.text;
            if (color) out += kReset;
            out += "\n";
        }
    }
    return out;
}

} // namespace refdiff
