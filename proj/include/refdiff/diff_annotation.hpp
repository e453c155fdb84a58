#pragma once

#include <string>
#include <vector>

#include "refdiff/detection.hpp"

namespace refdiff {

enum class LineKind { Context, Removed, Added };
enum class LineClass { Context, Refactoring, Behavioral };
enum class LineHighlight { None, Added, Modified };

struct DiffLine {
    LineKind kind = LineKind::Context;
    std::string text;
    LineClass classification = LineClass::Context;
    LineHighlight highlight = LineHighlight::None;
    int before_line = 0; // 0 when the line does not exist on that side
    int after_line = 0;
};

struct DiffHunk {
    int before_start = 1;
    int before_count = 0;
    int after_start = 1;
    int after_count = 0;
    std::vector<DiffLine> lines;
};

struct FoldRegion {
    PaneSide pane = PaneSide::Before;
    int start_line = 1;
    int end_line = 1;
    std::string hint;
    int record_ref = -1; // index into the commit's records, -1 after merges of distinct records

    bool operator==(const FoldRegion&) const = default;
};

struct AnnotatedDiff {
    std::string before_path;
    std::string after_path;
    std::vector<DiffHunk> hunks;
    std::vector<FoldRegion> fold_regions;
};

struct RenderOptions {
    bool color = false;
    bool fold = true;
};

// Line-level LCS diff with three context lines per hunk. Identical inputs
// produce an empty hunk list.
std::vector<DiffHunk> compute_diff(const std::string& before_text, const std::string& after_text,
                                   int context_lines = 3);

// Marks every changed line as refactoring or behavioral in place. A line is
// refactoring when a record's range covers it and either the record is pure
// or the line belongs to the statement-LCS-unchanged portion of the edit.
void classify_lines(std::vector<DiffHunk>& hunks, const std::vector<RefactoringRecord>& records,
                    const std::string& before_path, const std::string& after_path,
                    const std::string& before_text, const std::string& after_text);

// One fold candidate per method-level record range whose changed lines are
// all classified refactoring; overlapping candidates merge with "; " hints.
std::vector<FoldRegion> fold_regions(const std::vector<RefactoringRecord>& records,
                                     const std::vector<DiffHunk>& hunks,
                                     const std::string& before_path,
                                     const std::string& after_path);

// Convenience composition of the three steps above.
AnnotatedDiff annotate_file(const std::string& before_text, const std::string& after_text,
                            const std::string& before_path, const std::string& after_path,
                            const std::vector<RefactoringRecord>& records);

// Unified-style text rendering; fold regions collapse to a single hint line.
std::string render_text(const AnnotatedDiff& diff, const RenderOptions& options);

} // namespace refdiff
