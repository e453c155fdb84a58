#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "refdiff/code_model.hpp"
#include "refdiff/matching.hpp"

namespace refdiff {

// Closed catalog; the serialized names below are the stable wire strings.
enum class RefactoringType {
    RenameClass,
    MoveClass,
    RenameMethod,
    MoveMethod,
    MoveAndRenameMethod,
    ExtractMethod,
    InlineMethod,
    PullUpMethod,
    PushDownMethod,
    RenameParameter,
    AddParameter,
    RemoveParameter,
    ReorderParameters,
    ExtractSuperclass,
};

constexpr int kRefactoringTypeCount = 14;

const char* to_string(RefactoringType t);
std::optional<RefactoringType> refactoring_type_from_string(const std::string& s);

enum class ElementLevel { Package, Class, Method, Variable };

const char* to_string(ElementLevel l);
ElementLevel element_level_of(RefactoringType t);

struct RefactoringRecord {
    RefactoringType type = RefactoringType::RenameMethod;
    std::string description;
    ElementLevel element_level = ElementLevel::Method;
    std::vector<CodeRange> before_ranges;
    std::vector<CodeRange> after_ranges;
    std::vector<std::string> before_names;
    std::vector<std::string> after_names;
    bool pure = false;
    std::string group_key; // empty when the record groups alone

    bool operator==(const RefactoringRecord&) const = default;
};

struct RefactoringGroup {
    std::string group_key;
    std::vector<std::size_t> record_indexes; // into the commit's record list
};

enum class PaneSide { Before, After };

struct Pane {
    std::string file_path;
    CodeRange range;
    PaneSide side = PaneSide::Before;
};

using PaneLayout = std::vector<Pane>;

struct DetectionThresholds {
    double extract = 0.8; // extract/inline block similarity
};

// Applies the rule catalog in fixed priority order to a match set. Output is
// sorted by (element level, type, before names) and deterministic across
// runs and input file orderings.
std::vector<RefactoringRecord> detect(const MatchSet& match,
                                      const std::vector<const CodeEntity*>& before_roots,
                                      const std::vector<const CodeEntity*>& after_roots,
                                      const DetectionThresholds& thresholds = {});

// One-sentence human description; move-family descriptions state whether the
// body changed.
std::string describe(const RefactoringRecord& record);

// Extract Superclass records introducing the same parent, and Pull Up Method
// records with the same destination, group together; everything else stays a
// singleton. Group order follows the first member.
std::vector<RefactoringGroup> group_related(const std::vector<RefactoringRecord>& records);

// Two panes (before/after location) for most types; Extract/Inline Method
// need a third pane for the transient method.
PaneLayout pane_layout(const RefactoringRecord& record);

// Number of detect() invocations in this process; used to verify that warm
// cache paths never re-run detection.
std::uint64_t detect_invocation_count();

} // namespace refdiff
