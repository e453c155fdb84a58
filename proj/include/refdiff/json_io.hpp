#pragma once

#include <json.hpp>

#include "refdiff/diff_annotation.hpp"
#include "refdiff/report.hpp"

namespace refdiff {

// Wire encodings shared by the CLI, the cache payloads and the tests.
// Enum values travel as their stable strings; see schema/report.schema.json.

nlohmann::json to_json(const CodeRange& range);
CodeRange code_range_from_json(const nlohmann::json& j);

nlohmann::json to_json(const RefactoringRecord& record);
RefactoringRecord record_from_json(const nlohmann::json& j);

nlohmann::json to_json(const CommitReport& report);
CommitReport commit_report_from_json(const nlohmann::json& j);

nlohmann::json to_json(const AnnotatedDiff& diff);
AnnotatedDiff annotated_diff_from_json(const nlohmann::json& j);

nlohmann::json to_json(const MiningSummary& summary);

} // namespace refdiff
