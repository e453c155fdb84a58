#include "refdiff/json_io.hpp"

#include <stdexcept>

namespace refdiff {

using nlohmann::json;

json to_json(const CodeRange& r) {
    return json{{"file", r.file_path},
                {"start_line", r.start_line},
                {"end_line", r.end_line},
                {"start_offset", r.start_offset},
                {"end_offset", r.end_offset}};
}

CodeRange code_range_from_json(const json& j) {
    CodeRange r;
    r.file_path = j.at("file").get<std::string>();
    r.start_line = j.at("start_line").get<int>();
    r.end_line = j.at("end_line").get<int>();
    r.start_offset = j.at("start_offset").get<std::size_t>();
    r.end_offset = j.at("end_offset").get<std::size_t>();
    return r;
}

namespace {

json side_to_json(const std::vector<std::string>& names, const std::vector<CodeRange>& ranges) {
    json arr = json::array();
    for (std::size_t i = 0; i < names.size(); ++i) {
        json e{{"name", names[i]}};
        e["range"] = i < ranges.size() ? to_json(ranges[i]) : json();
        arr.push_back(std::move(e));
    }
    return arr;
}

void side_from_json(const json& arr, std::vector<std::string>& names,
                    std::vector<CodeRange>& ranges) {
    for (const auto& e : arr) {
        names.push_back(e.at("name").get<std::string>());
        ranges.push_back(code_range_from_json(e.at("range")));
    }
}

} // namespace

json to_json(const RefactoringRecord& r) {
    json j{{"type", to_string(r.type)},
           {"description", r.description},
           {"element_level", to_string(r.element_level)},
           {"pure", r.pure},
           {"before", side_to_json(r.before_names, r.before_ranges)},
           {"after", side_to_json(r.after_names, r.after_ranges)}};
    if (!r.group_key.empty()) j["group_key"] = r.group_key;
    return j;
}

RefactoringRecord record_from_json(const json& j) {
    RefactoringRecord r;
    auto type = refactoring_type_from_string(j.at("type").get<std::string>());
    if (!type) throw std::invalid_argument("unknown refactoring type in record");
    r.type = *type;
    r.description = j.at("description").get<std::string>();
    r.element_level = element_level_of(r.type);
    r.pure = j.at("pure").get<bool>();
    side_from_json(j.at("before"), r.before_names, r.before_ranges);
    side_from_json(j.at("after"), r.after_names, r.after_ranges);
    if (j.contains("group_key")) r.group_key = j.at("group_key").get<std::string>();
    return r;
}

json to_json(const CommitReport& report) {
    json records = json::array();
    for (const auto& r : report.records) records.push_back(to_json(r));
    json groups = json::array();
    for (const auto& g : report.groups) {
        json jg{{"records", g.record_indexes}};
        if (!g.group_key.empty()) jg["key"] = g.group_key;
        groups.push_back(std::move(jg));
    }
    json files = json::array();
    for (const auto& f : report.changed_files) {
        json jf{{"path", f.path}, {"change", to_string(f.kind)}};
        if (!f.old_path.empty()) jf["old_path"] = f.old_path;
        files.push_back(std::move(jf));
    }
    return json{{"sha", report.sha},
                {"detector_version", report.detector_version},
                {"records", std::move(records)},
                {"groups", std::move(groups)},
                {"changed_files", std::move(files)},
                {"warnings", report.warnings},
                {"processing_time_ns", report.processing_time_ns}};
}

namespace {
ChangeKind change_kind_from_string(const std::string& s) {
    if (s == "added") return ChangeKind::Added;
    if (s == "deleted") return ChangeKind::Deleted;
    if (s == "renamed") return ChangeKind::Renamed;
    return ChangeKind::Modified;
}
} // namespace

CommitReport commit_report_from_json(const json& j) {
    CommitReport report;
    report.sha = j.at("sha").get<std::string>();
    report.detector_version = j.at("detector_version").get<std::string>();
    for (const auto& r : j.at("records")) report.records.push_back(record_from_json(r));
    for (const auto& g : j.at("groups")) {
        RefactoringGroup group;
        if (g.contains("key")) group.group_key = g.at("key").get<std::string>();
        group.record_indexes = g.at("records").get<std::vector<std::size_t>>();
        report.groups.push_back(std::move(group));
    }
    for (const auto& f : j.at("changed_files")) {
        ChangedFileEntry e;
        e.path = f.at("path").get<std::string>();
        e.kind = change_kind_from_string(f.at("change").get<std::string>());
        if (f.contains("old_path")) e.old_path = f.at("old_path").get<std::string>();
        report.changed_files.push_back(std::move(e));
    }
    report.warnings = j.at("warnings").get<std::vector<std::string>>();
    report.processing_time_ns = j.at("processing_time_ns").get<std::int64_t>();
    return report;
}

namespace {

const char* to_string(LineKind k) {
    switch (k) {
    case LineKind::Context: return "context";
    case LineKind::Removed: return "removed";
    case LineKind::Added: return "added";
    }
    return "context";
}

const char* to_string(LineClass c) {
    switch (c) {
    case LineClass::Context: return "context";
    case LineClass::Refactoring: return "refactoring";
    case LineClass::Behavioral: return "behavioral";
    }
    return "context";
}

const char* to_string(LineHighlight h) {
    switch (h) {
    case LineHighlight::None: return "none";
    case LineHighlight::Added: return "added";
    case LineHighlight::Modified: return "modified";
    }
    return "none";
}

LineKind line_kind_from(const std::string& s) {
    if (s == "removed") return LineKind::Removed;
    if (s == "added") return LineKind::Added;
    return LineKind::Context;
}

LineClass line_class_from(const std::string& s) {
    if (s == "refactoring") return LineClass::Refactoring;
    if (s == "behavioral") return LineClass::Behavioral;
    return LineClass::Context;
}

LineHighlight highlight_from(const std::string& s) {
    if (s == "added") return LineHighlight::Added;
    if (s == "modified") return LineHighlight::Modified;
    return LineHighlight::None;
}

} // namespace

json to_json(const AnnotatedDiff& d) {
    json hunks = json::array();
    for (const auto& h : d.hunks) {
        json lines = json::array();
        for (const auto& l : h.lines) {
            lines.push_back(json{{"kind", to_string(l.kind)},
                                 {"text", l.text},
                                 {"classification", to_string(l.classification)},
                                 {"highlight", to_string(l.highlight)},
                                 {"before_line", l.before_line},
                                 {"after_line", l.after_line}});
        }
        hunks.push_back(json{{"before_start", h.before_start},
                             {"before_count", h.before_count},
                             {"after_start", h.after_start},
                             {"after_count", h.after_count},
                             {"lines", std::move(lines)}});
    }
    json folds = json::array();
    for (const auto& f : d.fold_regions) {
        folds.push_back(json{{"pane", f.pane == PaneSide::Before ? "before" : "after"},
                             {"start_line", f.start_line},
                             {"end_line", f.end_line},
                             {"hint", f.hint},
                             {"record", f.record_ref}});
    }
    return json{{"before_path", d.before_path},
                {"after_path", d.after_path},
                {"hunks", std::move(hunks)},
                {"folds", std::move(folds)}};
}

AnnotatedDiff annotated_diff_from_json(const json& j) {
    AnnotatedDiff d;
    d.before_path = j.at("before_path").get<std::string>();
    d.after_path = j.at("after_path").get<std::string>();
    for (const auto& jh : j.at("hunks")) {
        DiffHunk h;
        h.before_start = jh.at("before_start").get<int>();
        h.before_count = jh.at("before_count").get<int>();
        h.after_start = jh.at("after_start").get<int>();
        h.after_count = jh.at("after_count").get<int>();
        for (const auto& jl : jh.at("lines")) {
            DiffLine l;
            l.kind = line_kind_from(jl.at("kind").get<std::string>());
            l.text = jl.at("text").get<std::string>();
            l.classification = line_class_from(jl.at("classification").get<std::string>());
            l.highlight = highlight_from(jl.at("highlight").get<std::string>());
            l.before_line = jl.at("before_line").get<int>();
            l.after_line = jl.at("after_line").get<int>();
            h.lines.push_back(std::move(l));
        }
        d.hunks.push_back(std::move(h));
    }
    for (const auto& jf : j.at("folds")) {
        FoldRegion f;
        f.pane = jf.at("pane").get<std::string>() == "before" ? PaneSide::Before : PaneSide::After;
        f.start_line = jf.at("start_line").get<int>();
        f.end_line = jf.at("end_line").get<int>();
        f.hint = jf.at("hint").get<std::string>();
        f.record_ref = jf.at("record").get<int>();
        d.fold_regions.push_back(std::move(f));
    }
    return d;
}

json to_json(const MiningSummary& s) {
    json counts = json::object();
    for (const auto& [name, n] : s.counts_by_type) counts[name] = n;
    return json{{"range", s.range_spec},
                {"commits_total", s.commits_total},
                {"commits_mined", s.commits_mined},
                {"cache_hits", s.cache_hits},
                {"merges_excluded", s.merges_excluded},
                {"total_refactorings", s.total_refactorings},
                {"counts_by_type", std::move(counts)},
                {"timing",
                 json{{"median_ns", s.timing.median_ns},
                      {"q1_ns", s.timing.q1_ns},
                      {"q3_ns", s.timing.q3_ns},
                      {"min_ns", s.timing.min_ns},
                      {"max_ns", s.timing.max_ns}}}};
}

} // namespace refdiff
