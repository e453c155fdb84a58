#pragma once

#include <iosfwd>
#include <string>

#include "refdiff/config.hpp"

namespace refdiff::cli {

// Stable exit-code contract.
enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kNotARepository = 2,
    kUnknownRevision = 3,
    kFileNotInCommit = 4,
    kRecordOutOfRange = 5,
    kCacheEmpty = 6,
    kUnknownElement = 7,
};

enum class OutputFormat { Text, Json };

struct GlobalOptions {
    std::string repo = ".";
    OutputFormat format = OutputFormat::Text;
    bool use_color = false;
    std::string config_path; // explicit --config; empty = repo default
};

// Loads the repo config and applies flag overrides (negative numbers mean
// "not set on the command line").
struct ConfigOverrides {
    double method_threshold = -1;
    double class_threshold = -1;
    double extract_threshold = -1;
    int workers = -1;
    std::string extension;
};

ToolConfig resolve_config(const GlobalOptions& global, const ConfigOverrides& overrides);

int run_mine(const GlobalOptions& global, const ToolConfig& config, const std::string& range,
             std::ostream& out, std::ostream& err);

int run_log(const GlobalOptions& global, const ToolConfig& config, const std::string& commit,
            std::ostream& out, std::ostream& err);

int run_diff(const GlobalOptions& global, const ToolConfig& config, const std::string& commit,
             const std::string& file, bool no_fold, std::ostream& out, std::ostream& err);

int run_show(const GlobalOptions& global, const ToolConfig& config, const std::string& commit,
             int record_index, std::ostream& out, std::ostream& err);

int run_history(const GlobalOptions& global, const ToolConfig& config,
                const std::string& element, std::ostream& out, std::ostream& err);

int run_bench(const GlobalOptions& global, const ToolConfig& config, const std::string& range,
              int reps, const std::string& out_file, std::ostream& out, std::ostream& err);

int run_cache_clear(const GlobalOptions& global, const ToolConfig& config, std::ostream& out,
                    std::ostream& err);

// Cache directory for a repo under the given config.
std::string cache_directory(const std::string& repo_root, const ToolConfig& config);

} // namespace refdiff::cli
