#pragma once

#include <optional>
#include <string>
#include <thread>

#include "refdiff/errors.hpp"

namespace refdiff {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kConfigFileName = "refdiff-insight.toml";

enum class ColorMode { Auto, Always, Never };

struct ToolConfig {
    std::string source_extension = ".java";
    double method_threshold = 0.5;
    double class_threshold = 0.5;
    double extract_threshold = 0.8;
    unsigned workers = 0; // 0 = hardware concurrency
    ColorMode color = ColorMode::Auto;
    std::string cache_dir; // empty = <repo>/.refdiff-insight/cache

    unsigned effective_workers() const {
        if (workers) return workers;
        unsigned hw = std::thread::hardware_concurrency();
        return hw ? hw : 1;
    }

    void validate() const; // throws ConfigError
};

// Key/value config file: `key = value`, '#' comments. Unknown keys are
// ignored so configs stay forward compatible.
ToolConfig parse_config_text(const std::string& text, const ToolConfig& base = {});

// Loads <repo>/refdiff-insight.toml when present; base defaults otherwise.
ToolConfig load_config(const std::string& repo_root, const std::string& explicit_path = {});

// Tool version plus a hash of every rule-affecting setting, so threshold or
// grammar tweaks invalidate cached reports transparently.
std::string detector_version(const ToolConfig& config);

} // namespace refdiff
