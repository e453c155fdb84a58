#include "refdiff/config.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace refdiff {

void ToolConfig::validate() const {
    auto check01 = [](double v, const char* name) {
        if (!(v > 0.0 && v <= 1.0))
            throw ConfigError(std::string(name) + " must be in (0,1], got " + std::to_string(v));
    };
    check01(method_threshold, "method_threshold");
    check01(class_threshold, "class_threshold");
    check01(extract_threshold, "extract_threshold");
    if (source_extension.empty() || source_extension[0] != '.')
        throw ConfigError("source_extension must start with '.'");
}

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::string unquote(const std::string& s) {
    if (s.size() >= 2 && ((s.front() == '"' && s.back() == '"') ||
                          (s.front() == '\'' && s.back() == '\'')))
        return s.substr(1, s.size() - 2);
    return s;
}

double parse_double(const std::string& v, const std::string& key) {
    try {
        std::size_t used = 0;
        double d = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError("bad numeric value for " + key + ": " + v);
    }
}

} // namespace

ToolConfig parse_config_text(const std::string& text, const ToolConfig& base) {
    ToolConfig cfg = base;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == '[') continue;
        auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
        std::string key = trim(t.substr(0, eq));
        std::string value = unquote(trim(t.substr(eq + 1)));
        if (key == "extension" || key == "source_extension") {
            cfg.source_extension = value;
        } else if (key == "method_threshold") {
            cfg.method_threshold = parse_double(value, key);
        } else if (key == "class_threshold") {
            cfg.class_threshold = parse_double(value, key);
        } else if (key == "extract_threshold") {
            cfg.extract_threshold = parse_double(value, key);
        } else if (key == "workers") {
            cfg.workers = static_cast<unsigned>(parse_double(value, key));
        } else if (key == "color") {
            if (value == "auto") cfg.color = ColorMode::Auto;
            else if (value == "always") cfg.color = ColorMode::Always;
            else if (value == "never") cfg.color = ColorMode::Never;
            else throw ConfigError("color must be auto, always or never");
        } else if (key == "cache_dir") {
            cfg.cache_dir = value;
        }
        // unknown keys ignored
    }
    cfg.validate();
    return cfg;
}

ToolConfig load_config(const std::string& repo_root, const std::string& explicit_path) {
    std::string path =
        explicit_path.empty() ? repo_root + "/" + kConfigFileName : explicit_path;
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        if (!explicit_path.empty()) throw ConfigError("cannot open config file: " + path);
        ToolConfig cfg;
        cfg.validate();
        return cfg;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

namespace {
std::uint64_t fnv1a(const std::string& data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}
} // namespace

std::string detector_version(const ToolConfig& config) {
    char spec[160];
    std::snprintf(spec, sizeof spec, "ext=%s;mt=%.6g;ct=%.6g;et=%.6g",
                  config.source_extension.c_str(), config.method_threshold,
                  config.class_threshold, config.extract_threshold);
    char out[64];
    std::snprintf(out, sizeof out, "%s+%08llx", kToolVersion,
                  static_cast<unsigned long long>(fnv1a(spec) & 0xffffffffull));
    return out;
}

} // namespace refdiff
