#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "refdiff/errors.hpp"

namespace refdiff {

// Byte/line span of a declaration inside one file. Offsets are 0-based byte
// positions (end exclusive), lines are 1-based inclusive.
struct CodeRange {
    std::string file_path;
    int start_line = 1;
    int end_line = 1;
    std::size_t start_offset = 0;
    std::size_t end_offset = 0;

    bool operator==(const CodeRange&) const = default;
};

enum class Visibility { Public, Protected, Private, Package };

const char* to_string(Visibility v);

struct Signature {
    std::string name;
    std::vector<std::string> parameter_types;
    std::vector<std::string> parameter_names;
    std::string return_type;
    Visibility visibility = Visibility::Package;

    bool operator==(const Signature&) const = default;
};

// One statement of a normalized method body: comments and whitespace are
// gone, literals kept verbatim as single tokens. Line span is carried for
// diff-line attribution but does not take part in equality.
struct NormalizedStatement {
    std::vector<std::string> tokens;
    int start_line = 0;
    int end_line = 0;

    bool operator==(const NormalizedStatement& o) const { return tokens == o.tokens; }
};

struct StatementSeq {
    std::vector<NormalizedStatement> statements;

    bool operator==(const StatementSeq& o) const { return statements == o.statements; }
    bool empty() const { return statements.empty(); }
    std::size_t size() const { return statements.size(); }

    // Flattened single-space-joined rendering; normalizing it again yields
    // an equal sequence (idempotence).
    std::string to_text() const;
};

enum class EntityKind { Package, Class, Interface, Method, Field, Parameter };

const char* to_string(EntityKind k);

struct CodeEntity {
    EntityKind kind = EntityKind::Package;
    std::string simple_name;
    std::string qualified_name;
    CodeRange range;
    Signature signature;                    // methods only
    std::string declared_type;              // fields/parameters only
    std::vector<std::string> super_types;   // classes/interfaces only
    std::vector<std::unique_ptr<CodeEntity>> children;
    StatementSeq body;                      // methods only

    const CodeEntity* parent = nullptr;     // set by the parser, not owned

    bool is_type() const { return kind == EntityKind::Class || kind == EntityKind::Interface; }
};

// Parses one source file of the supported Java-like subset into an entity
// tree rooted at a package entity. Throws MalformedSource when top-level
// structure cannot be bracket-matched. Unrecognized constructs inside method
// bodies are absorbed into the enclosing body's statement sequence.
std::unique_ptr<CodeEntity> parse_source(const std::string& text, const std::string& path);

// Normalizes raw body text: strips comments and whitespace, splits statements
// at paren-level-zero semicolons and at block braces. Total over any input.
// first_line shifts reported statement lines (1 = text starts at line 1).
StatementSeq normalize_body(const std::string& text, int first_line = 1);

// pkg.Class.method(T1,T2) construction; parse_source fills this in for every
// entity, exposed separately for name assembly in other modules.
std::string method_qualified_name(const std::string& parent_qualified,
                                  const std::string& simple_name,
                                  const std::vector<std::string>& parameter_types);

// Depth-first traversal helper.
void visit_entities(const CodeEntity& root, const std::function<void(const CodeEntity&)>& fn);

} // namespace refdiff
