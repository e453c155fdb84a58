#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "refdiff/code_model.hpp"

namespace refdiff {

struct SimilarityScore {
    double value = 0.0; // in [0,1]
};

// Pairing of entities between the before- and after-snapshots of one commit.
// The universe covers classes, interfaces, methods and fields; package roots
// and parameters ride along with their owners.
struct EntityPair {
    const CodeEntity* before = nullptr;
    const CodeEntity* after = nullptr;
    double score = 1.0;
    bool phase2 = false; // paired by similarity rather than by identical name
};

struct MatchSet {
    std::vector<EntityPair> matched;
    std::vector<const CodeEntity*> removed;
    std::vector<const CodeEntity*> added;
};

struct MatchThresholds {
    double method = 0.5;
    double class_overlap = 0.5;
};

// Sørensen–Dice over whole-statement LCS: 2*LCS/(|a|+|b|).
// Both empty scores 1, empty vs non-empty scores 0.
SimilarityScore body_similarity(const StatementSeq& a, const StatementSeq& b);

// Indices into `a` and `b` of one longest common subsequence, computed over
// whole normalized statements. Deterministic for fixed inputs.
std::vector<std::pair<std::size_t, std::size_t>> statement_lcs(const StatementSeq& a,
                                                               const StatementSeq& b);

// Membership ratio used for phase-2 class pairing:
// |members matched by name+signature| / max(|before|,|after|).
double class_member_overlap(const CodeEntity& before, const CodeEntity& after);

// Phase 1 pairs identically-named entities (methods also need an identical
// signature). Phase 2 greedily pairs leftovers by descending similarity with
// ties broken by qualified name; methods need body similarity >= method
// threshold, classes member overlap >= class threshold.
MatchSet match_snapshots(const std::vector<const CodeEntity*>& before_roots,
                         const std::vector<const CodeEntity*>& after_roots,
                         const MatchThresholds& thresholds = {});

// Statement-identical check used for purity flags.
bool bodies_equal(const StatementSeq& a, const StatementSeq& b);

} // namespace refdiff
