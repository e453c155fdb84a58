#include "refdiff/matching.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

namespace refdiff {

namespace {

// Maps statements to small integers so the LCS table works on ints.
std::pair<std::vector<int>, std::vector<int>> intern_statements(const StatementSeq& a,
                                                                const StatementSeq& b) {
    std::map<std::vector<std::string>, int> dict;
    auto intern = [&](const StatementSeq& s) {
        std::vector<int> out;
        out.reserve(s.size());
        for (const auto& st : s.statements) {
            auto [it, _] = dict.emplace(st.tokens, static_cast<int>(dict.size()));
            out.push_back(it->second);
        }
        return out;
    };
    auto ia = intern(a);
    auto ib = intern(b);
    return {std::move(ia), std::move(ib)};
}

std::vector<std::vector<int>> lcs_table(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<std::vector<int>> dp(a.size() + 1, std::vector<int>(b.size() + 1, 0));
    for (std::size_t i = 1; i <= a.size(); ++i)
        for (std::size_t j = 1; j <= b.size(); ++j)
            dp[i][j] = a[i - 1] == b[j - 1] ? dp[i - 1][j - 1] + 1
                                            : std::max(dp[i - 1][j], dp[i][j - 1]);
    return dp;
}

} // namespace

std::vector<std::pair<std::size_t, std::size_t>> statement_lcs(const StatementSeq& a,
                                                               const StatementSeq& b) {
    auto [ia, ib] = intern_statements(a, b);
    auto dp = lcs_table(ia, ib);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::size_t i = ia.size(), j = ib.size();
    while (i > 0 && j > 0) {
        if (ia[i - 1] == ib[j - 1]) {
            pairs.emplace_back(i - 1, j - 1);
            --i;
            --j;
        } else if (dp[i - 1][j] >= dp[i][j - 1]) {
            --i;
        } else {
            --j;
        }
    }
    std::reverse(pairs.begin(), pairs.end());
    return pairs;
}

SimilarityScore body_similarity(const StatementSeq& a, const StatementSeq& b) {
    if (a.empty() && b.empty()) return {1.0};
    if (a.empty() || b.empty()) return {0.0};
    auto [ia, ib] = intern_statements(a, b);
    auto dp = lcs_table(ia, ib);
    double lcs = dp[ia.size()][ib.size()];
    return {2.0 * lcs / static_cast<double>(a.size() + b.size())};
}

bool bodies_equal(const StatementSeq& a, const StatementSeq& b) {
    return a.statements == b.statements;
}

double class_member_overlap(const CodeEntity& before, const CodeEntity& after) {
    auto member_keys = [](const CodeEntity& c) {
        std::multiset<std::string> keys;
        for (const auto& ch : c.children) {
            if (ch->kind == EntityKind::Method) {
                std::string key = "m:" + ch->simple_name + "(";
                for (const auto& t : ch->signature.parameter_types) key += t + ",";
                key += "):" + ch->signature.return_type;
                keys.insert(std::move(key));
            } else if (ch->kind == EntityKind::Field) {
                keys.insert("f:" + ch->simple_name + ":" + ch->declared_type);
            }
        }
        return keys;
    };
    auto kb = member_keys(before);
    auto ka = member_keys(after);
    if (kb.empty() && ka.empty()) return 1.0;
    if (kb.empty() || ka.empty()) return 0.0;
    std::size_t shared = 0;
    for (const auto& k : kb) {
        auto it = ka.find(k);
        if (it != ka.end()) {
            ka.erase(it);
            ++shared;
        }
    }
    return static_cast<double>(shared) / static_cast<double>(std::max(kb.size(), ka.size() + shared));
}

namespace {

void collect(const std::vector<const CodeEntity*>& roots, std::vector<const CodeEntity*>& out) {
    for (const CodeEntity* root : roots) {
        visit_entities(*root, [&](const CodeEntity& e) {
            if (e.is_type() || e.kind == EntityKind::Method || e.kind == EntityKind::Field)
                out.push_back(&e);
        });
    }
    std::sort(out.begin(), out.end(), [](const CodeEntity* a, const CodeEntity* b) {
        if (a->qualified_name != b->qualified_name) return a->qualified_name < b->qualified_name;
        return a->range.file_path < b->range.file_path;
    });
}

struct Candidate {
    double score;
    const CodeEntity* before;
    const CodeEntity* after;
};

// Highest score first; ties by before then after qualified name.
bool candidate_order(const Candidate& x, const Candidate& y) {
    if (x.score != y.score) return x.score > y.score;
    if (x.before->qualified_name != y.before->qualified_name)
        return x.before->qualified_name < y.before->qualified_name;
    return x.after->qualified_name < y.after->qualified_name;
}

} // namespace

MatchSet match_snapshots(const std::vector<const CodeEntity*>& before_roots,
                         const std::vector<const CodeEntity*>& after_roots,
                         const MatchThresholds& thresholds) {
    std::vector<const CodeEntity*> before_all, after_all;
    collect(before_roots, before_all);
    collect(after_roots, after_all);

    MatchSet out;
    std::set<const CodeEntity*> claimed_after;

    // Phase 1: identical qualified name (and, for methods, identical signature).
    std::multimap<std::string, const CodeEntity*> after_by_name;
    for (const CodeEntity* e : after_all) after_by_name.emplace(e->qualified_name, e);

    std::vector<const CodeEntity*> leftover_before;
    for (const CodeEntity* b : before_all) {
        const CodeEntity* hit = nullptr;
        auto [lo, hi] = after_by_name.equal_range(b->qualified_name);
        for (auto it = lo; it != hi; ++it) {
            const CodeEntity* a = it->second;
            if (claimed_after.count(a) || a->kind != b->kind) continue;
            if (b->kind == EntityKind::Method && !(a->signature == b->signature)) continue;
            hit = a;
            break;
        }
        if (hit) {
            claimed_after.insert(hit);
            out.matched.push_back({b, hit, 1.0, false});
        } else {
            leftover_before.push_back(b);
        }
    }

    std::vector<const CodeEntity*> leftover_after;
    for (const CodeEntity* a : after_all)
        if (!claimed_after.count(a)) leftover_after.push_back(a);

    // Phase 2a: leftover methods by body similarity.
    std::vector<Candidate> cands;
    for (const CodeEntity* b : leftover_before) {
        if (b->kind != EntityKind::Method) continue;
        for (const CodeEntity* a : leftover_after) {
            if (a->kind != EntityKind::Method) continue;
            double s = body_similarity(b->body, a->body).value;
            if (s >= thresholds.method) cands.push_back({s, b, a});
        }
    }
    std::sort(cands.begin(), cands.end(), candidate_order);
    std::set<const CodeEntity*> taken;
    for (const Candidate& c : cands) {
        if (taken.count(c.before) || taken.count(c.after)) continue;
        taken.insert(c.before);
        taken.insert(c.after);
        out.matched.push_back({c.before, c.after, c.score, true});
    }

    // Phase 2b: leftover classes/interfaces by member overlap.
    cands.clear();
    for (const CodeEntity* b : leftover_before) {
        if (!b->is_type() || taken.count(b)) continue;
        for (const CodeEntity* a : leftover_after) {
            if (a->kind != b->kind || taken.count(a)) continue;
            double s = class_member_overlap(*b, *a);
            if (s >= thresholds.class_overlap) cands.push_back({s, b, a});
        }
    }
    std::sort(cands.begin(), cands.end(), candidate_order);
    for (const Candidate& c : cands) {
        if (taken.count(c.before) || taken.count(c.after)) continue;
        taken.insert(c.before);
        taken.insert(c.after);
        out.matched.push_back({c.before, c.after, c.score, true});
    }

    for (const CodeEntity* b : leftover_before)
        if (!taken.count(b)) out.removed.push_back(b);
    for (const CodeEntity* a : leftover_after)
        if (!taken.count(a)) out.added.push_back(a);

    auto by_name = [](const CodeEntity* a, const CodeEntity* b) {
        return a->qualified_name < b->qualified_name;
    };
    std::sort(out.removed.begin(), out.removed.end(), by_name);
    std::sort(out.added.begin(), out.added.end(), by_name);
    std::sort(out.matched.begin(), out.matched.end(), [](const EntityPair& x, const EntityPair& y) {
        return x.before->qualified_name < y.before->qualified_name;
    });
    return out;
}

} // namespace refdiff
