#include "refdiff/detection.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <set>

namespace refdiff {

namespace {
std::atomic<std::uint64_t> g_detect_calls{0};
}

std::uint64_t detect_invocation_count() { return g_detect_calls.load(); }

const char* to_string(RefactoringType t) {
    switch (t) {
    case RefactoringType::RenameClass: return "RenameClass";
    case RefactoringType::MoveClass: return "MoveClass";
    case RefactoringType::RenameMethod: return "RenameMethod";
    case RefactoringType::MoveMethod: return "MoveMethod";
    case RefactoringType::MoveAndRenameMethod: return "MoveAndRenameMethod";
    case RefactoringType::ExtractMethod: return "ExtractMethod";
    case RefactoringType::InlineMethod: return "InlineMethod";
    case RefactoringType::PullUpMethod: return "PullUpMethod";
    case RefactoringType::PushDownMethod: return "PushDownMethod";
    case RefactoringType::RenameParameter: return "RenameParameter";
    case RefactoringType::AddParameter: return "AddParameter";
    case RefactoringType::RemoveParameter: return "RemoveParameter";
    case RefactoringType::ReorderParameters: return "ReorderParameters";
    case RefactoringType::ExtractSuperclass: return "ExtractSuperclass";
    }
    return "RenameMethod";
}

std::optional<RefactoringType> refactoring_type_from_string(const std::string& s) {
    for (int i = 0; i < kRefactoringTypeCount; ++i) {
        auto t = static_cast<RefactoringType>(i);
        if (s == to_string(t)) return t;
    }
    return std::nullopt;
}

const char* to_string(ElementLevel l) {
    switch (l) {
    case ElementLevel::Package: return "package";
    case ElementLevel::Class: return "class";
    case ElementLevel::Method: return "method";
    case ElementLevel::Variable: return "variable";
    }
    return "method";
}

ElementLevel element_level_of(RefactoringType t) {
    switch (t) {
    case RefactoringType::RenameClass:
    case RefactoringType::MoveClass:
    case RefactoringType::ExtractSuperclass:
        return ElementLevel::Class;
    case RefactoringType::RenameParameter:
    case RefactoringType::AddParameter:
    case RefactoringType::RemoveParameter:
        return ElementLevel::Variable;
    default:
        return ElementLevel::Method;
    }
}

namespace {

std::string parent_qualified(const CodeEntity& e) {
    return e.parent ? e.parent->qualified_name : std::string();
}

std::string method_display(const CodeEntity& m) {
    std::string out = m.simple_name + "(";
    for (std::size_t i = 0; i < m.signature.parameter_types.size(); ++i) {
        if (i) out += ",";
        out += m.signature.parameter_types[i];
    }
    out += ")";
    return out;
}

std::string package_label(const std::string& parent_q) {
    return parent_q.empty() ? std::string("default package") : std::string("package ") + parent_q;
}

std::string simple_of(const std::string& qualified) {
    // method names carry a parameter list; search before the '('
    auto paren = qualified.find('(');
    if (paren != std::string::npos) {
        auto dot = qualified.rfind('.', paren);
        return dot == std::string::npos ? qualified : qualified.substr(dot + 1);
    }
    auto pos = qualified.rfind('.');
    return pos == std::string::npos ? qualified : qualified.substr(pos + 1);
}

// Qualified name of the class that owns a method's qualified name.
std::string owner_of(const std::string& method_qualified) {
    auto paren = method_qualified.find('(');
    auto dot = method_qualified.rfind('.', paren == std::string::npos ? std::string::npos : paren);
    return dot == std::string::npos ? std::string() : method_qualified.substr(0, dot);
}

std::string parent_package_of(const std::string& class_qualified) {
    auto dot = class_qualified.rfind('.');
    return dot == std::string::npos ? std::string() : class_qualified.substr(0, dot);
}

std::string group_key_of(const RefactoringRecord& r) {
    if (r.type == RefactoringType::ExtractSuperclass)
        return "extract-superclass:" + r.after_names.at(0);
    if (r.type == RefactoringType::PullUpMethod)
        return "pull-up:" + owner_of(r.after_names.at(0));
    return {};
}

// Index of classes/interfaces in a snapshot for super-type resolution.
struct ClassIndex {
    std::map<std::string, const CodeEntity*> by_qualified;
    std::multimap<std::string, const CodeEntity*> by_simple;

    void add_roots(const std::vector<const CodeEntity*>& roots) {
        for (const CodeEntity* r : roots)
            visit_entities(*r, [&](const CodeEntity& e) {
                if (e.is_type()) {
                    by_qualified.emplace(e.qualified_name, &e);
                    by_simple.emplace(e.simple_name, &e);
                }
            });
    }

    // Resolves a declared super-type token (with any generic arguments
    // stripped) to a class of this snapshot. Unqualified names prefer the
    // referrer's package, then the lexicographically first candidate.
    const CodeEntity* resolve(const std::string& token, const std::string& referrer_pkg) const {
        std::string name = token.substr(0, token.find('<'));
        if (name.find('.') != std::string::npos) {
            auto it = by_qualified.find(name);
            return it == by_qualified.end() ? nullptr : it->second;
        }
        auto [lo, hi] = by_simple.equal_range(name);
        const CodeEntity* best = nullptr;
        for (auto it = lo; it != hi; ++it) {
            const CodeEntity* c = it->second;
            std::string pkg = parent_qualified(*c);
            if (pkg == referrer_pkg) return c;
            if (!best || c->qualified_name < best->qualified_name) best = c;
        }
        return best;
    }
};

bool declares_super(const CodeEntity& cls, const std::string& target_qualified,
                    const ClassIndex& index) {
    std::string pkg = parent_qualified(cls);
    for (const auto& t : cls.super_types) {
        const CodeEntity* resolved = index.resolve(t, pkg);
        if (resolved && resolved->qualified_name == target_qualified) return true;
    }
    return false;
}

// Maximal runs of `side` statements that have no LCS counterpart.
std::vector<std::pair<std::size_t, std::size_t>> unmatched_runs(
    const StatementSeq& seq, const std::vector<std::size_t>& matched_indexes) {
    std::set<std::size_t> matched(matched_indexes.begin(), matched_indexes.end());
    std::vector<std::pair<std::size_t, std::size_t>> runs; // [first, last]
    std::size_t i = 0;
    while (i < seq.size()) {
        if (matched.count(i)) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j + 1 < seq.size() && !matched.count(j + 1)) ++j;
        runs.emplace_back(i, j);
        i = j + 1;
    }
    return runs;
}

StatementSeq slice(const StatementSeq& seq, std::size_t first, std::size_t last) {
    StatementSeq out;
    for (std::size_t i = first; i <= last && i < seq.size(); ++i)
        out.statements.push_back(seq.statements[i]);
    return out;
}

bool has_call_token(const StatementSeq& body, const std::string& callee) {
    for (const auto& st : body.statements)
        for (std::size_t i = 0; i + 1 < st.tokens.size(); ++i)
            if (st.tokens[i] == callee && st.tokens[i + 1] == "(") return true;
    return false;
}

StatementSeq rename_tokens(const StatementSeq& body,
                           const std::map<std::string, std::string>& mapping) {
    StatementSeq out = body;
    for (auto& st : out.statements)
        for (auto& tok : st.tokens) {
            auto it = mapping.find(tok);
            if (it != mapping.end()) tok = it->second;
        }
    return out;
}

struct Detector {
    const MatchSet& match;
    const DetectionThresholds& thresholds;
    ClassIndex before_classes;
    ClassIndex after_classes;

    // class correspondence: before qualified name -> after qualified name
    std::map<std::string, std::string> class_map;
    // pairs by before qualified name for claim bookkeeping
    std::set<const CodeEntity*> claimed; // any constituent entity, either side

    std::vector<RefactoringRecord> records;

    bool is_claimed(const CodeEntity* e) const { return claimed.count(e) != 0; }
    void claim(const CodeEntity* e) { claimed.insert(e); }

    bool enclosing_corresponds(const CodeEntity& mb, const CodeEntity& ma) const {
        std::string b = parent_qualified(mb);
        std::string a = parent_qualified(ma);
        auto it = class_map.find(b);
        if (it != class_map.end()) return it->second == a;
        return b == a;
    }

    RefactoringRecord base_record(RefactoringType type) {
        RefactoringRecord r;
        r.type = type;
        r.element_level = element_level_of(type);
        return r;
    }

    void push(RefactoringRecord r) {
        r.group_key = group_key_of(r);
        r.description = describe(r);
        records.push_back(std::move(r));
    }

    // -- rule: Extract Superclass ------------------------------------------

    void run_extract_superclass() {
        for (const CodeEntity* s : match.added) {
            if (!s->is_type() || is_claimed(s)) continue;
            // pre-existing classes that gained s as a declared super type
            std::vector<const EntityPair*> gainers;
            for (const EntityPair& p : match.matched) {
                if (!p.before->is_type() || is_claimed(p.before)) continue;
                if (declares_super(*p.after, s->qualified_name, after_classes) &&
                    !declares_super(*p.before, s->qualified_name, before_classes))
                    gainers.push_back(&p);
            }
            if (gainers.empty()) continue;
            // every method of s must match a method of the gaining classes'
            // before versions (pulled up or copied up)
            bool all_methods_accounted = true;
            bool pure = true;
            for (const auto& m : s->children) {
                if (m->kind != EntityKind::Method) continue;
                bool found = false;
                for (const EntityPair* g : gainers) {
                    for (const auto& bm : g->before->children) {
                        if (bm->kind != EntityKind::Method) continue;
                        if (bm->simple_name == m->simple_name &&
                            bm->signature.parameter_types == m->signature.parameter_types &&
                            bm->signature.return_type == m->signature.return_type) {
                            found = true;
                            if (!bodies_equal(bm->body, m->body)) pure = false;
                            break;
                        }
                    }
                    if (found) break;
                }
                if (!found) {
                    all_methods_accounted = false;
                    break;
                }
            }
            if (!all_methods_accounted) continue;
            claim(s);
            for (const EntityPair* g : gainers) {
                claim(g->before);
                claim(g->after);
                RefactoringRecord r = base_record(RefactoringType::ExtractSuperclass);
                r.before_names = {g->before->qualified_name};
                r.before_ranges = {g->before->range};
                r.after_names = {s->qualified_name};
                r.after_ranges = {s->range};
                r.pure = pure;
                push(std::move(r));
            }
        }
    }

    // -- rules: method move/rename family ----------------------------------

    void run_method_pairs() {
        for (const EntityPair& p : match.matched) {
            if (!p.phase2 || p.before->kind != EntityKind::Method) continue;
            if (is_claimed(p.before) || is_claimed(p.after)) continue;
            const CodeEntity& mb = *p.before;
            const CodeEntity& ma = *p.after;
            bool same_types = mb.signature.parameter_types == ma.signature.parameter_types;
            bool same_name = mb.simple_name == ma.simple_name;
            bool corresponds = enclosing_corresponds(mb, ma);
            if (corresponds) {
                if (!same_name && same_types) {
                    RefactoringRecord r = base_record(RefactoringType::RenameMethod);
                    fill_pair(r, mb, ma);
                    r.pure = bodies_equal(mb.body, ma.body);
                    claim_pair(p);
                    push(std::move(r));
                }
                continue; // same logical class: parameter rules may still apply
            }
            if (!same_types) continue; // signature change + move: not in the catalog
            RefactoringType type;
            if (!same_name) {
                type = RefactoringType::MoveAndRenameMethod;
            } else {
                std::string src_b = parent_qualified(mb);
                std::string dst_a = parent_qualified(ma);
                // source class as it exists after the commit, if still there
                auto it = class_map.find(src_b);
                const CodeEntity* src_after =
                    it != class_map.end()
                        ? lookup(after_classes, it->second)
                        : lookup(after_classes, src_b);
                const CodeEntity* dst_after = lookup(after_classes, dst_a);
                if (src_after && declares_super(*src_after, dst_a, after_classes))
                    type = RefactoringType::PullUpMethod;
                else if (dst_after && src_after &&
                         declares_super(*dst_after, src_after->qualified_name, after_classes))
                    type = RefactoringType::PushDownMethod;
                else if (dst_after && !src_after &&
                         declares_super(*dst_after, src_b, after_classes))
                    type = RefactoringType::PushDownMethod;
                else
                    type = RefactoringType::MoveMethod;
            }
            RefactoringRecord r = base_record(type);
            fill_pair(r, mb, ma);
            r.pure = bodies_equal(mb.body, ma.body);
            claim_pair(p);
            push(std::move(r));
        }
    }

    static const CodeEntity* lookup(const ClassIndex& idx, const std::string& qualified) {
        auto it = idx.by_qualified.find(qualified);
        return it == idx.by_qualified.end() ? nullptr : it->second;
    }

    void fill_pair(RefactoringRecord& r, const CodeEntity& b, const CodeEntity& a) {
        r.before_names = {b.qualified_name};
        r.before_ranges = {b.range};
        r.after_names = {a.qualified_name};
        r.after_ranges = {a.range};
    }

    void claim_pair(const EntityPair& p) {
        claim(p.before);
        claim(p.after);
    }

    // -- rules: extract / inline method ------------------------------------

    void run_extract_method() {
        for (const CodeEntity* e : match.added) {
            if (e->kind != EntityKind::Method || is_claimed(e)) continue;
            std::string cls = parent_qualified(*e);
            bool done = false;
            for (const EntityPair& p : match.matched) {
                if (done) break;
                if (p.before->kind != EntityKind::Method) continue;
                if (is_claimed(p.before) || is_claimed(p.after)) continue;
                if (parent_qualified(*p.after) != cls) continue;
                if (!has_call_token(p.after->body, e->simple_name)) continue;
                auto lcs = statement_lcs(p.before->body, p.after->body);
                std::vector<std::size_t> matched_b;
                for (auto [i, j] : lcs) matched_b.push_back(i);
                for (auto [first, last] : unmatched_runs(p.before->body, matched_b)) {
                    double sim = body_similarity(e->body, slice(p.before->body, first, last)).value;
                    if (sim < thresholds.extract) continue;
                    RefactoringRecord r = base_record(RefactoringType::ExtractMethod);
                    r.before_names = {p.before->qualified_name};
                    r.before_ranges = {p.before->range};
                    r.after_names = {p.after->qualified_name, e->qualified_name};
                    r.after_ranges = {p.after->range, e->range};
                    r.pure = sim == 1.0;
                    claim(e);
                    claim_pair(p);
                    push(std::move(r));
                    done = true;
                    break;
                }
            }
        }
    }

    void run_inline_method() {
        for (const CodeEntity* inl : match.removed) {
            if (inl->kind != EntityKind::Method || is_claimed(inl)) continue;
            std::string cls = parent_qualified(*inl);
            bool done = false;
            for (const EntityPair& p : match.matched) {
                if (done) break;
                if (p.before->kind != EntityKind::Method) continue;
                if (is_claimed(p.before) || is_claimed(p.after)) continue;
                if (parent_qualified(*p.before) != cls) continue;
                if (!has_call_token(p.before->body, inl->simple_name)) continue;
                auto lcs = statement_lcs(p.before->body, p.after->body);
                std::vector<std::size_t> matched_a;
                for (auto [i, j] : lcs) matched_a.push_back(j);
                for (auto [first, last] : unmatched_runs(p.after->body, matched_a)) {
                    double sim = body_similarity(inl->body, slice(p.after->body, first, last)).value;
                    if (sim < thresholds.extract) continue;
                    RefactoringRecord r = base_record(RefactoringType::InlineMethod);
                    r.before_names = {p.before->qualified_name, inl->qualified_name};
                    r.before_ranges = {p.before->range, inl->range};
                    r.after_names = {p.after->qualified_name};
                    r.after_ranges = {p.after->range};
                    r.pure = sim == 1.0;
                    claim(inl);
                    claim_pair(p);
                    push(std::move(r));
                    done = true;
                    break;
                }
            }
        }
    }

    // -- rules: class rename / move ----------------------------------------

    bool class_pair_pure(const CodeEntity& b, const CodeEntity& a) const {
        // member sets identical and every method body unchanged
        std::multimap<std::string, const CodeEntity*> after_members;
        std::size_t after_count = 0;
        for (const auto& ch : a.children) {
            if (ch->kind != EntityKind::Method && ch->kind != EntityKind::Field) continue;
            after_members.emplace(member_key(*ch), ch.get());
            ++after_count;
        }
        std::size_t before_count = 0;
        for (const auto& ch : b.children) {
            if (ch->kind != EntityKind::Method && ch->kind != EntityKind::Field) continue;
            ++before_count;
            auto [lo, hi] = after_members.equal_range(member_key(*ch));
            bool ok = false;
            for (auto it = lo; it != hi; ++it) {
                if (ch->kind != EntityKind::Method || bodies_equal(ch->body, it->second->body)) {
                    after_members.erase(it);
                    ok = true;
                    break;
                }
            }
            if (!ok) return false;
        }
        return before_count == after_count;
    }

    static std::string member_key(const CodeEntity& ch) {
        if (ch.kind == EntityKind::Method) {
            std::string key = "m:" + ch.simple_name + "(";
            for (const auto& t : ch.signature.parameter_types) key += t + ",";
            return key + "):" + ch.signature.return_type;
        }
        return "f:" + ch.simple_name + ":" + ch.declared_type;
    }

    void run_class_pairs() {
        for (const EntityPair& p : match.matched) {
            if (!p.phase2 || !p.before->is_type()) continue;
            if (is_claimed(p.before) || is_claimed(p.after)) continue;
            const CodeEntity& cb = *p.before;
            const CodeEntity& ca = *p.after;
            std::string pkg_b = parent_qualified(cb);
            std::string pkg_a = parent_qualified(ca);
            bool renamed = cb.simple_name != ca.simple_name;
            bool moved = pkg_b != pkg_a;
            if (!renamed && !moved) continue;
            RefactoringRecord r =
                base_record(renamed ? RefactoringType::RenameClass : RefactoringType::MoveClass);
            fill_pair(r, cb, ca);
            r.pure = class_pair_pure(cb, ca);
            claim_pair(p);
            push(std::move(r));
        }
    }

    // -- rules: parameters ---------------------------------------------------

    void run_parameters() {
        for (const EntityPair& p : match.matched) {
            if (p.before->kind != EntityKind::Method) continue;
            if (is_claimed(p.before) || is_claimed(p.after)) continue;
            const Signature& sb = p.before->signature;
            const Signature& sa = p.after->signature;
            if (p.before->simple_name != p.after->simple_name) continue;
            if (!enclosing_corresponds(*p.before, *p.after)) continue;
            if (sb.parameter_types == sa.parameter_types &&
                sb.parameter_names == sa.parameter_names)
                continue;

            auto pairs_of = [](const Signature& s) {
                std::vector<std::pair<std::string, std::string>> out;
                for (std::size_t i = 0; i < s.parameter_types.size(); ++i)
                    out.emplace_back(s.parameter_types[i], s.parameter_names[i]);
                return out;
            };
            auto pb = pairs_of(sb);
            auto pa = pairs_of(sa);
            auto pb_sorted = pb;
            auto pa_sorted = pa;
            std::sort(pb_sorted.begin(), pb_sorted.end());
            std::sort(pa_sorted.begin(), pa_sorted.end());

            if (pb != pa && pb_sorted == pa_sorted) {
                // same (type, name) entries in a different order
                RefactoringRecord r = base_record(RefactoringType::ReorderParameters);
                fill_pair(r, *p.before, *p.after);
                r.pure = bodies_equal(p.before->body, p.after->body);
                push(std::move(r));
                continue;
            }
            if (sb.parameter_types == sa.parameter_types) {
                std::map<std::string, std::string> mapping;
                for (std::size_t i = 0; i < pb.size(); ++i)
                    if (pb[i].second != pa[i].second) mapping[pb[i].second] = pa[i].second;
                bool pure = bodies_equal(rename_tokens(p.before->body, mapping), p.after->body);
                for (std::size_t i = 0; i < pb.size(); ++i) {
                    if (pb[i].second == pa[i].second) continue;
                    RefactoringRecord r = base_record(RefactoringType::RenameParameter);
                    fill_pair(r, *p.before, *p.after);
                    r.pure = pure;
                    r.description = "Rename Parameter " + pb[i].second + " to " + pa[i].second +
                                    " in method " + p.after->simple_name + " in class " +
                                    class_label(*p.after);
                    records.push_back(std::move(r));
                }
                continue;
            }
            // multiset difference in both directions
            bool pure = bodies_equal(p.before->body, p.after->body);
            auto removed_entries = multiset_minus(pb_sorted, pa_sorted);
            auto added_entries = multiset_minus(pa_sorted, pb_sorted);
            for (const auto& [type, name] : added_entries) {
                RefactoringRecord r = base_record(RefactoringType::AddParameter);
                fill_pair(r, *p.before, *p.after);
                r.pure = pure;
                r.description = "Add Parameter " + name + " : " + type + " to method " +
                                p.after->simple_name + " in class " + class_label(*p.after);
                records.push_back(std::move(r));
            }
            for (const auto& [type, name] : removed_entries) {
                RefactoringRecord r = base_record(RefactoringType::RemoveParameter);
                fill_pair(r, *p.before, *p.after);
                r.pure = pure;
                r.description = "Remove Parameter " + name + " : " + type + " from method " +
                                p.after->simple_name + " in class " + class_label(*p.after);
                records.push_back(std::move(r));
            }
        }
    }

    static std::vector<std::pair<std::string, std::string>> multiset_minus(
        const std::vector<std::pair<std::string, std::string>>& a,
        const std::vector<std::pair<std::string, std::string>>& b) {
        std::vector<std::pair<std::string, std::string>> out;
        std::multiset<std::pair<std::string, std::string>> rhs(b.begin(), b.end());
        for (const auto& e : a) {
            auto it = rhs.find(e);
            if (it != rhs.end()) rhs.erase(it);
            else out.push_back(e);
        }
        return out;
    }

    static std::string class_label(const CodeEntity& method) {
        return method.parent ? method.parent->qualified_name : std::string("?");
    }

    void run_all() {
        for (const EntityPair& p : match.matched)
            if (p.before->is_type()) class_map[p.before->qualified_name] = p.after->qualified_name;

        run_extract_superclass();
        run_method_pairs();
        run_extract_method();
        run_inline_method();
        run_class_pairs();
        run_parameters();

        std::stable_sort(records.begin(), records.end(),
                         [](const RefactoringRecord& x, const RefactoringRecord& y) {
                             if (x.element_level != y.element_level)
                                 return static_cast<int>(x.element_level) <
                                        static_cast<int>(y.element_level);
                             if (x.type != y.type)
                                 return static_cast<int>(x.type) < static_cast<int>(y.type);
                             if (x.before_names != y.before_names)
                                 return x.before_names < y.before_names;
                             return x.description < y.description;
                         });
    }
};

} // namespace

std::vector<RefactoringRecord> detect(const MatchSet& match,
                                      const std::vector<const CodeEntity*>& before_roots,
                                      const std::vector<const CodeEntity*>& after_roots,
                                      const DetectionThresholds& thresholds) {
    g_detect_calls.fetch_add(1);
    Detector d{match, thresholds};
    d.before_classes.add_roots(before_roots);
    d.after_classes.add_roots(after_roots);
    d.run_all();
    return std::move(d.records);
}

std::string describe(const RefactoringRecord& r) {
    if (!r.description.empty()) return r.description;
    auto change_suffix = [&] { return r.pure ? " without changes" : " with changes"; };
    switch (r.type) {
    case RefactoringType::RenameMethod:
        return "Rename Method " + simple_of(r.before_names.at(0)) + " renamed to " +
               simple_of(r.after_names.at(0)) + " in class " + owner_of(r.after_names.at(0));
    case RefactoringType::MoveMethod:
        return "Move Method " + simple_of(r.before_names.at(0)) + " from class " +
               owner_of(r.before_names.at(0)) + " to class " + owner_of(r.after_names.at(0)) +
               change_suffix();
    case RefactoringType::MoveAndRenameMethod:
        return "Move And Rename Method " + simple_of(r.before_names.at(0)) + " from class " +
               owner_of(r.before_names.at(0)) + " to " + simple_of(r.after_names.at(0)) +
               " in class " + owner_of(r.after_names.at(0));
    case RefactoringType::PullUpMethod:
        return "Pull Up Method " + simple_of(r.before_names.at(0)) + " from class " +
               owner_of(r.before_names.at(0)) + " to class " + owner_of(r.after_names.at(0)) +
               change_suffix();
    case RefactoringType::PushDownMethod:
        return "Push Down Method " + simple_of(r.before_names.at(0)) + " from class " +
               owner_of(r.before_names.at(0)) + " to class " + owner_of(r.after_names.at(0)) +
               change_suffix();
    case RefactoringType::ExtractMethod:
        return "Extract Method " + simple_of(r.after_names.at(1)) + " extracted from method " +
               simple_of(r.before_names.at(0)) + " in class " + owner_of(r.after_names.at(0));
    case RefactoringType::InlineMethod:
        return "Inline Method " + simple_of(r.before_names.at(1)) + " inlined to method " +
               simple_of(r.after_names.at(0)) + " in class " + owner_of(r.after_names.at(0));
    case RefactoringType::RenameClass: {
        std::string base = "Rename Class " + simple_of(r.before_names.at(0)) + " renamed to " +
                           simple_of(r.after_names.at(0));
        std::string pkg_b = parent_package_of(r.before_names.at(0));
        std::string pkg_a = parent_package_of(r.after_names.at(0));
        if (pkg_b != pkg_a)
            return base + " and moved from " + package_label(pkg_b) + " to " +
                   package_label(pkg_a);
        return base + " in " + package_label(pkg_a);
    }
    case RefactoringType::MoveClass:
        return "Move Class " + simple_of(r.before_names.at(0)) + " from " +
               package_label(parent_package_of(r.before_names.at(0))) + " to " +
               package_label(parent_package_of(r.after_names.at(0)));
    case RefactoringType::ExtractSuperclass:
        return "Extract Superclass " + simple_of(r.after_names.at(0)) + " from class " +
               r.before_names.at(0);
    case RefactoringType::ReorderParameters:
        return "Reorder Parameters in method " + simple_of(r.after_names.at(0)) + " in class " +
               owner_of(r.after_names.at(0));
    default:
        return r.description; // parameter records carry their text already
    }
}

std::vector<RefactoringGroup> group_related(const std::vector<RefactoringRecord>& records) {
    std::vector<RefactoringGroup> groups;
    std::map<std::string, std::size_t> open; // group key -> index in groups
    for (std::size_t i = 0; i < records.size(); ++i) {
        const std::string& key = records[i].group_key;
        if (key.empty()) {
            groups.push_back({"", {i}});
            continue;
        }
        auto it = open.find(key);
        if (it == open.end()) {
            open.emplace(key, groups.size());
            groups.push_back({key, {i}});
        } else {
            groups[it->second].record_indexes.push_back(i);
        }
    }
    return groups;
}

PaneLayout pane_layout(const RefactoringRecord& r) {
    PaneLayout panes;
    if (r.type == RefactoringType::ExtractMethod) {
        panes.push_back({r.before_ranges.at(0).file_path, r.before_ranges.at(0), PaneSide::Before});
        panes.push_back({r.after_ranges.at(0).file_path, r.after_ranges.at(0), PaneSide::After});
        panes.push_back({r.after_ranges.at(1).file_path, r.after_ranges.at(1), PaneSide::After});
        return panes;
    }
    if (r.type == RefactoringType::InlineMethod) {
        panes.push_back({r.before_ranges.at(0).file_path, r.before_ranges.at(0), PaneSide::Before});
        panes.push_back({r.after_ranges.at(0).file_path, r.after_ranges.at(0), PaneSide::After});
        panes.push_back({r.before_ranges.at(1).file_path, r.before_ranges.at(1), PaneSide::Before});
        return panes;
    }
    panes.push_back({r.before_ranges.at(0).file_path, r.before_ranges.at(0), PaneSide::Before});
    panes.push_back({r.after_ranges.at(0).file_path, r.after_ranges.at(0), PaneSide::After});
    return panes;
}

} // namespace refdiff
