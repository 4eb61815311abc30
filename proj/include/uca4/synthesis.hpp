#pragma once

#include "uca4/rule.hpp"
#include "uca4/structures.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace uca4 {

struct LocalConstraint {
    State l, c, r;
    State required;
    std::string provenance;
    int slot() const { return slot_of(l, c, r); }
};

// Neighborhoods forced by the background and particle diagrams, one per slot.
// Throws ConflictError naming both provenances on a clash.
std::vector<LocalConstraint> derive_constraints(const StructureSpec& spec);
RuleTable constrained_rule(const std::vector<LocalConstraint>& cs);

// A behavioral check.  It may throw FreeSlotError when it reaches an unset slot; the search
// branches on that slot.  Returns false (and sets `why`) on failure.
struct SceneTest {
    std::string name;
    std::function<bool(const RuleTable&, std::string& why)> run;
};

// Structure tests: settle-and-determinism of every converging pair in the spec.
std::vector<SceneTest> structure_battery(const StructureSpec& spec);

enum class SynthesisStatus { OK, BudgetExhausted, Unsatisfiable };
const char* status_name(SynthesisStatus s);

struct SynthesisOptions {
    std::uint64_t budget = 10'000'000; // search nodes
    std::size_t max_rules = 1;          // stop after this many rules
};

struct SynthesisReport {
    SynthesisStatus status = SynthesisStatus::Unsatisfiable;
    std::vector<RuleTable> rules_found; // sorted by table, slots never reached filled with 0
    std::vector<std::vector<int>> unreachable; // per rule: slots the battery never read
    std::uint64_t nodes_explored = 0;
    std::map<std::string, std::uint64_t> failure_reasons;
    int forced_slots = 0;

    std::string text() const; // one key:value per line
};

SynthesisReport synthesize_rule(const StructureSpec& spec, const std::vector<SceneTest>& battery,
                                const SynthesisOptions& opt = {});

// Same search from an explicit starting table (used to extend a partial rule).
SynthesisReport synthesize_from(const RuleTable& start, const std::vector<SceneTest>& battery,
                                const SynthesisOptions& opt = {});

// Lexicographic order on the flattened table (FREE sorts last).
bool table_less(const RuleTable& a, const RuleTable& b);

// The bundled rule file (rules/canonical.rule) or the one at `path`.  NoRuleAvailable when
// missing.
RuleTable canonical_rule();
RuleTable canonical_rule(const std::string& path);
std::string default_rule_path();

// "slot state reachable|unreachable" lines.
std::string reachability_manifest(const RuleTable& rule, const std::vector<int>& unreachable);

} // namespace uca4
