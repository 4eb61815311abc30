#include "uca4/synthesis.hpp"

#include <algorithm>
#include <filesystem>
#include <sstream>

namespace uca4 {

std::vector<LocalConstraint> derive_constraints(const StructureSpec& spec) {
    std::map<int, LocalConstraint> by_slot;
    auto add = [&](const std::string& prov) {
        return [&by_slot, prov](Point, State l, State c, State r, State next) {
            const int slot = slot_of(l, c, r);
            auto [it, fresh] = by_slot.emplace(slot, LocalConstraint{l, c, r, next, prov});
            if (!fresh && it->second.required != next)
                throw ConflictError(slot_name(slot) + " must be " + std::to_string(it->second.required) +
                                    " for " + it->second.provenance + " but " + std::to_string(next) + " for " +
                                    prov);
        };
    };
    background_transitions(spec.background, add("background " + spec.background.name));
    for (auto& p : spec.particles) particle_transitions(p, add("particle " + p.name));
    std::vector<LocalConstraint> out;
    for (auto& [slot, c] : by_slot) out.push_back(c);
    return out;
}

RuleTable constrained_rule(const std::vector<LocalConstraint>& cs) {
    RuleTable r;
    for (auto& c : cs) {
        if (!r.is_free(c.slot()) && r.get(c.slot()) != c.required)
            throw ConflictError("two constraints disagree on " + slot_name(c.slot()));
        r.set(c.slot(), c.required);
    }
    return r;
}

std::vector<SceneTest> structure_battery(const StructureSpec& spec) {
    std::vector<SceneTest> out;
    for (auto& [a, b] : spec.converging_pairs) {
        out.push_back({"determinism " + a.text() + " / " + b.text(), [a, b](const RuleTable& rule, std::string& why) {
                           try {
                               auto res = check_collision_determinism(rule, a, b);
                               if (!res.report.pass) why = "several outcome classes";
                               return res.report.pass;
                           } catch (const NonTerminationError& e) {
                               why = "no settling";
                               return false;
                           }
                       }});
    }
    return out;
}

const char* status_name(SynthesisStatus s) {
    switch (s) {
    case SynthesisStatus::OK: return "OK";
    case SynthesisStatus::BudgetExhausted: return "BudgetExhausted";
    case SynthesisStatus::Unsatisfiable: return "Unsatisfiable";
    }
    return "?";
}

bool table_less(const RuleTable& a, const RuleTable& b) {
    for (int s = 0; s < 64; ++s) {
        // FREE (0xFF) naturally sorts after every state
        if (a.get(s) != b.get(s)) return a.get(s) < b.get(s);
    }
    return false;
}

namespace {

struct Search {
    const std::vector<SceneTest>& battery;
    const SynthesisOptions& opt;
    SynthesisReport rep;
    bool exhausted = false;
    bool done = false;

    void dfs(RuleTable& rule, std::size_t from) {
        if (done) return;
        if (rep.nodes_explored >= opt.budget) {
            exhausted = done = true;
            return;
        }
        ++rep.nodes_explored;
        for (std::size_t i = from; i < battery.size(); ++i) {
            std::string why;
            bool ok;
            try {
                ok = battery[i].run(rule, why);
            } catch (const FreeSlotError& e) {
                const int slot = e.slot();
                for (State v = 0; v < kStateCount && !done; ++v) {
                    rule.set(slot, v);
                    // Tests before i never read `slot`, so they still pass.
                    dfs(rule, i);
                }
                rule.set(slot, kFree);
                return;
            } catch (const Error& e) {
                ok = false;
                why = e.what();
            }
            if (!ok) {
                ++rep.failure_reasons[battery[i].name + (why.empty() ? "" : ": " + why)];
                return;
            }
        }
        RuleTable full = rule;
        std::vector<int> unused;
        for (int s = 0; s < 64; ++s)
            if (full.is_free(s)) {
                unused.push_back(s);
                full.set(s, 0);
            }
        rep.rules_found.push_back(full);
        rep.unreachable.push_back(unused);
        if (rep.rules_found.size() >= opt.max_rules) done = true;
    }
};

SynthesisReport run_search(RuleTable start, const std::vector<SceneTest>& battery, const SynthesisOptions& opt,
                           int forced) {
    Search s{battery, opt, {}};
    s.rep.forced_slots = forced;
    s.dfs(start, 0);
    // Sort rules together with their reachability lists.
    std::vector<std::size_t> order(s.rep.rules_found.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return table_less(s.rep.rules_found[a], s.rep.rules_found[b]); });
    SynthesisReport out = s.rep;
    for (std::size_t i = 0; i < order.size(); ++i) {
        out.rules_found[i] = s.rep.rules_found[order[i]];
        out.unreachable[i] = s.rep.unreachable[order[i]];
    }
    out.status = !out.rules_found.empty() ? SynthesisStatus::OK
                 : s.exhausted            ? SynthesisStatus::BudgetExhausted
                                          : SynthesisStatus::Unsatisfiable;
    return out;
}

} // namespace

SynthesisReport synthesize_rule(const StructureSpec& spec, const std::vector<SceneTest>& battery,
                                const SynthesisOptions& opt) {
    const auto cs = derive_constraints(spec);
    return run_search(constrained_rule(cs), battery, opt, int(cs.size()));
}

SynthesisReport synthesize_from(const RuleTable& start, const std::vector<SceneTest>& battery,
                                const SynthesisOptions& opt) {
    return run_search(start, battery, opt, 64 - start.free_count());
}

std::string SynthesisReport::text() const {
    std::ostringstream os;
    os << "status: " << status_name(status) << "\n";
    os << "forced_slots: " << forced_slots << "\n";
    os << "nodes_explored: " << nodes_explored << "\n";
    os << "rules_found: " << rules_found.size() << "\n";
    if (!rules_found.empty()) os << "unreachable_slots: " << unreachable.front().size() << "\n";
    for (auto& [why, n] : failure_reasons) os << "failure: " << n << " " << why << "\n";
    return os.str();
}

std::string default_rule_path() {
#ifdef UCA4_RULE_DIR
    return std::string(UCA4_RULE_DIR) + "/canonical.rule";
#else
    return "rules/canonical.rule";
#endif
}

RuleTable canonical_rule(const std::string& path) {
    if (!std::filesystem::exists(path)) throw NoRuleAvailable("no rule file at " + path);
    RuleTable r = load_rule_file(path);
    if (!r.complete()) throw NoRuleAvailable(path + " is not a complete table");
    return r;
}

RuleTable canonical_rule() { return canonical_rule(default_rule_path()); }

std::string reachability_manifest(const RuleTable& rule, const std::vector<int>& unreachable) {
    std::ostringstream os;
    for (int s = 0; s < 64; ++s) {
        const bool unused = std::find(unreachable.begin(), unreachable.end(), s) != unreachable.end();
        os << slot_name(s) << " " << (rule.is_free(s) ? std::string("?") : std::to_string(rule.get(s)))
           << " " << (unused ? "unreachable" : "reachable") << "\n";
    }
    return os.str();
}

} // namespace uca4
