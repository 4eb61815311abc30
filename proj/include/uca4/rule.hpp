#pragma once

#include "uca4/error.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <string>

namespace uca4 {

using State = std::uint8_t;
inline constexpr int kStateCount = 4;
inline constexpr State kFree = 0xFF;

// Slot index of the neighborhood (l, c, r): l*16 + c*4 + r.
constexpr int slot_of(State l, State c, State r) { return l * 16 + c * 4 + r; }

struct Neighborhood {
    State l, c, r;
};
constexpr Neighborhood neighborhood_of(int slot) {
    return {State(slot / 16), State((slot / 4) % 4), State(slot % 4)};
}

std::string slot_name(int slot);

class RuleTable {
public:
    RuleTable() { entries_.fill(kFree); }

    State get(int slot) const { return entries_[slot]; }
    void set(int slot, State v) { entries_[slot] = v; }
    State get(State l, State c, State r) const { return entries_[slot_of(l, c, r)]; }
    void set(State l, State c, State r, State v) { entries_[slot_of(l, c, r)] = v; }

    bool is_free(int slot) const { return entries_[slot] == kFree; }
    bool complete() const;
    int free_count() const;

    const std::array<State, 64>& entries() const { return entries_; }

    // Lexicographic on the flattened table; FREE sorts after every state.
    auto operator<=>(const RuleTable&) const = default;
    bool operator==(const RuleTable&) const = default;

private:
    std::array<State, 64> entries_;
};

// Throws FreeSlotError (index reported as `where`) when the slot is FREE.
inline State apply_local(const RuleTable& rule, State l, State c, State r, std::int64_t where = 0) {
    const int s = slot_of(l, c, r);
    const State v = rule.get(s);
    if (v == kFree) throw FreeSlotError(s, where);
    return v;
}

// 64 lines "lcr→s", '?' for FREE, '#' starts a comment.  "->" is accepted on input.
std::string format_rule(const RuleTable& rule);
RuleTable parse_rule(const std::string& text);
RuleTable load_rule_file(const std::string& path);
void save_rule_file(const RuleTable& rule, const std::string& path, const std::string& header = "");

} // namespace uca4
