#include "uca4/rule.hpp"

#include <fstream>
#include <sstream>

namespace uca4 {

std::string slot_name(int slot) {
    const auto n = neighborhood_of(slot);
    return {char('0' + n.l), char('0' + n.c), char('0' + n.r)};
}

bool RuleTable::complete() const { return free_count() == 0; }

int RuleTable::free_count() const {
    int n = 0;
    for (State v : entries_) n += (v == kFree);
    return n;
}

std::string format_rule(const RuleTable& rule) {
    std::string out;
    for (int s = 0; s < 64; ++s) {
        out += slot_name(s);
        out += "\xE2\x86\x92"; // →
        out += rule.is_free(s) ? '?' : char('0' + rule.get(s));
        out += '\n';
    }
    return out;
}

namespace {

bool is_state_digit(char c) { return c >= '0' && c <= '3'; }

} // namespace

RuleTable parse_rule(const std::string& text) {
    RuleTable rule;
    std::array<bool, 64> seen{};
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    int count = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        while (!line.empty() && (line.back() == ' ' || line.back() == '\t' || line.back() == '\r')) line.pop_back();
        std::size_t p = 0;
        while (p < line.size() && (line[p] == ' ' || line[p] == '\t')) ++p;
        if (p == line.size()) continue;
        const std::string where = "line " + std::to_string(lineno);
        if (line.size() < p + 3) throw SyntaxError(where + ": truncated entry", p + 1);
        for (int k = 0; k < 3; ++k)
            if (!is_state_digit(line[p + k])) throw SyntaxError(where + ": expected state digit", p + k + 1);
        const int s = slot_of(line[p] - '0', line[p + 1] - '0', line[p + 2] - '0');
        std::size_t q = p + 3;
        if (line.compare(q, 3, "\xE2\x86\x92") == 0) q += 3;
        else if (line.compare(q, 2, "->") == 0) q += 2;
        else throw SyntaxError(where + ": expected arrow", q + 1);
        if (q + 1 != line.size()) throw SyntaxError(where + ": expected single result symbol", q + 1);
        const char v = line[q];
        if (v != '?' && !is_state_digit(v)) throw SyntaxError(where + ": bad result symbol", q + 1);
        if (seen[s]) throw SyntaxError(where + ": duplicate neighborhood " + slot_name(s), p + 1);
        seen[s] = true;
        ++count;
        rule.set(s, v == '?' ? kFree : State(v - '0'));
    }
    if (count != 64) throw SyntaxError("rule file must list all 64 neighborhoods, found " + std::to_string(count), 0);
    return rule;
}

RuleTable load_rule_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open rule file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_rule(ss.str());
}

void save_rule_file(const RuleTable& rule, const std::string& path, const std::string& header) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write rule file " + path);
    std::istringstream h(header);
    std::string line;
    while (std::getline(h, line)) out << "# " << line << '\n';
    out << format_rule(rule);
}

} // namespace uca4
