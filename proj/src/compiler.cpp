#include "uca4/compiler.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace uca4 {

void OneWayCA::validate() const {
    if (state_count < 2) throw PreconditionError("one-way CA needs at least 2 states");
    if (table.size() != std::size_t(state_count) * std::size_t(state_count))
        throw PreconditionError("transition table must have n^2 entries");
    for (int v : table)
        if (v < 1 || v > state_count) throw RangeError("transition value out of 1.." + std::to_string(state_count));
}

OneWayCA parse_one_way(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    OneWayCA ca;
    std::vector<bool> seen;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const std::string where = "line " + std::to_string(lineno) + ": ";
        if (ca.state_count == 0) {
            const auto eq = line.find("states=");
            if (eq == std::string::npos) throw SyntaxError(where + "expected states=n", 1);
            try {
                ca.state_count = std::stoi(line.substr(eq + 7));
            } catch (const std::exception&) {
                throw SyntaxError(where + "bad state count", eq + 8);
            }
            if (ca.state_count < 2) throw SyntaxError(where + "need at least 2 states", eq + 8);
            ca.table.assign(std::size_t(ca.state_count) * ca.state_count, 0);
            seen.assign(ca.table.size(), false);
            continue;
        }
        std::string norm = line;
        for (const char* arrow : {"\xE2\x86\x92", "->"}) {
            if (auto a = norm.find(arrow); a != std::string::npos) norm.replace(a, std::string(arrow).size(), " ");
        }
        std::istringstream ls(norm);
        int a = 0, b = 0, t = 0;
        if (!(ls >> a >> b >> t)) throw SyntaxError(where + "expected \"s s' -> t\"", 1);
        std::string rest;
        if (ls >> rest) throw SyntaxError(where + "trailing text", 1);
        const int n = ca.state_count;
        if (a < 1 || a > n || b < 1 || b > n || t < 1 || t > n) throw SyntaxError(where + "state out of range", 1);
        const std::size_t i = std::size_t((a - 1) * n + (b - 1));
        if (seen[i]) throw SyntaxError(where + "duplicate pair", 1);
        seen[i] = true;
        ca.table[i] = t;
    }
    if (ca.state_count == 0) throw SyntaxError("missing states=n header", 1);
    for (bool s : seen)
        if (!s) throw SyntaxError("transition table incomplete", 1);
    return ca;
}

OneWayCA load_one_way_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open one-way CA file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_one_way(ss.str());
}

std::string format_one_way(const OneWayCA& ca) {
    std::string out = "states=" + std::to_string(ca.state_count) + "\n";
    for (int a = 1; a <= ca.state_count; ++a)
        for (int b = 1; b <= ca.state_count; ++b)
            out += std::to_string(a) + " " + std::to_string(b) + " \xE2\x86\x92 " + std::to_string(ca.next(a, b)) + "\n";
    return out;
}

std::vector<int> step_one_way(const OneWayCA& ca, const std::vector<int>& word) {
    const std::size_t n = word.size();
    std::vector<int> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = ca.next(word[(i + n - 1) % n], word[i]);
    return out;
}

std::vector<std::vector<int>> simulate_direct(const OneWayCA& ca, const std::vector<int>& word, int steps) {
    std::vector<std::vector<int>> trace{word};
    for (int s = 0; s < steps; ++s) trace.push_back(step_one_way(ca, trace.back()));
    return trace;
}

CodeTransition code_transition(const OneWayCA& ca) {
    // Code 0 and codes above n never arise from valid encodings; they map to state 1.
    return [ca](unsigned a, unsigned b) -> unsigned {
        const unsigned n = unsigned(ca.state_count);
        if (a < 1 || a > n || b < 1 || b > n) return 1;
        return unsigned(ca.next(int(a), int(b)));
    };
}

const char* role_name(Role r) {
    switch (r) {
    case Role::L: return "x_l";
    case Role::M: return "x_m";
    case Role::MTilde: return "x_m~";
    case Role::Sum: return "x_l+x_m";
    case Role::RFirst: return "R(x_l+x_m)";
    case Role::MPrime: return "x_m'";
    case Role::L0: return "x_l0";
    case Role::Second: return "x_l0+x_m~";
    case Role::RSecond: return "N-x_l0+1";
    case Role::LPrime: return "x_l'";
    }
    return "?";
}

WordLayout::WordLayout(int k) : k_(k), w_(4 + 8 * k + 3) {
    if (k < 1) throw PreconditionError("k must be at least 1");
    if (w_ > 62) throw RangeError("k too large for 64-bit words");
}

WordLayout make_layout(int k) { return WordLayout(k); }

std::string WordLayout::row_pattern(Role role) const {
    struct Row {
        const char *header, *digit, *footer;
    };
    Row r{};
    switch (role) {
    case Role::L: r = {"0101", "bbs0bb00", "bbb"}; break;
    case Role::M: r = {"0000", "bb00bbs0", "bbb"}; break;
    case Role::MTilde: r = {"1000", "00000000", "000"}; break;
    case Role::Sum: r = {"01xx", "bbsbbbpb", "bbb"}; break;
    case Role::RFirst: r = {"10tt", "U1tt11tt", "100"}; break;
    case Role::MPrime: r = {"0000", "bb00bbT0", "bbb"}; break;
    case Role::L0: r = {"010b", "bU1bb11b", "b10"}; break;
    case Role::Second: r = {"110b", "bbbbbbbb", "bb0"}; break;
    case Role::RSecond: r = {"101b", "bT0bb00b", "b10"}; break;
    case Role::LPrime: r = {"0101", "bbT0bb00", "bbb"}; break;
    }
    std::string out = r.header;
    for (int d = k_ - 1; d >= 0; --d) out += r.digit;
    out += r.footer;
    return out;
}

std::string WordLayout::row_text(Role role) const {
    const std::string p = row_pattern(role);
    std::string out = p.substr(0, 4) + "|";
    for (int d = 0; d < k_; ++d) {
        if (d) out += ' ';
        out += p.substr(4 + 8 * d, 8);
    }
    out += "|" + p.substr(4 + 8 * k_);
    return out;
}

Mask WordLayout::mask(Role role, std::optional<unsigned> t) const {
    const std::string p = row_pattern(role);
    Mask m;
    m.payload.assign(std::size_t(k_), -1);
    m.payload_b.assign(std::size_t(k_), -1);
    for (int j = 0; j < w_; ++j) {
        const int bit = w_ - 1 - j;
        const std::uint64_t b = std::uint64_t(1) << bit;
        const char c = p[std::size_t(j)];
        // Digit index of this bit (header/footer bits have none).
        const int d = (bit >= 3 && bit < 3 + 8 * k_) ? (bit - 3) / 8 : -1;
        switch (c) {
        case '0': m.fixed |= b; break;
        case '1': m.fixed |= b; m.value |= b; break;
        case 't': m.free |= b; break;
        case 's': m.payload[std::size_t(d)] = bit; break;
        case 'p': m.payload_b[std::size_t(d)] = bit; break;
        case 'T':
        case 'U':
            if (t) {
                const bool tb = (*t >> d) & 1;
                m.fixed |= b;
                if ((c == 'T') == tb) m.value |= b;
            } else if (c == 'T') {
                m.payload[std::size_t(d)] = bit;
            }
            break;
        default: break; // 'b', 'x'
        }
    }
    if (m.payload[0] < 0) m.payload.clear();
    if (m.payload_b[0] < 0) m.payload_b.clear();
    return m;
}

bool WordLayout::matches(std::uint64_t v, Role role, std::optional<unsigned> t) const {
    if (v >> w_) return false;
    const Mask m = mask(role, t);
    if ((v & m.fixed) != m.value) return false;
    if (role == Role::Sum) {
        const unsigned xx = unsigned(v >> (w_ - 4)) & 3;
        if (xx != 1 && xx != 2) return false;
    }
    return true;
}

namespace {

std::string describe_violation(std::uint64_t v, const Mask& m, int w) {
    std::string out;
    for (int bit = w - 1; bit >= 0; --bit) {
        const std::uint64_t b = std::uint64_t(1) << bit;
        if ((m.fixed & b) && ((v & b) != (m.value & b))) {
            if (!out.empty()) out += ",";
            out += std::to_string(bit);
        }
    }
    return out;
}

} // namespace

std::uint64_t encode_state_value(Role role, unsigned code, const WordLayout& layout) {
    if (role != Role::L && role != Role::M) throw PreconditionError("encode supports roles l and m");
    if (code < 1 || code >= (1u << layout.k()))
        throw RangeError("state code " + std::to_string(code) + " outside 1.." + std::to_string((1u << layout.k()) - 1));
    const Mask m = layout.mask(role);
    std::uint64_t v = m.value;
    for (int d = 0; d < layout.k(); ++d)
        if ((code >> d) & 1) v |= std::uint64_t(1) << m.payload[std::size_t(d)];
    return v;
}

namespace {

unsigned read_payload(std::uint64_t v, const std::vector<int>& pos) {
    unsigned code = 0;
    for (std::size_t d = 0; d < pos.size(); ++d)
        if ((v >> pos[d]) & 1) code |= 1u << d;
    return code;
}

} // namespace

unsigned decode_state_value(std::uint64_t v, Role role, const WordLayout& layout) {
    if (role == Role::Sum) throw PreconditionError("use decode_sum for sums");
    const Mask m = layout.mask(role);
    if (m.payload.empty()) throw PreconditionError(std::string("role ") + role_name(role) + " has no payload");
    if ((v >> layout.w()) != 0) throw MaskError(std::string(role_name(role)) + ": value wider than w");
    if ((v & m.fixed) != m.value)
        throw MaskError(std::string(role_name(role)) + ": fixed bits violated at " + describe_violation(v, m, layout.w()));
    return read_payload(v, m.payload);
}

SumCodes decode_sum(std::uint64_t v, const WordLayout& layout) {
    if (!layout.matches(v, Role::Sum)) throw MaskError("x_l+x_m: header is not 0101 or 0110");
    const Mask m = layout.mask(Role::Sum);
    return {read_payload(v, m.payload), read_payload(v, m.payload_b)};
}

std::vector<std::uint64_t> first_class_solutions(std::uint64_t idx, unsigned t, const WordLayout& layout) {
    const int w = layout.w();
    const Mask rm = layout.mask(Role::RFirst, t);
    const Mask sm = layout.mask(Role::MPrime, t);
    std::vector<std::uint64_t> out;
    // Depth-first from the least significant bit, carrying the addition carry of R + idx.
    struct Frame {
        int bit;
        unsigned carry;
        std::uint64_t r;
    };
    std::vector<Frame> stack{{0, 0, 0}};
    while (!stack.empty()) {
        const Frame f = stack.back();
        stack.pop_back();
        if (f.bit == w) {
            if (f.carry == 1) out.push_back(f.r);
            continue;
        }
        const std::uint64_t b = std::uint64_t(1) << f.bit;
        const unsigned ib = unsigned(idx >> f.bit) & 1;
        for (unsigned rb = 0; rb < 2; ++rb) {
            if ((rm.fixed & b) && (((rm.value & b) != 0) != (rb == 1))) continue;
            if (!(rm.fixed & b) && !(rm.free & b) && rb) continue;
            const unsigned sum = rb + ib + f.carry;
            const bool sb = sum & 1;
            if ((sm.fixed & b) && (((sm.value & b) != 0) != sb)) continue;
            stack.push_back({f.bit + 1, sum >> 1, f.r | (rb ? b : 0)});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

IndexClass classify_index(std::uint64_t idx, const WordLayout& layout) {
    if (layout.matches(idx, Role::Sum)) return IndexClass::First;
    // odd indices are never l0 + m~ and would give an odd entry
    if (layout.matches(idx, Role::Second)) return IndexClass::Second;
    return IndexClass::Garbage;
}

std::uint64_t rule_entry(std::uint64_t idx, const CodeTransition& tr, const WordLayout& layout) {
    const std::uint64_t N = layout.N();
    if (idx < 1 || idx > N) throw RangeError("rule index " + std::to_string(idx) + " outside 1..N");
    switch (classify_index(idx, layout)) {
    case IndexClass::First: {
        const SumCodes sc = decode_sum(idx, layout);
        const unsigned t = tr(sc.s, sc.s_prime);
        if (t >= (1u << layout.k())) throw RangeError("transition result does not fit k bits");
        const auto sol = first_class_solutions(idx, t, layout);
        if (sol.empty()) throw UnsatisfiableEntry("no solution for index " + std::to_string(idx));
        return sol.front();
    }
    case IndexClass::Second:
        return N - (idx - layout.m_tilde()) + 1;
    case IndexClass::Garbage:
        break;
    }
    return 6;
}

std::uint64_t rule_entry(std::uint64_t idx, const OneWayCA& ca, const WordLayout& layout) {
    return rule_entry(idx, code_transition(ca), layout);
}

BlockOutput symbolic_block(std::uint64_t x_l, std::uint64_t x_m, std::uint64_t N,
                           const std::function<std::uint64_t(std::uint64_t)>& R) {
    if (x_l < 1 || x_m < 1) throw RangeError("block inputs must be nonzero");
    const std::uint64_t x = x_l + x_m;
    if (x > N) throw RangeError("x_l + x_m exceeds N");
    const std::uint64_t r = R(x);
    if (r % 2) throw RangeError("rule entry is odd");
    if (r + x < N + 1) throw RangeError("output center value would be negative");
    return {r + x - (N + 1), r / 2};
}

ChainTrace chain_step_traced(const CodeTransition& tr, const SymbolicCell& cell, const WordLayout& layout) {
    const std::uint64_t N = layout.N();
    auto R = [&](std::uint64_t i) { return rule_entry(i, tr, layout); };
    ChainTrace ct{};
    ct.idx1 = cell.x_l + cell.x_m;
    const BlockOutput first = symbolic_block(cell.x_l, cell.x_m, N, R);
    ct.r1 = first.m_out + (N + 1) - ct.idx1;
    ct.m_prime = first.m_out;
    ct.l0 = first.l_out;
    ct.idx2 = ct.l0 + cell.x_m_tilde;
    const BlockOutput second = symbolic_block(ct.l0, cell.x_m_tilde, N, R);
    ct.r2 = second.m_out + (N + 1) - ct.idx2;
    ct.out = {second.l_out, ct.m_prime, second.m_out};
    return ct;
}

SymbolicCell chain_step(const CodeTransition& tr, const SymbolicCell& cell, const WordLayout& layout) {
    return chain_step_traced(tr, cell, layout).out;
}

SymbolicCell chain_step(const OneWayCA& ca, const SymbolicCell& cell, const WordLayout& layout) {
    return chain_step(code_transition(ca), cell, layout);
}

int bits_for_states(int n) {
    int k = 0;
    while ((1 << k) <= n) ++k;
    return std::max(k, 1);
}

std::vector<SymbolicCell> encode_word(const OneWayCA& ca, const std::vector<int>& word, const WordLayout& layout) {
    const std::size_t n = word.size();
    if (n == 0) throw PreconditionError("word must be nonempty");
    std::vector<SymbolicCell> cells(n);
    for (std::size_t i = 0; i < n; ++i) {
        const int left = word[(i + n - 1) % n], self = word[i];
        if (left < 1 || left > ca.state_count || self < 1 || self > ca.state_count)
            throw RangeError("word state out of range");
        cells[i] = {encode_state_value(Role::L, unsigned(left), layout), encode_state_value(Role::M, unsigned(self), layout),
                    layout.m_tilde()};
    }
    return cells;
}

std::vector<int> decode_word(const std::vector<SymbolicCell>& cells, const WordLayout& layout) {
    const std::size_t n = cells.size();
    std::vector<int> word(n);
    try {
        for (std::size_t i = 0; i < n; ++i) {
            word[i] = int(decode_state_value(cells[i].x_m, Role::M, layout));
            if (word[i] == 0) throw EncodingError("cell " + std::to_string(i) + " decodes to code 0");
            if (cells[i].x_m_tilde != layout.m_tilde()) throw EncodingError("cell " + std::to_string(i) + ": x_m~ altered");
        }
        for (std::size_t i = 0; i < n; ++i) {
            const int left = int(decode_state_value(cells[i].x_l, Role::L, layout));
            if (left != word[(i + n - 1) % n])
                throw EncodingError("cell " + std::to_string(i) + ": left signal disagrees with left neighbor");
        }
    } catch (const MaskError& e) {
        throw EncodingError(e.what());
    }
    return word;
}

std::vector<SymbolicCell> symbolic_generation(const OneWayCA& ca, const std::vector<SymbolicCell>& cells,
                                              const WordLayout& layout) {
    const std::size_t n = cells.size();
    const CodeTransition tr = code_transition(ca);
    std::vector<SymbolicCell> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const SymbolicCell c = chain_step(tr, cells[i], layout);
        out[i].x_m = c.x_m;
        out[i].x_m_tilde = c.x_m_tilde;
        out[(i + 1) % n].x_l = c.x_l;
    }
    return out;
}

std::vector<std::vector<int>> simulate_symbolic(const OneWayCA& ca, const std::vector<int>& word, int steps) {
    ca.validate();
    const WordLayout layout(bits_for_states(ca.state_count));
    auto cells = encode_word(ca, word, layout);
    std::vector<std::vector<int>> trace{decode_word(cells, layout)};
    for (int s = 0; s < steps; ++s) {
        cells = symbolic_generation(ca, cells, layout);
        trace.push_back(decode_word(cells, layout));
    }
    return trace;
}

std::vector<int> step_radius1(const Radius1CA& ca, const std::vector<int>& word) {
    const std::size_t n = word.size();
    std::vector<int> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = ca.apply(word[(i + n - 1) % n], word[i], word[(i + 1) % n]);
    return out;
}

std::vector<int> OneWayReduction::pack(const std::vector<int>& word) const {
    if (word.size() % 2) throw PreconditionError("packing needs an even-length word");
    std::vector<int> out(word.size() / 2);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = 1 + word[2 * i] * q + word[2 * i + 1];
    return out;
}

std::vector<int> OneWayReduction::unpack(const std::vector<int>& packed) const {
    std::vector<int> out(packed.size() * 2);
    for (std::size_t i = 0; i < packed.size(); ++i) {
        const int v = packed[i] - 1;
        if (v < 0 || v >= q * q) throw EncodingError("packed state out of range");
        out[2 * i] = v / q;
        out[2 * i + 1] = v % q;
    }
    return out;
}

OneWayReduction make_one_way(const Radius1CA& ca) {
    const int q = ca.q;
    OneWayReduction red;
    red.q = q;
    red.ca.state_count = q * q;
    red.ca.table.resize(std::size_t(q * q * q * q));
    // Left cell (a,b), own cell (c,d) -> (f(a,b,c), f(b,c,d)): the pair drifts half a block per step.
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b)
            for (int c = 0; c < q; ++c)
                for (int d = 0; d < q; ++d) {
                    const int left = a * q + b, self = c * q + d;
                    red.ca.table[std::size_t(left * q * q + self)] = 1 + ca.apply(a, b, c) * q + ca.apply(b, c, d);
                }
    red.params = {2, 1, 1, 1, -1};
    return red;
}

std::vector<int> shift_word(const std::vector<int>& word, int s) {
    const long n = long(word.size());
    std::vector<int> out(word.size());
    for (long i = 0; i < n; ++i) out[std::size_t(i)] = word[std::size_t((((i + s) % n) + n) % n)];
    return out;
}

std::string RelationReport::text() const {
    std::string out = pass ? "PASS\n" : "FAIL\n";
    if (!pass) out += "counterexample: " + first_counterexample + "\n";
    return out;
}

RelationReport check_symbolic_relation(const OneWayCA& ca, const std::vector<std::vector<int>>& words,
                                       const SimulationParams& params, int T_checks) {
    const WordLayout layout(bits_for_states(ca.state_count));
    std::vector<std::vector<SymbolicCell>> samples;
    for (const auto& w : words) samples.push_back(encode_word(ca, w, layout));
    std::function<std::vector<int>(const std::vector<int>&)> step_a = [&](const std::vector<int>& w) {
        return step_one_way(ca, w);
    };
    std::function<std::vector<SymbolicCell>(const std::vector<SymbolicCell>&)> step_b =
        [&](const std::vector<SymbolicCell>& c) { return symbolic_generation(ca, c, layout); };
    std::function<std::vector<int>(const std::vector<SymbolicCell>&)> dec = [&](const std::vector<SymbolicCell>& c) {
        return decode_word(c, layout);
    };
    return check_simulation_relation(step_a, step_b, dec, params, samples, T_checks);
}

std::uint64_t materialized_rule_cells(const CodeTransition& tr, const WordLayout& layout) {
    std::uint64_t total = 1;
    for (std::uint64_t idx = 1; idx <= layout.N(); ++idx) total += rule_entry(idx, tr, layout);
    return total;
}

} // namespace uca4
