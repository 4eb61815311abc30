#pragma once

#include "uca4/error.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace uca4 {

// One-way CA over states 1..n; next(a, b) with a the left neighbor and b the cell itself.
struct OneWayCA {
    int state_count = 0;
    std::vector<int> table; // (a-1)*n + (b-1)

    int next(int a, int b) const { return table[std::size_t((a - 1) * state_count + (b - 1))]; }
    void validate() const;
};

OneWayCA parse_one_way(const std::string& text);
OneWayCA load_one_way_file(const std::string& path);
std::string format_one_way(const OneWayCA& ca);

// Direct simulation with wraparound; row 0 is the input word.
std::vector<std::vector<int>> simulate_direct(const OneWayCA& ca, const std::vector<int>& word, int steps);

// Code-level transition used by the bit machinery: codes are k-bit integers (0 allowed).
using CodeTransition = std::function<unsigned(unsigned, unsigned)>;
CodeTransition code_transition(const OneWayCA& ca);

enum class Role { L, M, MTilde, Sum, RFirst, MPrime, L0, Second, RSecond, LPrime };
const char* role_name(Role r);

// A bit pattern with fixed positions; payload bits are read (or written) at the listed
// positions, one per code bit (index 0 = least significant code bit).
struct Mask {
    std::uint64_t fixed = 0;  // positions whose value is prescribed
    std::uint64_t value = 0;  // prescribed values on `fixed`
    std::uint64_t free = 0;   // positions left to a solver (the triangle bits)
    std::vector<int> payload; // code bit d lives at payload[d]
    std::vector<int> payload_b; // second payload (sum role: the center state)
};

class WordLayout {
public:
    explicit WordLayout(int k);

    int k() const { return k_; }
    int w() const { return w_; }
    std::uint64_t N() const { return (std::uint64_t(1) << w_) - 1; }
    std::uint64_t m_tilde() const { return std::uint64_t(1) << (w_ - 1); }

    // Bit position of the high bit of pair p (0=A .. 3=D) of digit d; the low bit is one below.
    int pair_hi(int d, int p) const { return 10 + 8 * d - 2 * p; }

    // Row of the table as one character per bit, most significant first:
    // '0'/'1' fixed, 'b' arbitrary, 't' solver bit, 's'/'p' payload, 'x' sum header carry bits,
    // 'T' code bit of the result, 'U' its complement.
    std::string row_pattern(Role role) const;
    // Fixed/payload view of a row.  With `t` given, 'T'/'U' positions are fixed to that code;
    // otherwise 'T' positions are payload.
    Mask mask(Role role, std::optional<unsigned> t = std::nullopt) const;
    bool matches(std::uint64_t v, Role role, std::optional<unsigned> t = std::nullopt) const;
    // Human-readable row with header|digits|footer separators.
    std::string row_text(Role role) const;

private:
    int k_, w_;
};

WordLayout make_layout(int k);

std::uint64_t encode_state_value(Role role, unsigned code, const WordLayout& layout);

struct SumCodes {
    unsigned s, s_prime;
};
// Role::L, Role::M, Role::MPrime, Role::LPrime: returns the payload code.
unsigned decode_state_value(std::uint64_t v, Role role, const WordLayout& layout);
SumCodes decode_sum(std::uint64_t v, const WordLayout& layout);

// All solutions of the two-mask system of a first-class index, ascending.
std::vector<std::uint64_t> first_class_solutions(std::uint64_t idx, unsigned t, const WordLayout& layout);

std::uint64_t rule_entry(std::uint64_t idx, const CodeTransition& tr, const WordLayout& layout);
std::uint64_t rule_entry(std::uint64_t idx, const OneWayCA& ca, const WordLayout& layout);

enum class IndexClass { First, Second, Garbage };
IndexClass classify_index(std::uint64_t idx, const WordLayout& layout);

struct BlockOutput {
    std::uint64_t m_out, l_out;
};
// Block arithmetic with R given as a function of the index.
BlockOutput symbolic_block(std::uint64_t x_l, std::uint64_t x_m, std::uint64_t N,
                           const std::function<std::uint64_t(std::uint64_t)>& R);

struct SymbolicCell {
    std::uint64_t x_l = 0, x_m = 0, x_m_tilde = 0;
    bool operator==(const SymbolicCell&) const = default;
};

struct ChainTrace {
    std::uint64_t idx1, r1, m_prime, l0, idx2, r2;
    SymbolicCell out;
};

ChainTrace chain_step_traced(const CodeTransition& tr, const SymbolicCell& cell, const WordLayout& layout);
SymbolicCell chain_step(const CodeTransition& tr, const SymbolicCell& cell, const WordLayout& layout);
SymbolicCell chain_step(const OneWayCA& ca, const SymbolicCell& cell, const WordLayout& layout);

// Smallest k whose nonzero codes cover states 1..n.
int bits_for_states(int n);

std::vector<SymbolicCell> encode_word(const OneWayCA& ca, const std::vector<int>& word, const WordLayout& layout);
// Throws EncodingError when a cell's m value or its l value (left neighbor) is not decodable.
std::vector<int> decode_word(const std::vector<SymbolicCell>& cells, const WordLayout& layout);
std::vector<SymbolicCell> symbolic_generation(const OneWayCA& ca, const std::vector<SymbolicCell>& cells,
                                              const WordLayout& layout);
// Decoded trace, row 0 the input word.
std::vector<std::vector<int>> simulate_symbolic(const OneWayCA& ca, const std::vector<int>& word, int steps);

// Radius-1 CA over states 0..q-1, table index a*q*q + b*q + c.
struct Radius1CA {
    int q = 0;
    std::vector<int> table;
    int apply(int a, int b, int c) const { return table[std::size_t(a * q * q + b * q + c)]; }
};

struct SimulationParams {
    int m = 1, m_prime = 1, t = 1, t_prime = 1, s = 0;
};

std::vector<int> step_radius1(const Radius1CA& ca, const std::vector<int>& word);

struct OneWayReduction {
    OneWayCA ca;
    SimulationParams params;
    int q = 0;
    std::vector<int> pack(const std::vector<int>& word) const;   // even length, states 0..q-1
    std::vector<int> unpack(const std::vector<int>& packed) const;
};
OneWayReduction make_one_way(const Radius1CA& ca);

std::vector<int> step_one_way(const OneWayCA& ca, const std::vector<int>& word);
// sigma^s with (sigma c)_i = c_{i+1}: result[i] = word[i + s], cyclically.
std::vector<int> shift_word(const std::vector<int>& word, int s);

struct RelationReport {
    bool pass = true;
    std::string first_counterexample;
    std::string text() const;
};

// Checks sigma^s(F^t(e(c))) == e(G^{t'}(c)) along each sample for T_checks rounds.
// `decode` maps a simulator configuration to the simulated word and throws EncodingError.
template <class C>
RelationReport check_simulation_relation(const std::function<std::vector<int>(const std::vector<int>&)>& step_a,
                                         const std::function<C(const C&)>& step_b,
                                         const std::function<std::vector<int>(const C&)>& decode,
                                         const SimulationParams& params, const std::vector<C>& samples,
                                         int T_checks) {
    RelationReport rep;
    for (std::size_t si = 0; si < samples.size(); ++si) {
        C b = samples[si];
        std::vector<int> a = decode(b);
        for (int n = 1; n <= T_checks; ++n) {
            for (int i = 0; i < params.t; ++i) a = step_a(a);
            a = shift_word(a, params.s);
            for (int i = 0; i < params.t_prime; ++i) b = step_b(b);
            const std::vector<int> got = decode(b);
            if (got != a) {
                rep.pass = false;
                rep.first_counterexample = "sample " + std::to_string(si) + " step " + std::to_string(n);
                return rep;
            }
        }
    }
    return rep;
}

RelationReport check_symbolic_relation(const OneWayCA& ca, const std::vector<std::vector<int>>& words,
                                       const SimulationParams& params, int T_checks);

// Span in cells of the fully materialized rule signal: N+1 particles whose gaps are R(1..N).
std::uint64_t materialized_rule_cells(const CodeTransition& tr, const WordLayout& layout);

} // namespace uca4
