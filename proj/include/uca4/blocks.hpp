#pragma once

#include "uca4/config.hpp"
#include "uca4/structures.hpp"
#include "uca4/synthesis.hpp"

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace uca4 {

// R(1..N): positive even integers >= 6, N >= 2.  Throws PreconditionError otherwise.
class RuleArray {
public:
    static constexpr int kMinEntry = 6;

    explicit RuleArray(std::vector<std::int64_t> values);

    int size() const { return int(values_.size()); }
    std::int64_t operator()(int j) const; // 1-based; RangeError outside 1..N
    const std::vector<std::int64_t>& values() const { return values_; }
    std::int64_t total() const;
    std::string text() const; // "6,8,10"

    bool operator==(const RuleArray&) const = default;

private:
    std::vector<std::int64_t> values_;
};

RuleArray parse_rule_array(const std::string& csv);

struct BlockInputs {
    RuleArray R;
    int x_l = 1, x_m = 1;
    void validate() const; // RangeError
};

struct BlockResult {
    std::int64_t m_out = 0, l_out = 0;
    bool r_preserved = false;
    bool operator==(const BlockResult&) const = default;
};

// All positions are cells of row 0, relative to the left border (Item pos of the left
// border is 0).  Blocks tile with horizontal period cell_width.
struct BlockGeometry {
    RuleArray R{{6, 6}};
    std::int64_t cell_width = 0;
    std::int64_t right_border = 0;
    std::int64_t l_anchor = 0; // leading (rightmost) particle of l
    std::int64_t r_anchor = 0; // first (leftmost) particle of R
    std::int64_t m_anchor = 0; // leading (leftmost) particle of m
    int spacing_l = 4, spacing_m = 4;
    std::int64_t period = 0;
    std::int64_t r_shift = 0; // constant shift of R per border crossing, 0 until measured

    bool operator==(const BlockGeometry&) const = default;
    std::string manifest() const;
};

enum class UnaryRole { Left, Center }; // l: blue-right, m: blue-left

// Particle cells only, in row anchor.t; particle k at anchor.x + k*spacing (l grows to the
// left of the anchor, m to the right).  PhaseError when the anchor cell cannot hold the
// particle on a phase-0 checkerboard.
Coloring encode_unary_signal(UnaryRole role, int x, int spacing, Point anchor);
// N+1 red-left particles, the j-th and (j+1)-th R(j) cells apart.
Coloring encode_rule_signal(const RuleArray& R, Point anchor);

enum class SignalKind { Left, Center, Rule };
using DecodedSignal = std::variant<std::int64_t, RuleArray>;

// Decodes a row holding exactly one clean signal (background elsewhere, no borders).
// MalformedSignal on foreign particles or irregular spacing.
DecodedSignal decode_signal(const Configuration& row, SignalKind kind, int spacing = 4);
std::int64_t decode_unary(const std::vector<Item>& items, Kind kind, int spacing);
RuleArray decode_rule(const std::vector<Item>& items, Kind kind);

// m' = R(x) + x - (N+1), l' = R(x)/2 with x = x_l + x_m.
BlockResult block_oracle(const RuleArray& R, int x_l, int x_m);

BlockGeometry block_geometry(const RuleArray& R);

// The items of one block with its left border at x0 (right border included).
std::vector<Item> block_items(const BlockInputs& in, const BlockGeometry& g, std::int64_t x0 = 0);
Configuration build_block(const RuleTable& rule, const BlockInputs& in, const BlockGeometry& g);
// Simulates one period and decodes m' (between the borders), l' (right of the right
// border) and R.  SimulationDiverged when the row cannot be read as those signals.
BlockResult run_block(const RuleTable& rule, const Configuration& config, const BlockGeometry& g);
BlockResult run_block(const RuleTable& rule, const BlockInputs& in, const BlockGeometry& g);

// Space-time extent [x_min, x_max] x [0, t_max] of the simulated block.
struct BoundingBox {
    std::int64_t x_min = 0, x_max = 0, t_max = 0;
    bool operator==(const BoundingBox&) const = default;
};
BoundingBox block_bounding_box(const BlockInputs& in, const BlockGeometry& g);

// cols x rows assembly: cols adjacent blocks evolved for rows periods.  Checks every seam
// with validate_window and every block output against the oracle chained along rows
// (block i receives l' from block i-1, m' from itself; the leftmost gets l = 1).
Report check_block_tiling(const RuleTable& rule, const RuleArray& R, int cols = 2, int rows = 2);

// Synthesis tests: each case must run to the oracle's result.  Unset slots propagate as
// FreeSlotError so the search can branch on them.
std::vector<SceneTest> block_battery(const std::vector<BlockInputs>& cases);

std::string block_manifest(const BlockInputs& in, const BlockGeometry& g);

// One text line per row, states 0..3 as ' ', '.', 'b', 'r'.
std::string render_ascii(const SpaceTimeWindow& w);
// Plain PGM: "P2\n<w> <h>\n255\n" then one row per line, grey levels 0, 85, 170, 255.
std::string render_pgm(const SpaceTimeWindow& w);

} // namespace uca4
