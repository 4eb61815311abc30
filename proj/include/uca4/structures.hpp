#pragma once

#include "uca4/config.hpp"
#include "uca4/rule.hpp"

#include <compare>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace uca4 {

struct Point {
    std::int64_t x = 0, t = 0;
    auto operator<=>(const Point&) const = default;
    Point operator+(const Point& o) const { return {x + o.x, t + o.t}; }
    Point operator-(const Point& o) const { return {x - o.x, t - o.t}; }
};

class Coloring {
public:
    Coloring() = default;
    Coloring(std::initializer_list<std::pair<const Point, State>> init) : cells_(init) {}

    std::size_t size() const { return cells_.size(); }
    bool empty() const { return cells_.empty(); }
    bool contains(Point p) const { return cells_.count(p) != 0; }
    std::optional<State> at(Point p) const;
    void set(Point p, State s) { cells_[p] = s; }
    const std::map<Point, State>& cells() const { return cells_; }

    Coloring translated(Point u) const;
    // Throws OverlapError when supports intersect.
    Coloring united(const Coloring& o) const;
    Coloring restricted(const std::function<bool(Point)>& keep) const;

    bool operator==(const Coloring&) const = default;

private:
    std::map<Point, State> cells_;
};

// Report whose first text line is PASS or FAIL.
struct Report {
    bool pass = true;
    std::vector<std::string> lines;
    void fail(const std::string& why) {
        pass = false;
        lines.push_back(why);
    }
    void note(const std::string& s) { lines.push_back(s); }
    void merge(const Report& o, const std::string& prefix = "");
    std::string text() const;
};

struct Background {
    std::string name;
    Coloring cell;
    Point u, v;
};

// Checkerboard with value (x + t + phase) mod 2.
Background checkerboard_background(int phase = 0);

// Value of the tiling generated by b at p.  Throws IncompleteTilingError on collinear
// vectors or when the copies do not cover the plane exactly once.
State background_value(const Background& b, Point p);
void check_tiling(const Background& b);

// Called once per checked point z with the neighborhood at z and the cell above it.
using TransitionVisitor = std::function<void(Point z, State l, State c, State r, State next)>;

// Enumerates the transitions of one fundamental domain plus its neighbors.
void background_transitions(const Background& b, const TransitionVisitor& visit);
Report verify_background(const RuleTable& rule, const Background& b);

enum class Kind { BlueRight, BlueLeft, RedRight, RedLeft, Border };
const char* kind_name(Kind k);
std::optional<Kind> kind_from_name(const std::string& s);
int velocity(Kind k);
bool is_blue(Kind k);

struct Particle {
    std::string name;
    Coloring perturbation;
    Point u;
    Background left, right;
};

// The five particles of the construction (blue/red moving right/left, and the border).
Particle standard_particle(Kind k);
// Transitions over one repetition period plus a one-cell margin.  Throws DisconnectedError.
void particle_transitions(const Particle& p, const TransitionVisitor& visit);
Report verify_particle(const RuleTable& rule, const Particle& p);

// A particle occurrence in a configuration row.  For Border, pos is the left cell of the
// equal pair.
struct Item {
    Kind kind;
    std::int64_t pos;
    auto operator<=>(const Item&) const = default;
};

// Places items on a checkerboard of phase 0 at the far left (each border flips the phase to
// its right).  With strict placement, a particle on a cell of the wrong parity raises
// PhaseError; otherwise it is moved right to the next compatible cell.
Configuration build_scene(const std::vector<Item>& items, bool strict = true, std::int64_t t = 0);

// Splits a row into background and particles; nullopt if some cell cannot be explained
// (overlapping particles, particles touching borders, non-checkerboard flanks).
std::optional<std::vector<Item>> decompose(const Configuration& c, std::int64_t t = 0);

// No two consecutive items approach each other.
bool settled(const std::vector<Item>& items);

struct SignalDescriptor {
    Kind kind;
    std::vector<int> gaps; // distances between consecutive particles (count = gaps.size() + 1)
    int count() const { return int(gaps.size()) + 1; }
    static SignalDescriptor single(Kind k) { return {k, {}}; }
    static SignalDescriptor unary(Kind k, int count, int spacing);
    std::string text() const;
};

struct OutgoingLine {
    Kind kind;
    std::int64_t rel2; // doubled intercept relative to the reference point, see detect_collision
    auto operator<=>(const OutgoingLine&) const = default;
};

struct CollisionOutcome {
    std::vector<SignalDescriptor> incoming;
    std::vector<std::pair<Kind, int>> outgoing_groups; // (kind, count) left to right
    std::vector<OutgoingLine> outgoing;
    Point extent_min, extent_max; // relative to the reference point
    Coloring canonical_coloring;
    std::int64_t settle_time = 0;

    // Translation-equality of outcomes.
    bool same_class(const CollisionOutcome& o) const {
        return outgoing == o.outgoing && canonical_coloring == o.canonical_coloring;
    }
    std::string summary() const;
};

struct CollisionOptions {
    std::int64_t step_bound = -1; // -1: 4 * extent + 64
    int stable_steps = 4;
};

// Simulates `left` followed by `right` at the given distance between the last particle of
// `left` and the first particle of `right`.  Throws PreconditionError when they do not
// approach, PhaseError on incompatible distance, NonTerminationError past the step bound.
CollisionOutcome detect_collision(const RuleTable& rule, const SignalDescriptor& left, const SignalDescriptor& right,
                                  std::int64_t offset, const CollisionOptions& opt = {});

// Offsets tried by the determinism check: every phase-compatible distance in
// [base, base + 4).
std::vector<std::int64_t> compatible_offsets(const SignalDescriptor& left, const SignalDescriptor& right,
                                             std::int64_t base);

struct DeterminismResult {
    Report report;
    std::vector<CollisionOutcome> classes;
};
DeterminismResult check_collision_determinism(const RuleTable& rule, const SignalDescriptor& left,
                                              const SignalDescriptor& right, std::int64_t base = 8,
                                              const CollisionOptions& opt = {});

// Named inventory: the checkerboard, the five particles and the converging pairs that are
// checked for determinism.
struct StructureSpec {
    Background background;
    std::vector<Particle> particles;
    std::vector<std::pair<SignalDescriptor, SignalDescriptor>> converging_pairs;
};
StructureSpec standard_structure_spec();

// Full structure suite: background, every particle, determinism of every converging pair.
Report verify_structures(const RuleTable& rule, const StructureSpec& spec);

// Text manifest: one structure per block, perturbation as "x t state" triples.
std::string structure_manifest(const StructureSpec& spec);

} // namespace uca4
