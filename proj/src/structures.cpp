#include "uca4/structures.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>

namespace uca4 {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

std::int64_t mod2(std::int64_t v) { return ((v % 2) + 2) % 2; }

std::string point_text(Point p) { return "(" + std::to_string(p.x) + "," + std::to_string(p.t) + ")"; }

std::int64_t cross(Point a, Point b) { return a.x * b.t - a.t * b.x; }

// Is d an integer combination of u and v?
bool in_lattice(Point d, Point u, Point v) {
    const std::int64_t det = cross(u, v);
    return cross(d, v) % det == 0 && cross(u, d) % det == 0;
}

} // namespace

std::optional<State> Coloring::at(Point p) const {
    auto it = cells_.find(p);
    if (it == cells_.end()) return std::nullopt;
    return it->second;
}

Coloring Coloring::translated(Point u) const {
    Coloring out;
    for (auto& [p, s] : cells_) out.cells_.emplace(p + u, s);
    return out;
}

Coloring Coloring::united(const Coloring& o) const {
    Coloring out = *this;
    for (auto& [p, s] : o.cells_) {
        if (!out.cells_.emplace(p, s).second) throw OverlapError("both colorings define " + point_text(p));
    }
    return out;
}

Coloring Coloring::restricted(const std::function<bool(Point)>& keep) const {
    Coloring out;
    for (auto& [p, s] : cells_)
        if (keep(p)) out.cells_.emplace(p, s);
    return out;
}

void Report::merge(const Report& o, const std::string& prefix) {
    pass = pass && o.pass;
    for (auto& l : o.lines) lines.push_back(prefix + l);
}

std::string Report::text() const {
    std::string out = pass ? "PASS\n" : "FAIL\n";
    for (auto& l : lines) out += l + "\n";
    return out;
}

Background checkerboard_background(int phase) {
    Background b;
    b.name = phase == 0 ? "checkerboard" : "checkerboard-1";
    b.cell.set({0, 0}, State(mod2(phase)));
    b.cell.set({1, 0}, State(mod2(1 + phase)));
    b.u = {2, 0};
    b.v = {1, 1};
    return b;
}

void check_tiling(const Background& b) {
    const std::int64_t det = cross(b.u, b.v);
    if (det == 0) throw IncompleteTilingError("vectors " + point_text(b.u) + " and " + point_text(b.v) + " are collinear");
    if (b.cell.empty()) throw IncompleteTilingError("empty cell");
    std::vector<Point> pts;
    for (auto& [p, s] : b.cell.cells()) pts.push_back(p);
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            if (in_lattice(pts[j] - pts[i], b.u, b.v))
                throw IncompleteTilingError("copies overlap at " + point_text(pts[i]) + " and " + point_text(pts[j]));
    if (std::int64_t(pts.size()) != std::llabs(det))
        throw IncompleteTilingError("cell covers " + std::to_string(pts.size()) + " of " +
                                    std::to_string(std::llabs(det)) + " points per period");
}

State background_value(const Background& b, Point p) {
    if (cross(b.u, b.v) == 0) throw IncompleteTilingError("collinear vectors");
    for (auto& [q, s] : b.cell.cells())
        if (in_lattice(p - q, b.u, b.v)) return s;
    throw IncompleteTilingError("no copy covers " + point_text(p));
}


void background_transitions(const Background& b, const TransitionVisitor& visit) {
    check_tiling(b);
    auto value = [&](Point p) { return background_value(b, p); };
    // Each cell point and its translates by ±u, ±v: the fundamental domain plus its neighbors.
    for (auto& [p, s] : b.cell.cells())
        for (int i = -1; i <= 1; ++i)
            for (int j = -1; j <= 1; ++j) {
                const Point z{p.x + i * b.u.x + j * b.v.x, p.t + i * b.u.t + j * b.v.t};
                visit(z, value({z.x - 1, z.t}), value(z), value({z.x + 1, z.t}), value({z.x, z.t + 1}));
            }
}

namespace {

struct Checker {
    const RuleTable& rule;
    Report& r;
    std::set<int> seen;
    void operator()(Point p, State l, State c, State rr, State next) {
        const int slot = slot_of(l, c, rr);
        const State f = rule.get(slot);
        if (f != next && seen.insert(slot).second) {
            r.fail("violated " + slot_name(slot) + " at " + point_text(p) + ": rule gives " +
                   (f == kFree ? std::string("?") : std::to_string(f)) + ", diagram has " + std::to_string(next));
        }
    }
};

} // namespace

Report verify_background(const RuleTable& rule, const Background& b) {
    Report r;
    Checker check{rule, r, {}};
    background_transitions(b, std::ref(check));
    r.note("background " + b.name + ": " + std::to_string(b.cell.size()) + " cells, u=" + point_text(b.u) +
           " v=" + point_text(b.v));
    return r;
}

const char* kind_name(Kind k) {
    switch (k) {
    case Kind::BlueRight: return "blue-right";
    case Kind::BlueLeft: return "blue-left";
    case Kind::RedRight: return "red-right";
    case Kind::RedLeft: return "red-left";
    case Kind::Border: return "border";
    }
    return "?";
}

std::optional<Kind> kind_from_name(const std::string& s) {
    for (Kind k : {Kind::BlueRight, Kind::BlueLeft, Kind::RedRight, Kind::RedLeft, Kind::Border})
        if (s == kind_name(k)) return k;
    return std::nullopt;
}

int velocity(Kind k) {
    switch (k) {
    case Kind::BlueRight:
    case Kind::RedRight: return 1;
    case Kind::BlueLeft:
    case Kind::RedLeft: return -1;
    case Kind::Border: return 0;
    }
    return 0;
}

bool is_blue(Kind k) { return k == Kind::BlueRight || k == Kind::BlueLeft; }

namespace {
State color_of(Kind k) { return is_blue(k) ? 2 : 3; }
} // namespace

Particle standard_particle(Kind k) {
    Particle p;
    p.name = kind_name(k);
    p.left = checkerboard_background(0);
    p.right = checkerboard_background(0);
    switch (k) {
    case Kind::BlueRight:
    case Kind::RedRight:
        p.perturbation.set({0, 0}, color_of(k));
        p.u = {1, 1};
        break;
    case Kind::BlueLeft:
    case Kind::RedLeft:
        p.perturbation.set({1, 0}, color_of(k));
        p.u = {-1, 1};
        break;
    case Kind::Border:
        // Two equal cells between the phases: 00 then 11.
        p.perturbation = Coloring{{{0, 0}, 0}, {{1, 0}, 0}, {{0, 1}, 1}, {{1, 1}, 1}};
        p.u = {0, 2};
        p.right = checkerboard_background(1);
        break;
    }
    return p;
}

void particle_transitions(const Particle& p, const TransitionVisitor& visit) {
    if (p.u.t <= 0) throw DisconnectedError("repetition " + point_text(p.u) + " does not advance in time");
    if (p.perturbation.empty()) throw DisconnectedError("empty perturbation");
    std::int64_t pt_min = INT64_MAX, pt_max = INT64_MIN;
    for (auto& [q, s] : p.perturbation.cells()) {
        pt_min = std::min(pt_min, q.t);
        pt_max = std::max(pt_max, q.t);
    }
    // Copies ku*C restricted to a time window covering one period with margins.
    const std::int64_t t_lo = pt_min - 2, t_hi = pt_max + p.u.t + 2;
    std::map<Point, State> pert;
    const std::int64_t k_lo = floor_div(t_lo - pt_max, p.u.t) - 1, k_hi = floor_div(t_hi - pt_min, p.u.t) + 1;
    for (std::int64_t k = k_lo; k <= k_hi; ++k)
        for (auto& [q, s] : p.perturbation.cells()) {
            Point z{q.x + k * p.u.x, q.t + k * p.u.t};
            if (!pert.emplace(z, s).second && pert[z] != s)
                throw DisconnectedError("repeated perturbation overlaps itself at " + point_text(z));
        }
    std::int64_t x_lo = INT64_MAX, x_hi = INT64_MIN;
    for (auto& [z, s] : pert)
        if (z.t >= t_lo && z.t <= t_hi) {
            x_lo = std::min(x_lo, z.x);
            x_hi = std::max(x_hi, z.x);
        }
    x_lo -= 3;
    x_hi += 3;
    const std::int64_t W = x_hi - x_lo + 1, H = t_hi - t_lo + 1;
    // 0 unknown, 1 left domain, 2 right domain, 3 perturbation
    std::vector<int> label(W * H, 0);
    auto idx = [&](std::int64_t x, std::int64_t t) { return (t - t_lo) * W + (x - x_lo); };
    for (auto& [z, s] : pert)
        if (z.t >= t_lo && z.t <= t_hi) label[idx(z.x, z.t)] = 3;
    for (int side = 1; side <= 2; ++side) {
        std::deque<Point> q;
        const std::int64_t x0 = side == 1 ? x_lo : x_hi;
        for (std::int64_t t = t_lo; t <= t_hi; ++t) {
            if (label[idx(x0, t)] == 3) throw DisconnectedError("perturbation reaches the window edge");
            if (label[idx(x0, t)] == 0) {
                label[idx(x0, t)] = side;
                q.push_back({x0, t});
            }
        }
        while (!q.empty()) {
            Point z = q.front();
            q.pop_front();
            const Point nb[4] = {{z.x + 1, z.t}, {z.x - 1, z.t}, {z.x, z.t + 1}, {z.x, z.t - 1}};
            for (Point n : nb) {
                if (n.x < x_lo || n.x > x_hi || n.t < t_lo || n.t > t_hi) continue;
                int& l = label[idx(n.x, n.t)];
                if (l == 0) {
                    l = side;
                    q.push_back(n);
                } else if (l != 3 && l != side) {
                    throw DisconnectedError("the repeated perturbation of " + p.name +
                                            " does not separate the plane into two domains");
                }
            }
        }
    }
    for (std::int64_t t = t_lo; t <= t_hi; ++t)
        for (std::int64_t x = x_lo; x <= x_hi; ++x)
            if (label[idx(x, t)] == 0) throw DisconnectedError("enclosed region at " + point_text({x, t}));

    auto value = [&](Point z) -> State {
        switch (label[idx(z.x, z.t)]) {
        case 1: return background_value(p.left, z);
        case 2: return background_value(p.right, z);
        default: return pert.at(z);
        }
    };
    for (std::int64_t t = pt_min - 1; t < pt_min + p.u.t + 1; ++t)
        for (std::int64_t x = x_lo + 1; x < x_hi; ++x)
            visit({x, t}, value({x - 1, t}), value({x, t}), value({x + 1, t}), value({x, t + 1}));
}

Report verify_particle(const RuleTable& rule, const Particle& p) {
    Report r = verify_background(rule, p.left);
    if (p.right.name != p.left.name || !(p.right.cell == p.left.cell)) r.merge(verify_background(rule, p.right));
    Checker check{rule, r, {}};
    particle_transitions(p, std::ref(check));
    r.note("particle " + p.name + ": repetition " + point_text(p.u));
    return r;
}

namespace {

State bg_at(std::int64_t x, std::int64_t t, int phase) { return State(mod2(x + t + phase)); }

bool needs_zero(Kind k) { return velocity(k) > 0; }

} // namespace

Configuration build_scene(const std::vector<Item>& items_in, bool strict, std::int64_t t) {
    std::vector<Item> items = items_in;
    std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) { return a.pos < b.pos; });
    const std::int64_t lo = items.empty() ? 0 : items.front().pos - 4;
    const std::int64_t hi = items.empty() ? 1 : items.back().pos + 5;
    std::vector<State> core;
    core.reserve(hi - lo + 1);
    int phase = 0;
    std::size_t next = 0;
    std::int64_t last = INT64_MIN;
    std::vector<std::pair<std::int64_t, State>> marks;
    for (std::int64_t x = lo; x <= hi; ++x) {
        core.push_back(bg_at(x, t, phase));
        while (next < items.size() && items[next].pos <= x) {
            Item it = items[next++];
            if (it.kind == Kind::Border) {
                if (it.pos != x) throw GeometryError("border placed at " + std::to_string(it.pos) + " inside another item");
                phase ^= 1;
                last = x + 1;
                continue;
            }
            if (it.pos != x) throw GeometryError("particle at " + std::to_string(it.pos) + " overlaps another item");
            const State want = needs_zero(it.kind) ? 0 : 1;
            if (core.back() != want) {
                if (strict)
                    throw PhaseError(std::string(kind_name(it.kind)) + " cannot sit at " + std::to_string(x) +
                                     " (background parity)");
                // shift to the next compatible cell
                if (next < items.size() && items[next].pos <= x + 1)
                    throw GeometryError("no room to realign " + std::string(kind_name(it.kind)));
                items.insert(items.begin() + next, Item{it.kind, x + 1});
                continue;
            }
            if (x - 1 <= last) throw GeometryError("items too close at " + std::to_string(x));
            marks.push_back({x, color_of(it.kind)});
            last = x;
        }
    }
    for (auto& [x, s] : marks) core[x - lo] = s;
    std::vector<State> left{bg_at(lo, t, 0), bg_at(lo + 1, t, 0)};
    std::vector<State> right{bg_at(hi + 1, t, phase), bg_at(hi + 2, t, phase)};
    return Configuration(left, core, right, lo);
}

namespace {

bool alternating(const std::vector<State>& w) {
    if (w.size() % 2 != 0) return false;
    for (std::size_t i = 0; i < w.size(); ++i)
        if (w[i] > 1 || w[i] == w[(i + 1) % w.size()]) return false;
    return true;
}

} // namespace

std::optional<std::vector<Item>> decompose(const Configuration& c, std::int64_t) {
    if (!alternating(c.left_period()) || !alternating(c.right_period())) return std::nullopt;
    const std::int64_t lo = c.origin() - 2, hi = c.core_end() + 2;
    const auto s = c.slice(lo, hi);
    auto at = [&](std::int64_t x) { return s[x - lo]; };
    std::vector<Item> items;
    State prev = at(lo);
    for (std::int64_t x = lo + 1; x <= hi - 1; ++x) {
        const State v = at(x);
        if (v >= 2) {
            const State r = at(x + 1);
            if (prev >= 2 || r >= 2 || prev != r) return std::nullopt;
            const bool right = prev == 1;
            items.push_back({v == 2 ? (right ? Kind::BlueRight : Kind::BlueLeft)
                                    : (right ? Kind::RedRight : Kind::RedLeft),
                             x});
            prev = r;
            ++x;
            continue;
        }
        if (v == prev) items.push_back({Kind::Border, x - 1});
        prev = v;
    }
    for (std::size_t i = 1; i < items.size(); ++i)
        if (items[i].pos - items[i - 1].pos < 2) return std::nullopt;
    return items;
}

bool settled(const std::vector<Item>& items) {
    for (std::size_t i = 1; i < items.size(); ++i)
        if (velocity(items[i - 1].kind) > velocity(items[i].kind)) return false;
    return true;
}

SignalDescriptor SignalDescriptor::unary(Kind k, int count, int spacing) {
    if (count < 1) throw PreconditionError("a signal needs at least one particle");
    return {k, std::vector<int>(count - 1, spacing)};
}

std::string SignalDescriptor::text() const {
    std::string out = kind_name(kind);
    if (!gaps.empty()) {
        out += " x" + std::to_string(count()) + " gaps";
        for (std::size_t i = 0; i < gaps.size(); ++i) out += (i ? "," : " ") + std::to_string(gaps[i]);
    }
    return out;
}

std::string CollisionOutcome::summary() const {
    std::ostringstream os;
    os << "in:";
    for (auto& s : incoming) os << " [" << s.text() << "]";
    os << " out:";
    if (outgoing_groups.empty()) os << " nothing";
    for (auto& [k, n] : outgoing_groups) os << " " << kind_name(k) << "x" << n;
    os << " settle=" << settle_time << " extent=" << point_text(extent_min) << ".." << point_text(extent_max);
    return os.str();
}

namespace {

struct Placement {
    std::vector<Item> items;
    std::int64_t inner_left, inner_right; // positions of the innermost pair
};

Placement place(const SignalDescriptor& left, const SignalDescriptor& right, std::int64_t offset) {
    Placement pl;
    // First particle of the left signal: smallest compatible position >= 0.
    std::int64_t pos = 0;
    if (left.kind != Kind::Border && !needs_zero(left.kind)) pos = 1;
    auto push = [&](Kind k, std::int64_t p) { pl.items.push_back({k, p}); };
    push(left.kind, pos);
    for (int g : left.gaps) push(left.kind, pos += g);
    pl.inner_left = pos;
    pos += offset;
    pl.inner_right = pos;
    push(right.kind, pos);
    for (int g : right.gaps) push(right.kind, pos += g);
    build_scene(pl.items, true); // throws PhaseError or GeometryError
    return pl;
}

std::vector<Item> advanced(const std::vector<Item>& items, std::int64_t dt) {
    std::vector<Item> out = items;
    for (auto& it : out) it.pos += velocity(it.kind) * dt;
    return out;
}

std::vector<std::pair<Kind, int>> group(const std::vector<Item>& items) {
    std::vector<std::pair<Kind, int>> out;
    for (auto& it : items) {
        if (!out.empty() && out.back().first == it.kind) ++out.back().second;
        else out.push_back({it.kind, 1});
    }
    return out;
}

std::int64_t signal_extent(const SignalDescriptor& s) {
    return std::accumulate(s.gaps.begin(), s.gaps.end(), std::int64_t(0)) + 1;
}

} // namespace

CollisionOutcome detect_collision(const RuleTable& rule, const SignalDescriptor& left, const SignalDescriptor& right,
                                  std::int64_t offset, const CollisionOptions& opt) {
    const int vl = velocity(left.kind), vr = velocity(right.kind);
    if (vl <= vr)
        throw PreconditionError(std::string(kind_name(left.kind)) + " and " + kind_name(right.kind) +
                                " do not approach each other");
    const Placement pl = place(left, right, offset);
    const std::int64_t extent = signal_extent(left) + signal_extent(right) + offset;
    const std::int64_t bound = opt.step_bound >= 0 ? opt.step_bound : 4 * extent + 64;

    const Stepper stepper(rule);
    std::vector<Configuration> rows;
    rows.push_back(build_scene(pl.items));
    std::vector<std::optional<std::vector<Item>>> parsed;
    parsed.push_back(decompose(rows[0]));

    std::int64_t contact = -1, settle = -1;
    for (std::int64_t t = 0;; ++t) {
        auto& cur = parsed[t];
        if (contact < 0 && (!cur || *cur != advanced(pl.items, t))) contact = t;
        if (contact >= 0 && cur && settled(*cur)) {
            // Candidate: confirm free motion over the next steps.
            bool stable = true;
            for (int k = 1; k <= opt.stable_steps && stable; ++k) {
                while (std::int64_t(rows.size()) <= t + k) {
                    rows.push_back(step(stepper, rows.back()));
                    parsed.push_back(decompose(rows.back()));
                }
                stable = parsed[t + k] && *parsed[t + k] == advanced(*cur, k);
            }
            if (stable) {
                settle = t;
                break;
            }
        }
        if (t >= bound)
            throw NonTerminationError("collision of [" + left.text() + "] and [" + right.text() + "] at offset " +
                                      std::to_string(offset) + " did not settle within " + std::to_string(bound) +
                                      " steps");
        while (std::int64_t(rows.size()) <= t + 1) {
            rows.push_back(step(stepper, rows.back()));
            parsed.push_back(decompose(rows.back()));
        }
    }

    CollisionOutcome out;
    out.incoming = {left, right};
    out.settle_time = settle;
    const auto& fin = *parsed[settle];
    out.outgoing_groups = group(fin);

    // Reference point: meeting point of the innermost incoming lines, doubled.
    const std::int64_t T2 = 2 * (pl.inner_right - pl.inner_left) / (vl - vr);
    const std::int64_t X2 = 2 * pl.inner_left + vl * T2;
    for (auto& it : fin) {
        const int v = velocity(it.kind);
        out.outgoing.push_back({it.kind, 2 * it.pos + v * (T2 - 2 * settle) - X2});
    }

    const std::int64_t t0 = std::max<std::int64_t>(0, contact - 1);
    std::int64_t x_lo = INT64_MAX, x_hi = INT64_MIN;
    for (std::int64_t t : {t0, settle}) {
        if (!parsed[t]) continue;
        for (auto& it : *parsed[t]) {
            x_lo = std::min(x_lo, it.pos);
            x_hi = std::max(x_hi, it.pos + 1);
        }
    }
    if (x_lo > x_hi) x_lo = x_hi = X2 / 2;
    x_lo -= 2;
    x_hi += 2;
    const Point ref{floor_div(X2, 2), floor_div(T2, 2)};
    for (std::int64_t t = t0; t <= settle; ++t) {
        const auto row = rows[t].slice(x_lo, x_hi);
        for (std::int64_t x = x_lo; x <= x_hi; ++x) out.canonical_coloring.set(Point{x, t} - ref, row[x - x_lo]);
    }
    out.extent_min = Point{x_lo, t0} - ref;
    out.extent_max = Point{x_hi, settle} - ref;
    return out;
}

std::vector<std::int64_t> compatible_offsets(const SignalDescriptor& left, const SignalDescriptor& right,
                                             std::int64_t base) {
    std::vector<std::int64_t> out;
    for (std::int64_t d = base; d < base + 4; ++d) {
        try {
            place(left, right, d);
            out.push_back(d);
        } catch (const PhaseError&) {
        } catch (const GeometryError&) {
        }
    }
    return out;
}

DeterminismResult check_collision_determinism(const RuleTable& rule, const SignalDescriptor& left,
                                              const SignalDescriptor& right, std::int64_t base,
                                              const CollisionOptions& opt) {
    DeterminismResult res;
    const auto offsets = compatible_offsets(left, right, base);
    if (offsets.empty()) throw PhaseError("no compatible offset for [" + left.text() + "] and [" + right.text() + "]");
    for (auto d : offsets) {
        CollisionOutcome o = detect_collision(rule, left, right, d, opt);
        bool found = false;
        for (auto& c : res.classes)
            if (c.same_class(o)) found = true;
        if (!found) res.classes.push_back(std::move(o));
    }
    const std::string name = "[" + left.text() + "] vs [" + right.text() + "]";
    res.report.note(name + ": " + std::to_string(offsets.size()) + " offsets, " +
                    std::to_string(res.classes.size()) + " class" + (res.classes.size() == 1 ? "" : "es"));
    for (auto& c : res.classes) res.report.note("  " + c.summary());
    if (res.classes.size() != 1) res.report.pass = false;
    return res;
}

StructureSpec standard_structure_spec() {
    StructureSpec s;
    s.background = checkerboard_background(0);
    for (Kind k : {Kind::BlueRight, Kind::BlueLeft, Kind::RedRight, Kind::RedLeft, Kind::Border})
        s.particles.push_back(standard_particle(k));
    using SD = SignalDescriptor;
    for (Kind l : {Kind::BlueRight, Kind::RedRight, Kind::Border})
        for (Kind r : {Kind::BlueLeft, Kind::RedLeft, Kind::Border})
            if (!(l == Kind::Border && r == Kind::Border)) s.converging_pairs.push_back({SD::single(l), SD::single(r)});
    return s;
}

Report verify_structures(const RuleTable& rule, const StructureSpec& spec) {
    Report r;
    auto guarded = [&](const std::string& what, const std::function<Report()>& fn) {
        try {
            Report sub = fn();
            r.pass = r.pass && sub.pass;
            r.note(std::string(sub.pass ? "ok   " : "FAIL ") + what);
            for (auto& l : sub.lines) r.note("     " + l);
        } catch (const Error& e) {
            r.fail("FAIL " + what + ": " + e.what());
        }
    };
    guarded("background " + spec.background.name, [&] { return verify_background(rule, spec.background); });
    for (auto& p : spec.particles) guarded("particle " + p.name, [&] { return verify_particle(rule, p); });
    for (auto& [a, b] : spec.converging_pairs)
        guarded("determinism " + a.text() + " / " + b.text(),
                [&] { return check_collision_determinism(rule, a, b).report; });
    return r;
}

std::string structure_manifest(const StructureSpec& spec) {
    std::ostringstream os;
    auto coloring = [&](const Coloring& c) {
        for (auto& [p, s] : c.cells()) os << "  " << p.x << " " << p.t << " " << int(s) << "\n";
    };
    os << "background " << spec.background.name << "\n";
    os << "u " << spec.background.u.x << " " << spec.background.u.t << "\n";
    os << "v " << spec.background.v.x << " " << spec.background.v.t << "\n";
    coloring(spec.background.cell);
    for (auto& p : spec.particles) {
        os << "particle " << p.name << "\n";
        os << "repetition " << p.u.x << " " << p.u.t << "\n";
        os << "backgrounds " << p.left.name << " " << p.right.name << "\n";
        coloring(p.perturbation);
    }
    for (auto& [a, b] : spec.converging_pairs) os << "pair " << a.text() << " / " << b.text() << "\n";
    return os.str();
}

} // namespace uca4
