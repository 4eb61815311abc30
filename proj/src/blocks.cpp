#include "uca4/blocks.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <sstream>

namespace uca4 {

RuleArray::RuleArray(std::vector<std::int64_t> values) : values_(std::move(values)) {
    if (values_.size() < 2) throw PreconditionError("a rule array needs N >= 2 entries");
    for (std::size_t j = 0; j < values_.size(); ++j) {
        const auto v = values_[j];
        if (v < kMinEntry || v % 2 != 0)
            throw PreconditionError("R(" + std::to_string(j + 1) + ") = " + std::to_string(v) +
                                    " is not an even integer >= " + std::to_string(kMinEntry));
    }
}

std::int64_t RuleArray::operator()(int j) const {
    if (j < 1 || j > size()) throw RangeError("R index " + std::to_string(j) + " outside 1.." + std::to_string(size()));
    return values_[j - 1];
}

std::int64_t RuleArray::total() const { return std::accumulate(values_.begin(), values_.end(), std::int64_t(0)); }

std::string RuleArray::text() const {
    std::string out;
    for (std::size_t j = 0; j < values_.size(); ++j) out += (j ? "," : "") + std::to_string(values_[j]);
    return out;
}

RuleArray parse_rule_array(const std::string& csv) {
    std::vector<std::int64_t> v;
    std::istringstream in(csv);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        std::size_t used = 0;
        std::int64_t x = 0;
        try {
            x = std::stoll(tok, &used);
        } catch (const std::exception&) {
            used = std::string::npos;
        }
        if (used != tok.size()) throw SyntaxError("bad rule array entry '" + tok + "'", 0);
        v.push_back(x);
    }
    return RuleArray(std::move(v));
}

void BlockInputs::validate() const {
    if (x_l < 1 || x_m < 1) throw RangeError("x_l and x_m must be at least 1");
    if (x_l + x_m > R.size())
        throw RangeError("x_l + x_m = " + std::to_string(x_l + x_m) + " exceeds N = " + std::to_string(R.size()));
}

std::string BlockGeometry::manifest() const {
    std::ostringstream os;
    os << "R: " << R.text() << "\n"
       << "cell_width: " << cell_width << "\n"
       << "left_border: 0\n"
       << "right_border: " << right_border << "\n"
       << "l_anchor: " << l_anchor << "\n"
       << "r_anchor: " << r_anchor << "\n"
       << "m_anchor: " << m_anchor << "\n"
       << "spacing_l: " << spacing_l << "\n"
       << "spacing_m: " << spacing_m << "\n"
       << "period: " << period << "\n"
       << "r_shift: " << r_shift << "\n";
    return os.str();
}

namespace {

// On a phase-0 checkerboard, right movers sit on cells with (x + t) even.
void check_phase(Kind k, Point p) {
    const bool even = ((p.x + p.t) % 2 + 2) % 2 == 0;
    if (even != (velocity(k) > 0))
        throw PhaseError(std::string(kind_name(k)) + " cannot sit at (" + std::to_string(p.x) + ", " +
                         std::to_string(p.t) + ")");
}

State color_of(Kind k) { return is_blue(k) ? 2 : 3; }

// Same reading as decompose(), over cells lo..hi of a row given with two cells of margin
// on each side (s[0] is cell lo - 2).
std::optional<std::vector<Item>> read_items(const std::vector<State>& s, std::int64_t lo) {
    auto at = [&](std::int64_t x) { return s[x - lo + 2]; };
    const std::int64_t hi = lo + std::int64_t(s.size()) - 5;
    std::vector<Item> items;
    State prev = at(lo - 1);
    if (prev >= 2) return std::nullopt;
    for (std::int64_t x = lo; x <= hi; ++x) {
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

std::vector<Item> of_kind(const std::vector<Item>& items, Kind k, std::int64_t lo, std::int64_t hi) {
    std::vector<Item> out;
    for (auto& it : items)
        if (it.kind == k && it.pos >= lo && it.pos <= hi) out.push_back(it);
    return out;
}

std::int64_t min_width(const RuleArray& R) {
    const int n = R.size();
    return 2 * (4 * (n - 2) + 5) + 9 + R.total() + 8;
}

} // namespace

Coloring encode_unary_signal(UnaryRole role, int x, int spacing, Point anchor) {
    if (x < 1) throw PreconditionError("a unary signal encodes a value >= 1");
    if (spacing < 4 || spacing % 2 != 0) throw PreconditionError("unary spacing must be an even integer >= 4");
    const Kind k = role == UnaryRole::Left ? Kind::BlueRight : Kind::BlueLeft;
    check_phase(k, anchor);
    const int dir = role == UnaryRole::Left ? -1 : 1;
    Coloring c;
    for (int i = 0; i < x; ++i) c.set({anchor.x + dir * i * spacing, anchor.t}, color_of(k));
    return c;
}

Coloring encode_rule_signal(const RuleArray& R, Point anchor) {
    check_phase(Kind::RedLeft, anchor);
    Coloring c;
    std::int64_t x = anchor.x;
    c.set({x, anchor.t}, 3);
    for (auto v : R.values()) {
        x += v;
        c.set({x, anchor.t}, 3);
    }
    return c;
}

std::int64_t decode_unary(const std::vector<Item>& items, Kind kind, int spacing) {
    if (items.empty()) throw MalformedSignal(std::string("no ") + kind_name(kind) + " particles");
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (items[i].kind != kind)
            throw MalformedSignal(std::string(kind_name(items[i].kind)) + " inside a " + kind_name(kind) + " signal");
        if (i && items[i].pos - items[i - 1].pos != spacing)
            throw MalformedSignal("spacing " + std::to_string(items[i].pos - items[i - 1].pos) + " instead of " +
                                  std::to_string(spacing));
    }
    return std::int64_t(items.size());
}

RuleArray decode_rule(const std::vector<Item>& items, Kind kind) {
    std::vector<std::int64_t> gaps;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (items[i].kind != kind)
            throw MalformedSignal(std::string(kind_name(items[i].kind)) + " inside a rule signal");
        if (i) gaps.push_back(items[i].pos - items[i - 1].pos);
    }
    try {
        return RuleArray(std::move(gaps));
    } catch (const PreconditionError& e) {
        throw MalformedSignal(e.what());
    }
}

DecodedSignal decode_signal(const Configuration& row, SignalKind kind, int spacing) {
    const auto items = decompose(row);
    if (!items) throw MalformedSignal("row is not a clean superposition of particles");
    switch (kind) {
    case SignalKind::Left: return decode_unary(*items, Kind::BlueRight, spacing);
    case SignalKind::Center: return decode_unary(*items, Kind::BlueLeft, spacing);
    case SignalKind::Rule: return decode_rule(*items, Kind::RedLeft);
    }
    throw MalformedSignal("unknown signal kind");
}

BlockResult block_oracle(const RuleArray& R, int x_l, int x_m) {
    BlockInputs{R, x_l, x_m}.validate();
    const int x = x_l + x_m;
    return {R(x) + x - (R.size() + 1), R(x) / 2, true};
}

BlockGeometry block_geometry(const RuleArray& R) {
    BlockGeometry g;
    g.R = R;
    const int n = R.size();
    // l: up to N-1 blue-right particles ending at l_anchor (odd cells inside the block);
    // R and m on even cells.
    g.l_anchor = 4 * (n - 2) + 5;
    g.r_anchor = g.l_anchor + 9;
    g.m_anchor = g.r_anchor + R.total() + 8;
    g.right_border = g.m_anchor + 4 * (n - 2) + 7;
    g.cell_width = g.right_border;
    g.period = 2 * g.cell_width + 2 * R.total() + 16;
    if (g.period % 2) ++g.period;
    return g;
}

std::vector<Item> block_items(const BlockInputs& in, const BlockGeometry& g, std::int64_t x0) {
    std::vector<Item> items{{Kind::Border, x0}};
    for (int k = in.x_l - 1; k >= 0; --k) items.push_back({Kind::BlueRight, x0 + g.l_anchor - k * g.spacing_l});
    std::int64_t x = x0 + g.r_anchor;
    items.push_back({Kind::RedLeft, x});
    for (auto v : in.R.values()) items.push_back({Kind::RedLeft, x += v});
    for (int k = 0; k < in.x_m; ++k) items.push_back({Kind::BlueLeft, x0 + g.m_anchor + k * g.spacing_m});
    items.push_back({Kind::Border, x0 + g.right_border});
    return items;
}

namespace {

void check_geometry(const BlockInputs& in, const BlockGeometry& g) {
    in.validate();
    if (!(g.R == in.R)) throw GeometryError("geometry was computed for R = " + g.R.text());
    if (g.cell_width != g.right_border) throw GeometryError("cell width must equal the border distance");
    if (g.cell_width % 2 == 0) throw GeometryError("cell width must be odd so adjacent blocks share borders");
    if (g.cell_width < min_width(g.R))
        throw GeometryError("cell width " + std::to_string(g.cell_width) + " below minimum " +
                            std::to_string(min_width(g.R)));
    const auto items = block_items(in, g);
    for (std::size_t i = 1; i < items.size(); ++i)
        if (items[i].pos - items[i - 1].pos < 3)
            throw GeometryError("signals overlap at placement near cell " + std::to_string(items[i].pos));
    if (g.period <= 0 || g.period % 2) throw GeometryError("period must be positive and even");
}

} // namespace

Configuration build_block(const RuleTable&, const BlockInputs& in, const BlockGeometry& g) {
    check_geometry(in, g);
    return build_scene(block_items(in, g), true);
}

namespace {

BlockResult run_block_impl(const RuleTable& rule, const Configuration& config, const BlockGeometry& g,
                           bool pass_free_slots) {
    const Stepper stepper(rule);
    Configuration c = config;
    const std::int64_t w = g.right_border;
    for (std::int64_t t = 1; t <= g.period; ++t) {
        try {
            c = step(stepper, c);
        } catch (const FreeSlotError& e) {
            if (pass_free_slots) throw;
            throw SimulationDiverged(std::string("unset neighborhood reached: ") + e.what());
        }
        if (c.at(0) != c.at(1) || c.at(w) != c.at(w + 1))
            throw SimulationDiverged("a border was altered at t=" + std::to_string(t));
    }
    const std::int64_t lo = std::min<std::int64_t>(c.origin(), -2), hi = std::max(c.core_end(), w + 3);
    const auto items = read_items(c.slice(lo - 2, hi + 2), lo);
    if (!items) throw SimulationDiverged("row at t=" + std::to_string(g.period) + " is not a clean set of signals");

    BlockResult out;
    try {
        const auto inside = [&](const Item& it) { return it.pos > 1 && it.pos < w; };
        for (auto& it : *items) {
            const bool border_ok = it.kind == Kind::Border && (it.pos == 0 || it.pos == w);
            const bool m_ok = it.kind == Kind::BlueLeft && inside(it);
            const bool l_ok = it.kind == Kind::BlueRight && it.pos > w + 1;
            const bool r_ok = it.kind == Kind::RedLeft;
            if (!(border_ok || m_ok || l_ok || r_ok))
                throw SimulationDiverged(std::string("unexpected ") + kind_name(it.kind) + " at " +
                                         std::to_string(it.pos) + " after one period");
        }
        out.m_out = decode_unary(of_kind(*items, Kind::BlueLeft, 2, w - 1), Kind::BlueLeft, g.spacing_m);
        out.l_out = decode_unary(of_kind(*items, Kind::BlueRight, w + 2, hi), Kind::BlueRight, g.spacing_l);
        out.r_preserved = decode_rule(of_kind(*items, Kind::RedLeft, lo, hi), Kind::RedLeft) == g.R;
    } catch (const MalformedSignal& e) {
        throw SimulationDiverged(e.what());
    }
    return out;
}

} // namespace

BlockResult run_block(const RuleTable& rule, const Configuration& config, const BlockGeometry& g) {
    return run_block_impl(rule, config, g, false);
}

BlockResult run_block(const RuleTable& rule, const BlockInputs& in, const BlockGeometry& g) {
    return run_block(rule, build_block(rule, in, g), g);
}

BoundingBox block_bounding_box(const BlockInputs& in, const BlockGeometry& g) {
    check_geometry(in, g);
    return {0, g.right_border + 1, g.period};
}

Report check_block_tiling(const RuleTable& rule, const RuleArray& R, int cols, int rows) {
    Report rep;
    if (cols < 2 || cols % 2 || rows < 1) throw PreconditionError("tiling needs an even number of columns >= 2");
    const auto g = block_geometry(R);
    const std::int64_t w = g.cell_width, len = cols * w;

    std::vector<BlockInputs> inputs(cols, BlockInputs{R, 1, 1});
    std::vector<Item> items;
    for (int i = 0; i < cols; ++i) {
        auto part = block_items(inputs[i], g, i * w);
        if (i + 1 < cols) part.pop_back();
        items.insert(items.end(), part.begin(), part.end());
    }
    const auto scene = build_scene(items, true);
    PackedRow row(scene.slice(0, len - 1));

    SpaceTimeWindow win;
    win.x_min = 0;
    win.x_max = len - 1;
    win.t_min = 0;
    win.t_max = rows * g.period;
    win.cells.reserve(std::size_t(len * (win.t_max + 1)));
    const Stepper stepper(rule);
    for (std::int64_t t = 0;; ++t) {
        const auto cells = row.unpack();
        win.cells.insert(win.cells.end(), cells.begin(), cells.end());
        if (t == win.t_max) break;
        PackedRow next(len);
        try {
            stepper.step_cyclic(row, next);
        } catch (const FreeSlotError& e) {
            rep.fail(std::string("unset neighborhood reached: ") + e.what());
            return rep;
        }
        row = std::move(next);
    }

    const auto violations = validate_window(rule, win);
    if (!violations.empty()) rep.fail(std::to_string(violations.size()) + " local rule violations in the assembly");
    else rep.note("window " + std::to_string(len) + "x" + std::to_string(win.t_max + 1) + ": 0 local rule violations");

    for (std::int64_t t = 0; t <= win.t_max; ++t)
        for (int i = 0; i < cols; ++i)
            if (win.at(i * w, t) != win.at(i * w + 1, t)) {
                rep.fail("border " + std::to_string(i) + " altered at t=" + std::to_string(t));
                return rep;
            }

    bool chained = true;
    for (int k = 1; k <= rows && chained; ++k) {
        const auto r = win.row(k * g.period);
        std::vector<State> s;
        s.insert(s.end(), r.end() - 2, r.end());
        s.insert(s.end(), r.begin(), r.end());
        s.insert(s.end(), r.begin(), r.begin() + 2);
        const auto its = read_items(s, 0);
        if (!its) {
            rep.fail("row " + std::to_string(k) + ": not a clean set of signals");
            return rep;
        }
        std::vector<BlockResult> got(cols);
        for (int i = 0; i < cols; ++i) {
            const BlockResult want = block_oracle(R, inputs[i].x_l, inputs[i].x_m);
            const std::int64_t a = i * w, b = ((i + 1) % cols) * w;
            const std::int64_t b_end = b + w - 1;
            try {
                got[i].m_out = decode_unary(of_kind(*its, Kind::BlueLeft, a + 2, a + w - 1), Kind::BlueLeft, g.spacing_m);
                got[i].l_out = decode_unary(of_kind(*its, Kind::BlueRight, b + 2, b_end), Kind::BlueRight, g.spacing_l);
            } catch (const MalformedSignal& e) {
                rep.fail("row " + std::to_string(k) + " block " + std::to_string(i) + ": " + e.what());
                return rep;
            }
            got[i].r_preserved = true;
            if (got[i].m_out != want.m_out || got[i].l_out != want.l_out)
                rep.fail("row " + std::to_string(k) + " block " + std::to_string(i) + ": m'=" +
                         std::to_string(got[i].m_out) + " l'=" + std::to_string(got[i].l_out) + ", expected m'=" +
                         std::to_string(want.m_out) + " l'=" + std::to_string(want.l_out));
        }
        for (int i = 0; i < cols; ++i) {
            inputs[i].x_l = int(got[(i + cols - 1) % cols].l_out);
            inputs[i].x_m = int(got[i].m_out);
            try {
                inputs[i].validate();
            } catch (const RangeError&) {
                chained = false;
            }
        }
        if (!chained && k < rows)
            rep.note("row " + std::to_string(k + 1) + " inputs leave the valid range; later rows checked for seams only");
    }
    return rep;
}

std::vector<SceneTest> block_battery(const std::vector<BlockInputs>& cases) {
    std::vector<SceneTest> out;
    for (const auto& in : cases) {
        const auto g = block_geometry(in.R);
        const auto config = build_scene(block_items(in, g), true);
        const auto want = block_oracle(in.R, in.x_l, in.x_m);
        out.push_back({"block R=" + in.R.text() + " x_l=" + std::to_string(in.x_l) + " x_m=" + std::to_string(in.x_m),
                       [=](const RuleTable& rule, std::string& why) {
                           try {
                               const auto got = run_block_impl(rule, config, g, true);
                               if (got == want) return true;
                               why = "block output differs from the oracle";
                           } catch (const SimulationDiverged& e) {
                               why = e.what();
                           }
                           return false;
                       }});
    }
    return out;
}

std::string block_manifest(const BlockInputs& in, const BlockGeometry& g) {
    std::ostringstream os;
    os << "x_l: " << in.x_l << "\n"
       << "x_m: " << in.x_m << "\n"
       << g.manifest();
    return os.str();
}

std::string render_ascii(const SpaceTimeWindow& w) {
    static const char glyph[4] = {' ', '.', 'b', 'r'};
    std::string out;
    out.reserve(std::size_t((w.width() + 1) * w.height()));
    for (std::int64_t t = w.t_min; t <= w.t_max; ++t) {
        for (std::int64_t x = w.x_min; x <= w.x_max; ++x) out += glyph[w.at(x, t) & 3];
        out += '\n';
    }
    return out;
}

std::string render_pgm(const SpaceTimeWindow& w) {
    static const char* grey[4] = {"0", "85", "170", "255"};
    std::string out = "P2\n" + std::to_string(w.width()) + " " + std::to_string(w.height()) + "\n255\n";
    for (std::int64_t t = w.t_min; t <= w.t_max; ++t) {
        for (std::int64_t x = w.x_min; x <= w.x_max; ++x) {
            if (x > w.x_min) out += ' ';
            out += grey[w.at(x, t) & 3];
        }
        out += '\n';
    }
    return out;
}

} // namespace uca4
