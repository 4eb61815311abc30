#include "uca4/structures.hpp"
#include "uca4/synthesis.hpp"

#include <gtest/gtest.h>

using namespace uca4;

namespace {

const RuleTable& rule() {
    static const RuleTable r = canonical_rule();
    return r;
}

const Kind kAll[] = {Kind::BlueRight, Kind::BlueLeft, Kind::RedRight, Kind::RedLeft, Kind::Border};

// Window filled from the tiling definition alone.
SpaceTimeWindow tiled_window(const Background& b, std::int64_t w, std::int64_t h) {
    SpaceTimeWindow win;
    win.x_min = -w;
    win.x_max = w;
    win.t_min = 0;
    win.t_max = h;
    for (std::int64_t t = 0; t <= h; ++t)
        for (std::int64_t x = -w; x <= w; ++x) win.cells.push_back(background_value(b, {x, t}));
    return win;
}

} // namespace

TEST(Coloring, Compose) {
    const Coloring a{{{0, 0}, 2}};
    EXPECT_EQ(a.translated({1, 1}), (Coloring{{{1, 1}, 2}}));
    EXPECT_THROW(a.united(Coloring{{{0, 0}, 3}}), OverlapError);
    EXPECT_EQ(a.united(Coloring{{{1, 0}, 3}}).size(), 2u);
    const auto bg = checkerboard_background();
    EXPECT_TRUE(bg.cell.restricted([](Point) { return false; }).empty());
}

TEST(Coloring, TranslationProperty) {
    Coloring c{{{0, 0}, 1}, {{2, 3}, 3}, {{-1, 5}, 2}};
    for (Point u : {Point{1, 1}, Point{-3, 2}, Point{0, -4}}) {
        const auto d = c.translated(u);
        for (auto& [p, v] : c.cells()) EXPECT_EQ(d.at(p + u), v);
        EXPECT_EQ(d.size(), c.size());
    }
}

TEST(Background, CheckerboardPasses) {
    const auto rep = verify_background(rule(), checkerboard_background());
    EXPECT_TRUE(rep.pass) << rep.text();
    EXPECT_EQ(rep.text().substr(0, 4), "PASS");
}

TEST(Background, AllZeroFailsOnZeroZeroZero) {
    RuleTable r = rule();
    r.set(0, 0, 0, 1);
    Background zero{"zero", Coloring{{{0, 0}, 0}}, {1, 0}, {0, 1}};
    const auto rep = verify_background(r, zero);
    EXPECT_FALSE(rep.pass);
    EXPECT_NE(rep.text().find("000"), std::string::npos) << rep.text();
}

TEST(Background, CollinearVectors) {
    Background b{"bad", Coloring{{{0, 0}, 0}}, {1, 1}, {2, 2}};
    EXPECT_THROW(check_tiling(b), IncompleteTilingError);
}

// Soundness cross-check: a window assembled from the tiling has no local violations.
TEST(Background, TiledWindowValidates) {
    const auto b = checkerboard_background();
    ASSERT_TRUE(verify_background(rule(), b).pass);
    EXPECT_TRUE(validate_window(rule(), tiled_window(b, 12, 6)).empty());
}

TEST(Particle, AllFivePass) {
    for (Kind k : kAll) {
        const auto rep = verify_particle(rule(), standard_particle(k));
        EXPECT_TRUE(rep.pass) << kind_name(k) << "\n" << rep.text();
    }
}

TEST(Particle, RepetitionVectors) {
    for (Kind k : kAll) {
        const auto u = standard_particle(k).u;
        EXPECT_TRUE(u == (Point{1, 1}) || u == (Point{-1, 1}) || u == (Point{0, 2})) << kind_name(k);
        EXPECT_EQ(u.x, velocity(k) * (k == Kind::Border ? 2 : 1));
    }
}

TEST(Particle, WrongRepetitionRejected) {
    auto p = standard_particle(Kind::BlueRight);
    p.u = {2, 1};
    bool rejected = false;
    try {
        rejected = !verify_particle(rule(), p).pass;
    } catch (const DisconnectedError&) {
        rejected = true;
    }
    EXPECT_TRUE(rejected);
}

// Independent oracle: a lone particle simulated under the rule keeps its kind and moves by
// its velocity, read back by decompose().
TEST(Particle, FreeMotionBySimulation) {
    for (Kind k : kAll) {
        const std::int64_t x0 = (k == Kind::BlueRight || k == Kind::RedRight) ? 0 : 1;
        auto c = build_scene({{k, x0}});
        for (int t = 1; t <= 12; ++t) {
            c = step(rule(), c);
            const auto items = decompose(c);
            ASSERT_TRUE(items.has_value()) << kind_name(k) << " t=" << t;
            ASSERT_EQ(items->size(), 1u);
            EXPECT_EQ(items->front().kind, k);
            EXPECT_EQ(items->front().pos, x0 + velocity(k) * t);
        }
    }
}

TEST(Scene, PhaseErrors) {
    EXPECT_NO_THROW(build_scene({{Kind::BlueRight, 0}}));
    EXPECT_THROW(build_scene({{Kind::BlueRight, 1}}), PhaseError);
    EXPECT_THROW(build_scene({{Kind::BlueLeft, 0}}), PhaseError);
    // right of a border the parities swap
    EXPECT_NO_THROW(build_scene({{Kind::Border, 0}, {Kind::BlueRight, 5}}));
    const auto moved = build_scene({{Kind::BlueRight, 1}}, false);
    EXPECT_EQ(decompose(moved)->front().pos, 2);
}

TEST(Scene, DecomposeRoundTrip) {
    const std::vector<Item> items{{Kind::BlueRight, 0},  {Kind::RedLeft, 5},  {Kind::Border, 8},
                                  {Kind::RedRight, 13}, {Kind::BlueLeft, 18}, {Kind::Border, 21}};
    const auto got = decompose(build_scene(items));
    ASSERT_TRUE(got.has_value());
    EXPECT_EQ(*got, items);
}

TEST(Collision, ParallelIsPrecondition) {
    EXPECT_THROW(detect_collision(rule(), SignalDescriptor::single(Kind::BlueRight),
                                  SignalDescriptor::single(Kind::BlueRight), 8),
                 PreconditionError);
}

TEST(Collision, OffsetsArePhaseCompatible) {
    const auto offs = compatible_offsets(SignalDescriptor::single(Kind::BlueRight),
                                         SignalDescriptor::single(Kind::BlueLeft), 8);
    ASSERT_FALSE(offs.empty());
    for (auto o : offs) {
        EXPECT_GE(o, 8);
        EXPECT_LT(o, 12);
        EXPECT_EQ(o % 2, 1) << "opposite movers meet at odd distance";
    }
}

TEST(Collision, TranslationInvariance) {
    const auto l = SignalDescriptor::single(Kind::BlueRight), r = SignalDescriptor::single(Kind::RedLeft);
    const auto offs = compatible_offsets(l, r, 8);
    for (auto o : offs) {
        const auto a = detect_collision(rule(), l, r, o), b = detect_collision(rule(), l, r, o + 4);
        EXPECT_TRUE(a.same_class(b)) << a.summary() << "\n" << b.summary();
    }
}

TEST(Collision, DeterminismEveryConvergingPair) {
    const auto spec = standard_structure_spec();
    for (auto& [l, r] : spec.converging_pairs) {
        const auto res = check_collision_determinism(rule(), l, r);
        EXPECT_TRUE(res.report.pass) << l.text() << " / " << r.text() << "\n" << res.report.text();
        EXPECT_EQ(res.classes.size(), 1u) << l.text() << " / " << r.text();
    }
}

TEST(Collision, BrokenRuleGivesSeveralClasses) {
    const auto l = SignalDescriptor::single(Kind::BlueRight), r = SignalDescriptor::single(Kind::BlueLeft);
    bool found = false;
    for (int s = 0; s < 64 && !found; ++s)
        for (State v = 0; v < 4 && !found; ++v) {
            if (v == rule().get(s)) continue;
            RuleTable m = rule();
            m.set(s, v);
            try {
                const auto res = check_collision_determinism(m, l, r);
                found = !res.report.pass && res.classes.size() >= 2;
            } catch (const Error&) {
            }
        }
    EXPECT_TRUE(found);
}

// Role c: the left signal meeting the center signal sends a sum signal left and a copy of
// l right.
TEST(Collision, LeftMeetsCenterGivesSumAndCopy) {
    const auto l = SignalDescriptor::single(Kind::BlueRight), m = SignalDescriptor::single(Kind::BlueLeft);
    const auto out = detect_collision(rule(), l, m, compatible_offsets(l, m, 8).front());
    const auto& g = out.outgoing_groups;
    ASSERT_EQ(g.size(), 2u) << out.summary();
    EXPECT_EQ(g.front().first, Kind::BlueLeft) << out.summary();
    EXPECT_EQ(g.back().first, Kind::BlueRight) << out.summary();
}

// Role b: R crossing the left border leaves the border intact and sends a mirror copy
// (red-right) back.
TEST(Collision, RuleSignalMeetsBorderGivesMirror) {
    const auto w = SignalDescriptor::single(Kind::Border), r = SignalDescriptor::single(Kind::RedLeft);
    const auto out = detect_collision(rule(), w, r, compatible_offsets(w, r, 8).front());
    bool border = false, mirror = false;
    for (auto& [k, n] : out.outgoing_groups) {
        border |= k == Kind::Border;
        mirror |= k == Kind::RedRight;
    }
    EXPECT_TRUE(border) << out.summary();
    EXPECT_TRUE(mirror) << out.summary();
}

TEST(Structures, FullSuiteAndManifest) {
    const auto spec = standard_structure_spec();
    const auto rep = verify_structures(rule(), spec);
    EXPECT_TRUE(rep.pass) << rep.text();
    const auto man = structure_manifest(spec);
    EXPECT_NE(man.find("checkerboard"), std::string::npos);
    EXPECT_EQ(man, structure_manifest(standard_structure_spec()));
}
