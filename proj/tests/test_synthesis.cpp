#include "uca4/synthesis.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

using namespace uca4;

namespace {

using Entry = std::tuple<int, int, int, int>;

std::set<Entry> entries(const std::vector<LocalConstraint>& cs) {
    std::set<Entry> out;
    for (auto& c : cs) out.insert({c.l, c.c, c.r, c.required});
    return out;
}

// Neighbourhoods read off two explicit rows of a lone particle at x = 0, t = 0 (phase-0
// checkerboard around it), cells within distance 2 of the particle.
std::set<Entry> scanned(State color, int v) {
    std::set<Entry> out;
    for (int t = 0; t < 2; ++t) {
        auto cell = [&](int x, int tt) -> int {
            if (x == v * tt) return color;
            return ((x + tt) % 2 + 2) % 2;
        };
        for (int x = v * t - 2; x <= v * t + 2; ++x) {
            const int l = cell(x - 1, t), c = cell(x, t), r = cell(x + 1, t);
            if (l < 2 && c < 2 && r < 2) continue;
            out.insert({l, c, r, cell(x, t + 1)});
        }
    }
    return out;
}

StructureSpec background_only() {
    auto s = standard_structure_spec();
    s.particles.clear();
    s.converging_pairs.clear();
    return s;
}

std::string file_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST(Constraints, CheckerboardAlone) {
    EXPECT_EQ(entries(derive_constraints(background_only())), (std::set<Entry>{{1, 0, 1, 1}, {0, 1, 0, 0}}));
}

TEST(Constraints, BlueRightAddsItsNeighbourhoods) {
    auto spec = background_only();
    spec.particles.push_back(standard_particle(Kind::BlueRight));
    auto got = entries(derive_constraints(spec));
    got.erase({1, 0, 1, 1});
    got.erase({0, 1, 0, 0});
    EXPECT_EQ(got, scanned(2, 1));
    EXPECT_EQ(got.size(), 3u);
}

TEST(Constraints, EachParticleMatchesScan) {
    const std::pair<Kind, std::pair<State, int>> cases[] = {
        {Kind::BlueLeft, {2, -1}}, {Kind::RedRight, {3, 1}}, {Kind::RedLeft, {3, -1}}};
    for (auto& [k, cv] : cases) {
        auto spec = background_only();
        auto p = standard_particle(k);
        spec.particles.push_back(p);
        auto got = entries(derive_constraints(spec));
        got.erase({1, 0, 1, 1});
        got.erase({0, 1, 0, 0});
        // left movers sit on odd cells; shift the scan by one cell
        std::set<Entry> want;
        if (cv.second > 0) want = scanned(cv.first, 1);
        else {
            for (int t = 0; t < 2; ++t) {
                auto cell = [&](int x, int tt) -> int {
                    if (x == 1 - tt) return cv.first;
                    return ((x + tt) % 2 + 2) % 2;
                };
                for (int x = 1 - t - 2; x <= 1 - t + 2; ++x) {
                    const int l = cell(x - 1, t), c = cell(x, t), r = cell(x + 1, t);
                    if (l < 2 && c < 2 && r < 2) continue;
                    want.insert({l, c, r, cell(x, t + 1)});
                }
            }
        }
        EXPECT_EQ(got, want) << kind_name(k);
    }
}

TEST(Constraints, FullSpecForcesEighteen) {
    const auto cs = derive_constraints(standard_structure_spec());
    EXPECT_EQ(cs.size(), 18u);
    const std::set<Entry> border{{0, 0, 1, 1}, {0, 1, 1, 0}, {1, 0, 0, 1}, {1, 1, 0, 0}};
    for (auto& e : border) EXPECT_TRUE(entries(cs).count(e)) << std::get<0>(e) << std::get<1>(e) << std::get<2>(e);
}

TEST(Constraints, Conflict) {
    auto spec = background_only();
    spec.particles.push_back(standard_particle(Kind::BlueRight));
    auto p = standard_particle(Kind::BlueRight);
    p.name = "blue moving left on the right-moving parity";
    p.u = {-1, 1};
    spec.particles.push_back(p);
    try {
        derive_constraints(spec);
        FAIL() << "expected ConflictError";
    } catch (const ConflictError& e) {
        const std::string what = e.what();
        EXPECT_NE(what.find(p.name), std::string::npos) << what;
    } catch (const DisconnectedError&) {
        FAIL() << "the left-moving variant should still be a valid particle diagram";
    }
}

TEST(Constraints, Minimality) {
    const auto cs = derive_constraints(standard_structure_spec());
    for (std::size_t i = 0; i < cs.size(); ++i) {
        auto fewer = cs;
        fewer.erase(fewer.begin() + long(i));
        EXPECT_TRUE(constrained_rule(fewer).is_free(cs[i].slot()));
        EXPECT_FALSE(constrained_rule(cs).is_free(cs[i].slot()));
    }
}

TEST(Synthesis, ZeroBudget) {
    const auto spec = standard_structure_spec();
    const auto rep = synthesize_rule(spec, structure_battery(spec), {0, 1});
    EXPECT_EQ(rep.status, SynthesisStatus::BudgetExhausted);
    EXPECT_EQ(rep.nodes_explored, 0u);
    EXPECT_TRUE(rep.rules_found.empty());
}

TEST(Synthesis, FindsSoundRule) {
    const auto spec = standard_structure_spec();
    const auto rep = synthesize_rule(spec, structure_battery(spec), {1'000'000, 1});
    ASSERT_EQ(rep.status, SynthesisStatus::OK) << rep.text();
    ASSERT_EQ(rep.rules_found.size(), 1u);
    const auto& r = rep.rules_found.front();
    EXPECT_TRUE(r.complete());
    EXPECT_EQ(rep.forced_slots, 18);
    const auto v = verify_structures(r, spec);
    EXPECT_TRUE(v.pass) << v.text();
    for (int s : rep.unreachable.front()) EXPECT_EQ(r.get(s), 0);
}

TEST(Synthesis, ReportSchema) {
    const auto spec = standard_structure_spec();
    const auto rep = synthesize_rule(spec, structure_battery(spec), {1'000'000, 1});
    std::istringstream in(rep.text());
    std::string line;
    while (std::getline(in, line)) EXPECT_NE(line.find(": "), std::string::npos) << line;
    EXPECT_EQ(rep.text().rfind("status: OK", 0), 0u);
}

// Adding tests can only remove rules: every rule passing the larger battery passes the
// smaller one, and the search returns no more of them.
TEST(Synthesis, Monotone) {
    auto small = standard_structure_spec();
    small.converging_pairs.resize(2);
    auto large = standard_structure_spec();
    large.converging_pairs.resize(5);
    const SynthesisOptions opt{20'000, 12};
    const auto a = synthesize_rule(small, structure_battery(small), opt);
    const auto b = synthesize_rule(large, structure_battery(large), opt);
    ASSERT_FALSE(b.rules_found.empty());
    EXPECT_GE(a.rules_found.size(), b.rules_found.size());
    for (auto& r : b.rules_found) {
        for (auto& t : structure_battery(small)) {
            std::string why;
            EXPECT_TRUE(t.run(r, why)) << t.name << ": " << why;
        }
    }
    EXPECT_TRUE(std::is_sorted(b.rules_found.begin(), b.rules_found.end(), table_less));
}

TEST(Synthesis, UnsatisfiableMatchesBruteForce) {
    const auto spec = standard_structure_spec();
    // needs 222 -> 3 and 333 -> 2 together with an even sum
    const SceneTest t{"contradiction", [](const RuleTable& r, std::string& why) {
                          const int a = apply_local(r, 2, 2, 2), b = apply_local(r, 3, 3, 3);
                          why = "no";
                          return a == 3 && b == 2 && (a + b) % 2 == 0;
                      }};
    const auto rep = synthesize_rule(spec, {t}, {100'000, 1});
    EXPECT_EQ(rep.status, SynthesisStatus::Unsatisfiable);
    int passing = 0;
    for (State a = 0; a < 4; ++a)
        for (State b = 0; b < 4; ++b) {
            RuleTable r = constrained_rule(derive_constraints(spec));
            r.set(2, 2, 2, a);
            r.set(3, 3, 3, b);
            std::string why;
            passing += t.run(r, why);
        }
    EXPECT_EQ(passing, 0);
}

TEST(Canonical, Deterministic) {
    const auto spec = standard_structure_spec();
    const auto a = synthesize_rule(spec, structure_battery(spec), {1'000'000, 1});
    const auto b = synthesize_rule(spec, structure_battery(spec), {1'000'000, 1});
    ASSERT_FALSE(a.rules_found.empty());
    EXPECT_EQ(a.rules_found, b.rules_found);
    const auto dir = std::filesystem::temp_directory_path();
    const auto pa = (dir / "uca4_canon_a.rule").string(), pb = (dir / "uca4_canon_b.rule").string();
    save_rule_file(a.rules_found.front(), pa, reachability_manifest(a.rules_found.front(), a.unreachable.front()));
    save_rule_file(b.rules_found.front(), pb, reachability_manifest(b.rules_found.front(), b.unreachable.front()));
    EXPECT_EQ(file_bytes(pa), file_bytes(pb));
    EXPECT_EQ(canonical_rule(pa), a.rules_found.front());
}

TEST(Canonical, BundledRuleLoads) {
    const auto r = canonical_rule();
    EXPECT_TRUE(r.complete());
    EXPECT_TRUE(verify_structures(r, standard_structure_spec()).pass);
}

TEST(Canonical, MissingFile) {
    EXPECT_THROW(canonical_rule("/nonexistent/uca4/none.rule"), NoRuleAvailable);
}
