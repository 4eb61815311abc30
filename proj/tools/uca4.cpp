#include "uca4/blocks.hpp"
#include "uca4/compiler.hpp"
#include "uca4/synthesis.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

using namespace uca4;

namespace {

// Thrown for bad flag values detected after parsing; exits with status 2.
struct Usage : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<int> parse_word(const std::string& csv) {
    std::vector<int> out;
    std::istringstream in(csv);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        try {
            out.push_back(std::stoi(tok));
        } catch (const std::exception&) {
            throw Usage("bad word entry '" + tok + "'");
        }
    }
    if (out.empty()) throw Usage("empty word");
    return out;
}

std::string word_text(const std::vector<int>& w) {
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) out += (i ? "," : "") + std::to_string(w[i]);
    return out;
}

RuleTable load_rule(const std::string& path) { return path.empty() ? canonical_rule() : canonical_rule(path); }

void write_or_print(const std::string& text, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << text;
}

void check_budget(std::uint64_t cells, std::uint64_t budget, const std::string& what) {
    if (cells > budget)
        throw BudgetError("refusing to materialize " + what + ": " + std::to_string(cells) +
                          " cells exceeds the cell budget of " + std::to_string(budget) +
                          " (raise --cell-budget to override)");
}

int cmd_synth(std::uint64_t budget, std::uint64_t block_budget, const std::string& out_path,
              const std::string& report_path) {
    const auto spec = standard_structure_spec();
    const auto structural = synthesize_rule(spec, structure_battery(spec), {budget, 1});

    auto battery = structure_battery(spec);
    const auto blocks = block_battery({BlockInputs{RuleArray({6, 8}), 1, 1}});
    battery.insert(battery.end(), blocks.begin(), blocks.end());
    const auto full = synthesize_rule(spec, battery, {block_budget, 1});

    std::ostringstream rep;
    rep << "stage: structures\n" << structural.text() << "stage: blocks\n" << full.text();
    const SynthesisReport* chosen = !full.rules_found.empty() ? &full : &structural;
    const char* stage = !full.rules_found.empty() ? "blocks" : "structures";
    rep << "shipped: " << (chosen->rules_found.empty() ? "none" : stage) << "\n";
    std::cout << rep.str();
    if (!report_path.empty()) write_or_print(rep.str(), report_path);
    if (chosen->rules_found.empty()) return 1;

    const auto& rule = chosen->rules_found.front();
    std::string header = "uca4 rule, verified stage: " + std::string(stage) + "\n" +
                         reachability_manifest(rule, chosen->unreachable.front());
    save_rule_file(rule, out_path, header);
    std::cout << "wrote " << out_path << "\n";
    return 0;
}

int cmd_verify(const std::string& path) {
    const auto rep = verify_structures(load_rule(path), standard_structure_spec());
    std::cout << rep.text();
    return rep.pass ? 0 : 1;
}

int cmd_render(const std::string& rule_path, const std::string& config_text, const std::string& R_text, int xl,
               int xm, std::int64_t steps, std::int64_t x_min, std::int64_t x_max, const std::string& format,
               const std::string& out_path, std::uint64_t cell_budget) {
    const RuleTable rule = load_rule(rule_path);
    std::optional<Configuration> c;
    if (!R_text.empty()) {
        const BlockInputs in{parse_rule_array(R_text), xl, xm};
        const auto g = block_geometry(in.R);
        c = build_block(rule, in, g);
        if (steps < 0) steps = g.period;
        if (x_max < x_min) {
            x_min = -4;
            x_max = g.right_border + 5;
        }
    } else if (!config_text.empty()) {
        c = parse_config(config_text);
    } else {
        throw Usage("render needs --config or --R");
    }
    if (steps < 0) steps = 32;
    if (x_max < x_min) {
        x_min = c->origin() - 8;
        x_max = c->core_end() + 8;
    }
    check_budget(std::uint64_t(x_max - x_min + 1) * std::uint64_t(steps + 1), cell_budget, "the window");
    const auto w = run_window(rule, *c, steps, x_min, x_max);
    if (format == "ascii") write_or_print(render_ascii(w), out_path);
    else if (format == "pgm") write_or_print(render_pgm(w), out_path);
    else throw Usage("unknown format " + format);
    return 0;
}

int cmd_block(const std::string& rule_path, const std::string& R_text, int xl, int xm, bool manifest,
              std::uint64_t cell_budget) {
    const BlockInputs in{parse_rule_array(R_text), xl, xm};
    in.validate();
    const auto g = block_geometry(in.R);
    check_budget(std::uint64_t(g.cell_width + 8) * std::uint64_t(g.period + 1), cell_budget, "the block");
    const auto want = block_oracle(in.R, xl, xm);
    if (manifest) std::cout << block_manifest(in, g);
    const RuleTable rule = load_rule(rule_path);
    try {
        const auto got = run_block(rule, in, g);
        const bool match = got == want;
        std::cout << "m'=" << got.m_out << " l'=" << got.l_out << " oracle=" << (match ? "MATCH" : "MISMATCH") << "\n";
        std::cout << "R preserved: " << (got.r_preserved ? "yes" : "no") << "\n";
        if (!match) std::cout << "oracle: m'=" << want.m_out << " l'=" << want.l_out << "\n";
        return match ? 0 : 1;
    } catch (const SimulationDiverged& e) {
        std::cout << "diverged oracle=MISMATCH\n" << e.what() << "\n";
        std::cout << "oracle: m'=" << want.m_out << " l'=" << want.l_out << "\n";
        return 1;
    }
}

int cmd_compile(const std::string& ca_path, int k, int samples, bool materialize, std::uint64_t cell_budget) {
    const OneWayCA ca = load_one_way_file(ca_path);
    if (k <= 0) k = bits_for_states(ca.state_count);
    const WordLayout layout(k);
    std::cout << "states: " << ca.state_count << "\nk: " << k << "\nw: " << layout.w() << "\nN: " << layout.N()
              << "\nm_tilde: " << layout.m_tilde() << "\n";
    for (Role r : {Role::L, Role::M, Role::MTilde, Role::Sum, Role::RFirst, Role::MPrime, Role::L0, Role::Second,
                   Role::RSecond, Role::LPrime})
        std::cout << "row " << role_name(r) << ": " << layout.row_text(r) << "\n";
    // states beyond the layout's code range cannot be encoded at this k
    const int top = std::min(ca.state_count, (1 << k) - 1);
    int shown = 0;
    for (int a = 1; a <= top && shown < samples; ++a)
        for (int b = 1; b <= top && shown < samples; ++b, ++shown) {
            const auto xl = encode_state_value(Role::L, unsigned(a), layout);
            const auto xm = encode_state_value(Role::M, unsigned(b), layout);
            std::cout << "sample (" << a << "," << b << ") -> " << ca.next(a, b) << ": x_l=" << xl << " x_m=" << xm
                      << " R(" << xl + xm << ")=" << rule_entry(xl + xm, ca, layout) << "\n";
        }
    if (materialize) {
        if (layout.w() > 24)
            throw BudgetError("rule signal too long to estimate exactly at w=" + std::to_string(layout.w()) +
                              " (more than 6 * 2^w cells)");
        const auto cells = materialized_rule_cells(code_transition(ca), layout);
        std::cout << "materialized rule signal: " << cells << " cells\n";
        check_budget(cells, cell_budget, "the rule signal");
    }
    return 0;
}

int cmd_simulate(const std::string& ca_path, const std::string& word_text_in, int steps) {
    const OneWayCA ca = load_one_way_file(ca_path);
    const auto word = parse_word(word_text_in);
    const auto sym = simulate_symbolic(ca, word, steps);
    const auto direct = simulate_direct(ca, word, steps);
    for (std::size_t t = 0; t < sym.size(); ++t) std::cout << "t=" << t << " " << word_text(sym[t]) << "\n";
    const bool same = sym == direct;
    std::cout << "direct: " << (same ? "MATCH" : "MISMATCH") << "\n";
    return same ? 0 : 1;
}

int cmd_check(const std::string& ca_path, const std::vector<std::string>& words_in, int random_words, int length,
              int steps, unsigned seed) {
    const OneWayCA ca = load_one_way_file(ca_path);
    std::vector<std::vector<int>> words;
    for (auto& w : words_in) words.push_back(parse_word(w));
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> st(1, ca.state_count);
    for (int i = 0; i < random_words; ++i) {
        std::vector<int> w(static_cast<std::size_t>(length));
        for (auto& s : w) s = st(rng);
        words.push_back(w);
    }
    if (words.empty()) throw Usage("check needs --word or --random");
    const auto rep = check_symbolic_relation(ca, words, SimulationParams{1, 1, 1, 1, 0}, steps);
    std::cout << rep.text() << "words: " << words.size() << "\nsteps: " << steps << "\nparams: t=1 t'=1 s=0\n";
    return rep.pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"4-state intrinsically universal cellular automaton toolkit", "uca4"};
    app.require_subcommand(1);
    app.allow_extras(false);

    std::uint64_t cell_budget = 100'000'000;
    std::string rule_path;

    auto* synth = app.add_subcommand("synth", "search for a rule and write it with a report");
    std::uint64_t budget = 10'000'000, block_budget = 100'000;
    std::string out_path = default_rule_path(), report_path;
    synth->add_option("--budget", budget, "search nodes for the structure stage");
    synth->add_option("--block-budget", block_budget, "search nodes for the stage with block tests");
    synth->add_option("-o,--out", out_path, "rule file to write");
    synth->add_option("--report", report_path, "also write the report here");

    auto* verify = app.add_subcommand("verify", "run the structure suite on a rule file");
    std::string verify_path;
    verify->add_option("rule", verify_path, "rule file (default: bundled rule)");

    auto* render = app.add_subcommand("render", "render a space-time window");
    std::string config_text, R_text, format = "ascii", render_out;
    int xl = 1, xm = 1;
    std::int64_t steps = -1, x_min = 0, x_max = -1;
    render->add_option("--rule", rule_path, "rule file");
    render->add_option("--config", config_text, "LEFT|CORE|RIGHT configuration");
    render->add_option("--R", R_text, "render an elementary block with this rule array");
    render->add_option("--xl", xl);
    render->add_option("--xm", xm);
    render->add_option("--steps", steps);
    render->add_option("--x-min", x_min);
    render->add_option("--x-max", x_max);
    render->add_option("--format", format)->check(CLI::IsMember({"ascii", "pgm"}));
    render->add_option("-o,--out", render_out);
    render->add_option("--cell-budget", cell_budget);

    auto* block = app.add_subcommand("block", "run an elementary block against the oracle");
    std::string block_R;
    int bxl = 1, bxm = 1;
    bool manifest = false;
    block->add_option("--rule", rule_path, "rule file");
    block->add_option("--R", block_R, "rule array, comma separated")->required();
    block->add_option("--xl", bxl)->required();
    block->add_option("--xm", bxm)->required();
    block->add_flag("--manifest", manifest, "print the block manifest first");
    block->add_option("--cell-budget", cell_budget);

    auto* compile = app.add_subcommand("compile-sym", "layout and rule entries for a one-way CA");
    std::string ca_path;
    int k = 0, samples = 4;
    bool materialize = false;
    compile->add_option("--ca", ca_path)->required()->check(CLI::ExistingFile);
    compile->add_option("--k", k, "digit count (default: enough bits for the states)");
    compile->add_option("--samples", samples);
    compile->add_flag("--materialize", materialize, "size the CA-level rule signal, subject to --cell-budget");
    compile->add_option("--cell-budget", cell_budget);

    auto* simulate = app.add_subcommand("simulate", "symbolic simulation with trace");
    std::string word;
    int sim_steps = 1;
    simulate->add_option("--ca", ca_path)->required()->check(CLI::ExistingFile);
    simulate->add_option("--word", word)->required();
    simulate->add_option("--steps", sim_steps);

    auto* check = app.add_subcommand("check", "simulation-relation report");
    std::vector<std::string> words;
    int random_words = 0, length = 8, check_steps = 16;
    unsigned seed = 1;
    check->add_option("--ca", ca_path)->required()->check(CLI::ExistingFile);
    check->add_option("--word", words, "comma separated word (repeatable)");
    check->add_option("--random", random_words, "number of random words");
    check->add_option("--length", length);
    check->add_option("--steps", check_steps);
    check->add_option("--seed", seed);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*synth) return cmd_synth(budget, block_budget, out_path, report_path);
        if (*verify) return cmd_verify(verify_path);
        if (*render)
            return cmd_render(rule_path, config_text, R_text, xl, xm, steps, x_min, x_max, format, render_out,
                              cell_budget);
        if (*block) return cmd_block(rule_path, block_R, bxl, bxm, manifest, cell_budget);
        if (*compile) return cmd_compile(ca_path, k, samples, materialize, cell_budget);
        if (*simulate) return cmd_simulate(ca_path, word, sim_steps);
        if (*check) return cmd_check(ca_path, words, random_words, length, check_steps, seed);
    } catch (const Usage& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const SyntaxError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const RangeError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const PreconditionError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
    return 2;
}
