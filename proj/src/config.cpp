#include "uca4/config.hpp"

#include <algorithm>
#include <numeric>

namespace uca4 {

PackedRow::PackedRow(const std::vector<State>& cells) : PackedRow(cells.size()) {
    for (std::size_t i = 0; i < cells.size(); ++i) set(i, cells[i]);
}

std::vector<State> PackedRow::unpack() const {
    std::vector<State> out(n_);
    for (std::size_t i = 0; i < n_; ++i) out[i] = get(i);
    return out;
}

bool PackedRow::operator==(const PackedRow& o) const {
    if (n_ != o.n_) return false;
    for (std::size_t i = 0; i < n_; ++i)
        if (get(i) != o.get(i)) return false;
    return true;
}

Stepper::Stepper(const RuleTable& rule) : rule_(rule), table_(4096) {
    for (int idx = 0; idx < 4096; ++idx) {
        State w[6];
        w[0] = idx & 3;
        for (int k = 0; k < 4; ++k) w[1 + k] = (idx >> (2 + 2 * k)) & 3;
        w[5] = (idx >> 10) & 3;
        std::uint16_t out = 0;
        for (int k = 0; k < 4; ++k) {
            const State v = rule.get(w[k], w[k + 1], w[k + 2]);
            if (v == kFree) out |= 0x100;
            else out |= std::uint16_t(v << (2 * k));
        }
        table_[idx] = out;
    }
}

namespace {

[[noreturn]] void report_free(const RuleTable& rule, const PackedRow& in, State lg, State rg,
                              std::size_t first, std::size_t last, std::int64_t base) {
    for (std::size_t i = first; i <= last && i < in.size(); ++i) {
        const State l = i == 0 ? lg : in.get(i - 1);
        const State r = i + 1 == in.size() ? rg : in.get(i + 1);
        const int s = slot_of(l, in.get(i), r);
        if (rule.is_free(s)) throw FreeSlotError(s, base + std::int64_t(i));
    }
    throw Error("internal: free flag without free slot");
}

} // namespace

void Stepper::step(const PackedRow& in, State left_ghost, State right_ghost, PackedRow& out,
                   std::int64_t base) const {
    const std::size_t n = in.size();
    out = PackedRow(n);
    if (n == 0) return;
    const auto& ib = in.bytes();
    auto& ob = out.bytes();
    const std::size_t nb = ib.size();
    const std::size_t tail = n & 3;
    std::uint8_t last = ib[nb - 1];
    if (tail) {
        // Pad unused positions with the right ghost so the final cell sees it.
        for (std::size_t k = tail; k < 4; ++k) last = std::uint8_t((last & ~(3 << (2 * k))) | (right_ghost << (2 * k)));
    }
    auto byte_at = [&](std::size_t k) -> std::uint32_t { return k == nb - 1 ? last : ib[k]; };
    std::uint32_t prev = left_ghost;
    for (std::size_t k = 0; k < nb; ++k) {
        const std::uint32_t cur = byte_at(k);
        const std::uint32_t next = k + 1 < nb ? (byte_at(k + 1) & 3) : right_ghost;
        const std::uint16_t v = table_[prev | (cur << 2) | (next << 10)];
        if (v & 0x100) {
            const std::size_t lo = 4 * k;
            const std::size_t hi = std::min(n - 1, lo + 3);
            // Flags can come from padding cells; only real cells count.
            bool real = false;
            for (std::size_t i = lo; i <= hi; ++i) {
                const State l = i == 0 ? left_ghost : in.get(i - 1);
                const State r = i + 1 == n ? right_ghost : in.get(i + 1);
                if (rule_.is_free(slot_of(l, in.get(i), r))) real = true;
            }
            if (real) report_free(rule_, in, left_ghost, right_ghost, lo, hi, base);
        }
        ob[k] = std::uint8_t(v);
        prev = cur >> 6;
    }
    if (tail) ob[nb - 1] &= std::uint8_t((1u << (2 * tail)) - 1);
}

void Stepper::step_cyclic(const PackedRow& in, PackedRow& out) const {
    const std::size_t n = in.size();
    if (n == 0) {
        out = PackedRow();
        return;
    }
    step(in, in.get(n - 1), in.get(0), out);
}

Configuration::Configuration(std::vector<State> left, std::vector<State> core, std::vector<State> right,
                             std::int64_t origin)
    : Configuration(std::move(left), PackedRow(core), std::move(right), origin) {}

Configuration::Configuration(std::vector<State> left, PackedRow core, std::vector<State> right,
                             std::int64_t origin)
    : left_(std::move(left)), right_(std::move(right)), core_(std::move(core)), origin_(origin) {
    if (left_.empty() || right_.empty()) throw PreconditionError("periodic words must be nonempty");
    for (State s : left_)
        if (s >= kStateCount) throw RangeError("state out of range");
    for (State s : right_)
        if (s >= kStateCount) throw RangeError("state out of range");
}

namespace {

std::int64_t mod(std::int64_t a, std::int64_t m) {
    const std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

} // namespace

State Configuration::at(std::int64_t i) const {
    if (i < origin_) return left_[mod(i - origin_, std::int64_t(left_.size()))];
    const std::int64_t e = core_end();
    if (i >= e) return right_[mod(i - e, std::int64_t(right_.size()))];
    return core_.get(std::size_t(i - origin_));
}

std::vector<State> Configuration::slice(std::int64_t x_min, std::int64_t x_max) const {
    std::vector<State> out;
    if (x_max < x_min) return out;
    out.reserve(std::size_t(x_max - x_min + 1));
    for (std::int64_t x = x_min; x <= x_max; ++x) out.push_back(at(x));
    return out;
}

bool Configuration::observably_equal(const Configuration& o) const {
    const std::int64_t ll = std::lcm<std::int64_t>(left_.size(), o.left_.size());
    const std::int64_t rl = std::lcm<std::int64_t>(right_.size(), o.right_.size());
    const std::int64_t lo = std::min(origin_, o.origin_) - ll;
    const std::int64_t hi = std::max(core_end(), o.core_end()) + rl;
    for (std::int64_t x = lo; x <= hi; ++x)
        if (at(x) != o.at(x)) return false;
    return true;
}

Configuration Configuration::shifted(std::int64_t d) const {
    return Configuration(left_, core_, right_, origin_ + d);
}

void Configuration::normalize() {
    const std::size_t L = left_.size(), R = right_.size();
    std::size_t drop_front = 0;
    while (core_.size() - drop_front >= L) {
        bool same = true;
        for (std::size_t j = 0; j < L && same; ++j) same = core_.get(drop_front + j) == left_[j];
        if (!same) break;
        drop_front += L;
    }
    std::size_t drop_back = 0;
    while (core_.size() - drop_front - drop_back >= R) {
        const std::size_t start = core_.size() - drop_back - R;
        bool same = true;
        for (std::size_t j = 0; j < R && same; ++j) same = core_.get(start + j) == right_[j];
        if (!same) break;
        drop_back += R;
    }
    if (drop_front == 0 && drop_back == 0) return;
    const std::size_t n = core_.size() - drop_front - drop_back;
    PackedRow trimmed(n);
    for (std::size_t i = 0; i < n; ++i) trimmed.set(i, core_.get(drop_front + i));
    core_ = std::move(trimmed);
    origin_ += std::int64_t(drop_front);
}

namespace {

std::vector<State> step_cyclic_word(const RuleTable& rule, const std::vector<State>& w, std::int64_t base) {
    const std::size_t n = w.size();
    std::vector<State> out(n);
    for (std::size_t j = 0; j < n; ++j)
        out[j] = apply_local(rule, w[(j + n - 1) % n], w[j], w[(j + 1) % n], base + std::int64_t(j));
    return out;
}

} // namespace

Configuration step(const Stepper& stepper, const Configuration& c) {
    const std::size_t L = c.left_.size(), R = c.right_.size(), C = c.core_.size();
    const std::int64_t lo = c.origin_ - std::int64_t(L);
    PackedRow ext(L + C + R);
    for (std::size_t j = 0; j < L; ++j) ext.set(j, c.left_[j]);
    if (L % 4 == 0) {
        auto& eb = ext.bytes();
        const auto& cb = c.core_.bytes();
        std::copy(cb.begin(), cb.end(), eb.begin() + L / 4);
        if (C % 4) eb[(L + C) / 4] &= std::uint8_t((1u << (2 * (C % 4))) - 1);
    } else {
        for (std::size_t i = 0; i < C; ++i) ext.set(L + i, c.core_.get(i));
    }
    for (std::size_t j = 0; j < R; ++j) ext.set(L + C + j, c.right_[j]);
    PackedRow out;
    stepper.step(ext, c.at(lo - 1), c.at(lo + std::int64_t(L + C + R)), out, lo);
    auto nl = step_cyclic_word(stepper.rule(), c.left_, lo - std::int64_t(L));
    auto nr = step_cyclic_word(stepper.rule(), c.right_, c.core_end() + std::int64_t(R));
    Configuration next(std::move(nl), std::move(out), std::move(nr), lo);
    next.normalize();
    return next;
}

Configuration step(const RuleTable& rule, const Configuration& c) { return step(Stepper(rule), c); }

Configuration checkerboard(int phase) {
    const State a = State(phase & 1), b = State(1 - (phase & 1));
    return Configuration({a, b}, std::vector<State>{}, {a, b}, 0);
}

Configuration parse_config(const std::string& raw) {
    std::string text = raw;
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r' || text.back() == ' ')) text.pop_back();
    // Optional "@k" suffix: the core starts at index k instead of 0.
    std::int64_t origin = 0;
    if (auto at = text.find('@'); at != std::string::npos) {
        const std::string num = text.substr(at + 1);
        std::size_t used = 0;
        try {
            origin = std::stoll(num, &used);
        } catch (const std::exception&) {
            used = std::string::npos;
        }
        if (num.empty() || used != num.size()) throw SyntaxError("bad origin suffix", at + 2);
        text.erase(at);
    }
    std::vector<State> parts[3];
    int part = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char ch = text[i];
        if (ch == '|') {
            if (++part > 2) throw SyntaxError("too many '|' separators", i + 1);
        } else if (ch >= '0' && ch <= '3') {
            parts[part].push_back(State(ch - '0'));
        } else {
            throw SyntaxError(std::string("unexpected symbol '") + ch + "'", i + 1);
        }
    }
    if (part != 2) throw SyntaxError("expected LEFT|CORE|RIGHT", text.size() + 1);
    if (parts[0].empty()) throw SyntaxError("left period is empty", 1);
    if (parts[2].empty()) throw SyntaxError("right period is empty", text.size() + 1);
    return Configuration(parts[0], parts[1], parts[2], origin);
}

std::string format_config(const Configuration& c) {
    // The core is widened to start at index 0 when possible so that no suffix is needed.
    std::string out;
    const std::int64_t L = std::int64_t(c.left_period().size());
    const std::int64_t start = std::min<std::int64_t>(c.origin(), 0) == 0 ? 0 : c.origin();
    const std::int64_t end = std::max<std::int64_t>(c.core_end(), start);
    for (std::int64_t j = 0; j < L; ++j) out += char('0' + c.at(start - L + j));
    out += '|';
    for (std::int64_t x = start; x < end; ++x) out += char('0' + c.at(x));
    out += '|';
    for (std::int64_t j = 0; j < std::int64_t(c.right_period().size()); ++j) out += char('0' + c.at(end + j));
    if (start != 0) out += "@" + std::to_string(start);
    return out;
}

std::vector<State> SpaceTimeWindow::row(std::int64_t t) const {
    const auto w = width();
    auto b = cells.begin() + (t - t_min) * w;
    return std::vector<State>(b, b + w);
}

SpaceTimeWindow run_window(const RuleTable& rule, const Configuration& c, std::int64_t t_max,
                           std::int64_t x_min, std::int64_t x_max) {
    if (t_max < 0) throw PreconditionError("t_max must be nonnegative");
    if (x_max < x_min) throw PreconditionError("empty x range");
    SpaceTimeWindow w;
    w.x_min = x_min;
    w.x_max = x_max;
    w.t_min = 0;
    w.t_max = t_max;
    w.cells.reserve(std::size_t(w.width() * w.height()));
    const Stepper stepper(rule);
    Configuration cur = c;
    for (std::int64_t t = 0; t <= t_max; ++t) {
        auto row = cur.slice(x_min, x_max);
        w.cells.insert(w.cells.end(), row.begin(), row.end());
        if (t < t_max) cur = step(stepper, cur);
    }
    return w;
}

std::vector<WindowViolation> validate_window(const RuleTable& rule, const SpaceTimeWindow& w) {
    std::vector<WindowViolation> out;
    for (std::int64_t t = w.t_min; t < w.t_max; ++t)
        for (std::int64_t x = w.x_min + 1; x < w.x_max; ++x) {
            const State l = w.at(x - 1, t), c = w.at(x, t), r = w.at(x + 1, t);
            const int s = l * 16 + c * 4 + r;
            const State want = rule.entries()[s];
            const State got = w.at(x, t + 1);
            if (want != got) out.push_back({x, t, s, want, got});
        }
    return out;
}

} // namespace uca4
