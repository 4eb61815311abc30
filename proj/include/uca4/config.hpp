#pragma once

#include "uca4/rule.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace uca4 {

// 2 bits per cell, cell i at bits 2*(i%4) of byte i/4.
class PackedRow {
public:
    PackedRow() = default;
    explicit PackedRow(std::size_t n) : n_(n), bytes_((n + 3) / 4, 0) {}
    explicit PackedRow(const std::vector<State>& cells);

    std::size_t size() const { return n_; }
    State get(std::size_t i) const { return (bytes_[i >> 2] >> ((i & 3) * 2)) & 3; }
    void set(std::size_t i, State v) {
        auto& b = bytes_[i >> 2];
        const int sh = int(i & 3) * 2;
        b = std::uint8_t((b & ~(3 << sh)) | ((v & 3) << sh));
    }
    std::vector<State> unpack() const;

    const std::vector<std::uint8_t>& bytes() const { return bytes_; }
    std::vector<std::uint8_t>& bytes() { return bytes_; }

    bool operator==(const PackedRow& o) const;

private:
    std::size_t n_ = 0;
    std::vector<std::uint8_t> bytes_;
};

// Lookup over 4 packed cells plus their two outer neighbors (12 bits in, one byte out).
class Stepper {
public:
    explicit Stepper(const RuleTable& rule);
    const RuleTable& rule() const { return rule_; }

    // One synchronous step of `in` with the given outer neighbors.  `base` is the
    // absolute index of cell 0, used only to report FreeSlotError positions.
    void step(const PackedRow& in, State left_ghost, State right_ghost, PackedRow& out,
              std::int64_t base = 0) const;

    // Cyclic stepping (cell 0 and n-1 are neighbors).
    void step_cyclic(const PackedRow& in, PackedRow& out) const;

private:
    RuleTable rule_;
    std::vector<std::uint16_t> table_; // bit 8 set when any of the four outputs is FREE
};

class Configuration {
public:
    Configuration(std::vector<State> left, std::vector<State> core, std::vector<State> right,
                  std::int64_t origin = 0);

    State at(std::int64_t i) const;
    const std::vector<State>& left_period() const { return left_; }
    const std::vector<State>& right_period() const { return right_; }
    const PackedRow& core() const { return core_; }
    std::vector<State> core_cells() const { return core_.unpack(); }
    std::int64_t origin() const { return origin_; }
    std::int64_t core_end() const { return origin_ + std::int64_t(core_.size()); }

    // Cells over [x_min, x_max].
    std::vector<State> slice(std::int64_t x_min, std::int64_t x_max) const;

    // The same infinite word, independent of how it is split into periods and core.
    bool observably_equal(const Configuration& o) const;

    // Shift by d cells: result.at(i + d) == at(i).
    Configuration shifted(std::int64_t d) const;

private:
    friend Configuration step(const Stepper&, const Configuration&);
    Configuration(std::vector<State> left, PackedRow core, std::vector<State> right, std::int64_t origin);
    void normalize();

    std::vector<State> left_, right_;
    PackedRow core_;
    std::int64_t origin_;
};

// "LEFT|CORE|RIGHT" over digits 0-3, LEFT and RIGHT nonempty, core starting at index 0.
Configuration parse_config(const std::string& text);
std::string format_config(const Configuration& c);

// Plain checkerboard of phase p: cell x holds (x + p) mod 2.
Configuration checkerboard(int phase = 0);

Configuration step(const Stepper& stepper, const Configuration& c);
Configuration step(const RuleTable& rule, const Configuration& c);

struct SpaceTimeWindow {
    std::int64_t x_min = 0, x_max = -1, t_min = 0, t_max = -1;
    std::vector<State> cells; // row-major, row t at (t - t_min) * width

    std::int64_t width() const { return x_max - x_min + 1; }
    std::int64_t height() const { return t_max - t_min + 1; }
    State at(std::int64_t x, std::int64_t t) const { return cells[(t - t_min) * width() + (x - x_min)]; }
    State& at(std::int64_t x, std::int64_t t) { return cells[(t - t_min) * width() + (x - x_min)]; }
    std::vector<State> row(std::int64_t t) const;
};

SpaceTimeWindow run_window(const RuleTable& rule, const Configuration& c, std::int64_t t_max,
                           std::int64_t x_min, std::int64_t x_max);

struct WindowViolation {
    std::int64_t x, t; // cell (x, t+1) disagrees with f applied at row t
    int slot;
    State expected; // kFree when the slot is unset
    State actual;
};

// Checks every interior point directly against the table, without the packed stepper.
std::vector<WindowViolation> validate_window(const RuleTable& rule, const SpaceTimeWindow& w);

} // namespace uca4
