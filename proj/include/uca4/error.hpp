#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace uca4 {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define UCA4_ERROR(Name)                                                  \
    class Name : public Error {                                           \
    public:                                                               \
        explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
    };

UCA4_ERROR(RangeError)
UCA4_ERROR(OverlapError)
UCA4_ERROR(IncompleteTilingError)
UCA4_ERROR(DisconnectedError)
UCA4_ERROR(NonTerminationError)
UCA4_ERROR(PreconditionError)
UCA4_ERROR(ConflictError)
UCA4_ERROR(NoRuleAvailable)
UCA4_ERROR(PhaseError)
UCA4_ERROR(MalformedSignal)
UCA4_ERROR(GeometryError)
UCA4_ERROR(SimulationDiverged)
UCA4_ERROR(MaskError)
UCA4_ERROR(UnsatisfiableEntry)
UCA4_ERROR(EncodingError)
UCA4_ERROR(BudgetError)

#undef UCA4_ERROR

class SyntaxError : public Error {
public:
    SyntaxError(const std::string& what, std::size_t column)
        : Error("SyntaxError: column " + std::to_string(column) + ": " + what), column_(column) {}
    std::size_t column() const { return column_; }

private:
    std::size_t column_;
};

// Raised when a simulation reaches a neighborhood whose table slot is unset.
class FreeSlotError : public Error {
public:
    FreeSlotError(int slot, std::int64_t index)
        : Error("FreeSlotError: slot " + std::to_string(slot) + " at index " + std::to_string(index)),
          slot_(slot), index_(index) {}
    int slot() const { return slot_; }
    std::int64_t index() const { return index_; }

private:
    int slot_;
    std::int64_t index_;
};

} // namespace uca4
