#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace coarseplane {

enum class Err {
    AsymmetricAdjacency,
    LoopOrMultiEdge,
    NonPlanarTrace,
    NoBoundedFace,
    NotACycle,
    CycleTouchesOuterFace,
    Disconnected,
    CapExceeded,
    GeodesicEntersCycle,
    NotInS1,
    EmptySideClass,
    HullLeavesCore,
    FaceWalkNotCycle,
    SearchBudgetExceeded,
    TouchesRim,
    NotConnected,
    EverythingIsADecoration,
    DegreeBelowTwo,
    CheegerNonpositive,
    ViolationFound,
    FaceNotInCore,
    NotHyperbolicParameters,
    BadFormat,
};

const char* err_name(Err e);

// Library errors carry a stable code so the CLI can map them to exit codes
// and tests can assert on the exact failure.
class MapError : public std::runtime_error {
public:
    MapError(Err code, const std::string& detail)
        : std::runtime_error(std::string(err_name(code)) + ": " + detail), code_(code) {}
    Err code() const { return code_; }

    // CapExceeded / SearchBudgetExceeded report how much work was counted
    // before the budget tripped.
    std::uint64_t counted = 0;

private:
    Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& detail) {
    throw MapError(code, detail);
}

[[noreturn]] inline void fail_counted(Err code, const std::string& detail, std::uint64_t counted) {
    MapError e(code, detail + " (counted " + std::to_string(counted) + ")");
    e.counted = counted;
    throw e;
}

} // namespace coarseplane
