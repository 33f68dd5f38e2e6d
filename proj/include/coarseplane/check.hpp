#pragma once

#include <stdexcept>
#include <string>

namespace coarseplane {

// Postcondition checks that stay on in release builds.  A failure here is a
// bug in this library, not bad input, hence logic_error rather than MapError.
inline void ck_assert(bool ok, const std::string& what) {
    if (!ok) throw std::logic_error("internal invariant violated: " + what);
}

} // namespace coarseplane
