#pragma once

#include <stdexcept>
#include <string>

namespace chromatic {

// Why a computation was rejected. The CLI maps these to exit codes:
// Certificate/Verification failures -> 1, everything else -> 2.
enum class Errc {
  InvalidInput,   // malformed or out-of-contract arguments
  Unsupported,    // size/dimension guard hit
  Construction,   // geometric construction failed (degenerate input)
  Resolution,     // a grid resolution is too coarse to certify the result
  Certificate,    // a certified bound or coverage check failed
  Internal,       // invariant breach inside the library
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

inline void require(bool cond, Errc code, const std::string& msg) {
  if (!cond) fail(code, msg);
}

// Tolerances used across the library. Geometry is assumed to live at unit
// scale (lattice spacings and body radii of order one), so absolute epsilons
// are meaningful.
inline constexpr double kGeomEps = 1e-9;   // geometric predicates
inline constexpr double kLpEps = 1e-7;     // LP feasibility / duality gap
inline constexpr int kMaxDim = 4;

}  // namespace chromatic
