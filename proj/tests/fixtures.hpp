#pragma once

#include "chromatic/coloring.hpp"
#include "chromatic/error.hpp"

namespace fixtures {

// One full hexagonal pipeline run (candidate grid 40, everything else at the
// documented defaults), built once and shared across test files. The 40x40
// candidate grid keeps the instance inside the exact-LP size guard, so the
// reported fractional optimum is the true LP value.
const chromatic::color::BuildOutput& hex_build();

// The error code a callable raises, as an optional-like result.
template <typename F>
bool raises(F&& f, chromatic::Errc want) {
  try {
    f();
  } catch (const chromatic::Error& e) {
    return e.code() == want;
  } catch (...) {
    return false;
  }
  return false;
}

}  // namespace fixtures
