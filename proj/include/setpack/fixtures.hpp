#pragma once

#include "setpack/model.hpp"

namespace setpack::fixtures {

// Three superpixels on a unit-spaced line; optimum {{0,1},{2}} at -3.1.
Instance line3();

// Three superpixels on an equilateral triangle of side 1, all pairs attractive.
// The LP without triples is fractional (-1.5); the integral optimum is -1.25.
Instance triangle3();

}  // namespace setpack::fixtures
