#pragma once

#include <cstdint>
#include <vector>

#include "setpack/model.hpp"

namespace setpack {

struct PlantedTruth {
  std::vector<MemberSet> cells;  // pairwise disjoint
  MemberSet background;
};

struct GeneratorParams {
  int n_superpixels = 100;
  int n_planted_cells = 4;
  double cell_radius = 1.5;  // in grid spacings; also the instance max_radius
  double noise = 0.0;        // relative perturbation of potential magnitudes
  std::uint64_t seed = 1;
  double omega = 0.5;
  double jitter = 0.15;      // centroid displacement, in grid spacings
};

struct GeneratedInstance {
  Instance instance;
  PlantedTruth truth;
};

// Jittered-grid superpixels with planted disjoint cells: theta < 0 inside
// cells and > 0 on background, phi < 0 inside a cell and > 0 across cell
// boundaries. Throws InvalidArgument when the cells cannot all be placed.
GeneratedInstance generate_instance(const GeneratorParams& params);

// Small unstructured instances for exhaustive cross-checks: unit grid,
// theta ~ U[theta_lo, theta_hi], phi ~ U[-1, 1] on grid adjacency (with one
// diagonal), omega ~ U[0, 1], unit volumes.
struct RandomInstanceParams {
  int n_superpixels = 9;
  std::uint64_t seed = 1;
  double theta_lo = -2.0;
  double theta_hi = 1.0;
  double max_radius = 1.5;
  int max_cell_size = 4;  // max_volume in unit volumes
};

Instance random_instance(const RandomInstanceParams& params);

}  // namespace setpack
