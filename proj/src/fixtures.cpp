#include "setpack/fixtures.hpp"

#include <cmath>

namespace setpack::fixtures {

Instance line3() {
  InstanceData data;
  data.dims = 2;
  for (int i = 0; i < 3; ++i) {
    data.superpixels.push_back({i, {static_cast<double>(i), 0.0, 0.0}, 1.0, -1.0});
  }
  data.pairwise = {{0, 1, -0.5}};
  data.omega = 0.2;
  data.max_radius = 1.0;
  data.max_volume = 2.0;
  return Instance(std::move(data));
}

Instance triangle3() {
  InstanceData data;
  data.dims = 2;
  data.superpixels = {
      {0, {0.0, 0.0, 0.0}, 1.0, -0.25},
      {1, {1.0, 0.0, 0.0}, 1.0, -0.25},
      {2, {0.5, std::sqrt(3.0) / 2.0, 0.0}, 1.0, -0.25},
  };
  data.pairwise = {{0, 1, -0.5}, {0, 2, -0.5}, {1, 2, -0.5}};
  data.omega = 0.0;
  data.max_radius = 1.0;
  data.max_volume = 2.0;
  return Instance(std::move(data));
}

}  // namespace setpack::fixtures
