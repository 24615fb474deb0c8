#include "setpack/generator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

namespace setpack {

namespace {

struct Grid {
  int width = 1;
  int at(int x, int y, int n) const {
    const int id = y * width + x;
    return (x < width && id < n) ? id : -1;
  }
};

// Grid neighbors (right, down, down-right) give ~3 RAG edges per superpixel.
template <typename Emit>
void for_each_grid_edge(const Grid& grid, int n, Emit emit) {
  for (int id = 0; id < n; ++id) {
    const int x = id % grid.width;
    const int y = id / grid.width;
    for (auto [dx, dy] : {std::pair{1, 0}, std::pair{0, 1}, std::pair{1, 1}}) {
      const int other = grid.at(x + dx, y + dy, n);
      if (other >= 0) emit(id, other);
    }
  }
}

}  // namespace

GeneratedInstance generate_instance(const GeneratorParams& params) {
  if (params.n_superpixels <= 0 || params.n_planted_cells < 0 || !(params.cell_radius >= 0.0) ||
      params.noise < 0.0) {
    throw InvalidArgument("generator parameters must be positive");
  }
  const int n = params.n_superpixels;
  std::mt19937_64 rng(params.seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> volume_draw(0.9, 1.1);

  Grid grid{static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n))))};
  InstanceData data;
  data.dims = 2;
  data.omega = params.omega;
  data.max_radius = params.cell_radius;
  data.superpixels.resize(n);
  for (int id = 0; id < n; ++id) {
    auto& sp = data.superpixels[id];
    sp.id = id;
    sp.centroid = {id % grid.width + params.jitter * unit(rng),
                   id / grid.width + params.jitter * unit(rng), 0.0};
    sp.volume = volume_draw(rng);
  }
  auto dist = [&](int a, int b) {
    const double dx = data.superpixels[a].centroid[0] - data.superpixels[b].centroid[0];
    const double dy = data.superpixels[a].centroid[1] - data.superpixels[b].centroid[1];
    return std::sqrt(dx * dx + dy * dy);
  };

  // Greedy placement of disjoint balls around shuffled centers.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<int> owner(n, -1);
  PlantedTruth truth;
  for (int center : order) {
    if (static_cast<int>(truth.cells.size()) == params.n_planted_cells) break;
    MemberSet ball;
    bool clash = false;
    for (int d = 0; d < n && !clash; ++d) {
      if (dist(center, d) <= params.cell_radius) {
        clash = owner[d] >= 0;
        ball.push_back(d);
      }
    }
    if (clash) continue;
    for (int d : ball) owner[d] = static_cast<int>(truth.cells.size());
    truth.cells.push_back(std::move(ball));
  }
  if (static_cast<int>(truth.cells.size()) < params.n_planted_cells) {
    throw InvalidArgument("cannot place " + std::to_string(params.n_planted_cells) +
                          " disjoint cells of radius " + std::to_string(params.cell_radius) +
                          " among " + std::to_string(n) + " superpixels");
  }
  for (int d = 0; d < n; ++d) {
    if (owner[d] < 0) truth.background.push_back(d);
  }

  auto perturbed = [&](double magnitude) {
    return magnitude * std::max(0.05, 1.0 + params.noise * unit(rng));
  };
  for (int d = 0; d < n; ++d) {
    data.superpixels[d].theta = owner[d] >= 0 ? -perturbed(1.0) : perturbed(1.0);
  }
  for_each_grid_edge(grid, n, [&](int a, int b) {
    if (owner[a] < 0 && owner[b] < 0) return;
    const double phi = owner[a] == owner[b] ? -perturbed(0.5) : perturbed(1.0);
    data.pairwise.push_back({a, b, phi});
  });

  double max_volume = 0.0;
  for (const auto& cell : truth.cells) {
    double v = 0.0;
    for (int d : cell) v += data.superpixels[d].volume;
    max_volume = std::max(max_volume, v);
  }
  if (max_volume == 0.0) max_volume = 1.1;
  data.max_volume = max_volume;

  return GeneratedInstance{Instance(std::move(data)), std::move(truth)};
}

Instance random_instance(const RandomInstanceParams& params) {
  const int n = params.n_superpixels;
  if (n <= 0) throw InvalidArgument("random_instance needs at least one superpixel");
  std::mt19937_64 rng(params.seed);
  std::uniform_real_distribution<double> theta(params.theta_lo, params.theta_hi);
  std::uniform_real_distribution<double> phi(-1.0, 1.0);
  std::uniform_real_distribution<double> omega(0.0, 1.0);

  Grid grid{static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n))))};
  InstanceData data;
  data.dims = 2;
  data.omega = omega(rng);
  data.max_radius = params.max_radius;
  data.max_volume = static_cast<double>(params.max_cell_size);
  for (int id = 0; id < n; ++id) {
    data.superpixels.push_back({id,
                                {static_cast<double>(id % grid.width),
                                 static_cast<double>(id / grid.width), 0.0},
                                1.0,
                                theta(rng)});
  }
  for_each_grid_edge(grid, n, [&](int a, int b) { data.pairwise.push_back({a, b, phi(rng)}); });
  return Instance(std::move(data));
}

}  // namespace setpack
