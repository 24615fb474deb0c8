#include "setpack/separation.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace setpack {

namespace {
constexpr double kPositive = 1e-9;
}

double triple_load(const Triple& triple, std::span<const CellColumn> pool,
                   std::span<const double> gamma) {
  double load = 0.0;
  for (std::size_t q = 0; q < pool.size(); ++q) {
    if (gamma[q] > 0.0 && triple_coefficient(triple, pool[q].members)) load += gamma[q];
  }
  return load;
}

std::vector<ViolatedTriple> find_violated_triples(std::span<const CellColumn> pool,
                                                  std::span<const double> gamma,
                                                  std::span<const Triple> existing,
                                                  std::size_t max_cuts, double tol) {
  // Co-occurrence graph H over superpixels, plus the positive cells per node.
  std::map<SuperpixelId, std::set<SuperpixelId>> adjacency;
  std::map<SuperpixelId, std::vector<std::size_t>> cells_of;
  for (std::size_t q = 0; q < pool.size(); ++q) {
    if (gamma[q] <= kPositive) continue;
    const auto& m = pool[q].members;
    for (std::size_t i = 0; i < m.size(); ++i) {
      cells_of[m[i]].push_back(q);
      for (std::size_t j = i + 1; j < m.size(); ++j) {
        adjacency[m[i]].insert(m[j]);
        adjacency[m[j]].insert(m[i]);
      }
    }
  }

  std::set<Triple> skip(existing.begin(), existing.end());
  std::vector<ViolatedTriple> found;
  std::vector<std::size_t> touching;
  for (const auto& [u, nu] : adjacency) {
    for (auto vit = nu.upper_bound(u); vit != nu.end(); ++vit) {
      const SuperpixelId v = *vit;
      const auto& nv = adjacency[v];
      for (auto wit = nv.upper_bound(v); wit != nv.end(); ++wit) {
        const SuperpixelId w = *wit;
        if (!nu.count(w)) continue;
        const Triple t{{u, v, w}};
        // A cell holding two of the three members is listed under u or v.
        touching.clear();
        for (SuperpixelId d : {u, v}) {
          const auto& list = cells_of[d];
          touching.insert(touching.end(), list.begin(), list.end());
        }
        std::sort(touching.begin(), touching.end());
        touching.erase(std::unique(touching.begin(), touching.end()), touching.end());
        double load = 0.0;
        for (std::size_t q : touching) {
          if (triple_coefficient(t, pool[q].members)) load += gamma[q];
        }
        const double violation = load - 1.0;
        if (violation > tol && !skip.count(t)) found.push_back({t, violation});
      }
    }
  }
  std::sort(found.begin(), found.end(), [](const ViolatedTriple& a, const ViolatedTriple& b) {
    if (a.violation != b.violation) return a.violation > b.violation;
    return a.triple < b.triple;
  });
  if (found.size() > max_cuts) found.resize(max_cuts);
  return found;
}

}  // namespace setpack
