#pragma once

#include <span>
#include <vector>

#include "setpack/model.hpp"

namespace setpack {

struct ViolatedTriple {
  Triple triple;
  double violation = 0.0;  // sum_q C_cq gamma_q - 1
};

// Sum over pooled cells of gamma_q * [cell holds >= 2 members of the triple].
double triple_load(const Triple& triple, std::span<const CellColumn> pool,
                   std::span<const double> gamma);

// Most violated triples among the triangles of the co-occurrence graph of
// cells with positive gamma. Sorted by violation (descending), ties by triple;
// triples listed in `existing` are skipped.
std::vector<ViolatedTriple> find_violated_triples(std::span<const CellColumn> pool,
                                                  std::span<const double> gamma,
                                                  std::span<const Triple> existing,
                                                  std::size_t max_cuts = 1,
                                                  double tol = 1e-6);

}  // namespace setpack
