#pragma once

#include <optional>
#include <vector>

#include "slimlat/diagram.hpp"

namespace slimlat {

// nu[x] = number of eyes sitting in the 4-cell with bottom x.
using NuMap = std::vector<int>;
// One-line notation, values 1..n; perm[i-1] = pi(i).
using Permutation = std::vector<int>;

struct SlimmingResult {
  Diagram slim;
  NuMap nu;
  std::vector<ElementId> kept;  // kept[new id] = id in the input
  // eyes[x] = removed elements (input ids, left to right) above slim element x
  std::vector<std::vector<ElementId>> eyes;
};

struct SimilarityMap {
  std::vector<ElementId> map;  // map[id in d1] = id in d2
  bool mirrored = false;
};

std::vector<ElementId> find_eyes(const Diagram& d);
SlimmingResult full_slimming(const Diagram& d);

// Inserts nu[x] eyes into the cell above x. New elements get ids |d|, |d|+1, ...
// in order of ascending bottom id, then left to right. If inserted is given,
// (*inserted)[x] lists the eyes put above x.
Diagram anti_slim(const Diagram& d, const NuMap& nu,
                  std::vector<std::vector<ElementId>>* inserted = nullptr);

Diagram mirror(const Diagram& d);
Permutation jh_permutation(const Diagram& d);
Permutation inverse_permutation(const Permutation& p);

std::optional<SimilarityMap> similarity(const Diagram& d1, const Diagram& d2);
// Checks that m is a lattice isomorphism which keeps (or, if mirrored,
// reverses) the left-right order of upper covers.
bool is_similarity(const Diagram& d1, const Diagram& d2, const SimilarityMap& m);

}  // namespace slimlat
