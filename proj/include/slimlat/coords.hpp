#pragma once

#include <compare>
#include <vector>

#include "slimlat/diagram.hpp"

namespace slimlat {

struct CoordPair {
  int left = 0;
  int right = 0;
  auto operator<=>(const CoordPair&) const = default;
  bool leq(const CoordPair& o) const { return left <= o.left && right <= o.right; }
};

struct CoordSet {
  std::vector<CoordPair> icp, lcp, rcp, acp;  // each sorted
};

struct RectExtension {
  Diagram r;
  std::vector<ElementId> embedding;  // embedding[x in L] = element of r
};

struct RectExtReport {
  bool embeds_cover_preserving = false;
  bool extension_rectangular = false;
  bool lower_cover_condition = false;
  bool congruence_preserving = false;
  bool all() const {
    return embeds_cover_preserving && extension_rectangular && lower_cover_condition &&
           congruence_preserving;
  }
};

// Throws NotSlim.
std::vector<CoordPair> join_coords(const Diagram& d);
// Coordinates of a slim diagram through its glued sum decomposition:
// join-coordinates on indecomposable parts, chains of length n as ceil(n/2)
// left steps then the rest right, each part starting at the previous top.
std::vector<CoordPair> glued_coords(const Diagram& d);
// Throws NotSlim, NotIndecomposable.
CoordSet coord_sets(const Diagram& d);

// Lattice of a point set under the componentwise order. Element ids follow the
// order of pts; upper covers run left to right, i.e. by decreasing left
// coordinate. Throws ValidationError if the points do not form a lattice.
Diagram diagram_from_coords(const std::vector<CoordPair>& pts);

// Throws TooSmall for fewer than 3 elements. Ids 0..|d|-1 of the result are
// the embedded copy of d.
RectExtension rect_extension(const Diagram& d);
RectExtReport verify_rect_extension(const Diagram& l, const Diagram& r,
                                    const std::vector<ElementId>& emb);

}  // namespace slimlat
