#pragma once

#include <compare>
#include <optional>
#include <vector>

#include "slimlat/diagram.hpp"
#include "slimlat/multifork.hpp"

namespace slimlat {

struct Edge {
  ElementId bottom = 0;
  ElementId top = 0;
  auto operator<=>(const Edge&) const = default;
};

enum class TrajKind { Up, Down, Hat };

struct Trajectory {
  std::vector<Edge> edges;  // left to right
  TrajKind kind = TrajKind::Up;
  Edge top_edge;
};

struct TerritoryInfo {
  int yob = 0;
  std::optional<FourCell> halo;        // ids of the final diagram of the sequence
  Trajectory birth;                    // birth trajectory, ids of stage yob
  std::vector<FourCell> before_top;    // cells of birth left of its top edge
  std::vector<FourCell> after_top;
};

std::vector<Edge> all_edges(const Diagram& d);

// Traced from the left boundary edges, bottom to top. Throws NotSlim.
std::vector<Trajectory> trajectories(const Diagram& d);
// Trajectory containing the given edge.
Trajectory trajectory_through(const Diagram& d, Edge e);

// Shape of the walk, cross-checked against the lower covers of the top edge's
// top. Throws InconsistencyError on disagreement.
TrajKind classify(const Diagram& d, const Trajectory& t);
Edge top_edge(const Diagram& d, const Trajectory& t);

// The cell whose opposite sides are the consecutive edges a and b.
FourCell cell_between(const Diagram& d, Edge a, Edge b);

// Trajectories passed with a Replay use the ids of rep.final_diagram().
TerritoryInfo territory_info(const Replay& rep, const Trajectory& t);
// d is matched to replay(seq) by similarity; ids in the result are those of d.
TerritoryInfo territory_info(const Diagram& d, const MultiforkSequence& seq, const Trajectory& t);
bool is_descendant(const Replay& rep, const Trajectory& u, const Trajectory& v);
bool is_descendant(const Replay& rep, const TerritoryInfo& u, const TerritoryInfo& v);
// Whether element z of the final diagram lies in the closed region of the cell
// c of an earlier stage.
bool within_cell(const Diagram& d, ElementId z, const FourCell& c);

}  // namespace slimlat
