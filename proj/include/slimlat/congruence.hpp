#pragma once

#include <optional>
#include <vector>

#include "slimlat/diagram.hpp"
#include "slimlat/multifork.hpp"
#include "slimlat/trajectory.hpp"

namespace slimlat {

// block[x] = smallest element of the block of x
struct CongruencePartition {
  std::vector<ElementId> block;
  bool same(ElementId x, ElementId y) const { return block[x] == block[y]; }
  // this is contained in o
  bool leq(const CongruencePartition& o) const;
  bool operator==(const CongruencePartition& o) const { return block == o.block; }
  bool operator<(const CongruencePartition& o) const { return block < o.block; }
};

struct JirConPoset {
  std::vector<CongruencePartition> elements;
  std::vector<std::vector<bool>> leq;  // leq[a][b]: elements[a] contained in elements[b]
  std::vector<int> edge_class;         // per edge of all_edges(d), index into elements
};

struct StrajPoset {
  std::vector<std::vector<int>> blocks;  // trajectory indices per block
  std::vector<int> block_of;             // per trajectory
  std::vector<std::vector<bool>> sigma_hat;
  std::vector<std::vector<bool>> tau;  // reflexive transitive closure of sigma_hat
};

enum class StepKind { DownPersp, Swing };

struct SwingWitness {
  Edge r;
  std::vector<std::pair<StepKind, Edge>> chain;
};

struct SwingResult {
  bool holds = false;
  std::optional<SwingWitness> witness;
};

CongruencePartition principal_congruence(const Diagram& d, Edge p);
// Least congruence collapsing all given pairs.
CongruencePartition generated_congruence(const Diagram& d, const std::vector<std::pair<ElementId, ElementId>>& pairs);
bool is_congruence(const Diagram& d, const CongruencePartition& c);
CongruencePartition join_congruences(const Diagram& d, const CongruencePartition& a, const CongruencePartition& b);
bool con_geq(const Diagram& d, Edge p, Edge q);

JirConPoset jir_con_poset(const Diagram& d);
// Every congruence, by closing the principal ones under joins. Gives up
// (returns nullopt) past the limit.
std::optional<std::vector<CongruencePartition>> all_congruences(const Diagram& d, size_t limit);

// Whether restricting congruences of r to the embedded copy of l is a
// lattice isomorphism Con r -> Con l.
bool restriction_is_isomorphism(const Diagram& l, const Diagram& r, const std::vector<ElementId>& emb);

StrajPoset straj_poset_definitional(const Diagram& d, const std::vector<Trajectory>& trajs);
// trajs are trajectories of rep.final_diagram().
StrajPoset straj_poset_geometric(const Replay& rep, const std::vector<Trajectory>& trajs);

// Edge coloring by trajectory blocks checked against the congruence oracle.
bool coloring_check(const Diagram& d);
bool coloring_check(const Diagram& d, const std::vector<Trajectory>& trajs, const StrajPoset& s);

bool swings(const Diagram& d, Edge p, Edge q);
bool up_persp(const Diagram& d, Edge p, Edge q);
bool down_persp(const Diagram& d, Edge p, Edge q);

SwingResult swing_decide(const Diagram& d, Edge p, Edge q);
// For the sweep: reach[q index] for every edge q of all_edges(d).
std::vector<bool> swing_reachable(const Diagram& d, Edge p);
bool check_witness(const Diagram& d, Edge p, Edge q, const SwingWitness& w);

}  // namespace slimlat
