#include "slimlat/trajectory.hpp"

#include <algorithm>

#include "slimlat/slimming.hpp"

namespace slimlat {

namespace {

bool step_right(const Diagram& d, Edge e, Edge* next) {
  const auto& lc = d.lower_covers(e.top);
  int i = d.lower_index(e.top, e.bottom);
  if (i + 1 < static_cast<int>(lc.size())) {
    ElementId z = lc[i + 1];
    *next = Edge{d.meet(e.bottom, z), z};
    return true;
  }
  const auto& uc = d.upper_covers(e.bottom);
  int j = d.upper_index(e.bottom, e.top);
  if (j + 1 < static_cast<int>(uc.size())) {
    ElementId w = uc[j + 1];
    *next = Edge{w, d.join(e.top, w)};
    return true;
  }
  return false;
}

bool step_left(const Diagram& d, Edge e, Edge* prev) {
  const auto& lc = d.lower_covers(e.top);
  int i = d.lower_index(e.top, e.bottom);
  if (i > 0) {
    ElementId z = lc[i - 1];
    *prev = Edge{d.meet(e.bottom, z), z};
    return true;
  }
  const auto& uc = d.upper_covers(e.bottom);
  int j = d.upper_index(e.bottom, e.top);
  if (j > 0) {
    ElementId w = uc[j - 1];
    *prev = Edge{w, d.join(e.top, w)};
    return true;
  }
  return false;
}

Trajectory trace_from(const Diagram& d, Edge start) {
  Trajectory t;
  t.edges.push_back(start);
  Edge next;
  while (step_right(d, t.edges.back(), &next)) {
    if (t.edges.size() > static_cast<size_t>(d.size()) * d.size())
      throw InconsistencyError("trajectory does not terminate");
    t.edges.push_back(next);
  }
  t.top_edge = top_edge(d, t);
  t.kind = classify(d, t);
  return t;
}

}  // namespace

std::vector<Edge> all_edges(const Diagram& d) {
  std::vector<Edge> e;
  for (int x = 0; x < d.size(); ++x)
    for (ElementId y : d.upper_covers(x)) e.push_back({x, y});
  std::sort(e.begin(), e.end());
  return e;
}

std::vector<Trajectory> trajectories(const Diagram& d) {
  if (!is_slim(d)) throw NotSlim("trajectories need a slim diagram");
  auto b = boundary_chains(d);
  std::vector<Trajectory> out;
  for (size_t i = 1; i < b.left.size(); ++i) out.push_back(trace_from(d, Edge{b.left[i - 1], b.left[i]}));
  return out;
}

Trajectory trajectory_through(const Diagram& d, Edge e) {
  Edge prev;
  size_t guard = 0;
  while (step_left(d, e, &prev)) {
    e = prev;
    if (++guard > static_cast<size_t>(d.size()) * d.size()) throw InconsistencyError("trajectory does not terminate");
  }
  return trace_from(d, e);
}

Edge top_edge(const Diagram& d, const Trajectory& t) {
  for (const Edge& e : t.edges) {
    bool top = std::all_of(t.edges.begin(), t.edges.end(), [&](const Edge& f) { return d.leq(f.top, e.top); });
    if (top) return e;
  }
  throw InconsistencyError("trajectory has no top edge");
}

TrajKind classify(const Diagram& d, const Trajectory& t) {
  int ups = 0, downs = 0;
  bool turned = false, bad = false;
  for (size_t s = 0; s + 1 < t.edges.size(); ++s) {
    bool up = d.lt(t.edges[s].top, t.edges[s + 1].top);
    if (up) {
      ++ups;
      if (turned) bad = true;
    } else {
      ++downs;
      turned = true;
    }
  }
  if (bad) throw InconsistencyError("trajectory goes down, then up");
  TrajKind kind = downs == 0 ? TrajKind::Up : ups == 0 ? TrajKind::Down : TrajKind::Hat;

  Edge top = top_edge(d, t);
  const auto& lc = d.lower_covers(top.top);
  int i = d.lower_index(top.top, top.bottom);
  bool interior = lc.size() >= 3 && i > 0 && i + 1 < static_cast<int>(lc.size());
  if (interior != (kind == TrajKind::Hat))
    throw InconsistencyError("trajectory shape disagrees with the lower covers of its top");
  return kind;
}

FourCell cell_between(const Diagram& d, Edge a, Edge b) {
  if (d.covers(b.top, a.top)) return FourCell{b.bottom, a.bottom, b.top, a.top};
  return FourCell{a.bottom, a.top, b.bottom, b.top};
}

TerritoryInfo territory_info(const Replay& rep, const Trajectory& t) {
  TerritoryInfo info;
  BirthTable bt = birth_table(rep);
  Edge top = t.top_edge;
  info.yob = bt.edge_yob(top.bottom, top.top);
  if (info.yob > 0) info.halo = rep.halos[info.yob - 1];
  const Diagram& stage = rep.stages[info.yob];
  info.birth = trajectory_through(stage, top);
  size_t at = 0;
  while (info.birth.edges[at] != top) ++at;
  for (size_t s = 0; s + 1 < info.birth.edges.size(); ++s) {
    FourCell c = cell_between(stage, info.birth.edges[s], info.birth.edges[s + 1]);
    (s < at ? info.before_top : info.after_top).push_back(c);
  }
  return info;
}

bool within_cell(const Diagram& d, ElementId z, const FourCell& c) {
  if (!d.leq(c.bottom, z) || !d.leq(z, c.top)) return false;
  if (d.incomparable(z, c.left_corner) && d.left_of(z, c.left_corner)) return false;
  if (d.incomparable(z, c.right_corner) && d.left_of(c.right_corner, z)) return false;
  return true;
}

bool is_descendant(const Replay& rep, const Trajectory& u, const Trajectory& v) {
  return is_descendant(rep, territory_info(rep, u), territory_info(rep, v));
}

bool is_descendant(const Replay& rep, const TerritoryInfo& iu, const TerritoryInfo& iv) {
  if (iu.yob <= iv.yob || !iu.halo) return false;
  const Diagram& d = rep.final_diagram();
  const FourCell& h = *iu.halo;
  auto inside = [&](const FourCell& c) {
    return within_cell(d, h.bottom, c) && within_cell(d, h.left_corner, c) && within_cell(d, h.right_corner, c) &&
           within_cell(d, h.top, c);
  };
  for (const auto* part : {&iv.before_top, &iv.after_top})
    for (const auto& c : *part)
      if (inside(c)) return true;
  return false;
}

TerritoryInfo territory_info(const Diagram& d, const MultiforkSequence& seq, const Trajectory& t) {
  Replay rep = replay(seq);
  auto sim = similarity(d, rep.final_diagram());
  if (!sim || sim->mirrored) throw InconsistencyError("sequence does not rebuild the diagram");
  std::vector<ElementId> back(d.size());
  for (int x = 0; x < d.size(); ++x) back[sim->map[x]] = x;
  auto fwd = [&](Edge e) { return Edge{sim->map[e.bottom], sim->map[e.top]}; };
  auto bwd = [&](Edge e) { return Edge{back[e.bottom], back[e.top]}; };
  auto bcell = [&](FourCell c) {
    return FourCell{back[c.bottom], back[c.left_corner], back[c.right_corner], back[c.top]};
  };
  Trajectory mapped = t;
  for (auto& e : mapped.edges) e = fwd(e);
  mapped.top_edge = fwd(t.top_edge);
  TerritoryInfo info = territory_info(rep, mapped);
  if (info.halo) info.halo = bcell(*info.halo);
  for (auto& e : info.birth.edges) e = bwd(e);
  info.birth.top_edge = bwd(info.birth.top_edge);
  for (auto& c : info.before_top) c = bcell(c);
  for (auto& c : info.after_top) c = bcell(c);
  return info;
}

}  // namespace slimlat
