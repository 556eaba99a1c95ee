#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>

#include "slimlat/diagram.hpp"
#include "slimlat/multifork.hpp"
#include "slimlat/trajectory.hpp"
#include "support/corpus.hpp"
#include "support/oracles.hpp"

using namespace slimlat;

namespace {

enum class Step { Up, Down };

// direction of each step from the cell shape: [b,l] -> [r,t] rises,
// [l,t] -> [b,r] falls
std::vector<Step> steps_of(const Diagram& d, const Trajectory& t) {
  std::set<std::array<int, 4>> cs;
  for (auto c : oracle::cells(d)) cs.insert(c);
  std::vector<Step> out;
  for (size_t i = 0; i + 1 < t.edges.size(); ++i) {
    Edge a = t.edges[i], b = t.edges[i + 1];
    if (cs.count({a.bottom, a.top, b.bottom, b.top}))
      out.push_back(Step::Up);
    else if (cs.count({b.bottom, a.bottom, b.top, a.top}))
      out.push_back(Step::Down);
    else
      FAIL("consecutive edges are not opposite sides of a cell");
  }
  return out;
}

TrajKind kind_from_steps(const std::vector<Step>& s) {
  bool up = false, down = false;
  for (Step x : s) (x == Step::Up ? up : down) = true;
  if (up && down) return TrajKind::Hat;
  return down ? TrajKind::Down : TrajKind::Up;
}

bool interior_lower_cover(const Diagram& d, Edge e) {
  const auto& lc = d.lower_covers(e.top);
  if (lc.size() < 3) return false;
  // leftmost and rightmost lower covers lie on the outer sides of the others
  int left = 0, right = 0;
  for (ElementId y : lc) {
    if (y == e.bottom) continue;
    (d.left_of(y, e.bottom) ? left : right)++;
  }
  return left > 0 && right > 0;
}

}  // namespace

TEST_CASE("small trajectories") {
  auto g = trajectories(grid(2, 3));
  CHECK(g.size() == 5);
  for (const auto& t : g) CHECK(t.kind != TrajKind::Hat);

  auto c = trajectories(chain_diagram(4));
  CHECK(c.size() == 4);
  for (const auto& t : c) {
    CHECK(t.edges.size() == 1);
    CHECK(t.kind == TrajKind::Up);
    CHECK(t.top_edge == t.edges[0]);
  }

  Diagram m3 = parse_diagram("elements 5\nup 0: 1 2 3\nup 1: 4\nup 2: 4\nup 3: 4\nup 4:\n");
  CHECK_THROWS_AS(trajectories(m3), NotSlim);
}

TEST_CASE("trajectories partition the edges") {
  std::vector<Diagram> ds;
  for (const auto& s : corpus::slim_rectangular(60, 17)) ds.push_back(s.d);
  for (const auto& d : corpus::planar_semimodular(60, 18))
    if (is_slim(d)) ds.push_back(d);
  for (const Diagram& d : ds) {
    auto ts = trajectories(d);
    auto cls = oracle::trajectory_classes(d);
    std::set<std::pair<int, int>> reps;
    size_t total = 0;
    auto b = boundary_chains(d);
    for (const auto& t : ts) {
      std::set<std::pair<int, int>> mine;
      for (const Edge& e : t.edges) mine.insert(cls.at({e.bottom, e.top}));
      CHECK(mine.size() == 1);
      reps.insert(*mine.begin());
      total += t.edges.size();

      // from the left boundary to the right one
      auto on = [](const std::vector<ElementId>& ch, Edge e) {
        for (size_t i = 1; i < ch.size(); ++i)
          if (ch[i - 1] == e.bottom && ch[i] == e.top) return true;
        return false;
      };
      CHECK(on(b.left, t.edges.front()));
      CHECK(on(b.right, t.edges.back()));

      // once down, never up again
      auto st = steps_of(d, t);
      for (size_t i = 1; i < st.size(); ++i) CHECK_FALSE((st[i - 1] == Step::Down && st[i] == Step::Up));
      CHECK(t.kind == kind_from_steps(st));
      CHECK(classify(d, t) == t.kind);

      auto le = oracle::order(d);
      for (const Edge& e : t.edges) CHECK(le[e.top][t.top_edge.top]);
      CHECK(top_edge(d, t) == t.top_edge);
      CHECK(trajectory_through(d, t.edges[t.edges.size() / 2]).edges == t.edges);
    }
    CHECK(total == all_edges(d).size());
    CHECK(reps.size() == ts.size());
    std::set<std::pair<int, int>> all_reps;
    for (auto& [e, r] : cls) all_reps.insert(r);
    CHECK(all_reps.size() == ts.size());
  }
}

TEST_CASE("hat trajectories and birth") {
  // one fork of multiplicity k adds k hat trajectories
  for (int k = 1; k <= 3; ++k) {
    Diagram g = grid(3, 3);
    FourCell h;
    REQUIRE(cell_at(g, 5, &h));
    Diagram d = multifork_extend(g, h, k);
    int hats = 0;
    for (const auto& t : trajectories(d)) hats += t.kind == TrajKind::Hat;
    CHECK(hats == k);
  }

  for (const auto& s : corpus::slim_rectangular(50, 404)) {
    Replay rep = replay(s.seq);
    const Diagram& d = rep.final_diagram();
    int hats = 0, forks = 0;
    for (const auto& st : s.seq.steps) forks += st.k;
    for (const auto& t : trajectories(d)) {
      auto info = territory_info(rep, t);
      const bool hat = t.kind == TrajKind::Hat;
      hats += hat;
      CHECK(hat == (info.yob > 0));
      CHECK(hat == interior_lower_cover(d, t.top_edge));
      CHECK(hat == info.halo.has_value());
      // the birth trajectory has the same top edge, and its cells split at it
      CHECK(info.birth.top_edge == t.top_edge);
      CHECK(info.before_top.size() + info.after_top.size() + 1 == info.birth.edges.size());
      for (const auto* part : {&info.before_top, &info.after_top})
        for (const auto& c : *part) {
          FourCell again;
          REQUIRE(cell_at(rep.stages[info.yob], c.bottom, &again));
          CHECK(again == c);
        }
      if (!hat) CHECK((info.before_top.empty() || info.after_top.empty()));
      // the top edge is old enough to be in the stage
      CHECK(t.top_edge.top < rep.stages[info.yob].size());
      // every later stage keeps the same top edge for the descendant of birth
      for (size_t j = info.yob; j < rep.stages.size(); ++j)
        CHECK(top_edge(rep.stages[j], trajectory_through(rep.stages[j], t.top_edge)) == t.top_edge);
    }
    CHECK(hats == forks);

    auto via_seq = territory_info(d, decompose_sequence(d), trajectories(d).front());
    CHECK(via_seq.yob == 0);
  }
}

TEST_CASE("descendants") {
  // fork at the top cell of a 3x3 grid, then again inside the territory of one
  // of the new trajectories
  Diagram g = grid(3, 3);
  FourCell h;
  REQUIRE(cell_at(g, 10, &h));
  MultiforkSequence seq{3, 3, {{10, 1}}};
  Replay r1 = replay(seq);
  Trajectory v;
  for (const auto& t : trajectories(r1.final_diagram()))
    if (t.kind == TrajKind::Hat) v = t;
  auto iv = territory_info(r1, v);
  REQUIRE(iv.yob == 1);
  REQUIRE(!iv.before_top.empty());

  FourCell inner = iv.before_top.front();
  REQUIRE(is_distributive_cell(r1.final_diagram(), inner));
  seq.steps.push_back({inner.bottom, 1});
  Replay r2 = replay(seq);
  const Diagram& d = r2.final_diagram();
  Trajectory u, v2;
  int hats = 0;
  for (const auto& t : trajectories(d)) {
    if (t.kind != TrajKind::Hat) continue;
    ++hats;
    auto info = territory_info(r2, t);
    (info.yob == 2 ? u : v2) = t;
  }
  REQUIRE(hats == 2);
  CHECK(is_descendant(r2, u, v2));
  CHECK_FALSE(is_descendant(r2, v2, u));
  CHECK_FALSE(is_descendant(r2, u, u));

  // a fork outside the territory gives no descendant
  MultiforkSequence other{3, 3, {{10, 1}}};
  Replay o1 = replay(other);
  for (const auto& c : distributive_cells(o1.final_diagram())) {
    bool in_terr = false;
    for (const auto* part : {&iv.before_top, &iv.after_top})
      for (const auto& x : *part) in_terr |= x == c;
    if (in_terr) continue;
    MultiforkSequence s2 = other;
    s2.steps.push_back({c.bottom, 1});
    Replay o2 = replay(s2);
    std::vector<Trajectory> hs;
    for (const auto& t : trajectories(o2.final_diagram()))
      if (t.kind == TrajKind::Hat) hs.push_back(t);
    REQUIRE(hs.size() == 2);
    CHECK_FALSE(is_descendant(o2, hs[0], hs[1]));
    CHECK_FALSE(is_descendant(o2, hs[1], hs[0]));
  }

  for (const auto& s : corpus::slim_rectangular(40, 900)) {
    Replay rep = replay(s.seq);
    auto ts = trajectories(rep.final_diagram());
    std::vector<TerritoryInfo> info;
    for (const auto& t : ts) info.push_back(territory_info(rep, t));
    for (size_t a = 0; a < ts.size(); ++a) {
      CHECK_FALSE(is_descendant(rep, info[a], info[a]));
      for (size_t b = 0; b < ts.size(); ++b) {
        bool desc = is_descendant(rep, info[a], info[b]);
        if (desc) CHECK(info[a].yob > info[b].yob);
        if (ts[a].kind != TrajKind::Hat) CHECK_FALSE(desc);
        if (desc) CHECK_FALSE(is_descendant(rep, info[b], info[a]));
      }
    }
  }
}

TEST_CASE("cell between consecutive edges") {
  Diagram g = grid(2, 2);
  auto ts = trajectories(g);
  for (const auto& t : ts)
    for (size_t i = 0; i + 1 < t.edges.size(); ++i) {
      FourCell c = cell_between(g, t.edges[i], t.edges[i + 1]);
      FourCell c2;
      REQUIRE(cell_at(g, c.bottom, &c2));
      CHECK(c == c2);
      for (int z = 0; z < g.size(); ++z) {
        bool in = within_cell(g, z, c);
        bool corner = z == c.bottom || z == c.top || z == c.left_corner || z == c.right_corner;
        CHECK(in == corner);
      }
    }
}
