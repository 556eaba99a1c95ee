#include "slimlat/multifork.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include <json.hpp>

#include "slimlat/coords.hpp"

namespace slimlat {

namespace {

void require_slim_rectangular(const Diagram& d) {
  if (!is_rectangular(d) || !is_slim(d)) throw NotSlimRectangular("diagram is not slim rectangular");
}

// New points of a k-fold fork whose cell has top (i, j) before the shift.
std::vector<CoordPair> fork_points(int i, int j, int k) {
  std::vector<CoordPair> v;
  for (int t = 0; t < k; ++t)
    for (int b = 0; b < j; ++b) v.push_back({i + t, b});
  for (int u = 0; u < k; ++u)
    for (int a = 0; a < i; ++a) v.push_back({a, j + u});
  for (int t = 0; t < k; ++t)
    for (int u = 0; t + u < k; ++u) v.push_back({i + t, j + u});
  std::sort(v.begin(), v.end(), [](const CoordPair& p, const CoordPair& q) {
    int sp = p.left + p.right, sq = q.left + q.right;
    return sp != sq ? sp < sq : p.left > q.left;
  });
  return v;
}

bool box_below(const std::set<CoordPair>& pts, int i, int j) {
  for (int a = 0; a <= i; ++a)
    for (int b = 0; b <= j; ++b)
      if (!pts.count({a, b})) return false;
  return true;
}

struct ForkFound {
  int i, j, k;
};

}  // namespace

Diagram grid(int m, int n) {
  if (m < 1 || n < 1) throw ValidationError("grid sides must be positive");
  std::vector<CoordPair> pts;
  for (int b = 0; b <= n; ++b)
    for (int a = 0; a <= m; ++a) pts.push_back({a, b});
  return diagram_from_coords(pts);
}

bool cell_at(const Diagram& d, ElementId bottom, FourCell* out) {
  const auto& uc = d.upper_covers(bottom);
  if (uc.size() != 2) return false;
  ElementId t = d.join(uc[0], uc[1]);
  if (!d.covers(uc[0], t) || !d.covers(uc[1], t)) return false;
  if (out) *out = FourCell{bottom, uc[0], uc[1], t};
  return true;
}

std::vector<FourCell> four_cells(const Diagram& d) {
  std::vector<FourCell> cells;
  for (int x = 0; x < d.size(); ++x) {
    const auto& uc = d.upper_covers(x);
    for (size_t s = 0; s + 1 < uc.size(); ++s) {
      ElementId t = d.join(uc[s], uc[s + 1]);
      if (d.covers(uc[s], t) && d.covers(uc[s + 1], t)) cells.push_back(FourCell{x, uc[s], uc[s + 1], t});
    }
  }
  return cells;
}

// A diamond in the ideal would need an element with three lower covers, so
// counting lower covers is enough.
bool is_distributive_cell(const Diagram& d, const FourCell& c) {
  for (int x = 0; x < d.size(); ++x)
    if (d.leq(x, c.top) && d.lower_covers(x).size() > 2) return false;
  return true;
}

std::vector<FourCell> distributive_cells(const Diagram& d) {
  std::vector<FourCell> out;
  for (const auto& c : four_cells(d))
    if (is_distributive_cell(d, c)) out.push_back(c);
  return out;
}

Diagram multifork_extend(const Diagram& d, const FourCell& cell, int k) {
  require_slim_rectangular(d);
  if (k < 1) throw ValidationError("fork multiplicity must be positive");
  FourCell real;
  if (!cell_at(d, cell.bottom, &real) || !(real == cell))
    throw NotDistributiveCell("not a 4-cell of the diagram");
  auto c = join_coords(d);
  const int i = c[cell.top].left, j = c[cell.top].right;
  int below = 0;
  for (int x = 0; x < d.size(); ++x)
    if (d.leq(x, cell.top)) ++below;
  if (below != (i + 1) * (j + 1)) throw NotDistributiveCell("ideal of the cell top is not a grid");

  std::vector<CoordPair> pts;
  for (const auto& p : c) pts.push_back({p.left + (p.left >= i ? k : 0), p.right + (p.right >= j ? k : 0)});
  auto extra = fork_points(i, j, k);
  pts.insert(pts.end(), extra.begin(), extra.end());
  return diagram_from_coords(pts);
}

namespace {

// Removes the last fork of a point set; returns false if none is left.
// Throws InconsistencyError if forks remain but none can be taken off.
bool peel_fork(std::vector<CoordPair>& pts, ForkFound* found) {
  Diagram d = diagram_from_coords(pts);
  std::set<CoordPair> all(pts.begin(), pts.end());
  std::vector<ElementId> cands;
  std::vector<ForkFound> forks;
  bool any = false;
  for (int v = 0; v < d.size(); ++v) {
    const auto& lc = d.lower_covers(v);
    if (lc.size() < 3) continue;
    any = true;
    const int k = static_cast<int>(lc.size()) - 2;
    const int i = pts[lc.back()].left + 1;
    const int j = pts[lc.front()].right + 1;
    if (pts[v] != CoordPair{i + k, j + k}) continue;
    auto pattern = fork_points(i, j, k);
    std::set<CoordPair> want(pattern.begin(), pattern.end());
    std::set<CoordPair> strip;
    for (const auto& p : pts)
      if ((p.left >= i && p.left < i + k) || (p.right >= j && p.right < j + k)) strip.insert(p);
    if (strip != want) continue;
    std::set<CoordPair> rest;
    for (const auto& p : pts)
      if (!want.count(p)) rest.insert({p.left - (p.left >= i + k ? k : 0), p.right - (p.right >= j + k ? k : 0)});
    if (!box_below(rest, i, j)) continue;
    cands.push_back(v);
    forks.push_back({i, j, k});
  }
  if (!any) return false;
  if (cands.empty()) throw InconsistencyError("no removable fork found");
  // a maximal top; among incomparable maximal tops the leftmost one
  int best = -1;
  for (size_t s = 0; s < cands.size(); ++s) {
    bool maximal = true;
    for (size_t r = 0; r < cands.size(); ++r)
      if (r != s && d.lt(cands[s], cands[r])) maximal = false;
    if (!maximal) continue;
    if (best < 0 || pts[cands[s]].left > pts[cands[best]].left) best = static_cast<int>(s);
  }
  const ForkFound f = forks[best];
  auto pattern = fork_points(f.i, f.j, f.k);
  std::set<CoordPair> want(pattern.begin(), pattern.end());
  std::vector<CoordPair> next;
  for (const auto& p : pts)
    if (!want.count(p))
      next.push_back({p.left - (p.left >= f.i + f.k ? f.k : 0), p.right - (p.right >= f.j + f.k ? f.k : 0)});
  pts = next;
  *found = f;
  return true;
}

}  // namespace

Replay replay(const MultiforkSequence& seq) {
  Replay rep;
  rep.stages.push_back(grid(seq.grid_m, seq.grid_n));
  for (const auto& s : seq.steps) {
    const Diagram& cur = rep.stages.back();
    FourCell c;
    if (s.cell_bottom < 0 || s.cell_bottom >= cur.size() || !cell_at(cur, s.cell_bottom, &c))
      throw NotDistributiveCell("no 4-cell with bottom " + std::to_string(s.cell_bottom));
    rep.halos.push_back(c);
    rep.stages.push_back(multifork_extend(cur, c, s.k));
  }
  return rep;
}

MultiforkSequence decompose_sequence(const Diagram& d) {
  require_slim_rectangular(d);
  std::vector<CoordPair> pts = join_coords(d);
  std::vector<ForkFound> peeled;
  ForkFound f;
  while (peel_fork(pts, &f)) peeled.push_back(f);
  int m = 0, n = 0;
  for (const auto& p : pts) {
    m = std::max(m, p.left);
    n = std::max(n, p.right);
  }
  std::set<CoordPair> rest(pts.begin(), pts.end());
  if (static_cast<int>(rest.size()) != (m + 1) * (n + 1) || !box_below(rest, m, n))
    throw InconsistencyError("fork removal did not end at a grid");

  MultiforkSequence seq;
  seq.grid_m = m;
  seq.grid_n = n;
  Diagram cur = grid(m, n);
  for (auto it = peeled.rbegin(); it != peeled.rend(); ++it) {
    auto c = join_coords(cur);
    ElementId bottom = -1;
    for (int x = 0; x < cur.size(); ++x)
      if (c[x] == CoordPair{it->i - 1, it->j - 1}) bottom = x;
    FourCell cell;
    if (bottom < 0 || !cell_at(cur, bottom, &cell)) throw InconsistencyError("lost track of a fork cell");
    seq.steps.push_back({bottom, it->k});
    cur = multifork_extend(cur, cell, it->k);
  }
  return seq;
}

BirthTable birth_table(const Replay& rep) {
  BirthTable b;
  const int n = rep.final_diagram().size();
  b.element_yob.assign(n, 0);
  for (int x = 0; x < n; ++x) {
    int j = 0;
    while (rep.stages[j].size() <= x) ++j;
    b.element_yob[x] = j;
  }
  return b;
}

BirthTable birth_table(const MultiforkSequence& seq) { return birth_table(replay(seq)); }

std::pair<Diagram, MultiforkSequence> random_slim_rectangular(uint64_t seed, int max_steps, int max_k,
                                                              GridBounds bounds, int max_elements) {
  std::mt19937_64 rng(seed);
  MultiforkSequence seq;
  seq.grid_m = 1 + static_cast<int>(rng() % std::max(1, bounds.max_m));
  seq.grid_n = 1 + static_cast<int>(rng() % std::max(1, bounds.max_n));
  Diagram cur = grid(seq.grid_m, seq.grid_n);
  const int steps = max_steps > 0 ? static_cast<int>(rng() % (max_steps + 1)) : 0;
  for (int s = 0; s < steps; ++s) {
    auto cells = distributive_cells(cur);
    if (cells.empty()) break;
    const FourCell c = cells[rng() % cells.size()];
    int k = 1 + static_cast<int>(rng() % std::max(1, max_k));
    auto coords = join_coords(cur);
    const int i = coords[c.top].left, j = coords[c.top].right;
    while (k > 0 && cur.size() + k * i + k * j + k * (k + 1) / 2 > max_elements) --k;
    if (k == 0) break;
    seq.steps.push_back({c.bottom, k});
    cur = multifork_extend(cur, c, k);
  }
  return {cur, seq};
}

std::string sequence_to_json(const MultiforkSequence& seq) {
  nlohmann::json j;
  j["grid"] = {seq.grid_m, seq.grid_n};
  j["steps"] = nlohmann::json::array();
  for (const auto& s : seq.steps) j["steps"].push_back({{"cell_bottom", s.cell_bottom}, {"k", s.k}});
  return j.dump();
}

MultiforkSequence sequence_from_json(const std::string& text) {
  try {
    auto j = nlohmann::json::parse(text);
    MultiforkSequence seq;
    seq.grid_m = j.at("grid").at(0).get<int>();
    seq.grid_n = j.at("grid").at(1).get<int>();
    for (const auto& s : j.at("steps")) seq.steps.push_back({s.at("cell_bottom").get<int>(), s.at("k").get<int>()});
    return seq;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("sequence json: ") + e.what());
  }
}

}  // namespace slimlat
