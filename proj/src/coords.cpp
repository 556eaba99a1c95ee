#include "slimlat/coords.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "slimlat/congruence.hpp"
#include "slimlat/slimming.hpp"

namespace slimlat {

namespace {

std::vector<CoordPair> boundary_counts(const Diagram& d) {
  auto b = boundary_chains(d);
  std::vector<bool> on_left(d.size(), false), on_right(d.size(), false);
  for (ElementId x : b.left) on_left[x] = true;
  for (ElementId x : b.right) on_right[x] = true;
  std::vector<CoordPair> c(d.size());
  for (int j = 0; j < d.size(); ++j) {
    if (!d.is_join_irreducible(j)) continue;
    for (int x = 0; x < d.size(); ++x) {
      if (!d.leq(j, x)) continue;
      if (on_left[j]) ++c[x].left;
      if (on_right[j]) ++c[x].right;
    }
  }
  return c;
}

std::vector<CoordPair> sorted_unique(std::vector<CoordPair> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

// The two side sets determined by a point set p.
void side_sets(const std::vector<CoordPair>& p, std::vector<CoordPair>* lcp, std::vector<CoordPair>* rcp) {
  std::set<CoordPair> in(p.begin(), p.end());
  int ml = 0, mr = 0;
  for (const auto& c : p) {
    ml = std::max(ml, c.left);
    mr = std::max(mr, c.right);
  }
  for (int i = 0; i <= ml; ++i)
    for (int j = 0; j <= mr; ++j) {
      if (in.count({i, j})) continue;
      bool left = false, right = false;
      for (const auto& a : p) {
        if (!left && a.right == j && a.left < i) {
          bool ok = true;
          for (const auto& b : p)
            if (b.left > a.left && b.right < j) {
              ok = false;
              break;
            }
          left = ok;
        }
        if (!right && a.left == i && a.right < j) {
          bool ok = true;
          for (const auto& b : p)
            if (b.right > a.right && b.left < i) {
              ok = false;
              break;
            }
          right = ok;
        }
      }
      if (left && right) throw InconsistencyError("coordinate pair on both sides");
      if (left) lcp->push_back({i, j});
      if (right) rcp->push_back({i, j});
    }
}

}  // namespace

std::vector<CoordPair> join_coords(const Diagram& d) {
  if (!is_slim(d)) throw NotSlim("diagram is not slim");
  return boundary_counts(d);
}

// Coordinates of a slim diagram read through its glued sum decomposition:
// indecomposable parts by join-coordinates, chain parts as a staircase going
// left first, each part starting at the top of the previous one.
std::vector<CoordPair> glued_coords(const Diagram& d) {
  std::vector<CoordPair> out(d.size());
  auto g = glued_sum_decompose(d);
  CoordPair base{0, 0};
  for (size_t c = 0; c < g.components.size(); ++c) {
    const Diagram& comp = g.components[c];
    const auto& map = g.element_maps[c];
    std::vector<CoordPair> local(comp.size());
    if (g.kinds[c] == ComponentKind::GluedSumIndecomposable) {
      local = join_coords(comp);
    } else {
      const int n = comp.length();
      const int up_left = (n + 1) / 2;
      for (int x = 0; x < comp.size(); ++x) {
        int h = comp.height(x);
        local[x] = h <= up_left ? CoordPair{h, 0} : CoordPair{up_left, h - up_left};
      }
    }
    for (int x = 0; x < comp.size(); ++x)
      out[map[x]] = {base.left + local[x].left, base.right + local[x].right};
    base = out[map[comp.top()]];
  }
  return out;
}

CoordSet coord_sets(const Diagram& d) {
  auto c = join_coords(d);
  auto g = glued_sum_decompose(d);
  if (g.components.size() != 1 || g.kinds[0] != ComponentKind::GluedSumIndecomposable)
    throw NotIndecomposable("diagram is a glued sum or a chain");
  CoordSet s;
  s.icp = sorted_unique(c);
  side_sets(s.icp, &s.lcp, &s.rcp);
  std::sort(s.lcp.begin(), s.lcp.end());
  std::sort(s.rcp.begin(), s.rcp.end());
  s.acp = s.icp;
  s.acp.insert(s.acp.end(), s.lcp.begin(), s.lcp.end());
  s.acp.insert(s.acp.end(), s.rcp.begin(), s.rcp.end());
  std::sort(s.acp.begin(), s.acp.end());
  return s;
}

Diagram diagram_from_coords(const std::vector<CoordPair>& pts) {
  const int n = static_cast<int>(pts.size());
  if (sorted_unique(pts).size() != pts.size()) throw ValidationError("repeated coordinate pair");
  std::vector<int> by_rank(n);
  for (int i = 0; i < n; ++i) by_rank[i] = i;
  std::sort(by_rank.begin(), by_rank.end(), [&](int a, int b) {
    int sa = pts[a].left + pts[a].right, sb = pts[b].left + pts[b].right;
    return sa != sb ? sa < sb : pts[a] < pts[b];
  });
  std::vector<std::vector<ElementId>> up(n);
  for (int x = 0; x < n; ++x) {
    std::vector<ElementId> mins;
    for (int y : by_rank) {
      if (y == x || !pts[x].leq(pts[y])) continue;
      bool covered = false;
      for (ElementId z : mins)
        if (pts[z].leq(pts[y])) {
          covered = true;
          break;
        }
      if (!covered) mins.push_back(y);
    }
    std::sort(mins.begin(), mins.end(), [&](ElementId a, ElementId b) { return pts[a].left > pts[b].left; });
    up[x] = mins;
  }
  return Diagram::from_upper_covers(std::move(up));
}

namespace {

RectExtension extend_slim(const Diagram& d) {
  auto p = glued_coords(d);
  std::vector<CoordPair> lcp, rcp;
  side_sets(sorted_unique(p), &lcp, &rcp);
  std::vector<CoordPair> extra = lcp;
  extra.insert(extra.end(), rcp.begin(), rcp.end());
  std::sort(extra.begin(), extra.end());
  std::vector<CoordPair> all = p;
  all.insert(all.end(), extra.begin(), extra.end());
  RectExtension e{diagram_from_coords(all), {}};
  for (int x = 0; x < d.size(); ++x) e.embedding.push_back(x);
  return e;
}

}  // namespace

RectExtension rect_extension(const Diagram& d) {
  if (d.size() < 3) throw TooSmall("a rectangular extension needs at least 3 elements");
  if (is_rectangular(d)) {
    RectExtension e{d, {}};
    for (int x = 0; x < d.size(); ++x) e.embedding.push_back(x);
    return e;
  }
  auto fs = full_slimming(d);
  if (find_eyes(d).empty()) return extend_slim(d);

  RectExtension inner = extend_slim(fs.slim);
  NuMap nu(inner.r.size(), 0);
  for (int x = 0; x < fs.slim.size(); ++x) nu[inner.embedding[x]] = fs.nu[x];
  std::vector<std::vector<ElementId>> inserted;
  Diagram big = anti_slim(inner.r, nu, &inserted);

  // element of big that stands for each element of d
  std::vector<ElementId> image(d.size(), -1);
  for (int x = 0; x < fs.slim.size(); ++x) {
    image[fs.kept[x]] = inner.embedding[x];
    const auto& eyes_d = fs.eyes[x];
    const auto& eyes_r = inserted[inner.embedding[x]];
    for (size_t s = 0; s < eyes_d.size(); ++s) image[eyes_d[s]] = eyes_r[s];
  }
  std::vector<ElementId> perm(big.size(), -1);
  std::vector<bool> used(big.size(), false);
  for (int x = 0; x < d.size(); ++x) {
    perm[image[x]] = x;
    used[image[x]] = true;
  }
  ElementId next = d.size();
  for (int y = 0; y < big.size(); ++y)
    if (!used[y]) perm[y] = next++;
  RectExtension e{relabel(big, perm), {}};
  for (int x = 0; x < d.size(); ++x) e.embedding.push_back(x);
  return e;
}

RectExtReport verify_rect_extension(const Diagram& l, const Diagram& r, const std::vector<ElementId>& emb) {
  RectExtReport rep;
  rep.extension_rectangular = is_rectangular(r);

  bool ok = static_cast<int>(emb.size()) == l.size();
  std::vector<bool> in_l(r.size(), false);
  if (ok) {
    for (ElementId y : emb) {
      if (y < 0 || y >= r.size() || in_l[y]) {
        ok = false;
        break;
      }
      in_l[y] = true;
    }
  }
  if (ok) ok = emb[l.bottom()] == r.bottom() && emb[l.top()] == r.top();
  for (int x = 0; ok && x < l.size(); ++x) {
    for (ElementId y : l.upper_covers(x))
      if (!r.covers(emb[x], emb[y])) ok = false;
    for (int y = 0; ok && y < l.size(); ++y)
      if (r.join(emb[x], emb[y]) != emb[l.join(x, y)] || r.meet(emb[x], emb[y]) != emb[l.meet(x, y)]) ok = false;
  }
  rep.embeds_cover_preserving = ok;
  if (!ok) return rep;

  rep.lower_cover_condition = true;
  for (int z = 0; z < r.size(); ++z) {
    const auto& lc = r.lower_covers(z);
    bool outside = std::any_of(lc.begin(), lc.end(), [&](ElementId c) { return !in_l[c]; });
    if (outside && lc.size() > 2) rep.lower_cover_condition = false;
  }
  rep.congruence_preserving = restriction_is_isomorphism(l, r, emb);
  return rep;
}

}  // namespace slimlat
