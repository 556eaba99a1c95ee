#include "slimlat/slimming.hpp"

#include <algorithm>
#include <map>

#include "slimlat/coords.hpp"
#include "slimlat/trajectory.hpp"

namespace slimlat {

namespace {

// For every element a, the eyes of the length-2 intervals [a, z], left to right.
std::vector<std::vector<ElementId>> eyes_by_bottom(const Diagram& d) {
  std::vector<std::vector<ElementId>> out(d.size());
  for (int z = 0; z < d.size(); ++z) {
    const auto& lc = d.lower_covers(z);
    if (lc.size() < 3) continue;
    std::map<ElementId, std::vector<ElementId>> middles;
    for (ElementId m : lc) {
      for (ElementId a : d.lower_covers(m)) middles[a].push_back(m);
    }
    for (auto& [a, ms] : middles) {
      if (ms.size() < 3) continue;
      // ms is in the left-to-right order of lc
      for (size_t i = 1; i + 1 < ms.size(); ++i) {
        if (!d.is_doubly_irreducible(ms[i]))
          throw InconsistencyError("interior element " + std::to_string(ms[i]) + " of a length-2 interval is reducible");
        out[a].push_back(ms[i]);
      }
    }
  }
  return out;
}

}  // namespace

std::vector<ElementId> find_eyes(const Diagram& d) {
  std::vector<ElementId> all;
  for (const auto& v : eyes_by_bottom(d)) all.insert(all.end(), v.begin(), v.end());
  return all;
}

SlimmingResult full_slimming(const Diagram& d) {
  auto by_bottom = eyes_by_bottom(d);
  std::vector<bool> eye(d.size(), false);
  for (const auto& v : by_bottom)
    for (ElementId e : v) eye[e] = true;

  SlimmingResult res;
  std::vector<ElementId> inv(d.size(), -1);
  for (int x = 0; x < d.size(); ++x)
    if (!eye[x]) {
      inv[x] = static_cast<ElementId>(res.kept.size());
      res.kept.push_back(x);
    }
  std::vector<std::vector<ElementId>> up(res.kept.size());
  for (size_t i = 0; i < res.kept.size(); ++i)
    for (ElementId y : d.upper_covers(res.kept[i]))
      if (!eye[y]) up[i].push_back(inv[y]);
  res.slim = Diagram::from_upper_covers(std::move(up));
  res.nu.assign(res.kept.size(), 0);
  res.eyes.assign(res.kept.size(), {});
  for (int a = 0; a < d.size(); ++a)
    if (!by_bottom[a].empty()) {
      res.nu[inv[a]] = static_cast<int>(by_bottom[a].size());
      res.eyes[inv[a]] = by_bottom[a];
    }
  return res;
}

Diagram anti_slim(const Diagram& d, const NuMap& nu, std::vector<std::vector<ElementId>>* inserted) {
  std::vector<std::vector<ElementId>> up = d.upper_cover_lists();
  if (inserted) inserted->assign(d.size(), {});
  ElementId next = d.size();
  for (int x = 0; x < d.size() && x < static_cast<int>(nu.size()); ++x) {
    if (nu[x] < 0) throw NuDomainError("negative count at element " + std::to_string(x));
    if (nu[x] == 0) continue;
    const auto& uc = d.upper_covers(x);
    if (uc.size() != 2) throw NuDomainError("element " + std::to_string(x) + " is not the bottom of a 4-cell");
    ElementId l = uc[0], r = uc[1];
    ElementId t = d.join(l, r);
    if (!d.covers(l, t) || !d.covers(r, t))
      throw NuDomainError("element " + std::to_string(x) + " is not the bottom of a 4-cell");
    std::vector<ElementId> row{l};
    for (int s = 0; s < nu[x]; ++s) {
      ElementId e = next++;
      up.push_back({t});
      row.push_back(e);
      if (inserted) (*inserted)[x].push_back(e);
    }
    row.push_back(r);
    up[x] = row;
  }
  return Diagram::from_upper_covers(std::move(up));
}

Diagram mirror(const Diagram& d) {
  std::vector<std::vector<ElementId>> up = d.upper_cover_lists();
  for (auto& row : up) std::reverse(row.begin(), row.end());
  return Diagram::from_upper_covers(std::move(up));
}

Permutation jh_permutation(const Diagram& d) {
  auto b = boundary_chains(d);
  const int n = static_cast<int>(b.left.size()) - 1;
  if (static_cast<int>(b.right.size()) - 1 != n) throw NotSlim("boundary chains differ in length");
  std::map<Edge, int> right_index;
  for (int j = 1; j <= n; ++j) right_index[Edge{b.right[j - 1], b.right[j]}] = j;
  Permutation p(n, 0);
  for (int i = 1; i <= n; ++i) {
    Trajectory t = trajectory_through(d, Edge{b.left[i - 1], b.left[i]});
    auto it = right_index.find(t.edges.back());
    if (it == right_index.end()) throw InconsistencyError("trajectory does not end on the right boundary");
    p[i - 1] = it->second;
  }
  return p;
}

Permutation inverse_permutation(const Permutation& p) {
  Permutation q(p.size());
  for (size_t i = 0; i < p.size(); ++i) q[p[i] - 1] = static_cast<int>(i) + 1;
  return q;
}

bool is_similarity(const Diagram& d1, const Diagram& d2, const SimilarityMap& m) {
  const int n = d1.size();
  if (d2.size() != n || static_cast<int>(m.map.size()) != n) return false;
  std::vector<bool> hit(n, false);
  for (ElementId y : m.map) {
    if (y < 0 || y >= n || hit[y]) return false;
    hit[y] = true;
  }
  for (int x = 0; x < n; ++x) {
    std::vector<ElementId> img;
    for (ElementId y : d1.upper_covers(x)) img.push_back(m.map[y]);
    if (m.mirrored) std::reverse(img.begin(), img.end());
    if (img != d2.upper_covers(m.map[x])) return false;
  }
  return true;
}

std::optional<SimilarityMap> similarity(const Diagram& d1, const Diagram& d2) {
  if (d1.size() != d2.size()) return std::nullopt;
  auto c1 = join_coords(d1);
  auto c2 = join_coords(d2);
  std::map<CoordPair, ElementId> at;
  for (int x = 0; x < d2.size(); ++x) at[c2[x]] = x;
  for (bool mirrored : {false, true}) {
    SimilarityMap m;
    m.mirrored = mirrored;
    bool ok = true;
    for (int x = 0; x < d1.size() && ok; ++x) {
      CoordPair c = mirrored ? CoordPair{c1[x].right, c1[x].left} : c1[x];
      auto it = at.find(c);
      if (it == at.end()) ok = false;
      else m.map.push_back(it->second);
    }
    if (ok && is_similarity(d1, d2, m)) return m;
  }
  return std::nullopt;
}

}  // namespace slimlat
