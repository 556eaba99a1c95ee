#include "slimlat/congruence.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

namespace slimlat {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a < b) std::swap(a, b);
    parent[a] = b;
    return true;
  }
};

CongruencePartition to_partition(UnionFind& uf) {
  const int n = static_cast<int>(uf.parent.size());
  CongruencePartition c;
  c.block.resize(n);
  std::vector<int> least(n, -1);
  for (int x = 0; x < n; ++x) {
    int r = uf.find(x);
    if (least[r] < 0) least[r] = x;
    c.block[x] = least[r];
  }
  return c;
}

CongruencePartition restrict_to(const CongruencePartition& c, const std::vector<ElementId>& emb) {
  UnionFind uf(static_cast<int>(emb.size()));
  std::map<ElementId, int> first;
  for (size_t x = 0; x < emb.size(); ++x) {
    auto [it, fresh] = first.emplace(c.block[emb[x]], static_cast<int>(x));
    if (!fresh) uf.unite(it->second, static_cast<int>(x));
  }
  return to_partition(uf);
}

}  // namespace

bool CongruencePartition::leq(const CongruencePartition& o) const {
  for (size_t x = 0; x < block.size(); ++x)
    if (o.block[x] != o.block[block[x]]) return false;
  return true;
}

CongruencePartition generated_congruence(const Diagram& d, const std::vector<std::pair<ElementId, ElementId>>& pairs) {
  const int n = d.size();
  UnionFind uf(n);
  std::deque<std::pair<ElementId, ElementId>> work(pairs.begin(), pairs.end());
  while (!work.empty()) {
    auto [u, v] = work.front();
    work.pop_front();
    if (!uf.unite(u, v)) continue;
    for (int x = 0; x < n; ++x) {
      work.emplace_back(d.join(u, x), d.join(v, x));
      work.emplace_back(d.meet(u, x), d.meet(v, x));
    }
  }
  return to_partition(uf);
}

CongruencePartition principal_congruence(const Diagram& d, Edge p) {
  return generated_congruence(d, {{p.bottom, p.top}});
}

bool is_congruence(const Diagram& d, const CongruencePartition& c) {
  for (int x = 0; x < d.size(); ++x) {
    ElementId r = c.block[x];
    if (r == x) continue;
    for (int z = 0; z < d.size(); ++z)
      if (!c.same(d.join(x, z), d.join(r, z)) || !c.same(d.meet(x, z), d.meet(r, z))) return false;
  }
  return true;
}

CongruencePartition join_congruences(const Diagram& d, const CongruencePartition& a, const CongruencePartition& b) {
  UnionFind uf(d.size());
  for (int x = 0; x < d.size(); ++x) {
    uf.unite(x, a.block[x]);
    uf.unite(x, b.block[x]);
  }
  return to_partition(uf);
}

bool con_geq(const Diagram& d, Edge p, Edge q) { return principal_congruence(d, p).same(q.bottom, q.top); }

JirConPoset jir_con_poset(const Diagram& d) {
  JirConPoset res;
  auto edges = all_edges(d);
  std::map<CongruencePartition, int> index;
  std::vector<CongruencePartition> distinct;
  std::vector<int> cls;
  for (const Edge& e : edges) {
    auto c = principal_congruence(d, e);
    auto [it, fresh] = index.emplace(c, static_cast<int>(distinct.size()));
    if (fresh) distinct.push_back(c);
    cls.push_back(it->second);
  }
  // join irreducible: differs from the join of all principal ones strictly below
  CongruencePartition zero;
  zero.block.resize(d.size());
  std::iota(zero.block.begin(), zero.block.end(), 0);
  std::vector<int> renumber(distinct.size(), -1);
  for (size_t a = 0; a < distinct.size(); ++a) {
    CongruencePartition below = zero;
    for (size_t b = 0; b < distinct.size(); ++b)
      if (b != a && distinct[b].leq(distinct[a])) below = join_congruences(d, below, distinct[b]);
    if (below == distinct[a]) throw InconsistencyError("principal congruence of an edge is join-reducible");
    renumber[a] = static_cast<int>(res.elements.size());
    res.elements.push_back(distinct[a]);
  }
  for (int c : cls) res.edge_class.push_back(renumber[c]);
  const size_t k = res.elements.size();
  res.leq.assign(k, std::vector<bool>(k, false));
  for (size_t a = 0; a < k; ++a)
    for (size_t b = 0; b < k; ++b) res.leq[a][b] = res.elements[a].leq(res.elements[b]);
  return res;
}

std::optional<std::vector<CongruencePartition>> all_congruences(const Diagram& d, size_t limit) {
  std::set<CongruencePartition> prin;
  for (const Edge& e : all_edges(d)) prin.insert(principal_congruence(d, e));
  CongruencePartition zero;
  zero.block.resize(d.size());
  std::iota(zero.block.begin(), zero.block.end(), 0);
  std::set<CongruencePartition> seen{zero};
  std::vector<CongruencePartition> work{zero};
  while (!work.empty()) {
    auto c = work.back();
    work.pop_back();
    for (const auto& p : prin) {
      auto j = join_congruences(d, c, p);
      if (seen.insert(j).second) {
        if (seen.size() > limit) return std::nullopt;
        work.push_back(j);
      }
    }
  }
  return std::vector<CongruencePartition>(seen.begin(), seen.end());
}

// Con r -> Con l is an isomorphism iff (a) every principal congruence of an
// l-edge restricts to the principal congruence of that edge in l, (b) every
// principal congruence of r is generated by an l-edge, (c) containment among
// them is the same in l and in r. Join-irreducibles of Con r are then in
// bijection with those of Con l, and restriction inverts extension.
bool restriction_is_isomorphism(const Diagram& l, const Diagram& r, const std::vector<ElementId>& emb) {
  auto le = all_edges(l);
  std::vector<CongruencePartition> in_l, in_r;
  for (const Edge& e : le) {
    in_l.push_back(principal_congruence(l, e));
    in_r.push_back(principal_congruence(r, Edge{emb[e.bottom], emb[e.top]}));
    if (!(restrict_to(in_r.back(), emb) == in_l.back())) return false;
  }
  std::set<CongruencePartition> from_l(in_r.begin(), in_r.end());
  for (const Edge& e : all_edges(r))
    if (!from_l.count(principal_congruence(r, e))) return false;
  for (size_t a = 0; a < le.size(); ++a)
    for (size_t b = 0; b < le.size(); ++b)
      if (in_l[a].leq(in_l[b]) != in_r[a].leq(in_r[b])) return false;
  return true;
}

namespace {

StrajPoset blocks_of(const Diagram& d, const std::vector<Trajectory>& trajs) {
  StrajPoset s;
  s.block_of.assign(trajs.size(), -1);
  std::map<ElementId, int> hat_block;
  for (size_t u = 0; u < trajs.size(); ++u) {
    if (trajs[u].kind == TrajKind::Hat) {
      auto [it, fresh] = hat_block.emplace(trajs[u].top_edge.top, static_cast<int>(s.blocks.size()));
      if (fresh) s.blocks.push_back({});
      s.block_of[u] = it->second;
    } else {
      s.block_of[u] = static_cast<int>(s.blocks.size());
      s.blocks.push_back({});
    }
    s.blocks[s.block_of[u]].push_back(static_cast<int>(u));
  }
  (void)d;
  const size_t k = s.blocks.size();
  s.sigma_hat.assign(k, std::vector<bool>(k, false));
  return s;
}

void close_order(StrajPoset& s) {
  const size_t k = s.blocks.size();
  s.tau = s.sigma_hat;
  for (size_t a = 0; a < k; ++a) s.tau[a][a] = true;
  for (size_t m = 0; m < k; ++m)
    for (size_t a = 0; a < k; ++a)
      if (s.tau[a][m])
        for (size_t b = 0; b < k; ++b)
          if (s.tau[m][b]) s.tau[a][b] = true;
  for (size_t a = 0; a < k; ++a)
    for (size_t b = a + 1; b < k; ++b)
      if (s.tau[a][b] && s.tau[b][a])
        throw NotPartialOrder("blocks " + std::to_string(a) + " and " + std::to_string(b) + " are mutually related");
}

}  // namespace

StrajPoset straj_poset_definitional(const Diagram& d, const std::vector<Trajectory>& trajs) {
  StrajPoset s = blocks_of(d, trajs);
  for (size_t u = 0; u < trajs.size(); ++u) {
    if (trajs[u].kind != TrajKind::Hat) continue;
    const Edge tu = trajs[u].top_edge;
    for (size_t v = 0; v < trajs.size(); ++v) {
      const Edge tv = trajs[v].top_edge;
      int a = s.block_of[u], b = s.block_of[v];
      if (a != b && d.leq(tu.top, tv.top) && !d.leq(tu.bottom, tv.bottom)) s.sigma_hat[a][b] = true;
    }
  }
  close_order(s);
  return s;
}

StrajPoset straj_poset_geometric(const Replay& rep, const std::vector<Trajectory>& trajs) {
  const Diagram& d = rep.final_diagram();
  StrajPoset s = blocks_of(d, trajs);
  std::vector<TerritoryInfo> info;
  for (const auto& t : trajs) info.push_back(territory_info(rep, t));
  for (size_t u = 0; u < trajs.size(); ++u)
    for (size_t v = 0; v < trajs.size(); ++v) {
      int a = s.block_of[u], b = s.block_of[v];
      if (a != b && is_descendant(rep, info[u], info[v])) s.sigma_hat[a][b] = true;
    }
  close_order(s);
  return s;
}

bool coloring_check(const Diagram& d, const std::vector<Trajectory>& trajs, const StrajPoset& s) {
  const size_t k = s.blocks.size();
  if (s.tau.size() != k) return false;
  for (size_t a = 0; a < k; ++a) {
    if (!s.tau[a][a]) return false;
    for (size_t b = 0; b < k; ++b) {
      if (a != b && s.tau[a][b] && s.tau[b][a]) return false;
      for (size_t c = 0; c < k; ++c)
        if (s.tau[a][b] && s.tau[b][c] && !s.tau[a][c]) return false;
    }
  }
  auto edges = all_edges(d);
  std::map<Edge, int> color;
  for (size_t u = 0; u < trajs.size(); ++u)
    for (const Edge& e : trajs[u].edges) color[e] = s.block_of[u];
  std::vector<CongruencePartition> con;
  for (const Edge& e : edges) {
    if (!color.count(e)) return false;
    con.push_back(principal_congruence(d, e));
  }
  for (size_t p = 0; p < edges.size(); ++p)
    for (size_t q = 0; q < edges.size(); ++q) {
      bool colors = s.tau[color[edges[q]]][color[edges[p]]];
      bool cons = con[p].same(edges[q].bottom, edges[q].top);
      if (colors != cons) return false;
    }
  return true;
}

bool coloring_check(const Diagram& d) {
  auto trajs = trajectories(d);
  return coloring_check(d, trajs, straj_poset_definitional(d, trajs));
}

bool swings(const Diagram& d, Edge p, Edge q) {
  if (p.top != q.top) return false;
  const auto& lc = d.lower_covers(p.top);
  if (lc.size() < 3) return false;
  int i = d.lower_index(q.top, q.bottom);
  return i > 0 && i + 1 < static_cast<int>(lc.size());
}

bool up_persp(const Diagram& d, Edge p, Edge q) {
  return d.join(p.top, q.bottom) == q.top && d.meet(p.top, q.bottom) == p.bottom;
}

bool down_persp(const Diagram& d, Edge p, Edge q) { return up_persp(d, q, p); }

namespace {

struct SwingSearch {
  std::vector<Edge> edges;
  std::vector<int> parent;        // -1 for start edges
  std::vector<StepKind> how;
  std::vector<bool> reached;
};

SwingSearch search(const Diagram& d, Edge p) {
  SwingSearch s;
  s.edges = all_edges(d);
  const size_t m = s.edges.size();
  s.parent.assign(m, -1);
  s.how.assign(m, StepKind::DownPersp);
  s.reached.assign(m, false);
  std::deque<int> q;
  for (size_t r = 0; r < m; ++r)
    if (up_persp(d, p, s.edges[r])) {
      s.reached[r] = true;
      q.push_back(static_cast<int>(r));
    }
  while (!q.empty()) {
    int a = q.front();
    q.pop_front();
    for (size_t b = 0; b < m; ++b) {
      if (s.reached[b]) continue;
      bool dn = down_persp(d, s.edges[a], s.edges[b]);
      bool sw = !dn && swings(d, s.edges[a], s.edges[b]);
      if (!dn && !sw) continue;
      s.reached[b] = true;
      s.parent[b] = a;
      s.how[b] = dn ? StepKind::DownPersp : StepKind::Swing;
      q.push_back(static_cast<int>(b));
    }
  }
  return s;
}

}  // namespace

std::vector<bool> swing_reachable(const Diagram& d, Edge p) { return search(d, p).reached; }

SwingResult swing_decide(const Diagram& d, Edge p, Edge q) {
  SwingSearch s = search(d, p);
  auto it = std::find(s.edges.begin(), s.edges.end(), q);
  SwingResult res;
  if (it == s.edges.end()) return res;
  int at = static_cast<int>(it - s.edges.begin());
  if (!s.reached[at]) return res;
  res.holds = true;
  std::vector<std::pair<StepKind, int>> raw;
  while (s.parent[at] >= 0) {
    raw.push_back({s.how[at], at});
    at = s.parent[at];
  }
  std::reverse(raw.begin(), raw.end());
  SwingWitness w;
  w.r = s.edges[at];
  // merge runs of the same kind, then make the chain open with a down step
  std::vector<std::pair<StepKind, Edge>> chain;
  for (const auto& [k, idx] : raw) {
    if (!chain.empty() && chain.back().first == k) chain.back().second = s.edges[idx];
    else chain.push_back({k, s.edges[idx]});
  }
  if (!chain.empty() && chain.front().first == StepKind::Swing) chain.insert(chain.begin(), {StepKind::DownPersp, w.r});
  w.chain = chain;
  res.witness = w;
  return res;
}

bool check_witness(const Diagram& d, Edge p, Edge q, const SwingWitness& w) {
  if (!up_persp(d, p, w.r)) return false;
  Edge cur = w.r;
  for (size_t i = 0; i < w.chain.size(); ++i) {
    const auto& [k, e] = w.chain[i];
    StepKind want = i % 2 == 0 ? StepKind::DownPersp : StepKind::Swing;
    if (k != want) return false;
    if (k == StepKind::DownPersp ? !down_persp(d, cur, e) : !swings(d, cur, e)) return false;
    cur = e;
  }
  return cur == q;
}

}  // namespace slimlat
