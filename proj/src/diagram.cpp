#include "slimlat/diagram.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <numeric>
#include <queue>
#include <sstream>

namespace slimlat {

BitMatrix::BitMatrix(int n) : n_(n), words_((n + 63) / 64), bits_(static_cast<size_t>(n) * ((n + 63) / 64), 0) {}

void BitMatrix::or_row(int dst, int src) {
  uint64_t* d = row(dst);
  const uint64_t* s = row(src);
  for (int w = 0; w < words_; ++w) d[w] |= s[w];
}

int BitMatrix::row_count(int r) const {
  int c = 0;
  const uint64_t* p = row(r);
  for (int w = 0; w < words_; ++w) c += std::popcount(p[w]);
  return c;
}

namespace {

std::string str(const char* fmt_prefix, int a) { return std::string(fmt_prefix) + std::to_string(a); }

}  // namespace

Diagram Diagram::from_upper_covers(std::vector<std::vector<ElementId>> upper) {
  Diagram d;
  const int n = static_cast<int>(upper.size());
  if (n == 0) throw ValidationError("empty diagram");
  d.n_ = n;
  d.up_ = std::move(upper);
  d.down_.assign(n, {});

  for (int x = 0; x < n; ++x) {
    std::vector<ElementId> seen = d.up_[x];
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
      throw ValidationError(str("repeated upper cover of element ", x));
    for (ElementId y : d.up_[x]) {
      if (y < 0 || y >= n) throw ValidationError(str("cover id out of range at element ", x));
      if (y == x) throw ValidationError(str("element covers itself: ", x));
      d.down_[y].push_back(x);
    }
  }

  // topological order (Kahn), bottom first
  std::vector<int> indeg(n, 0);
  for (int x = 0; x < n; ++x) indeg[x] = static_cast<int>(d.down_[x].size());
  std::vector<ElementId> topo;
  topo.reserve(n);
  {
    std::vector<ElementId> stack;
    for (int x = n - 1; x >= 0; --x)
      if (indeg[x] == 0) stack.push_back(x);
    std::vector<int> deg = indeg;
    std::queue<ElementId> q;
    for (int x = 0; x < n; ++x)
      if (deg[x] == 0) q.push(x);
    while (!q.empty()) {
      ElementId x = q.front();
      q.pop();
      topo.push_back(x);
      for (ElementId y : d.up_[x])
        if (--deg[y] == 0) q.push(y);
    }
  }
  if (static_cast<int>(topo.size()) != n) throw ValidationError("cover relation has a cycle");

  int nbottom = 0, ntop = 0;
  for (int x = 0; x < n; ++x) {
    if (d.down_[x].empty()) {
      ++nbottom;
      d.bottom_ = x;
    }
    if (d.up_[x].empty()) {
      ++ntop;
      d.top_ = x;
    }
  }
  if (nbottom != 1) throw ValidationError("not exactly one minimal element");
  if (ntop != 1) throw ValidationError("not exactly one maximal element");

  d.height_.assign(n, 0);
  for (ElementId x : topo)
    for (ElementId y : d.up_[x]) d.height_[y] = std::max(d.height_[y], d.height_[x] + 1);

  // reachability: leq_(x, y) iff x <= y
  d.leq_ = BitMatrix(n);
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    ElementId x = *it;
    d.leq_.set(x, x);
    for (ElementId y : d.up_[x]) d.leq_.or_row(x, y);
  }
  d.cov_ = BitMatrix(n);
  for (int x = 0; x < n; ++x) {
    for (ElementId y : d.up_[x]) {
      for (ElementId z : d.up_[x]) {
        if (z != y && d.leq_.get(z, y))
          throw ValidationError("listed upper cover " + std::to_string(y) + " of " + std::to_string(x) +
                                " is not a cover");
      }
      d.cov_.set(x, y);
    }
  }

  // joins and meets, computed in a linear-extension index space
  std::vector<int> pos(n);
  for (int i = 0; i < n; ++i) pos[topo[i]] = i;
  BitMatrix ups(n), downs(n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (d.leq_.get(x, y)) {
        ups.set(x, pos[y]);
        downs.set(y, n - 1 - pos[x]);
      }
  const int W = ups.words();
  std::vector<uint64_t> tmp(W);
  d.join_.assign(static_cast<size_t>(n) * n, -1);
  d.meet_.assign(static_cast<size_t>(n) * n, -1);
  auto extreme = [&](const BitMatrix& m, ElementId x, ElementId y, bool upper) -> ElementId {
    const uint64_t* a = m.row(x);
    const uint64_t* b = m.row(y);
    int first = -1;
    for (int w = 0; w < W; ++w) {
      tmp[w] = a[w] & b[w];
      if (first < 0 && tmp[w]) first = w * 64 + std::countr_zero(tmp[w]);
    }
    if (first < 0) return -1;
    ElementId e = upper ? topo[first] : topo[n - 1 - first];
    const uint64_t* c = m.row(e);
    for (int w = 0; w < W; ++w)
      if (c[w] != tmp[w]) return -1;
    return e;
  };
  for (int x = 0; x < n; ++x) {
    for (int y = x; y < n; ++y) {
      ElementId j = extreme(ups, x, y, true);
      ElementId m = extreme(downs, x, y, false);
      if (j < 0 || m < 0)
        throw ValidationError("not a lattice: elements " + std::to_string(x) + " and " + std::to_string(y) +
                              " lack a " + (j < 0 ? "join" : "meet"));
      d.join_[d.idx(x, y)] = d.join_[d.idx(y, x)] = j;
      d.meet_[d.idx(x, y)] = d.meet_[d.idx(y, x)] = m;
    }
  }

  // lower cover order, read off the upper cover order at the meet
  auto first_upper_below = [&](ElementId m, ElementId a) {
    const auto& u = d.up_[m];
    for (size_t i = 0; i < u.size(); ++i)
      if (d.leq_.get(u[i], a)) return static_cast<int>(i);
    return -1;
  };
  auto meet_left = [&](ElementId a, ElementId b) {
    ElementId m = d.meet(a, b);
    return first_upper_below(m, a) < first_upper_below(m, b);
  };
  for (int z = 0; z < n; ++z) {
    auto& lc = d.down_[z];
    std::sort(lc.begin(), lc.end(), [&](ElementId a, ElementId b) {
      if (a == b) return false;
      return meet_left(a, b);
    });
    for (size_t i = 0; i < lc.size(); ++i)
      for (size_t j = i + 1; j < lc.size(); ++j)
        if (!meet_left(lc[i], lc[j]))
          throw ValidationError("lower covers of " + std::to_string(z) + " admit no consistent left-right order");
  }

  // left-of relation from the definition (lower covers of the join),
  // cross-checked with the dual reading (upper covers of the meet)
  d.left_ = BitMatrix(n);
  auto first_lower_above = [&](ElementId z, ElementId a) {
    const auto& l = d.down_[z];
    for (size_t i = 0; i < l.size(); ++i)
      if (d.leq_.get(a, l[i])) return static_cast<int>(i);
    return -1;
  };
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (x == y || d.comparable(x, y)) continue;
      ElementId z = d.join(x, y);
      int ix = first_lower_above(z, x);
      int iy = first_lower_above(z, y);
      bool by_join = ix < iy;
      if (by_join != meet_left(x, y))
        throw ValidationError("left-right order of " + std::to_string(x) + " and " + std::to_string(y) +
                              " differs between join and meet");
      if (by_join) d.left_.set(x, y);
    }
  }
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (!d.left_.get(x, y)) continue;
      if (d.left_.get(y, x)) throw ValidationError("left-of relation is not antisymmetric");
      const uint64_t* rx = d.left_.row(x);
      const uint64_t* ry = d.left_.row(y);
      for (int w = 0; w < d.left_.words(); ++w)
        if (ry[w] & ~rx[w]) throw ValidationError("left-of relation is not transitive");
    }
  }
  return d;
}

bool Diagram::left_of(ElementId x, ElementId y) const {
  if (comparable(x, y))
    throw NotIncomparable("elements " + std::to_string(x) + " and " + std::to_string(y) + " are comparable");
  return left_.get(x, y);
}

int Diagram::lower_index(ElementId x, ElementId c) const {
  const auto& l = down_[x];
  auto it = std::find(l.begin(), l.end(), c);
  return it == l.end() ? -1 : static_cast<int>(it - l.begin());
}

int Diagram::upper_index(ElementId x, ElementId c) const {
  const auto& u = up_[x];
  auto it = std::find(u.begin(), u.end(), c);
  return it == u.end() ? -1 : static_cast<int>(it - u.begin());
}

// ---------------------------------------------------------------- text io

Diagram parse_diagram(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  int n = -1;
  std::vector<std::vector<ElementId>> up;
  std::vector<bool> given;
  auto fail = [&](const std::string& msg) { throw ParseError("line " + std::to_string(lineno) + ": " + msg); };
  auto parse_int = [&](const std::string& tok) {
    if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](unsigned char c) { return std::isdigit(c); }))
      fail("expected a non-negative integer, got '" + tok + "'");
    try {
      return std::stoi(tok);
    } catch (...) {
      fail("integer out of range: '" + tok + "'");
    }
    return 0;
  };
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw)) continue;
    if (kw == "elements") {
      if (n >= 0) fail("duplicate 'elements' line");
      std::string tok;
      if (!(ls >> tok)) fail("missing element count");
      n = parse_int(tok);
      if (n <= 0) fail("element count must be positive");
      std::string extra;
      if (ls >> extra) fail("trailing text after element count");
      up.assign(n, {});
      given.assign(n, false);
    } else if (kw == "up") {
      if (n < 0) fail("'up' before 'elements'");
      std::string head;
      if (!(ls >> head)) fail("missing element id");
      std::string rest;
      if (head.back() == ':') {
        head.pop_back();
      } else {
        std::string colon;
        if (!(ls >> colon) || colon != ":") fail("expected ':' after element id");
      }
      int id = parse_int(head);
      if (id >= n) fail("element id out of range");
      if (given[id]) fail("duplicate 'up' line for element " + std::to_string(id));
      given[id] = true;
      std::string tok;
      while (ls >> tok) {
        int c = parse_int(tok);
        if (c >= n) fail("cover id out of range");
        up[id].push_back(c);
      }
    } else {
      fail("unknown keyword '" + kw + "'");
    }
  }
  if (n < 0) throw ParseError("missing 'elements' line");
  return Diagram::from_upper_covers(std::move(up));
}

std::string serialize_diagram(const Diagram& d) {
  std::ostringstream out;
  out << "elements " << d.size() << "\n";
  for (int x = 0; x < d.size(); ++x) {
    out << "up " << x << ":";
    for (ElementId y : d.upper_covers(x)) out << ' ' << y;
    out << "\n";
  }
  return out.str();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << text;
  if (!out) throw IoError("write failed: " + path);
}

Diagram read_diagram_file(const std::string& path) { return parse_diagram(read_text_file(path)); }

// ---------------------------------------------------------------- predicates

bool is_semimodular(const Diagram& d) {
  const int n = d.size();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (a == b) continue;
      if (d.covers(d.meet(a, b), a) && !d.covers(b, d.join(a, b))) return false;
    }
  return true;
}

std::vector<ElementId> join_irreducibles(const Diagram& d) {
  std::vector<ElementId> j;
  for (int x = 0; x < d.size(); ++x)
    if (d.is_join_irreducible(x)) j.push_back(x);
  return j;
}

bool jir_two_chains(const Diagram& d) {
  // width <= 2 iff the incomparability graph is bipartite
  auto j = join_irreducibles(d);
  const int k = static_cast<int>(j.size());
  std::vector<int> color(k, -1);
  for (int s = 0; s < k; ++s) {
    if (color[s] >= 0) continue;
    color[s] = 0;
    std::vector<int> stack{s};
    while (!stack.empty()) {
      int a = stack.back();
      stack.pop_back();
      for (int b = 0; b < k; ++b) {
        if (b == a || d.comparable(j[a], j[b])) continue;
        if (color[b] < 0) {
          color[b] = 1 - color[a];
          stack.push_back(b);
        } else if (color[b] == color[a]) {
          return false;
        }
      }
    }
  }
  return true;
}

bool has_cover_preserving_m3(const Diagram& d) {
  for (int z = 0; z < d.size(); ++z) {
    const auto& l = d.lower_covers(z);
    const size_t k = l.size();
    for (size_t a = 0; a < k; ++a)
      for (size_t b = a + 1; b < k; ++b) {
        ElementId o = d.meet(l[a], l[b]);
        if (!d.covers(o, l[a]) || !d.covers(o, l[b])) continue;
        for (size_t c = b + 1; c < k; ++c)
          if (d.covers(o, l[c])) return true;
      }
  }
  return false;
}

bool is_slim(const Diagram& d) {
  bool two_chains = jir_two_chains(d);
  if (!is_semimodular(d)) return two_chains;
  bool no_m3 = !has_cover_preserving_m3(d);
  if (two_chains != no_m3)
    throw InconsistencyError("slimness criteria disagree (two chains: " + std::to_string(two_chains) +
                             ", no diamond: " + std::to_string(no_m3) + ")");
  return two_chains;
}

bool is_distributive(const Diagram& d) {
  const int n = d.size();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        if (d.meet(x, d.join(y, z)) != d.join(d.meet(x, y), d.meet(x, z))) return false;
  return true;
}

BoundaryChains boundary_chains(const Diagram& d) {
  BoundaryChains b;
  ElementId x = d.bottom();
  b.left.push_back(x);
  while (!d.upper_covers(x).empty()) {
    x = d.upper_covers(x).front();
    b.left.push_back(x);
  }
  x = d.bottom();
  b.right.push_back(x);
  while (!d.upper_covers(x).empty()) {
    x = d.upper_covers(x).back();
    b.right.push_back(x);
  }
  return b;
}

std::pair<ElementId, ElementId> corners(const Diagram& d) {
  auto b = boundary_chains(d);
  auto interior_di = [&](const std::vector<ElementId>& c) {
    std::vector<ElementId> r;
    for (size_t i = 1; i + 1 < c.size(); ++i)
      if (d.is_doubly_irreducible(c[i])) r.push_back(c[i]);
    return r;
  };
  auto l = interior_di(b.left);
  auto r = interior_di(b.right);
  if (l.size() != 1 || r.size() != 1) return {-1, -1};
  if (d.meet(l[0], r[0]) != d.bottom() || d.join(l[0], r[0]) != d.top()) return {-1, -1};
  return {l[0], r[0]};
}

bool is_rectangular(const Diagram& d) { return corners(d).first >= 0; }

bool left_of_chain(const Diagram& d, ElementId z, const std::vector<ElementId>& chain) {
  for (ElementId c : chain) {
    if (c == z) return true;
    if (d.incomparable(z, c) && d.left_of(c, z)) return false;
  }
  return true;
}

bool right_of_chain(const Diagram& d, ElementId z, const std::vector<ElementId>& chain) {
  for (ElementId c : chain) {
    if (c == z) return true;
    if (d.incomparable(z, c) && d.left_of(z, c)) return false;
  }
  return true;
}

// ---------------------------------------------------------------- glued sums

bool is_narrows(const Diagram& d, ElementId x) {
  for (int y = 0; y < d.size(); ++y)
    if (!d.comparable(x, y)) return false;
  return true;
}

Diagram induced_subdiagram(const Diagram& d, const std::vector<ElementId>& elems, std::vector<ElementId>* map) {
  std::vector<ElementId> sorted = elems;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<ElementId> inv(d.size(), -1);
  for (size_t i = 0; i < sorted.size(); ++i) inv[sorted[i]] = static_cast<ElementId>(i);
  std::vector<std::vector<ElementId>> up(sorted.size());
  // covers of the subposet: y above x in the set with nothing of the set in between
  for (size_t i = 0; i < sorted.size(); ++i) {
    ElementId x = sorted[i];
    std::vector<ElementId> cands;
    for (ElementId y : sorted)
      if (d.lt(x, y)) {
        bool cover = true;
        for (ElementId z : sorted)
          if (z != x && z != y && d.lt(x, z) && d.lt(z, y)) {
            cover = false;
            break;
          }
        if (cover) cands.push_back(y);
      }
    // left to right: by the left-of relation of the ambient diagram
    std::sort(cands.begin(), cands.end(), [&](ElementId a, ElementId b) { return a != b && d.left_of(a, b); });
    for (ElementId y : cands) up[i].push_back(inv[y]);
  }
  if (map) *map = sorted;
  return Diagram::from_upper_covers(std::move(up));
}

Diagram interval_subdiagram(const Diagram& d, ElementId a, ElementId b, std::vector<ElementId>* map) {
  std::vector<ElementId> elems;
  for (int z = 0; z < d.size(); ++z)
    if (d.leq(a, z) && d.leq(z, b)) elems.push_back(z);
  return induced_subdiagram(d, elems, map);
}

GluedSumDecomposition glued_sum_decompose(const Diagram& d) {
  GluedSumDecomposition g;
  std::vector<ElementId> narrows;
  for (int x = 0; x < d.size(); ++x)
    if (is_narrows(d, x)) narrows.push_back(x);
  std::sort(narrows.begin(), narrows.end(), [&](ElementId a, ElementId b) { return d.height(a) < d.height(b); });
  size_t i = 0;
  while (i + 1 < narrows.size()) {
    ElementId lo = narrows[i];
    if (d.covers(lo, narrows[i + 1])) {
      size_t j = i + 1;
      while (j + 1 < narrows.size() && d.covers(narrows[j], narrows[j + 1])) ++j;
      std::vector<ElementId> map;
      g.components.push_back(interval_subdiagram(d, lo, narrows[j], &map));
      g.kinds.push_back(ComponentKind::ChainOfNarrows);
      g.element_maps.push_back(map);
      i = j;
    } else {
      std::vector<ElementId> map;
      g.components.push_back(interval_subdiagram(d, lo, narrows[i + 1], &map));
      g.kinds.push_back(ComponentKind::GluedSumIndecomposable);
      g.element_maps.push_back(map);
      ++i;
    }
  }
  return g;
}

Diagram glued_sum(const std::vector<Diagram>& parts) {
  if (parts.empty()) return Diagram::from_upper_covers({{}});
  std::vector<std::vector<ElementId>> up;
  ElementId glue = -1;  // id of the current top in the result
  for (const Diagram& p : parts) {
    std::vector<ElementId> map(p.size());
    ElementId next = static_cast<ElementId>(up.size());
    for (int x = 0; x < p.size(); ++x) {
      if (x == p.bottom() && glue >= 0) {
        map[x] = glue;
      } else {
        map[x] = next++;
      }
    }
    up.resize(next);
    for (int x = 0; x < p.size(); ++x)
      for (ElementId y : p.upper_covers(x)) up[map[x]].push_back(map[y]);
    glue = map[p.top()];
  }
  return Diagram::from_upper_covers(std::move(up));
}

Diagram relabel(const Diagram& d, const std::vector<ElementId>& perm) {
  std::vector<std::vector<ElementId>> up(d.size());
  for (int x = 0; x < d.size(); ++x)
    for (ElementId y : d.upper_covers(x)) up[perm[x]].push_back(perm[y]);
  return Diagram::from_upper_covers(std::move(up));
}

Diagram chain_diagram(int length) {
  std::vector<std::vector<ElementId>> up(length + 1);
  for (int i = 0; i < length; ++i) up[i].push_back(i + 1);
  return Diagram::from_upper_covers(std::move(up));
}

std::vector<ElementId> canonical_order(const Diagram& d) {
  std::vector<ElementId> order;
  std::vector<bool> seen(d.size(), false);
  std::queue<ElementId> q;
  q.push(d.bottom());
  seen[d.bottom()] = true;
  while (!q.empty()) {
    ElementId x = q.front();
    q.pop();
    order.push_back(x);
    for (ElementId y : d.upper_covers(x))
      if (!seen[y]) {
        seen[y] = true;
        q.push(y);
      }
  }
  return order;
}

std::vector<std::vector<ElementId>> canonical_form(const Diagram& d) {
  auto order = canonical_order(d);
  std::vector<ElementId> label(d.size());
  for (size_t k = 0; k < order.size(); ++k) label[order[k]] = static_cast<ElementId>(k);
  std::vector<std::vector<ElementId>> form(d.size());
  for (size_t k = 0; k < order.size(); ++k)
    for (ElementId y : d.upper_covers(order[k])) form[k].push_back(label[y]);
  return form;
}

}  // namespace slimlat
