#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "slimlat/diagram.hpp"
#include "slimlat/multifork.hpp"
#include "slimlat/slimming.hpp"
#include "support/corpus.hpp"
#include "support/oracles.hpp"

using namespace slimlat;

namespace {

const char* kB2 = "elements 4\nup 0: 1 2\nup 1: 3\nup 2: 3\nup 3:\n";
const char* kN5 = "elements 5\nup 0: 1 3\nup 1: 2\nup 2: 4\nup 3: 4\nup 4:\n";
const char* kM3 = "elements 5\nup 0: 1 2 3\nup 1: 4\nup 2: 4\nup 3: 4\nup 4:\n";

std::vector<Diagram> small_corpus() {
  std::vector<Diagram> v{parse_diagram(kB2), parse_diagram(kN5), parse_diagram(kM3), grid(2, 3),
                         chain_diagram(4)};
  for (auto& s : corpus::slim_rectangular(25, 100)) v.push_back(s.d);
  for (auto& d : corpus::planar_semimodular(25, 3)) v.push_back(d);
  return v;
}

}  // namespace

TEST_CASE("parse: singleton and B2") {
  Diagram one = parse_diagram("elements 1\nup 0:\n");
  CHECK(one.size() == 1);
  CHECK(one.bottom() == one.top());

  Diagram b2 = parse_diagram("# square\nelements 4\n\nup 0: 1 2   # a left of b\nup 1: 3\nup 2: 3\nup 3:\n");
  CHECK(b2.size() == 4);
  CHECK(b2.bottom() == 0);
  CHECK(b2.top() == 3);
  CHECK(b2.join(1, 2) == 3);
  CHECK(b2.meet(1, 2) == 0);
  CHECK(serialize_diagram(parse_diagram(serialize_diagram(b2))) == serialize_diagram(b2));
}

TEST_CASE("parse: syntax and validation errors") {
  CHECK_THROWS_AS(parse_diagram("elements x\n"), ParseError);
  CHECK_THROWS_AS(parse_diagram("elements 2\nup 0 1\n"), ParseError);
  CHECK_THROWS_AS(parse_diagram("elements 2\nup 0: 5\nup 1:\n"), ParseError);
  // two minimal elements
  CHECK_THROWS_AS(parse_diagram("elements 3\nup 0: 2\nup 1: 2\nup 2:\n"), ValidationError);
  // a transitive edge is not a cover
  CHECK_THROWS_AS(parse_diagram("elements 3\nup 0: 1 2\nup 1: 2\nup 2:\n"), ValidationError);
  // cycle
  CHECK_THROWS_AS(parse_diagram("elements 3\nup 0: 1\nup 1: 2\nup 2: 1\n"), ValidationError);
  // 0 < a,b < c,d without joins
  CHECK_THROWS_AS(
      parse_diagram("elements 6\nup 0: 1 2\nup 1: 3 4\nup 2: 3 4\nup 3: 5\nup 4: 5\nup 5:\n"), ValidationError);
}

TEST_CASE("parse: only the two planar orientations of a grid validate") {
  Diagram g = grid(2, 2);
  std::vector<ElementId> forks;
  for (int x = 0; x < g.size(); ++x)
    if (g.upper_covers(x).size() == 2) forks.push_back(x);
  REQUIRE(forks.size() == 4);
  int valid = 0;
  for (int mask = 0; mask < 16; ++mask) {
    auto up = g.upper_cover_lists();
    for (int i = 0; i < 4; ++i)
      if (mask >> i & 1) std::swap(up[forks[i]][0], up[forks[i]][1]);
    bool ok = true;
    try {
      Diagram d = Diagram::from_upper_covers(up);
      CHECK(oracle::similar(d, g));
    } catch (const ValidationError&) {
      ok = false;
    }
    valid += ok;
  }
  CHECK(valid == 2);
}

TEST_CASE("join and meet agree with the order matrix") {
  for (const Diagram& d : small_corpus()) {
    if (d.size() > 40) continue;
    auto le = oracle::order(d);
    for (int x = 0; x < d.size(); ++x)
      for (int y = 0; y < d.size(); ++y) {
        REQUIRE(d.leq(x, y) == le[x][y]);
        REQUIRE(d.join(x, y) == oracle::join(le, x, y));
        REQUIRE(d.meet(x, y) == oracle::meet(le, x, y));
      }
  }
  Diagram n5 = parse_diagram(kN5);
  CHECK(n5.meet(2, 3) == 0);
  CHECK(n5.join(1, 3) == 4);
}

TEST_CASE("lattice axioms on small diagrams") {
  for (const Diagram& d : small_corpus()) {
    if (d.size() > 10) continue;
    const int n = d.size();
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        CHECK(d.join(x, d.meet(x, y)) == x);
        CHECK(d.meet(x, d.join(x, y)) == x);
        CHECK(d.join(x, y) == d.join(y, x));
        for (int z = 0; z < n; ++z) {
          CHECK(d.join(d.join(x, y), z) == d.join(x, d.join(y, z)));
          CHECK(d.meet(d.meet(x, y), z) == d.meet(x, d.meet(y, z)));
        }
      }
  }
}

TEST_CASE("semimodularity and slimness") {
  CHECK(is_semimodular(grid(3, 2)));
  CHECK_FALSE(is_semimodular(parse_diagram(kN5)));
  CHECK(is_semimodular(parse_diagram(kM3)));
  CHECK(is_slim(grid(1, 1)));
  CHECK_FALSE(is_slim(parse_diagram(kM3)));

  // one fork into the lowest cell of the 3x3 grid
  Diagram g = grid(2, 2);
  FourCell cell;
  REQUIRE(cell_at(g, 0, &cell));
  Diagram f = multifork_extend(g, cell, 1);
  CHECK(f.size() == 12);
  CHECK(oracle::is_semimodular(f));
  CHECK(oracle::is_slim(f));
  CHECK(is_slim(f));
  CHECK(jir_two_chains(f));
  CHECK_FALSE(has_cover_preserving_m3(f));

  for (const Diagram& d : small_corpus()) {
    if (d.size() > 40) continue;
    bool semi = oracle::is_semimodular(d);
    REQUIRE(is_semimodular(d) == semi);
    if (semi) CHECK(is_slim(d) == oracle::is_slim(d));
  }
}

TEST_CASE("rectangularity and corners") {
  for (int m = 1; m <= 3; ++m)
    for (int n = 1; n <= 3; ++n) {
      Diagram g = grid(m, n);
      CHECK(is_rectangular(g));
      // the corners are the doubly irreducible boundary elements (m,0), (0,n)
      auto [lc, rc] = corners(g);
      CHECK(lc == m);
      CHECK(rc == n * (m + 1));
      CHECK(g.is_doubly_irreducible(lc));
      CHECK(g.is_doubly_irreducible(rc));
    }
  CHECK_FALSE(is_rectangular(chain_diagram(3)));
  CHECK(is_rectangular(parse_diagram(kB2)));
  CHECK(corners(parse_diagram(kB2)) == std::pair<ElementId, ElementId>{1, 2});
}

TEST_CASE("left_of") {
  Diagram b2 = parse_diagram(kB2);
  CHECK(b2.left_of(1, 2));
  CHECK_FALSE(b2.left_of(2, 1));
  CHECK_THROWS_AS(b2.left_of(0, 3), NotIncomparable);

  for (const Diagram& d : small_corpus()) {
    const int n = d.size();
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        if (!d.incomparable(x, y)) continue;
        REQUIRE(d.left_of(x, y) != d.left_of(y, x));
        for (int z = 0; z < n; ++z)
          if (d.incomparable(y, z) && d.incomparable(x, z) && d.left_of(x, y) && d.left_of(y, z))
            REQUIRE(d.left_of(x, z));
      }
  }
}

TEST_CASE("boundary chains") {
  Diagram c = chain_diagram(3);
  auto bc = boundary_chains(c);
  CHECK(bc.left == bc.right);
  CHECK(bc.left.size() == 4);
  auto b2 = boundary_chains(parse_diagram(kB2));
  CHECK(b2.left == std::vector<ElementId>{0, 1, 3});
  CHECK(b2.right == std::vector<ElementId>{0, 2, 3});

  for (const Diagram& d : small_corpus()) {
    if (!is_semimodular(d) || !is_slim(d)) continue;
    auto b = boundary_chains(d);
    for (ElementId j : join_irreducibles(d)) {
      bool on = std::count(b.left.begin(), b.left.end(), j) + std::count(b.right.begin(), b.right.end(), j) > 0;
      CHECK(on);
    }
  }
}

TEST_CASE("a maximal chain separates only through its elements") {
  std::mt19937_64 rng(11);
  for (const auto& s : corpus::slim_rectangular(30, 500)) {
    const Diagram& d = s.d;
    if (d.size() > 30) continue;
    auto c = corpus::random_chain(d, rng);
    for (int x = 0; x < d.size(); ++x)
      for (int y = 0; y < d.size(); ++y) {
        if (!d.leq(x, y)) continue;
        bool opposite = (corpus::strictly_left(d, x, c) && corpus::strictly_right(d, y, c)) ||
                        (corpus::strictly_right(d, x, c) && corpus::strictly_left(d, y, c));
        if (!opposite) continue;
        bool through = false;
        for (ElementId z : c) through = through || (d.leq(x, z) && d.leq(z, y));
        CHECK(through);
      }
  }
}

TEST_CASE("glued sums") {
  auto c = glued_sum_decompose(chain_diagram(3));
  REQUIRE(c.components.size() == 1);
  CHECK(c.kinds[0] == ComponentKind::ChainOfNarrows);

  auto b = glued_sum_decompose(parse_diagram(kB2));
  REQUIRE(b.components.size() == 1);
  CHECK(b.kinds[0] == ComponentKind::GluedSumIndecomposable);

  Diagram bb = glued_sum({parse_diagram(kB2), parse_diagram(kB2)});
  CHECK(bb.size() == 7);
  auto g = glued_sum_decompose(bb);
  REQUIRE(g.components.size() == 2);
  CHECK(g.kinds[0] == ComponentKind::GluedSumIndecomposable);
  CHECK(g.kinds[1] == ComponentKind::GluedSumIndecomposable);
  // the shared element is the only narrows besides 0 and 1
  int narrows = 0;
  for (int x = 0; x < bb.size(); ++x) {
    bool all = true;
    for (int y = 0; y < bb.size(); ++y) all = all && bb.comparable(x, y);
    narrows += all;
  }
  CHECK(narrows == 3);

  for (const Diagram& d : small_corpus()) {
    auto dec = glued_sum_decompose(d);
    Diagram back = glued_sum(dec.components);
    CHECK(oracle::similarity(back, d).has_value());
    for (size_t i = 0; i < dec.components.size(); ++i)
      if (dec.kinds[i] == ComponentKind::GluedSumIndecomposable) CHECK(dec.components[i].size() >= 4);
  }
}

TEST_CASE("a cover-preserving sublattice is the region of its boundary chains") {
  Diagram rh = read_diagram_file(SLIMLAT_TEST_DATA "/counter_rhat.slat");
  Diagram l = read_diagram_file(SLIMLAT_TEST_DATA "/counter_l.slat");
  std::vector<ElementId> emb = {0, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 18};
  auto b = boundary_chains(l);
  std::vector<ElementId> left, right;
  for (ElementId x : b.left) left.push_back(emb[x]);
  for (ElementId x : b.right) right.push_back(emb[x]);
  std::vector<bool> in(rh.size(), false);
  for (ElementId y : emb) in[y] = true;
  for (int z = 0; z < rh.size(); ++z) {
    bool region = !corpus::strictly_left(rh, z, left) && !corpus::strictly_right(rh, z, right);
    CHECK(region == in[z]);
  }
}

TEST_CASE("canonical form and relabeling") {
  std::mt19937_64 rng(3);
  for (const Diagram& d : small_corpus()) {
    std::vector<ElementId> perm(d.size());
    for (int i = 0; i < d.size(); ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    Diagram r = relabel(d, perm);
    CHECK(canonical_form(r) == canonical_form(d));
    auto m = oracle::similarity(d, r);
    REQUIRE(m.has_value());
    CHECK(*m == perm);
  }
}

TEST_CASE("file io") {
  CHECK_THROWS_AS(read_diagram_file("/nonexistent/x.slat"), IoError);
}
