#include "slimlat/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "slimlat/coords.hpp"
#include "slimlat/slimming.hpp"
#include "slimlat/trajectory.hpp"

namespace slimlat {

// ---------------------------------------------------------------- Rational

Rational::Rational(int64_t n, int64_t d) {
  if (d == 0) throw InconsistencyError("zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  int64_t g = std::gcd(n < 0 ? -n : n, d);
  if (g == 0) g = 1;
  n_ = n / g;
  d_ = d / g;
}

Rational Rational::operator+(const Rational& o) const { return Rational(n_ * o.d_ + o.n_ * d_, d_ * o.d_); }
Rational Rational::operator-(const Rational& o) const { return Rational(n_ * o.d_ - o.n_ * d_, d_ * o.d_); }
Rational Rational::operator*(const Rational& o) const { return Rational(n_ * o.n_, d_ * o.d_); }
Rational Rational::operator/(const Rational& o) const { return Rational(n_ * o.d_, d_ * o.n_); }
bool Rational::operator<(const Rational& o) const {
  return static_cast<__int128>(n_) * o.d_ < static_cast<__int128>(o.n_) * d_;
}

Rational Rational::from_double(double x) {
  double r = std::round(x);
  if (std::abs(x - r) < 1e-12) return Rational(static_cast<int64_t>(r));
  constexpr int64_t scale = 1000000;
  return Rational(static_cast<int64_t>(std::llround(x * scale)), scale);
}

std::string Rational::str() const { return d_ == 1 ? std::to_string(n_) : std::to_string(n_) + "/" + std::to_string(d_); }

double Placement::x(ElementId v) const { return delta_re + (pos[v].b.to_double() - pos[v].a.to_double()) / std::sqrt(2.0); }
double Placement::y(ElementId v) const { return delta_im + (pos[v].a.to_double() + pos[v].b.to_double()) / std::sqrt(2.0); }

// ---------------------------------------------------------------- placement

std::vector<std::pair<int, int>> unit_coordinates(const Diagram& d) {
  auto fs = full_slimming(d);
  auto c = glued_coords(fs.slim);
  std::vector<std::pair<int, int>> out(d.size(), {-1, -1});
  for (int x = 0; x < fs.slim.size(); ++x) out[fs.kept[x]] = {c[x].left, c[x].right};
  return out;
}

int left_length(const Diagram& d) {
  int m = 0;
  for (auto [a, b] : unit_coordinates(d)) m = std::max(m, a);
  return m;
}

int right_length(const Diagram& d) {
  int m = 0;
  for (auto [a, b] : unit_coordinates(d)) m = std::max(m, b);
  return m;
}

namespace {

Placement place_weighted(const Diagram& d, const std::vector<Rational>& wl, const std::vector<Rational>& wr) {
  auto fs = full_slimming(d);
  auto c = glued_coords(fs.slim);
  int ml = 0, mr = 0;
  for (const auto& p : c) {
    ml = std::max(ml, p.left);
    mr = std::max(mr, p.right);
  }
  if (static_cast<int>(wl.size()) != ml || static_cast<int>(wr.size()) != mr)
    throw IncompatibleTriplet("weight vectors have lengths " + std::to_string(wl.size()) + "," +
                              std::to_string(wr.size()) + ", diagram needs " + std::to_string(ml) + "," +
                              std::to_string(mr));
  for (const auto* w : {&wl, &wr})
    for (const auto& r : *w)
      if (r.sign() <= 0) throw IncompatibleTriplet("weights must be positive");
  std::vector<Rational> sl(ml + 1), sr(mr + 1);
  for (int i = 0; i < ml; ++i) sl[i + 1] = sl[i] + wl[i];
  for (int j = 0; j < mr; ++j) sr[j + 1] = sr[j] + wr[j];

  Placement p;
  p.pos.resize(d.size());
  for (int x = 0; x < fs.slim.size(); ++x) p.pos[fs.kept[x]] = {sl[c[x].left], sr[c[x].right]};
  for (int x = 0; x < fs.slim.size(); ++x) {
    const auto& eyes = fs.eyes[x];
    if (eyes.empty()) continue;
    const PlanePoint cl = p.pos[fs.kept[fs.slim.upper_covers(x)[0]]];
    const PlanePoint cr = p.pos[fs.kept[fs.slim.upper_covers(x)[1]]];
    const int parts = static_cast<int>(eyes.size()) + 1;
    for (int s = 1; s < parts; ++s) {
      Rational f(s, parts);
      p.pos[eyes[s - 1]] = {cl.a + (cr.a - cl.a) * f, cl.b + (cr.b - cl.b) * f};
    }
  }
  return p;
}

// Height-then-left-to-right listing of a slim diagram.
std::vector<ElementId> level_order(const Diagram& d) {
  std::vector<ElementId> v(d.size());
  std::iota(v.begin(), v.end(), 0);
  std::sort(v.begin(), v.end(), [&](ElementId x, ElementId y) {
    if (d.height(x) != d.height(y)) return d.height(x) < d.height(y);
    return x != y && d.left_of(x, y);
  });
  return v;
}

std::vector<int> nu_tuple(const SlimmingResult& fs) {
  std::vector<int> t;
  for (ElementId x : level_order(fs.slim)) t.push_back(fs.nu[x]);
  return t;
}

// Orientation of an indecomposable component in the canonical diagram.
bool choose_mirror(const Diagram& k) {
  Diagram m = mirror(k);
  auto fk = full_slimming(k);
  auto fm = full_slimming(m);
  auto pk = jh_permutation(fk.slim);
  auto pm = jh_permutation(fm.slim);
  if (pk != pm) return pm < pk;
  auto tk = nu_tuple(fk);
  auto tm = nu_tuple(fm);
  return tk < tm;
}

}  // namespace

Placement place_B(const Diagram& d, const CoordTriplet& t) {
  std::vector<Rational> wl, wr;
  for (double x : t.rho_left) wl.push_back(Rational::from_double(x));
  for (double x : t.rho_right) wr.push_back(Rational::from_double(x));
  Placement p = place_weighted(d, wl, wr);
  p.delta_re = t.delta_re;
  p.delta_im = t.delta_im;
  if (!is_planar(p, d)) throw IncompatibleTriplet("placement has crossing edges");
  return p;
}

Placement place_C(const Diagram& d, double r, double delta_re, double delta_im) {
  CoordTriplet t;
  t.delta_re = delta_re;
  t.delta_im = delta_im;
  t.rho_left.assign(left_length(d), r);
  t.rho_right.assign(right_length(d), r);
  return place_B(d, t);
}

Placement place_D(const Diagram& d) {
  Placement p;
  p.pos.resize(d.size());
  auto g = glued_sum_decompose(d);
  PlanePoint base{0, 0};
  for (size_t c = 0; c < g.components.size(); ++c) {
    const Diagram& comp = g.components[c];
    const auto& map = g.element_maps[c];
    std::vector<PlanePoint> local(comp.size());
    if (g.kinds[c] == ComponentKind::ChainOfNarrows) {
      const int n = comp.length();
      const int up_left = (n + 1) / 2;
      for (int x = 0; x < comp.size(); ++x) {
        int h = comp.height(x);
        local[x] = h <= up_left ? PlanePoint{h, 0} : PlanePoint{up_left, h - up_left};
      }
    } else {
      Diagram oriented = choose_mirror(comp) ? mirror(comp) : comp;
      auto lp = place_weighted(oriented, std::vector<Rational>(left_length(oriented), 1),
                               std::vector<Rational>(right_length(oriented), 1));
      local = lp.pos;
    }
    for (int x = 0; x < comp.size(); ++x) p.pos[map[x]] = {base.a + local[x].a, base.b + local[x].b};
    base = p.pos[map[comp.top()]];
  }
  return p;
}

std::vector<PlanePoint> vertex_set(const Placement& p) {
  auto v = p.pos;
  std::sort(v.begin(), v.end());
  return v;
}

// ---------------------------------------------------------------- geometry

namespace {

int orient(const PlanePoint& p, const PlanePoint& q, const PlanePoint& r) {
  Rational v = (q.a - p.a) * (r.b - p.b) - (q.b - p.b) * (r.a - p.a);
  return v.sign();
}

bool on_segment(const PlanePoint& p, const PlanePoint& q, const PlanePoint& r) {
  // r collinear with p, q: inside the bounding box?
  auto lo = [](const Rational& x, const Rational& y) { return x < y ? x : y; };
  auto hi = [](const Rational& x, const Rational& y) { return x < y ? y : x; };
  return lo(p.a, q.a) <= r.a && r.a <= hi(p.a, q.a) && lo(p.b, q.b) <= r.b && r.b <= hi(p.b, q.b);
}

bool segments_meet(const PlanePoint& p1, const PlanePoint& p2, const PlanePoint& q1, const PlanePoint& q2) {
  int o1 = orient(p1, p2, q1), o2 = orient(p1, p2, q2), o3 = orient(q1, q2, p1), o4 = orient(q1, q2, p2);
  if (o1 * o2 < 0 && o3 * o4 < 0) return true;
  if (o1 == 0 && on_segment(p1, p2, q1)) return true;
  if (o2 == 0 && on_segment(p1, p2, q2)) return true;
  if (o3 == 0 && on_segment(q1, q2, p1)) return true;
  if (o4 == 0 && on_segment(q1, q2, p2)) return true;
  return false;
}

}  // namespace

bool is_planar(const Placement& p, const Diagram& d) {
  for (int x = 0; x < d.size(); ++x)
    for (int y = x + 1; y < d.size(); ++y)
      if (p.pos[x] == p.pos[y]) return false;
  auto edges = all_edges(d);
  for (size_t i = 0; i < edges.size(); ++i) {
    const Edge& e = edges[i];
    for (int v = 0; v < d.size(); ++v) {
      if (v == e.bottom || v == e.top) continue;
      if (orient(p.pos[e.bottom], p.pos[e.top], p.pos[v]) == 0 && on_segment(p.pos[e.bottom], p.pos[e.top], p.pos[v]))
        return false;
    }
    for (size_t j = i + 1; j < edges.size(); ++j) {
      const Edge& f = edges[j];
      bool shared = e.bottom == f.bottom || e.bottom == f.top || e.top == f.bottom || e.top == f.top;
      if (shared) {
        // only a collinear overlap matters; the vertex test above covers it
        continue;
      }
      if (segments_meet(p.pos[e.bottom], p.pos[e.top], p.pos[f.bottom], p.pos[f.top])) return false;
    }
  }
  return true;
}

bool slope_order_check(const Placement& p, const Diagram& d) {
  for (int x = 0; x < d.size(); ++x)
    for (int y = 0; y < d.size(); ++y) {
      if (x == y) continue;
      Rational da = p.pos[y].a - p.pos[x].a, db = p.pos[y].b - p.pos[x].b;
      Rational re = db - da, im = da + db;
      Rational abs_re = re.sign() < 0 ? Rational(0) - re : re;
      bool geometric = im.sign() > 0 && abs_re <= im;
      if (geometric != d.lt(x, y)) return false;
    }
  return true;
}

std::vector<EdgeSlope> edge_slope_classify(const Placement& p, const Diagram& d) {
  std::vector<EdgeSlope> out;
  for (const Edge& e : all_edges(d)) {
    Rational da = p.pos[e.top].a - p.pos[e.bottom].a, db = p.pos[e.top].b - p.pos[e.bottom].b;
    bool normal = da.sign() == 0 || db.sign() == 0;
    bool steep = da.sign() > 0 && db.sign() > 0;
    if (!normal && !steep) throw InconsistencyError("edge slope outside the allowed range");
    const auto& lc = d.lower_covers(e.top);
    int i = d.lower_index(e.top, e.bottom);
    bool interior = lc.size() >= 3 && i > 0 && i + 1 < static_cast<int>(lc.size());
    if (steep != interior)
      throw InconsistencyError("edge " + std::to_string(e.bottom) + "-" + std::to_string(e.top) +
                               ": slope and lower cover position disagree");
    out.push_back(steep ? EdgeSlope::Precipitous : EdgeSlope::Normal);
  }
  return out;
}

// ---------------------------------------------------------------- output

std::string emit_svg(const Placement& p, const Diagram& d, const SvgOptions& opt) {
  const int n = d.size();
  double minx = 0, maxx = 0, miny = 0, maxy = 0;
  for (int v = 0; v < n; ++v) {
    double x = p.x(v) * opt.scale, y = p.y(v) * opt.scale;
    if (v == 0 || x < minx) minx = x;
    if (v == 0 || x > maxx) maxx = x;
    if (v == 0 || y < miny) miny = y;
    if (v == 0 || y > maxy) maxy = y;
  }
  auto X = [&](ElementId v) { return p.x(v) * opt.scale - minx + opt.margin; };
  auto Y = [&](ElementId v) { return maxy - p.y(v) * opt.scale + opt.margin; };
  char buf[256];
  std::ostringstream out;
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"%.3f\" height=\"%.3f\">\n",
                maxx - minx + 2 * opt.margin, maxy - miny + 2 * opt.margin);
  out << buf;
  out << "<g stroke=\"black\" stroke-width=\"1\">\n";
  for (const Edge& e : all_edges(d)) {
    std::snprintf(buf, sizeof buf, "<line x1=\"%.3f\" y1=\"%.3f\" x2=\"%.3f\" y2=\"%.3f\"/>\n", X(e.bottom), Y(e.bottom),
                  X(e.top), Y(e.top));
    out << buf;
  }
  out << "</g>\n<g fill=\"white\" stroke=\"black\">\n";
  for (int v = 0; v < n; ++v) {
    std::snprintf(buf, sizeof buf, "<circle cx=\"%.3f\" cy=\"%.3f\" r=\"%.3f\"/>\n", X(v), Y(v), opt.radius);
    out << buf;
  }
  out << "</g>\n";
  if (opt.labels) {
    out << "<g font-size=\"10\" font-family=\"sans-serif\">\n";
    for (int v = 0; v < n; ++v) {
      std::snprintf(buf, sizeof buf, "<text x=\"%.3f\" y=\"%.3f\">%d</text>\n", X(v) + opt.radius + 1, Y(v) - 2, v);
      out << buf;
    }
    out << "</g>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::string triplet_to_json(const CoordTriplet& t) {
  nlohmann::json j;
  j["delta"] = {t.delta_re, t.delta_im};
  j["rho_left"] = t.rho_left;
  j["rho_right"] = t.rho_right;
  return j.dump();
}

CoordTriplet triplet_from_json(const std::string& text) {
  try {
    auto j = nlohmann::json::parse(text);
    CoordTriplet t;
    t.delta_re = j.at("delta").at(0).get<double>();
    t.delta_im = j.at("delta").at(1).get<double>();
    t.rho_left = j.at("rho_left").get<std::vector<double>>();
    t.rho_right = j.at("rho_right").get<std::vector<double>>();
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("triplet json: ") + e.what());
  }
}

}  // namespace slimlat
