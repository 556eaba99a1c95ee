#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "slimlat/diagram.hpp"

namespace slimlat {

// Exact rational with positive denominator, always reduced.
class Rational {
 public:
  Rational(int64_t n = 0, int64_t d = 1);
  int64_t num() const { return n_; }
  int64_t den() const { return d_; }
  double to_double() const { return static_cast<double>(n_) / static_cast<double>(d_); }
  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator/(const Rational& o) const;
  bool operator==(const Rational& o) const { return n_ == o.n_ && d_ == o.d_; }
  bool operator!=(const Rational& o) const { return !(*this == o); }
  bool operator<(const Rational& o) const;
  bool operator<=(const Rational& o) const { return !(o < *this); }
  int sign() const { return n_ > 0 ? 1 : n_ < 0 ? -1 : 0; }
  static Rational from_double(double x);
  std::string str() const;

 private:
  int64_t n_, d_;
};

// Position delta + a*eps^3 + b*eps with eps = exp(i*pi/4).
struct PlanePoint {
  Rational a, b;
  bool operator==(const PlanePoint& o) const { return a == o.a && b == o.b; }
  bool operator<(const PlanePoint& o) const { return a == o.a ? b < o.b : a < o.a; }
};

struct CoordTriplet {
  double delta_re = 0, delta_im = 0;
  std::vector<double> rho_left, rho_right;
};

struct Placement {
  double delta_re = 0, delta_im = 0;
  std::vector<PlanePoint> pos;  // per element
  double x(ElementId v) const;
  double y(ElementId v) const;
};

enum class EdgeSlope { Normal, Precipitous };

struct SvgOptions {
  double scale = 40.0;
  double margin = 20.0;
  double radius = 4.0;
  bool labels = false;
};

// Coordinates of the full slimming of d read component by component (chains
// as a staircase, left steps first), in d's ids; eyes get no entry (-1,-1).
std::vector<std::pair<int, int>> unit_coordinates(const Diagram& d);
int left_length(const Diagram& d);
int right_length(const Diagram& d);

Placement place_B(const Diagram& d, const CoordTriplet& t);
Placement place_C(const Diagram& d, double r, double delta_re, double delta_im);
Placement place_D(const Diagram& d);

std::vector<PlanePoint> vertex_set(const Placement& p);  // sorted
bool is_planar(const Placement& p, const Diagram& d);
bool slope_order_check(const Placement& p, const Diagram& d);
// Throws InconsistencyError if slope and lower-cover position disagree.
std::vector<EdgeSlope> edge_slope_classify(const Placement& p, const Diagram& d);

std::string emit_svg(const Placement& p, const Diagram& d, const SvgOptions& opt = {});
std::string triplet_to_json(const CoordTriplet& t);
CoordTriplet triplet_from_json(const std::string& text);

}  // namespace slimlat
