#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "slimlat/errors.hpp"

namespace slimlat {

using ElementId = int;

// Square bit matrix, one row per element.
class BitMatrix {
 public:
  BitMatrix() = default;
  explicit BitMatrix(int n);

  int size() const { return n_; }
  int words() const { return words_; }
  bool get(int r, int c) const {
    return (bits_[static_cast<size_t>(r) * words_ + (c >> 6)] >> (c & 63)) & 1u;
  }
  void set(int r, int c) {
    bits_[static_cast<size_t>(r) * words_ + (c >> 6)] |= uint64_t{1} << (c & 63);
  }
  const uint64_t* row(int r) const { return bits_.data() + static_cast<size_t>(r) * words_; }
  uint64_t* row(int r) { return bits_.data() + static_cast<size_t>(r) * words_; }
  void or_row(int dst, int src);
  int row_count(int r) const;

 private:
  int n_ = 0;
  int words_ = 0;
  std::vector<uint64_t> bits_;
};

// A finite planar lattice diagram. Planarity is carried by the left-to-right
// order of the upper cover lists; lower cover lists are derived.
class Diagram {
 public:
  Diagram() = default;

  // Builds and validates. Throws ValidationError.
  static Diagram from_upper_covers(std::vector<std::vector<ElementId>> upper);

  int size() const { return n_; }
  ElementId bottom() const { return bottom_; }
  ElementId top() const { return top_; }

  const std::vector<ElementId>& upper_covers(ElementId x) const { return up_[x]; }
  const std::vector<ElementId>& lower_covers(ElementId x) const { return down_[x]; }
  const std::vector<std::vector<ElementId>>& upper_cover_lists() const { return up_; }

  bool leq(ElementId x, ElementId y) const { return leq_.get(x, y); }
  bool lt(ElementId x, ElementId y) const { return x != y && leq_.get(x, y); }
  bool comparable(ElementId x, ElementId y) const { return leq_.get(x, y) || leq_.get(y, x); }
  bool incomparable(ElementId x, ElementId y) const { return !comparable(x, y); }
  // x is covered by y.
  bool covers(ElementId x, ElementId y) const { return cov_.get(x, y); }

  ElementId join(ElementId x, ElementId y) const { return join_[idx(x, y)]; }
  ElementId meet(ElementId x, ElementId y) const { return meet_[idx(x, y)]; }

  // Length of the longest chain from the bottom.
  int height(ElementId x) const { return height_[x]; }
  int length() const { return height_.empty() ? 0 : height_[top_]; }

  // x strictly on the left of y; both must be incomparable.
  bool left_of(ElementId x, ElementId y) const;

  // Position of c in the lower cover list of x, -1 if c is not a lower cover.
  int lower_index(ElementId x, ElementId c) const;
  int upper_index(ElementId x, ElementId c) const;

  bool is_join_irreducible(ElementId x) const { return down_[x].size() == 1; }
  bool is_meet_irreducible(ElementId x) const { return up_[x].size() == 1; }
  bool is_doubly_irreducible(ElementId x) const {
    return is_join_irreducible(x) && is_meet_irreducible(x);
  }

  bool operator==(const Diagram& o) const { return up_ == o.up_; }
  bool operator!=(const Diagram& o) const { return !(*this == o); }

 private:
  size_t idx(ElementId x, ElementId y) const { return static_cast<size_t>(x) * n_ + y; }

  int n_ = 0;
  ElementId bottom_ = 0;
  ElementId top_ = 0;
  std::vector<std::vector<ElementId>> up_;
  std::vector<std::vector<ElementId>> down_;
  BitMatrix leq_;
  BitMatrix cov_;
  BitMatrix left_;
  std::vector<ElementId> join_;
  std::vector<ElementId> meet_;
  std::vector<int> height_;
};

struct BoundaryChains {
  std::vector<ElementId> left;
  std::vector<ElementId> right;
};

enum class ComponentKind { GluedSumIndecomposable, ChainOfNarrows };

struct GluedSumDecomposition {
  std::vector<Diagram> components;
  std::vector<ComponentKind> kinds;
  // element_maps[i][local id] = id in the decomposed diagram
  std::vector<std::vector<ElementId>> element_maps;
};

// .slat text format
Diagram parse_diagram(const std::string& text);
std::string serialize_diagram(const Diagram& d);
Diagram read_diagram_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

bool is_semimodular(const Diagram& d);
bool is_slim(const Diagram& d);
// The two slimness criteria separately; is_slim compares them on
// semimodular input.
bool jir_two_chains(const Diagram& d);
bool has_cover_preserving_m3(const Diagram& d);
bool is_rectangular(const Diagram& d);
bool is_distributive(const Diagram& d);
std::vector<ElementId> join_irreducibles(const Diagram& d);

BoundaryChains boundary_chains(const Diagram& d);
// Corners of a rectangular diagram: {left corner, right corner}, or {-1,-1}.
std::pair<ElementId, ElementId> corners(const Diagram& d);

// z is on the left of the maximal chain (in the wide sense).
bool left_of_chain(const Diagram& d, ElementId z, const std::vector<ElementId>& chain);
bool right_of_chain(const Diagram& d, ElementId z, const std::vector<ElementId>& chain);

bool is_narrows(const Diagram& d, ElementId x);
GluedSumDecomposition glued_sum_decompose(const Diagram& d);
Diagram glued_sum(const std::vector<Diagram>& parts);

// Subdiagram on a set of elements closed under covers in between; ids are
// renumbered in increasing order of the original ids. map[new] = old.
Diagram induced_subdiagram(const Diagram& d, const std::vector<ElementId>& elems,
                           std::vector<ElementId>* map = nullptr);
Diagram interval_subdiagram(const Diagram& d, ElementId a, ElementId b,
                            std::vector<ElementId>* map = nullptr);
// perm[old] = new
Diagram relabel(const Diagram& d, const std::vector<ElementId>& perm);

Diagram chain_diagram(int length);

// Canonical labelling: breadth-first from the bottom, upper covers visited
// left to right. Two diagrams are directly similar iff their canonical forms
// coincide. order[k] = element receiving canonical label k.
std::vector<ElementId> canonical_order(const Diagram& d);
std::vector<std::vector<ElementId>> canonical_form(const Diagram& d);

}  // namespace slimlat
