#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "slimlat/diagram.hpp"

namespace slimlat {

struct FourCell {
  ElementId bottom = 0;
  ElementId left_corner = 0;
  ElementId right_corner = 0;
  ElementId top = 0;
  auto operator<=>(const FourCell&) const = default;
};

struct MultiforkStep {
  ElementId cell_bottom = 0;  // id in the stage the step is applied to
  int k = 1;
  bool operator==(const MultiforkStep&) const = default;
};

struct MultiforkSequence {
  int grid_m = 1;
  int grid_n = 1;
  std::vector<MultiforkStep> steps;
  bool operator==(const MultiforkSequence&) const = default;
};

// Stages D_0 (grid) .. D_t. Ids of stage j are a prefix of the ids of stage j+1.
struct Replay {
  std::vector<Diagram> stages;
  std::vector<FourCell> halos;  // halos[j] = cell of stage j used by step j
  const Diagram& final_diagram() const { return stages.back(); }
};

struct BirthTable {
  std::vector<int> element_yob;
  int edge_yob(ElementId a, ElementId b) const { return std::max(element_yob[a], element_yob[b]); }
};

// Element (a,b) has id b*(m+1)+a; the left boundary runs along a first.
Diagram grid(int m, int n);

std::vector<FourCell> four_cells(const Diagram& d);
// The cell with the given bottom, if that element has exactly two upper covers
// spanning a 4-cell.
bool cell_at(const Diagram& d, ElementId bottom, FourCell* out);
bool is_distributive_cell(const Diagram& d, const FourCell& c);
std::vector<FourCell> distributive_cells(const Diagram& d);

// Old ids are kept. Throws NotDistributiveCell, NotSlimRectangular.
Diagram multifork_extend(const Diagram& d, const FourCell& cell, int k);

Replay replay(const MultiforkSequence& seq);
MultiforkSequence decompose_sequence(const Diagram& d);
BirthTable birth_table(const MultiforkSequence& seq);
BirthTable birth_table(const Replay& rep);

struct GridBounds {
  int max_m = 4;
  int max_n = 4;
};

std::pair<Diagram, MultiforkSequence> random_slim_rectangular(uint64_t seed, int max_steps, int max_k,
                                                              GridBounds bounds, int max_elements = 80);

std::string sequence_to_json(const MultiforkSequence& seq);
MultiforkSequence sequence_from_json(const std::string& text);

}  // namespace slimlat
