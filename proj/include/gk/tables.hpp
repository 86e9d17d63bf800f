#pragma once

#include <string>
#include <vector>

namespace gk {

// Formal data of the Painleve equations and the equation each one governs.
struct PainleveDataRow {
  std::string data;  // formal-data literal
  std::string equation;
};
const std::vector<PainleveDataRow>& painleve_data_table();

// Algebraic solutions of the irregular Painleve equations.
struct PainleveSolutionRow {
  std::string solution_id;  // key for painleve_solution()
  std::string equation;
  std::string solution;
  std::string name;
  std::string data;
  std::string galois;
  bool pullback = false;
  bool apparent = false;
};
const std::vector<PainleveSolutionRow>& painleve_solution_table();

struct GarnierDataEntry {
  std::string data;
  std::string family;
  int rank = 2;  // number of isomonodromic times
};
// Non-classical algebraic solutions of rank 2 and 3.
const std::vector<GarnierDataEntry>& nonclassical_list();
// Classical algebraic solutions of rank 2.
const std::vector<GarnierDataEntry>& classical_list();

}  // namespace gk
