#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gk/algebraic.hpp"
#include "gk/odes.hpp"

namespace gk {

struct HamiltonianSystem {
  std::string id;
  std::vector<std::string> times;
  std::vector<std::string> coords;
  std::vector<std::string> momenta;
  std::vector<RatFunc> hamiltonians;
  // Exponent symbols the Hamiltonians may contain.
  std::vector<std::string> parameters;
  // Linear problem with accessory unknowns, and the points that must be apparent.
  std::optional<GeneralScalar> linear_template;
  std::vector<std::string> accessory;
  std::vector<Point> apparent_points;
  // Hamiltonians exactly as printed, when they differ from the ones above.
  std::vector<RatFunc> printed_hamiltonians;
};

struct AlgebraicSolutionRecord {
  std::string label;
  std::optional<AlgebraicContext> ctx;
  std::map<std::string, RatFunc> assignments;
  std::map<std::string, RatFunc> parameters;
};

// "kim122", "kim23", "kaw4", "pii".
HamiltonianSystem builtin_system(const std::string& id);
std::pair<HamiltonianSystem, AlgebraicSolutionRecord> builtin_solution(const std::string& id);

// The printed linear templates; unknown accessory symbols are H1, H2 (H for the second Painleve case).
GeneralScalar kim122_template();
GeneralScalar kim23_template_printed();
GeneralScalar kim23_template();
GeneralScalar kaw4_template();
GeneralScalar pii_template();

// As printed; the q2 blocks end in p1, and fix_momentum replaces that p1 by p2.
std::vector<RatFunc> kim122_printed_hamiltonians(bool fix_momentum);

struct Residual {
  std::string name;  // "dq1/dt2" etc.
  RatFunc value;     // reduced modulo the relation
  bool zero = false;
};

std::vector<Residual> hamilton_residual(const HamiltonianSystem& sys, const AlgebraicSolutionRecord& sol);

enum class PainleveForm { I, II, III, IIIOkamoto, IV, V, VI };

std::string painleve_form_name(PainleveForm f);

// q and t as rational functions of a uniformizer.
struct PainleveSolution {
  std::string id;
  std::string name;
  PainleveForm form = PainleveForm::II;
  std::vector<RatFunc> params;  // alpha, beta, gamma, delta as needed
  std::string uniformizer = "t";
  RatFunc q;
  RatFunc t;
  std::string q_text;  // as printed
};

// Residual of the second-order equation, with d/dt = (1/t'(s)) d/ds.
RatFunc painleve_residual(PainleveForm form, const std::vector<RatFunc>& params, const PainleveSolution& sol);

std::vector<std::string> painleve_solution_ids();
PainleveSolution painleve_solution(const std::string& id);

struct PullbackReport {
  std::string id;
  RatFunc base_q;
  RationalMap cover;
  RatFunc pulled;
  RatFunc target;
  RatFunc difference;  // reduced modulo the relation
  bool equal = false;
  std::vector<std::pair<std::string, LocalInvariant>> poles;
  std::map<std::string, RatFunc> extracted;
  std::map<std::string, RatFunc> expected;
  bool extraction_ok = true;

  bool ok() const { return equal && extraction_ok; }
};

// "kim122", "kim23", "kaw4".
PullbackReport verify_pullback(const std::string& id);

// {"label", "generator", "relation", "parameters", "assignments"} with canonical expression strings.
std::string solution_json(const AlgebraicSolutionRecord& sol);

}  // namespace gk
