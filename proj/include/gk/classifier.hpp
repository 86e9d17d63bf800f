#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gk/covers.hpp"
#include "gk/formal.hpp"
#include "json.hpp"

namespace gk {

enum class BaseMode { Logarithmic, Irregular };
enum class SearchMode { Log, Scattered, Confluent };

struct ClassRow {
  BaseEquation base;
  Passport passport;
  CoverAnalysis analysis;
  std::string label;
  // Row not among the known classification rows for its mode.
  bool galois_filter_uncertain = false;

  int degree() const { return passport.degree; }
};

// Genus-0 bases with -1/2 <= chi_irr < 0 (so some degree d >= 2 has d |chi_irr| <= 1).
std::vector<BaseEquation> enumerate_bases(BaseMode mode);
std::vector<ClassRow> search(SearchMode mode, int max_degree = 6);

// "Gar3(1,1,1)", "P_II", ... ; empty when no name applies.
std::string isomonodromy_label(long T, const FormalData& target);

// Canonical pole order: logarithmic poles by orbifold order (infinite last), then irregular poles by kappa.
bool pole_less(const FormalDatum& a, const FormalDatum& b);

// Rows of the published classification, as literals.
struct KnownRow {
  std::string base;      // formal-data literal
  std::string passport;  // passport literal
  std::string target;    // formal-data literal, empty when not tabulated
  std::string label;
};
const std::vector<KnownRow>& known_rows(SearchMode mode);
// Base, degree and passport equal, targets gauge equivalent when the known row lists one.
bool matches_known(const ClassRow& row, const KnownRow& known);

nlohmann::ordered_json to_json(const ClassRow& row);
std::string format_row(const ClassRow& row);
std::optional<SearchMode> parse_search_mode(std::string_view s);

}  // namespace gk
