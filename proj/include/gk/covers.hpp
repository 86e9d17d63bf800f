#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "gk/formal.hpp"

namespace gk {

// Parts in non-increasing order.
using Partition = std::vector<int>;

class InconsistentPassport : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Passport {
  int degree = 1;
  std::vector<Partition> pole_fibers;  // one per base pole
  std::vector<Partition> free_fibers;  // branching away from the poles

  bool operator==(const Passport&) const = default;
  bool operator<(const Passport& o) const;
  // Throws InconsistentPassport when a partition does not sum to the degree or a free fiber is trivial.
  void validate() const;
};

Partition normalize_partition(Partition p);
Partition simple_fiber(int d);
Partition trivial_fiber(int d);
bool is_trivial(const Partition& p);
// Ramification d - (number of parts).
int ramification(const Partition& p);
int total_ramification(const Passport& p);

struct CoverAnalysis {
  int genus = 0;
  std::vector<BigRat> N_k;
  std::vector<int> R_k;
  int B = 0;
  long N = 0;
  long T = 0;
  bool admissible = false;
  FormalData target;
};

int rh_genus(int d, const Passport& passport, int base_genus);
CoverAnalysis analyze_cover(const BaseEquation& base, const Passport& passport);
// Number of target poles over pole k counted with multiplicity, read off the pulled-back data.
long pole_count_direct(const FormalDatum& pole, const Partition& fiber);
Passport scatter(const BaseEquation& base, const Passport& passport);
bool is_scattered(const BaseEquation& base, const Passport& passport);
bool realizable(const Passport& passport);

struct BoundMargin {
  long lhs;    // T - B
  BigRat rhs;  // g - 1 - d * chi
};
BoundMargin bound_margin(const BaseEquation& base, const Passport& passport);

// "d=6; poles=[3,3],[2,2,2]; free=simple*3"
Passport parse_passport(std::string_view text);
std::string format_partition(const Partition& p);
std::string format_passport(const Passport& p);

}  // namespace gk
