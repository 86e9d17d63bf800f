#include "gk/covers.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "gk/ratfunc.hpp"

namespace gk {

bool Passport::operator<(const Passport& o) const {
  return std::tie(degree, pole_fibers, free_fibers) < std::tie(o.degree, o.pole_fibers, o.free_fibers);
}

void Passport::validate() const {
  if (degree < 1) throw InconsistentPassport("degree must be positive");
  auto check = [&](const Partition& p) {
    if (std::any_of(p.begin(), p.end(), [](int m) { return m < 1; }))
      throw InconsistentPassport("partition parts must be positive");
    if (std::accumulate(p.begin(), p.end(), 0) != degree)
      throw InconsistentPassport(format_partition(p) + " does not sum to " + std::to_string(degree));
  };
  for (const auto& p : pole_fibers) check(p);
  for (const auto& p : free_fibers) {
    check(p);
    if (is_trivial(p)) throw InconsistentPassport("free fibers must be ramified");
  }
}

Partition normalize_partition(Partition p) {
  std::sort(p.begin(), p.end(), std::greater<>());
  return p;
}

Partition simple_fiber(int d) {
  if (d < 2) throw InconsistentPassport("no simple fiber in degree 1");
  Partition p(d - 1, 1);
  p[0] = 2;
  return p;
}

Partition trivial_fiber(int d) { return Partition(d, 1); }

bool is_trivial(const Partition& p) {
  return std::all_of(p.begin(), p.end(), [](int m) { return m == 1; });
}

int ramification(const Partition& p) {
  return std::accumulate(p.begin(), p.end(), 0) - static_cast<int>(p.size());
}

int total_ramification(const Passport& p) {
  int r = 0;
  for (const auto& f : p.pole_fibers) r += ramification(f);
  for (const auto& f : p.free_fibers) r += ramification(f);
  return r;
}

int rh_genus(int d, const Passport& passport, int base_genus) {
  int r = total_ramification(passport);
  int euler = d * (2 - 2 * base_genus) - r;
  if (euler % 2 != 0) throw InconsistentPassport("odd total ramification");
  int g = (2 - euler) / 2;
  if (g < 0) throw InconsistentPassport("negative genus");
  return g;
}

namespace {

// Divisor used by the pole type: nu for a finite-order logarithmic pole, 2 for a ramified pole, 0 otherwise.
long exploited_divisor(const FormalDatum& pole) {
  if (!pole.kappa.is_integer()) return 2;
  if (pole.kappa == HalfInt())
    if (auto nu = orbifold_order(pole.theta)) return *nu;
  return 0;
}

}  // namespace

long pole_count_direct(const FormalDatum& pole, const Partition& fiber) {
  long n = 0;
  for (int m : fiber) {
    auto r = pullback_local(pole, m);
    if (auto* fd = std::get_if<FormalDatum>(&r)) n += 1 + fd->kappa.ceil();
  }
  return n;
}

CoverAnalysis analyze_cover(const BaseEquation& base, const Passport& passport) {
  if (passport.pole_fibers.size() != base.poles.size())
    throw InconsistentPassport("expected " + std::to_string(base.poles.size()) + " pole fibers");
  passport.validate();
  const int d = passport.degree;
  CoverAnalysis a;
  a.genus = rh_genus(d, passport, base.genus0);
  a.B = static_cast<int>(passport.free_fibers.size());
  for (std::size_t k = 0; k < base.poles.size(); ++k) {
    const FormalDatum& pole = base.poles[k];
    const Partition& fiber = passport.pole_fibers[k];
    int rk = ramification(fiber);
    a.R_k.push_back(rk);
    BigRat nk;
    if (!pole.kappa.is_integer()) {
      long odd = std::count_if(fiber.begin(), fiber.end(), [](int m) { return m % 2 != 0; });
      nk = d * (pole.kappa.value() + 1) - rk + BigRat(odd) / 2;
    } else if (pole.kappa != HalfInt()) {
      nk = d * (pole.kappa.value() + 1) - rk;
    } else if (auto nu = orbifold_order(pole.theta)) {
      long divisible = std::count_if(fiber.begin(), fiber.end(), [&](int m) { return m % *nu == 0; });
      nk = d - rk - divisible;
    } else {
      nk = d - rk;
    }
    nk.canonicalize();
    if (nk.get_den() != 1) throw InconsistentPassport("non-integral pole count at pole " + std::to_string(k));
    a.N_k.push_back(nk);
    a.N += nk.get_num().get_si();
    for (int m : fiber) {
      auto r = pullback_local(pole, m);
      if (auto* fd = std::get_if<FormalDatum>(&r)) a.target.push_back(*fd);
    }
  }
  a.T = 3L * a.genus - 3 + a.N;
  a.admissible = a.T >= 1 && a.T <= a.B;
  return a;
}

Passport scatter(const BaseEquation& base, const Passport& passport) {
  if (passport.pole_fibers.size() != base.poles.size())
    throw InconsistentPassport("expected " + std::to_string(base.poles.size()) + " pole fibers");
  const int d = passport.degree;
  Passport out{d, {}, {}};
  int extra = 0;
  for (const auto& f : passport.free_fibers) extra += ramification(f);
  for (std::size_t k = 0; k < base.poles.size(); ++k) {
    const Partition& fiber = passport.pole_fibers[k];
    long nu = exploited_divisor(base.poles[k]);
    if (nu < 2) {
      out.pole_fibers.push_back(trivial_fiber(d));
      extra += ramification(fiber);
      continue;
    }
    Partition parts;
    for (int m : fiber) {
      int s0 = static_cast<int>(m / nu), s1 = static_cast<int>(m % nu);
      parts.insert(parts.end(), s0, static_cast<int>(nu));
      parts.insert(parts.end(), s1, 1);
      extra += s0 + s1 - 1;
    }
    out.pole_fibers.push_back(normalize_partition(parts));
  }
  out.free_fibers.assign(extra, simple_fiber(d));
  return out;
}

bool is_scattered(const BaseEquation& base, const Passport& passport) {
  Passport p = passport;
  for (auto& f : p.pole_fibers) f = normalize_partition(f);
  for (auto& f : p.free_fibers) f = normalize_partition(f);
  std::sort(p.free_fibers.begin(), p.free_fibers.end(), std::greater<>());
  return scatter(base, p) == p;
}

BoundMargin bound_margin(const BaseEquation& base, const Passport& passport) {
  CoverAnalysis a = analyze_cover(base, passport);
  BigRat rhs = a.genus - 1 - passport.degree * chi_irr(base);
  rhs.canonicalize();
  return {a.T - a.B, rhs};
}

namespace {

constexpr int kMaxRealizableDegree = 8;
using Perm = std::array<std::uint8_t, kMaxRealizableDegree>;

Partition cycle_type(const Perm& p, int d) {
  std::array<bool, kMaxRealizableDegree> seen{};
  Partition t;
  for (int i = 0; i < d; ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (int j = i; !seen[j]; j = p[j]) {
      seen[j] = true;
      ++len;
    }
    t.push_back(len);
  }
  return normalize_partition(t);
}

using ClassTable = std::map<Partition, std::vector<Perm>>;

const ClassTable& conjugacy_classes(int d) {
  static std::mutex mu;
  static std::map<int, ClassTable> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(d);
  if (it != cache.end()) return it->second;
  ClassTable table;
  Perm p{};
  std::iota(p.begin(), p.begin() + d, 0);
  do {
    table[cycle_type(p, d)].push_back(p);
  } while (std::next_permutation(p.begin(), p.begin() + d));
  return cache.emplace(d, std::move(table)).first->second;
}

// State: partial product (3 bits per point) and orbit labels of the generated group (3 bits per point).
std::uint64_t encode(const Perm& prod, const Perm& orbit, int d) {
  std::uint64_t s = 0;
  for (int i = 0; i < d; ++i) s |= std::uint64_t(prod[i]) << (3 * i) | std::uint64_t(orbit[i]) << (24 + 3 * i);
  return s;
}

void decode(std::uint64_t s, int d, Perm& prod, Perm& orbit) {
  for (int i = 0; i < d; ++i) {
    prod[i] = (s >> (3 * i)) & 7;
    orbit[i] = (s >> (24 + 3 * i)) & 7;
  }
}

// Orbit labels after joining each point with its image under p; each label is the least point of its block.
Perm merge_orbits(const Perm& orbit, const Perm& p, int d) {
  std::array<std::uint8_t, kMaxRealizableDegree> parent{};
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int i = 0; i < d; ++i) parent[i] = orbit[i];
  for (int i = 0; i < d; ++i) {
    int a = find(i), b = find(p[i]);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  Perm out{};
  for (int i = 0; i < d; ++i) out[i] = find(i);
  return out;
}

}  // namespace

bool realizable(const Passport& passport) {
  const int d = passport.degree;
  if (d > kMaxRealizableDegree) throw std::invalid_argument("realizability search is limited to degree 8");
  passport.validate();
  if (d == 1) return true;
  std::vector<Partition> fibers;
  for (const auto& f : passport.pole_fibers)
    if (!is_trivial(f)) fibers.push_back(normalize_partition(f));
  for (const auto& f : passport.free_fibers) fibers.push_back(normalize_partition(f));
  if (fibers.empty()) return false;
  // Parity of the product is forced.
  if (total_ramification(passport) % 2 != 0) return false;
  const ClassTable& classes = conjugacy_classes(d);
  // Larger classes last keeps the frontier small.
  std::sort(fibers.begin(), fibers.end(),
            [&](const Partition& a, const Partition& b) { return classes.at(a).size() < classes.at(b).size(); });

  Perm first = classes.at(fibers[0]).front();
  Perm id{};
  std::iota(id.begin(), id.begin() + d, 0);
  std::unordered_set<std::uint64_t> frontier{encode(first, merge_orbits(id, first, d), d)};
  for (std::size_t k = 1; k < fibers.size(); ++k) {
    std::unordered_set<std::uint64_t> next;
    const auto& cls = classes.at(fibers[k]);
    for (std::uint64_t s : frontier) {
      Perm prod{}, orbit{};
      decode(s, d, prod, orbit);
      for (const Perm& sigma : cls) {
        Perm q{};
        for (int i = 0; i < d; ++i) q[i] = sigma[prod[i]];
        next.insert(encode(q, merge_orbits(orbit, sigma, d), d));
      }
    }
    frontier = std::move(next);
  }
  Perm transitive{};
  return frontier.count(encode(id, transitive, d)) > 0;
}

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

int parse_int(const std::string& s, std::size_t pos) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); }) || s.size() > 6)
    throw ParseError(pos, "expected a positive integer, got '" + s + "'");
  return std::stoi(s);
}

// "[3,3]*2,[2,2,2]" or "simple*3"; offset is the position of text within the whole literal.
std::vector<Partition> parse_fiber_list(const std::string& text, std::size_t offset, int d) {
  std::vector<Partition> out;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip();
  if (text.substr(i) == "none" || i == text.size()) return out;
  while (i < text.size()) {
    Partition p;
    if (text.compare(i, 6, "simple") == 0 || text.compare(i, 7, "trivial") == 0) {
      bool simple = text[i] == 's';
      if (d < 1) throw ParseError(offset + i, "degree must precede fibers");
      if (simple && d < 2) throw ParseError(offset + i, "no simple fiber in degree 1");
      p = simple ? simple_fiber(d) : trivial_fiber(d);
      i += simple ? 6 : 7;
    } else if (text[i] == '[') {
      std::size_t close = text.find(']', i);
      if (close == std::string::npos) throw ParseError(offset + i, "expected ']'");
      std::stringstream ss(text.substr(i + 1, close - i - 1));
      std::string part;
      std::size_t at = i + 1;
      while (std::getline(ss, part, ',')) {
        p.push_back(parse_int(trim(part), offset + at));
        at += part.size() + 1;
      }
      i = close + 1;
    } else {
      throw ParseError(offset + i, "expected '[' or 'simple'");
    }
    skip();
    int repeat = 1;
    if (i < text.size() && text[i] == '*') {
      ++i;
      std::size_t start = i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      repeat = parse_int(text.substr(start, i - start), offset + start);
    }
    for (int r = 0; r < repeat; ++r) out.push_back(normalize_partition(p));
    skip();
    if (i < text.size()) {
      if (text[i] != ',') throw ParseError(offset + i, "expected ','");
      ++i;
      skip();
    }
  }
  return out;
}

}  // namespace

Passport parse_passport(std::string_view text) {
  Passport p{0, {}, {}};
  bool have_d = false;
  std::size_t start = 0;
  std::string s(text);
  while (start <= s.size()) {
    std::size_t end = s.find(';', start);
    if (end == std::string::npos) end = s.size();
    std::string field = s.substr(start, end - start);
    std::size_t eq = field.find('=');
    if (trim(field).empty()) {
      start = end + 1;
      continue;
    }
    if (eq == std::string::npos) throw ParseError(start, "expected key=value");
    std::string key = trim(field.substr(0, eq));
    std::string value = field.substr(eq + 1);
    std::size_t vpos = start + eq + 1;
    if (key == "d") {
      p.degree = parse_int(trim(value), vpos);
      have_d = true;
    } else if (key == "poles") {
      p.pole_fibers = parse_fiber_list(value, vpos, p.degree);
    } else if (key == "free") {
      p.free_fibers = parse_fiber_list(value, vpos, p.degree);
    } else {
      throw ParseError(start, "unknown key '" + key + "'");
    }
    start = end + 1;
  }
  if (!have_d) throw ParseError(0, "missing d=");
  try {
    p.validate();
  } catch (const InconsistentPassport& e) {
    throw ParseError(0, e.what());
  }
  return p;
}

std::string format_partition(const Partition& p) {
  std::string s = "[";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
  return s + "]";
}

std::string format_passport(const Passport& p) {
  std::string s = "d=" + std::to_string(p.degree) + "; poles=";
  for (std::size_t i = 0; i < p.pole_fibers.size(); ++i) s += (i ? "," : "") + format_partition(p.pole_fibers[i]);
  s += "; free=";
  if (p.free_fibers.empty()) return s + "none";
  std::size_t i = 0;
  bool first = true;
  while (i < p.free_fibers.size()) {
    std::size_t j = i;
    while (j < p.free_fibers.size() && p.free_fibers[j] == p.free_fibers[i]) ++j;
    if (!first) s += ",";
    first = false;
    s += p.free_fibers[i] == simple_fiber(p.degree) ? "simple" : format_partition(p.free_fibers[i]);
    if (j - i > 1) s += "*" + std::to_string(j - i);
    i = j;
  }
  return s;
}

}  // namespace gk
