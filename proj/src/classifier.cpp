#include "gk/classifier.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <tuple>

#include "gk/ratfunc.hpp"

namespace gk {

namespace {

constexpr long kInfiniteRank = 1 << 20;

long nu_rank(const FormalDatum& p) {
  if (p.kappa != HalfInt()) return 0;
  auto nu = orbifold_order(p.theta);
  return nu ? *nu : kInfiniteRank;
}

std::vector<Partition> partitions(int d) {
  std::vector<Partition> out;
  Partition cur;
  std::function<void(int, int)> rec = [&](int left, int max_part) {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    for (int m = std::min(left, max_part); m >= 1; --m) {
      cur.push_back(m);
      rec(left - m, m);
      cur.pop_back();
    }
  };
  rec(d, d);
  return out;
}

// Pole fibers allowed over one pole in scattered mode.
std::vector<Partition> scattered_fibers(const FormalDatum& pole, int d) {
  long nu = !pole.kappa.is_integer() ? 2 : nu_rank(pole);
  if (nu < 2 || nu == kInfiniteRank) return {trivial_fiber(d)};
  std::vector<Partition> out;
  for (int a = static_cast<int>(d / nu); a >= 0; --a) {
    Partition p(a, static_cast<int>(nu));
    p.insert(p.end(), d - a * nu, 1);
    out.push_back(p);
  }
  return out;
}

// Multisets of ramified fibers with total ramification r, in non-increasing order.
std::vector<std::vector<Partition>> free_fiber_sets(int d, int r) {
  std::vector<Partition> parts;
  for (auto& p : partitions(d))
    if (!is_trivial(p)) parts.push_back(p);
  std::vector<std::vector<Partition>> out;
  std::vector<Partition> cur;
  std::function<void(std::size_t, int)> rec = [&](std::size_t from, int left) {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = from; i < parts.size(); ++i) {
      int ri = ramification(parts[i]);
      if (ri > left) continue;
      cur.push_back(parts[i]);
      rec(i, left - ri);
      cur.pop_back();
    }
  };
  rec(0, r);
  return out;
}

std::string param_name(std::size_t i, std::size_t count) {
  return count == 1 ? std::string("theta") : "theta" + std::to_string(i + 1);
}

// Renames the parameters of the base in order of first appearance.
void name_parameters(BaseEquation& base) {
  std::vector<std::string> seen;
  for (const auto& p : base.poles)
    for (const auto& [k, v] : p.theta.coeffs())
      if (std::find(seen.begin(), seen.end(), k) == seen.end()) seen.push_back(k);
  std::map<std::string, std::string> names;
  for (std::size_t i = 0; i < seen.size(); ++i) names[seen[i]] = "#" + param_name(i, seen.size());
  for (auto& p : base.poles) p.theta = p.theta.renamed(names);
  names.clear();
  for (std::size_t i = 0; i < seen.size(); ++i) names["#" + param_name(i, seen.size())] = param_name(i, seen.size());
  for (auto& p : base.poles) p.theta = p.theta.renamed(names);
}

std::optional<Catalog> catalog_of(const FormalData& poles) {
  std::vector<HalfInt> k;
  for (const auto& p : poles) k.push_back(p.kappa);
  std::sort(k.begin(), k.end());
  auto h = [](int twice) { return HalfInt::from_twice(twice); };
  if (k == std::vector<HalfInt>{h(0), h(0), h(0)}) return Catalog::Gauss;
  if (k == std::vector<HalfInt>{h(0), h(2)}) return Catalog::Kummer;
  if (k == std::vector<HalfInt>{h(4)}) return Catalog::Weber;
  if (k == std::vector<HalfInt>{h(0), h(1)}) return Catalog::DegenerateConfluent;
  if (k == std::vector<HalfInt>{h(3)}) return Catalog::Airy;
  return std::nullopt;
}

// Formal criteria for reducible or dihedral monodromy of the standard equations.
bool galois_excluded(const BaseEquation& b) {
  if (!b.catalog) return false;
  auto log_theta = [&]() -> const Exponent& {
    for (const auto& p : b.poles)
      if (p.kappa == HalfInt()) return p.theta;
    return b.poles.front().theta;
  };
  auto irr_theta = [&]() -> const Exponent& {
    for (const auto& p : b.poles)
      if (p.kappa != HalfInt()) return p.theta;
    return b.poles.front().theta;
  };
  auto in_2z = [](const Exponent& e) { return e.is_integer() && e.rational().get_num() % 2 == 0; };
  switch (*b.catalog) {
    case Catalog::DegenerateConfluent: {
      const Exponent& t = log_theta();
      return t.is_rational() && t.rational().get_den() == 2;
    }
    case Catalog::Kummer: return in_2z(irr_theta() - log_theta()) || in_2z(irr_theta() + log_theta());
    case Catalog::Weber: return in_2z(irr_theta());
    default: return false;
  }
}

struct PoleType {
  HalfInt kappa;
  long nu;  // 0 for irregular, kInfiniteRank for a generic exponent
};

std::vector<PoleType> pole_types(BaseMode mode) {
  std::vector<PoleType> t;
  for (long nu = 2; nu <= 6; ++nu) t.push_back({HalfInt(), nu});
  t.push_back({HalfInt(), kInfiniteRank});
  if (mode == BaseMode::Irregular)
    for (int twice = 1; twice <= 4; ++twice) t.push_back({HalfInt::from_twice(twice), 0});
  return t;
}

}  // namespace

bool pole_less(const FormalDatum& a, const FormalDatum& b) {
  auto key = [](const FormalDatum& p) { return std::make_tuple(p.kappa != HalfInt(), p.kappa, nu_rank(p)); };
  if (key(a) != key(b)) return key(a) < key(b);
  return a.theta < b.theta;
}

std::vector<BaseEquation> enumerate_bases(BaseMode mode) {
  const std::vector<PoleType> types = pole_types(mode);
  const std::size_t max_poles = mode == BaseMode::Logarithmic ? 5 : 3;
  std::vector<BaseEquation> out;
  std::vector<std::size_t> pick;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    if (!pick.empty()) {
      BaseEquation b;
      bool irregular = false, generic = false;
      int fresh = 0;
      for (std::size_t i : pick) {
        const PoleType& t = types[i];
        irregular |= t.kappa != HalfInt();
        Exponent theta = 0;
        if (t.kappa == HalfInt() && t.nu != kInfiniteRank) {
          theta = BigRat(1, t.nu);
        } else if (t.kappa.is_integer()) {
          theta = Exponent::parameter("p" + std::to_string(fresh++));
          generic |= t.kappa == HalfInt();
        }
        b.poles.push_back(FormalDatum::make(t.kappa, theta));
      }
      bool keep = mode == BaseMode::Logarithmic ? (!irregular && generic) : irregular;
      BigRat chi = chi_irr(b);
      if (keep && chi < 0 && chi >= BigRat(-1, 2)) {
        std::stable_sort(b.poles.begin(), b.poles.end(), pole_less);
        name_parameters(b);
        b.catalog = catalog_of(b.poles);
        if (!galois_excluded(b)) out.push_back(b);
      }
    }
    if (pick.size() == max_poles) return;
    for (std::size_t i = from; i < types.size(); ++i) {
      pick.push_back(i);
      rec(i);
      pick.pop_back();
    }
  };
  rec(0);
  return out;
}

std::string isomonodromy_label(long T, const FormalData& target) {
  std::vector<HalfInt> k;
  for (const auto& p : target) k.push_back(p.kappa);
  std::sort(k.begin(), k.end());
  if (T >= 2) {
    std::string s = "Gar" + std::to_string(T) + "(";
    for (std::size_t i = 0; i < k.size(); ++i) s += (i ? "," : "") + k[i].to_string();
    return s + ")";
  }
  if (T != 1) return "";
  std::string key;
  for (std::size_t i = 0; i < k.size(); ++i) key += (i ? "," : "") + k[i].to_string();
  static const std::map<std::string, std::string> names{
      {"0,0,0,0", "P_VI"},       {"0,0,1", "P_V"},          {"0,0,1/2", "P_V"},        {"0,2", "P_IV"},
      {"0,3/2", "P_II"},         {"1,1", "P_III^D6"},       {"1/2,1", "P_III^D7"},     {"1/2,1/2", "P_III^D8"},
      {"3", "P_II"},             {"5/2", "P_I"},
  };
  auto it = names.find(key);
  return it == names.end() ? "" : it->second;
}

namespace {

struct Candidate {
  BaseEquation base;
  Passport passport;
};

// Generic-exponent collapse, canonical pole order and parameter names.
Candidate canonicalize(const BaseEquation& base, const Passport& passport) {
  std::vector<std::pair<FormalDatum, Partition>> poles;
  for (std::size_t k = 0; k < base.poles.size(); ++k) {
    FormalDatum p = base.poles[k];
    const Partition& f = passport.pole_fibers[k];
    if (p.kappa == HalfInt())
      if (auto nu = orbifold_order(p.theta); nu && *nu >= 2)
        if (std::none_of(f.begin(), f.end(), [&](int m) { return m % *nu == 0; }))
          p.theta = Exponent::parameter("~" + std::to_string(k));
    poles.emplace_back(p, normalize_partition(f));
  }
  // Parameters are placeholders here, so generic poles of one kind are ordered by their fibers.
  std::stable_sort(poles.begin(), poles.end(), [](const auto& a, const auto& b) {
    auto key = [](const auto& x) {
      return std::make_tuple(x.first.kappa != HalfInt(), x.first.kappa, nu_rank(x.first));
    };
    if (key(a) != key(b)) return key(a) < key(b);
    if (a.second != b.second) return a.second > b.second;
    return a.first.theta < b.first.theta;
  });
  Candidate c;
  c.base.genus0 = base.genus0;
  c.passport.degree = passport.degree;
  for (auto& [p, f] : poles) {
    c.base.poles.push_back(p);
    c.passport.pole_fibers.push_back(f);
  }
  name_parameters(c.base);
  c.base.catalog = catalog_of(c.base.poles);
  c.passport.free_fibers = passport.free_fibers;
  for (auto& f : c.passport.free_fibers) f = normalize_partition(f);
  std::sort(c.passport.free_fibers.begin(), c.passport.free_fibers.end(), std::greater<>());
  return c;
}

std::tuple<std::vector<HalfInt>, std::vector<long>, std::string> base_key(const BaseEquation& b) {
  std::vector<HalfInt> kappas;
  std::vector<long> nus;
  for (const auto& p : b.poles) {
    kappas.push_back(p.kappa);
    nus.push_back(nu_rank(p));
  }
  return {kappas, nus, format_columns(b.poles)};
}

}  // namespace

std::vector<ClassRow> search(SearchMode mode, int max_degree) {
  if (max_degree > 8) throw std::invalid_argument("max degree is limited to 8");
  std::vector<BaseEquation> bases =
      enumerate_bases(mode == SearchMode::Log ? BaseMode::Logarithmic : BaseMode::Irregular);
  std::map<std::string, ClassRow> found;
  for (const auto& base : bases) {
    BigRat chi = chi_irr(base);
    BigRat inv = -1 / chi;
    int dmax = std::min<long>(max_degree, mpz_class(inv.get_num() / inv.get_den()).get_si());
    for (int d = 2; d <= dmax; ++d) {
      std::vector<std::vector<Partition>> choices;
      for (const auto& p : base.poles)
        choices.push_back(mode == SearchMode::Confluent ? partitions(d) : scattered_fibers(p, d));
      std::vector<std::size_t> idx(choices.size(), 0);
      for (;;) {
        Passport pass{d, {}, {}};
        int r = 0;
        for (std::size_t k = 0; k < idx.size(); ++k) {
          pass.pole_fibers.push_back(choices[k][idx[k]]);
          r += ramification(choices[k][idx[k]]);
        }
        int free_r = 2 * d - 2 - r;
        if (free_r >= 0) {
          std::vector<std::vector<Partition>> free_sets;
          if (mode == SearchMode::Confluent)
            free_sets = free_fiber_sets(d, free_r);
          else
            free_sets.push_back(std::vector<Partition>(free_r, simple_fiber(d)));
          for (auto& fs : free_sets) {
            pass.free_fibers = fs;
            if (mode == SearchMode::Confluent && is_scattered(base, pass)) continue;
            CoverAnalysis a = analyze_cover(base, pass);
            if (a.genus != 0 || !a.admissible) continue;
            if (!realizable(pass)) continue;
            Candidate c = canonicalize(base, pass);
            std::string key = format_columns(c.base.poles) + "|" + format_passport(c.passport);
            if (found.count(key)) continue;
            ClassRow row;
            row.analysis = analyze_cover(c.base, c.passport);
            std::stable_sort(row.analysis.target.begin(), row.analysis.target.end(), pole_less);
            row.base = c.base;
            row.passport = c.passport;
            row.label = isomonodromy_label(row.analysis.T, row.analysis.target);
            const auto& known = known_rows(mode);
            row.galois_filter_uncertain =
                std::none_of(known.begin(), known.end(), [&](const KnownRow& k) { return matches_known(row, k); });
            found.emplace(key, std::move(row));
          }
        }
        std::size_t k = 0;
        while (k < idx.size() && ++idx[k] == choices[k].size()) idx[k++] = 0;
        if (k == idx.size()) break;
      }
    }
  }
  std::vector<ClassRow> rows;
  for (auto& [k, v] : found) rows.push_back(std::move(v));
  std::sort(rows.begin(), rows.end(), [](const ClassRow& a, const ClassRow& b) {
    auto ka = base_key(a.base), kb = base_key(b.base);
    if (ka != kb) return ka < kb;
    if (a.degree() != b.degree()) return a.degree() > b.degree();
    return a.passport < b.passport;
  });
  return rows;
}

const std::vector<KnownRow>& known_rows(SearchMode mode) {
  static const std::vector<KnownRow> log{
      {"(0,1/2)(0,1/3)(0,theta)", "d=6; poles=[2,2,2],[3,3],[1,1,1,1,1,1]; free=simple*3", "", ""},
      {"(0,1/2)(0,1/3)(0,theta)", "d=4; poles=[2,2],[3,1],[1,1,1,1]; free=simple*2", "", ""},
      {"(0,1/2)(0,1/3)(0,theta)", "d=3; poles=[2,1],[3],[1,1,1]; free=simple", "", ""},
      {"(0,1/2)(0,1/4)(0,theta)", "d=4; poles=[2,2],[4],[1,1,1,1]; free=simple", "", ""},
      {"(0,1/2)(0,theta1)(0,theta2)", "d=2; poles=[2],[1,1],[1,1]; free=simple", "", ""},
  };
  static const std::vector<KnownRow> scattered{
      {"(0,1/3)(1/2,0)", "d=6; poles=[3,3],[2,2,2]; free=simple*3", "(1,0)(1,0)(1,1)", "Gar3(1,1,1)"},
      {"(0,1/3)(1/2,0)", "d=4; poles=[3,1],[2,2]; free=simple*2", "(0,1/3)(1,0)(1,1)", "Gar2(0,1,1)"},
      {"(0,1/3)(1/2,0)", "d=3; poles=[3],[2,1]; free=simple", "(1/2,0)(1,0)", "P_III^D7"},
      {"(0,1/4)(1/2,0)", "d=4; poles=[4],[2,2]; free=simple", "(1,0)(1,1)", "P_III^D6"},
      {"(0,theta)(1/2,0)", "d=2; poles=[1,1],[2]; free=simple", "(0,theta-1)(1,0)(0,theta)", "P_V"},
      {"(0,1/2)(1,theta)", "d=2; poles=[2],[1,1]; free=simple", "(1,theta-1)(1,theta)", "P_III^D6"},
      {"(3/2,0)", "d=2; poles=[2]; free=simple", "(3,0)", "P_II"},
  };
  static const std::vector<KnownRow> confluent{
      {"(0,1/3)(1/2,0)", "d=6; poles=[3,3],[4,2]; free=simple*2", "(1,0)(2,1)", "Gar2(1,2)"},
      {"(0,1/3)(1/2,0)", "d=6; poles=[3,3],[6]; free=simple", "(3,1)", "P_II"},
      {"(0,1/3)(1/2,0)", "d=4; poles=[3,1],[4]; free=simple", "(0,1/3)(2,1)", "P_IV"},
  };
  switch (mode) {
    case SearchMode::Log: return log;
    case SearchMode::Scattered: return scattered;
    case SearchMode::Confluent: return confluent;
  }
  return log;
}

bool matches_known(const ClassRow& row, const KnownRow& known) {
  if (format_columns(row.base.poles) != format_columns(parse_formal_data(known.base))) return false;
  Passport p = parse_passport(known.passport);
  std::sort(p.free_fibers.begin(), p.free_fibers.end(), std::greater<>());
  if (p != row.passport) return false;
  if (!known.target.empty() && !gauge_equivalent(row.analysis.target, parse_formal_data(known.target))) return false;
  return known.label.empty() || known.label == row.label;
}

namespace {

nlohmann::ordered_json data_json(const FormalData& data) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& p : data) arr.push_back({{"kappa", p.kappa.to_string()}, {"theta", p.theta.to_string()}});
  return arr;
}

}  // namespace

nlohmann::ordered_json to_json(const ClassRow& row) {
  nlohmann::ordered_json j;
  j["base"] = data_json(row.base.poles);
  j["degree"] = row.degree();
  nlohmann::ordered_json pass;
  pass["poles"] = row.passport.pole_fibers;
  int simple = 0;
  auto other = nlohmann::ordered_json::array();
  for (const auto& f : row.passport.free_fibers) {
    if (f == simple_fiber(row.degree()))
      ++simple;
    else
      other.push_back(f);
  }
  pass["free_simple"] = simple;
  if (!other.empty()) pass["free_other"] = other;
  j["passport"] = pass;
  j["target"] = data_json(row.analysis.target);
  j["T"] = row.analysis.T;
  j["B"] = row.analysis.B;
  j["genus"] = row.analysis.genus;
  j["label"] = row.label;
  if (row.galois_filter_uncertain) j["galois_filter_uncertain"] = true;
  return j;
}

std::string format_row(const ClassRow& row) {
  std::string s = "base " + format_columns(row.base.poles) + "  d=" + std::to_string(row.degree()) + "  passport " +
                  format_passport(row.passport) + "  B=" + std::to_string(row.analysis.B) +
                  "  T=" + std::to_string(row.analysis.T) + "  target " + format_columns(row.analysis.target);
  if (!row.label.empty()) s += "  " + row.label;
  if (row.galois_filter_uncertain) s += "  [Galois-filter uncertain]";
  return s;
}

std::optional<SearchMode> parse_search_mode(std::string_view s) {
  if (s == "log") return SearchMode::Log;
  if (s == "scattered") return SearchMode::Scattered;
  if (s == "confluent") return SearchMode::Confluent;
  return std::nullopt;
}

}  // namespace gk
