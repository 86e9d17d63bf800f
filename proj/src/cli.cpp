#include "gk/cli.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "gk/classifier.hpp"
#include "gk/covers.hpp"
#include "gk/garnier.hpp"
#include "gk/odes.hpp"
#include "gk/tables.hpp"
#include "json.hpp"

namespace gk::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

const std::set<std::string> kHamiltonianIds{"kim122", "kim23", "kaw4", "pii"};

std::string clipped(const std::string& s, std::size_t limit = 400) {
  if (s.size() <= limit) return s;
  return s.substr(0, limit) + "... (" + std::to_string(s.size()) + " chars)";
}

std::pair<std::string, std::string> split_binding(const std::string& text) {
  auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) throw UsageError("--set expects sym=expr, got '" + text + "'");
  auto trim = [](std::string s) {
    s.erase(0, s.find_first_not_of(" \t"));
    s.erase(s.find_last_not_of(" \t") + 1);
    return s;
  };
  return {trim(text.substr(0, eq)), trim(text.substr(eq + 1))};
}

// ---------------------------------------------------------------------------

int cmd_classify(const std::string& mode_text, int max_degree, bool json, std::ostream& out) {
  auto mode = parse_search_mode(mode_text);
  if (!mode) throw UsageError("unknown mode: " + mode_text);
  if (max_degree < 2) throw UsageError("--max-degree must be at least 2");
  auto rows = search(*mode, max_degree);
  std::vector<const KnownRow*> expected;
  for (const auto& k : known_rows(*mode))
    if (parse_passport(k.passport).degree <= max_degree) expected.push_back(&k);
  std::vector<bool> hit(expected.size(), false);
  std::size_t unmatched = 0;
  for (const auto& r : rows) {
    bool found = false;
    for (std::size_t i = 0; i < expected.size() && !found; ++i)
      if (!hit[i] && matches_known(r, *expected[i])) hit[i] = found = true;
    if (!found) ++unmatched;
  }
  std::size_t matched = std::count(hit.begin(), hit.end(), true);
  bool ok = matched == expected.size() && unmatched == 0;
  if (json) {
    nlohmann::ordered_json j;
    j["mode"] = mode_text;
    j["max_degree"] = max_degree;
    auto arr = nlohmann::ordered_json::array();
    for (const auto& r : rows) arr.push_back(to_json(r));
    j["rows"] = arr;
    j["known_matched"] = matched;
    j["known_expected"] = expected.size();
    j["unmatched"] = unmatched;
    out << j.dump(2) << "\n";
  } else {
    for (const auto& r : rows) out << format_row(r) << "\n";
    out << rows.size() << " rows; known rows matched " << matched << "/" << expected.size();
    if (unmatched) out << "; " << unmatched << " rows not in the known list";
    out << "\n";
    for (std::size_t i = 0; i < expected.size(); ++i)
      if (!hit[i]) out << "missing: base " << expected[i]->base << "  " << expected[i]->passport << "\n";
  }
  return ok ? kOk : kFailed;
}

// ---------------------------------------------------------------------------

void show_hamiltonian_mismatches(const std::string& id, const HamiltonianSystem& sys, std::ostream& out) {
  auto report = [&](const std::string& what, const std::vector<RatFunc>& stated, const std::vector<RatFunc>& derived) {
    for (std::size_t i = 0; i < stated.size() && i < derived.size(); ++i) {
      std::string name = sys.accessory.empty() ? "H" + std::to_string(i + 1) : sys.accessory[i];
      if (stated[i] == derived[i]) {
        out << what << " " << name << ": agrees\n";
        continue;
      }
      out << what << " " << name << ": MISMATCH\n";
      out << "  stated:  " << clipped(stated[i].to_string(), 2000) << "\n";
      out << "  derived: " << clipped(derived[i].to_string(), 2000) << "\n";
    }
  };
  if (!sys.printed_hamiltonians.empty()) {
    report("printed Hamiltonian vs accessory solve,", sys.printed_hamiltonians, sys.hamiltonians);
    if (id == "kim122")
      report("printed Hamiltonian with p2 closing the q2 blocks vs accessory solve,",
             kim122_printed_hamiltonians(true), sys.hamiltonians);
    out << "residuals below use the derived Hamiltonians\n";
  }
  if (id == "kim23") {
    auto h = solve_accessory(kim23_template_printed(), sys.accessory, sys.apparent_points);
    report("printed Hamiltonian vs accessory solve on the printed linear template,", sys.hamiltonians,
           {h.at("H1"), h.at("H2")});
    h = solve_accessory(*sys.linear_template, sys.accessory, sys.apparent_points);
    report("printed Hamiltonian vs accessory solve on the corrected linear template,", sys.hamiltonians,
           {h.at("H1"), h.at("H2")});
  }
}

bool verify_hamiltonian(const std::string& id, const std::vector<std::pair<std::string, std::string>>& sets,
                        std::ostream& out) {
  auto [sys, sol] = builtin_solution(id);
  const auto& names = sys.hamiltonians.front().ring()->names();
  for (const auto& [sym, expr] : sets) {
    if (sol.assignments.count(sym))
      sol.assignments.at(sym) = parse(expr, names);
    else if (sol.parameters.count(sym))
      sol.parameters.at(sym) = parse(expr, names);
    else
      throw UsageError("solution " + id + " has no symbol " + sym);
    out << "override " << sym << " = " << expr << "\n";
  }
  out << "system " << id << "\n";
  if (sol.ctx)
    out << "relation " << sol.ctx->relation().to_string() << " = 0 in " << sol.ctx->generator() << "\n";
  else
    out << "relation none\n";
  for (const auto& [k, v] : sol.parameters) out << "parameter " << k << " = " << v.to_string() << "\n";
  for (const auto& [k, v] : sol.assignments) out << "assign " << k << " = " << v.to_string() << "\n";
  show_hamiltonian_mismatches(id, sys, out);
  auto res = hamilton_residual(sys, sol);
  std::size_t zero = 0;
  for (const auto& r : res) {
    out << "  " << r.name << " : " << (r.zero ? "0" : clipped(r.value.to_string())) << "\n";
    zero += r.zero;
  }
  out << zero << "/" << res.size() << " residuals zero\n";
  return zero == res.size();
}

bool verify_painleve(const std::string& id, const std::vector<std::pair<std::string, std::string>>& sets,
                     std::ostream& out) {
  PainleveSolution sol = painleve_solution(id);
  std::vector<std::string> names = sol.q.ring()->names();
  for (const auto& [sym, expr] : sets) {
    if (sym == "q")
      sol.q = parse(expr, names);
    else if (sym == "t")
      sol.t = parse(expr, names);
    else
      continue;
    out << "override " << sym << " = " << expr << "\n";
  }
  out << sol.name << ": " << painleve_form_name(sol.form) << "(";
  for (std::size_t i = 0; i < sol.params.size(); ++i) out << (i ? ", " : "") << sol.params[i].to_string();
  out << ")  stated " << sol.q_text << "  uniformizer " << sol.uniformizer << ": q = " << sol.q.to_string()
      << ", t = " << sol.t.to_string() << "\n";
  RatFunc r = painleve_residual(sol.form, sol.params, sol);
  out << "residual " << (r.is_zero() ? "0" : clipped(r.to_string())) << "\n";
  return r.is_zero();
}

int cmd_verify(const std::string& id, const std::vector<std::string>& set_texts, std::ostream& out) {
  std::vector<std::pair<std::string, std::string>> sets;
  for (const auto& s : set_texts) sets.push_back(split_binding(s));
  auto ids = painleve_solution_ids();
  bool painleve = std::find(ids.begin(), ids.end(), id) != ids.end();
  bool hamiltonian = kHamiltonianIds.count(id) > 0;
  if (!painleve && !hamiltonian) throw UsageError("unknown solution: " + id);
  if (!hamiltonian)
    for (const auto& [sym, expr] : sets)
      if (sym != "q" && sym != "t") throw UsageError("solution " + id + " accepts overrides of q and t only");
  bool ok = true;
  if (hamiltonian) ok = verify_hamiltonian(id, sets, out) && ok;
  if (painleve) ok = verify_painleve(id, sets, out) && ok;
  out << (ok ? "verified" : "FAILED") << "\n";
  return ok ? kOk : kFailed;
}

// ---------------------------------------------------------------------------

int cmd_pullback(const std::string& id, std::ostream& out) {
  if (id != "kim122" && id != "kim23" && id != "kaw4") throw UsageError("unknown pull-back case: " + id);
  PullbackReport rep = verify_pullback(id);
  out << "case " << id << "\n";
  out << "base Q(z) = " << rep.base_q.to_string() << "\n";
  out << "cover z = " << rep.cover.value.to_string() << "\n";
  out << "pulled-back Q equals the linear problem modulo the relation: " << (rep.equal ? "yes" : "NO") << "\n";
  if (!rep.equal) {
    out << "  pulled back: " << clipped(rep.pulled.to_string(), 4000) << "\n";
    out << "  target:      " << clipped(rep.target.to_string(), 4000) << "\n";
    out << "  difference:  " << clipped(rep.difference.to_string(), 4000) << "\n";
  }
  out << "poles of the pulled-back equation:\n";
  for (const auto& [name, inv] : rep.poles) out << "  x = " << name << ": " << inv.to_string() << "\n";
  for (const auto& [k, v] : rep.extracted) {
    const RatFunc& want = rep.expected.at(k);
    bool same = v == want;
    out << "extracted " << k << " = " << v.to_string() << "  stated " << want.to_string() << (same ? "  ok" : "  MISMATCH")
        << "\n";
  }
  out << (rep.ok() ? "verified" : "FAILED") << "\n";
  return rep.ok() ? kOk : kFailed;
}

// ---------------------------------------------------------------------------

std::vector<std::string> symbols_with(const std::string& var, const std::vector<std::string>& texts) {
  std::vector<std::string> syms{var};
  for (const auto& t : texts) {
    if (t == "inf" || t == "infinity" || t == "oo") continue;
    RatFunc r = parse(t);
    for (const auto& s : r.ring()->names())
      if (std::find(syms.begin(), syms.end(), s) == syms.end()) syms.push_back(s);
  }
  return syms;
}

int cmd_invariants(const std::string& q_text, const std::string& point_text, const std::string& var, bool json,
                   std::ostream& out) {
  auto syms = symbols_with(var, {q_text, point_text});
  SLForm q{var, parse(q_text, syms), std::nullopt};
  Point p = parse_point(point_text, syms);
  if (!p.infinity && p.value.depends_on(var)) throw UsageError("point must not depend on " + var);
  LocalInvariant inv = local_invariants(q, p);
  if (json) {
    nlohmann::ordered_json j;
    j["point"] = format_point(p);
    j["kappa"] = inv.kappa.to_string();
    j["pole_order"] = inv.pole_order;
    j["theta"] = inv.theta ? nlohmann::ordered_json(inv.theta->to_string()) : nlohmann::ordered_json();
    j["theta_raw"] = inv.theta_raw ? nlohmann::ordered_json(inv.theta_raw->to_string()) : nlohmann::ordered_json();
    j["theta_squared"] = inv.theta_squared.to_string();
    j["apparent"] = inv.apparent ? nlohmann::ordered_json(*inv.apparent) : nlohmann::ordered_json();
    out << j.dump(2) << "\n";
  } else {
    out << "point " << format_point(p) << "\n";
    out << "kappa " << inv.kappa.to_string() << "\n";
    out << "theta ";
    if (inv.theta)
      out << inv.theta->to_string();
    else if (inv.theta_raw)
      out << inv.theta_raw->to_string();
    else
      out << "sqrt(" << inv.theta_squared.to_string() << ")";
    out << "\n";
    if (inv.theta_raw) out << "theta_raw " << inv.theta_raw->to_string() << "\n";
    out << "pole_order " << inv.pole_order << "\n";
    if (inv.apparent) out << "apparent " << (*inv.apparent ? "yes" : "no") << "\n";
  }
  return kOk;
}

// ---------------------------------------------------------------------------

void print_ledger(const std::string& label, const BaseEquation& base, const Passport& p, std::ostream& out) {
  CoverAnalysis a = analyze_cover(base, p);
  out << label << " " << format_passport(p) << "  N-B=" << a.N - a.B << "  T-B=" << a.T - a.B << "  (N=" << a.N
      << " T=" << a.T << " B=" << a.B << " g=" << a.genus << ")\n";
}

int cmd_scatter(const std::string& base_text, const std::string& passport_text, std::ostream& out) {
  BaseEquation base{0, parse_formal_data(base_text), std::nullopt};
  Passport p = parse_passport(passport_text);
  if (p.pole_fibers.size() != base.poles.size())
    throw UsageError("passport lists " + std::to_string(p.pole_fibers.size()) + " pole fibers for " +
                     std::to_string(base.poles.size()) + " poles");
  Passport s = scatter(base, p);
  out << "base " << format_columns(base.poles) << "  chi_irr=" << to_string(chi_irr(base)) << "\n";
  print_ledger("input    ", base, p, out);
  print_ledger("scattered", base, s, out);
  out << "scattered: " << (is_scattered(base, s) ? "yes" : "no") << "\n";
  return kOk;
}

// ---------------------------------------------------------------------------

std::string nk_list(const std::vector<BigRat>& nk) {
  std::string s = "[";
  for (std::size_t i = 0; i < nk.size(); ++i) s += (i ? "," : "") + to_string(nk[i]);
  return s + "]";
}

int cmd_tables(std::ostream& out) {
  bool ok = true;
  auto check = [&](bool cond) {
    if (!cond) ok = false;
    return cond ? "" : "  MISMATCH";
  };
  out << "Painleve equations as isomonodromy equations (T recomputed, expected 1)\n";
  for (const auto& r : painleve_data_table()) {
    long t = teich_dim(0, parse_formal_data(r.data));
    out << "  " << r.data << "  " << r.equation << "  T=" << t << check(t == 1) << "\n";
  }
  out << "\nAlgebraic solutions of irregular Painleve equations\n";
  for (const auto& r : painleve_solution_table()) {
    FormalData fd = parse_formal_data(r.data);
    long t = teich_dim(0, fd);
    out << "  " << r.name << "  " << r.equation << "  " << r.solution << "  " << r.data << "  " << r.galois
        << "  pull-back " << (r.pullback ? "yes" : "no") << "  apparent " << (r.apparent ? "yes" : "no")
        << "  T=" << t << check(t == 1) << "\n";
  }
  const std::pair<const char*, SearchMode> sections[] = {{"Logarithmic classification", SearchMode::Log},
                                                         {"Irregular classification, scattered", SearchMode::Scattered},
                                                         {"Irregular classification, confluent", SearchMode::Confluent}};
  for (const auto& [title, mode] : sections) {
    out << "\n" << title << " (g, N_k, T, B, chi_irr, d|chi_irr| recomputed)\n";
    for (const auto& k : known_rows(mode)) {
      BaseEquation base{0, parse_formal_data(k.base), std::nullopt};
      Passport p = parse_passport(k.passport);
      CoverAnalysis a = analyze_cover(base, p);
      BigRat chi = chi_irr(base);
      BigRat load = -chi * p.degree;
      load.canonicalize();
      out << "  " << k.base << "  " << k.passport << "  target " << format_pairs(a.target) << "  g=" << a.genus
          << " N_k=" << nk_list(a.N_k) << " T=" << a.T << " B=" << a.B << " chi_irr=" << to_string(chi)
          << " d|chi_irr|=" << to_string(load);
      if (!k.label.empty()) out << "  " << k.label;
      out << check(a.admissible && a.T == a.B && load <= 1 && a.genus == 0) << "\n";
    }
  }
  const std::pair<const char*, const std::vector<GarnierDataEntry>*> lists[] = {
      {"Non-classical algebraic solutions", &nonclassical_list()}, {"Classical algebraic solutions", &classical_list()}};
  for (const auto& [title, list] : lists) {
    out << "\n" << title << " (T expected to equal the rank)\n";
    for (const auto& e : *list) {
      long t = teich_dim(0, parse_formal_data(e.data));
      out << "  " << e.data << "  " << e.family << "  rank " << e.rank << "  T=" << t << check(t == e.rank) << "\n";
    }
  }
  return ok ? kOk : kFailed;
}

// ---------------------------------------------------------------------------

std::optional<PainleveForm> parse_form(const std::string& s) {
  static const std::map<std::string, PainleveForm> forms{
      {"I", PainleveForm::I},   {"II", PainleveForm::II},       {"III", PainleveForm::III},
      {"III'", PainleveForm::IIIOkamoto}, {"IV", PainleveForm::IV}, {"V", PainleveForm::V},
      {"VI", PainleveForm::VI}};
  auto it = forms.find(s);
  if (it == forms.end()) return std::nullopt;
  return it->second;
}

int cmd_check_painleve(std::vector<std::string> ids, const std::string& form_text, std::ostream& out) {
  std::optional<PainleveForm> form;
  if (!form_text.empty()) {
    form = parse_form(form_text);
    if (!form) throw UsageError("unknown Painleve form: " + form_text);
  }
  auto known = painleve_solution_ids();
  if (ids.empty()) ids = known;
  bool ok = true;
  for (const auto& id : ids) {
    if (std::find(known.begin(), known.end(), id) == known.end()) throw UsageError("unknown solution: " + id);
    PainleveSolution sol = painleve_solution(id);
    PainleveForm f = form.value_or(sol.form);
    RatFunc r = painleve_residual(f, sol.params, sol);
    ok = ok && r.is_zero();
    out << id << "  " << sol.name << "  " << painleve_form_name(f) << "  " << sol.q_text << "  residual "
        << (r.is_zero() ? "0" : clipped(r.to_string())) << "\n";
  }
  out << (ok ? "all residuals zero" : "FAILED") << "\n";
  return ok ? kOk : kFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pull-back algebraic solutions of irregular Garnier systems", "gk"};
  app.require_subcommand(1);

  std::string mode;
  int max_degree = 6;
  bool json = false;
  auto* classify = app.add_subcommand("classify", "enumerate admissible covers");
  classify->add_option("--mode", mode, "log | scattered | confluent")->required();
  classify->add_option("--max-degree", max_degree, "largest cover degree");
  classify->add_flag("--json", json, "JSON output");

  std::string solution;
  std::vector<std::string> sets;
  auto* verify = app.add_subcommand("verify", "residuals of a built-in solution");
  verify->add_option("--solution", solution, "solution id")->required();
  verify->add_option("--set", sets, "override sym=expr (repeatable)");

  std::string pb_case;
  auto* pullback = app.add_subcommand("pullback", "pull-back equality report");
  pullback->add_option("--case", pb_case, "kim122 | kim23 | kaw4")->required();

  std::string q_text, point_text, var = "x";
  bool inv_json = false;
  auto* invariants = app.add_subcommand("invariants", "local formal invariants of v'' = Q v");
  invariants->add_option("--Q", q_text, "Q as an expression")->required();
  invariants->add_option("--point", point_text, "point, or inf")->required();
  invariants->add_option("--var", var, "independent variable");
  invariants->add_flag("--json", inv_json, "JSON output");

  std::string base_text, passport_text;
  auto* scatter_cmd = app.add_subcommand("scatter", "scatter a passport");
  scatter_cmd->add_option("--base", base_text, "formal data, e.g. (0,1/3)(1/2,0)")->required();
  scatter_cmd->add_option("--passport", passport_text, "e.g. 'd=4; poles=[3,1],[4]; free=simple'")->required();

  auto* tables = app.add_subcommand("tables", "static tables with recomputed columns");

  std::vector<std::string> pids;
  std::string form_text;
  auto* check_painleve = app.add_subcommand("check-painleve", "residuals of the Painleve table rows");
  check_painleve->add_option("--id", pids, "solution id (repeatable; default all)");
  check_painleve->add_option("--form", form_text, "force the equation: I, II, III, III', IV, V, VI");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    bool help = e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success);
    app.exit(e, out, err);
    return help ? kOk : kUsage;
  }

  try {
    if (*classify) return cmd_classify(mode, max_degree, json, out);
    if (*verify) return cmd_verify(solution, sets, out);
    if (*pullback) return cmd_pullback(pb_case, out);
    if (*invariants) return cmd_invariants(q_text, point_text, var, inv_json, out);
    if (*scatter_cmd) return cmd_scatter(base_text, passport_text, out);
    if (*tables) return cmd_tables(out);
    if (*check_painleve) return cmd_check_painleve(pids, form_text, out);
  } catch (const UnsupportedInput& e) {
    err << "unsupported: " << e.what() << "\n";
    return kUnsupported;
  } catch (const UsageError& e) {
    err << "usage: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailed;
  }
  return kUsage;
}

}  // namespace gk::cli
