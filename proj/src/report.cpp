#include "atlas/report.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <map>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "atlas/dblwing.hpp"
#include "atlas/freealg.hpp"
#include "atlas/nichols.hpp"
#include "atlas/ring.hpp"
#include "json.hpp"

namespace atlas::report {

using json = nlohmann::json;
using freealg::Bicharacter;
using freealg::DegreeVector;
using freealg::degree_of;
using freealg::FreeElement;
using freealg::partial;
using freealg::psi;
using freealg::skew_bracket;
using freealg::Word;
using nichols::CanonicalElement;
using nichols::omega;
using nichols::SpanBasis;
using nichols::Verdict;
using ring::LaurentPoly;
using rootdata::bit;
using rootdata::build_RT;
using rootdata::enumerate_theta;
using rootdata::has;
using rootdata::interval;
using rootdata::Mask;
using rootdata::mask_elements;

namespace {

std::string mask_str(Mask m) {
  std::string out = "{";
  bool first = true;
  for (int i : mask_elements(m)) {
    if (!first) out += ",";
    out += std::to_string(i);
    first = false;
  }
  return out + "}";
}

std::string theta_str(const RootSequence& th) {
  std::string out = "(";
  for (size_t i = 0; i < th.theta.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(th.theta[i]);
  }
  return out + ")";
}

std::vector<int> s_pieces(const GenDesc& g) { return mask_elements(g.s_effective()); }

std::string run_str(int a, int b) {
  std::string out;
  for (int i = a; i <= b; ++i) out += "x_" + std::to_string(i);
  return out;
}

json desc_json(const GenDesc& g) {
  json j;
  j["k"] = g.k;
  j["m"] = g.m;
  j["S"] = mask_elements(g.s_effective());
  j["word"] = compact_bracket_str(g);
  return j;
}

std::vector<GenDesc> pbw_sorted(const RTProfile& p) {
  auto gens = rootdata::pbw_generators(p);
  std::stable_sort(gens.begin(), gens.end(), [](const GenDesc& a, const GenDesc& b) {
    if (a.k != b.k) return a.k > b.k;
    return a.m < b.m;
  });
  return gens;
}

std::string join_words(const std::vector<GenDesc>& gs) {
  std::string out;
  for (size_t i = 0; i < gs.size(); ++i) {
    if (i) out += " ";
    out += compact_bracket_str(gs[i]);
  }
  return out.empty() ? "-" : out;
}

std::string rt_str(const std::vector<Mask>& v) {
  // listed for k = n down to 1
  std::string out;
  for (size_t i = v.size(); i-- > 0;) {
    if (!out.empty()) out += ";";
    out += mask_str(v[i]);
  }
  return out;
}

void emit(const std::string& text, std::ostream& os) { os << text; }

struct SuiteResult {
  bool ok = true;
  long checks = 0;
  std::string detail;

  void fail(const std::string& d) {
    if (ok) detail = d;
    ok = false;
  }
  void check(bool c, const std::string& d) {
    ++checks;
    if (!c) fail(d);
  }
};

Word random_word(std::mt19937_64& rng, int n, int len) {
  std::uniform_int_distribution<int> letter(1, n);
  Word w(static_cast<size_t>(len));
  for (auto& x : w) x = letter(rng);
  return w;
}

FreeElement elt(const Bicharacter& bc, const Word& w) {
  return FreeElement::from_word(w, bc.n(), bc.vars());
}

LaurentPoly pp(const Bicharacter& bc, const FreeElement& u, const FreeElement& v) {
  DegreeVector du, dv;
  u.homogeneous(&du);
  v.homogeneous(&dv);
  return bc.p_deg(du, dv);
}

std::vector<GenDesc> all_descriptors(int n) {
  std::vector<GenDesc> out;
  for (int k = 1; k <= n; ++k)
    for (int m = k; m <= n; ++m) {
      Mask iv = interval(k, m - 1);
      for (Mask S = 0;; S = ((S | ~iv) + 1) & iv) {
        out.push_back(GenDesc{k, m, S});
        if (S == iv) break;
      }
    }
  return out;
}

// --- verification suites ------------------------------------------------

SuiteResult suite_identities(const RunConfig& cfg) {
  SuiteResult r;
  auto mode = cfg.multiparameter ? Bicharacter::Mode::Multiparameter
                                 : Bicharacter::Mode::OneParameter;
  std::mt19937_64 rng(11);
  for (int n = 2; n <= std::min(cfg.n, 4); ++n) {
    Bicharacter bc(n, mode);
    FreeElement one = FreeElement::unit(n, bc.vars());
    for (int rep = 0; rep < 30 && r.ok; ++rep) {
      FreeElement u = elt(bc, random_word(rng, n, 2));
      FreeElement v = elt(bc, random_word(rng, n, 2));
      FreeElement w = elt(bc, random_word(rng, n, 1));
      LaurentPoly puv = pp(bc, u, v), pvu = pp(bc, v, u);
      LaurentPoly pvw = pp(bc, v, w), pwv = pp(bc, w, v);
      std::string at = "n=" + std::to_string(n) + " rep=" + std::to_string(rep);

      FreeElement lhs = skew_bracket(bc, skew_bracket(bc, u, v), w);
      r.check(lhs == skew_bracket(bc, u, skew_bracket(bc, v, w)) +
                         skew_bracket(bc, skew_bracket(bc, u, w), v)
                             .scaled(pwv.inv_monomial()) +
                         (skew_bracket(bc, u, w) * v).scaled(pvw - pwv.inv_monomial()),
              "triple-bracket expansion, " + at);
      r.check(lhs == skew_bracket(bc, u, skew_bracket(bc, v, w)) -
                         skew_bracket(bc, v, skew_bracket(bc, u, w))
                             .scaled(pvu.inv_monomial()) +
                         (v * skew_bracket(bc, u, w)).scaled(pvu.inv_monomial() - puv),
              "second triple-bracket expansion, " + at);
      r.check(skew_bracket(bc, u * v, w) ==
                  (skew_bracket(bc, u, w) * v).scaled(pvw) + u * skew_bracket(bc, v, w),
              "left product rule, " + at);
      r.check(skew_bracket(bc, u, v * w) ==
                  skew_bracket(bc, u, v) * w + (v * skew_bracket(bc, u, w)).scaled(puv),
              "right product rule, " + at);
      r.check(skew_bracket(bc, skew_bracket(bc, u, v), one) ==
                  skew_bracket(bc, u, skew_bracket(bc, v, one)),
              "unit collapses the triple bracket, " + at);
      r.check(skew_bracket(bc, u * v, one) == u * skew_bracket(bc, v, one),
              "unit collapses the product rule, " + at);
    }
    // separated words skew-commute with an exactly invertible factor
    if (n >= 3)
      for (int rep = 0; rep < 10 && r.ok; ++rep) {
        FreeElement u = elt(bc, {1});
        FreeElement v = elt(bc, random_word(rng, n - 2, 2));
        Word wv;
        for (const auto& [word, c] : v.terms()) wv = word;
        for (auto& x : wv) x += 2;
        v = elt(bc, wv);
        LaurentPoly puv = pp(bc, u, v);
        r.check((puv * pp(bc, v, u)).is_one(), "separated p-factors invert");
        r.check(skew_bracket(bc, u, v) == skew_bracket(bc, v, u).scaled(-puv),
                "separated antisymmetry");
      }
  }
  return r;
}

SuiteResult suite_derivatives(const RunConfig& cfg) {
  SuiteResult r;
  auto mode = cfg.multiparameter ? Bicharacter::Mode::Multiparameter
                                 : Bicharacter::Mode::OneParameter;
  for (int n = 1; n <= std::min(cfg.n, 4); ++n) {
    Bicharacter bc(n, mode);
    for (const GenDesc& g : all_descriptors(n)) {
      FreeElement u = psi(bc, g);
      std::string at = "(k,m,S)=(" + std::to_string(g.k) + "," + std::to_string(g.m) +
                       "," + mask_str(g.s_effective()) + ") n=" + std::to_string(n);
      FreeElement full = freealg::d_w(bc, freealg::u_pw(g), u);
      bool scalar_ok = !full.is_zero() && full.terms().size() == 1 &&
                       full.terms().begin()->first.empty();
      r.check(scalar_ok, "full-word derivative is a nonzero scalar, " + at);
      for (int j = 1; j <= n; ++j)
        if (j < g.k || j > g.m)
          r.check(partial(bc, j, u).is_zero(),
                  "derivative outside the support vanishes, " + at);
    }
  }
  return r;
}

SuiteResult suite_omega(const RunConfig& cfg) {
  SuiteResult r;
  auto mode = cfg.multiparameter ? Bicharacter::Mode::Multiparameter
                                 : Bicharacter::Mode::OneParameter;
  std::mt19937_64 rng(23);
  for (int n = 2; n <= std::min(cfg.n, 4); ++n) {
    Bicharacter bc(n, mode);
    for (int i = 1; i < n; ++i) {
      FreeElement a = FreeElement::letter(i, n, bc.vars());
      FreeElement b = FreeElement::letter(i + 1, n, bc.vars());
      r.check(omega(bc, skew_bracket(bc, a, skew_bracket(bc, a, b))).is_zero(),
              "adjacent relation vanishes, n=" + std::to_string(n));
      r.check(omega(bc, skew_bracket(bc, skew_bracket(bc, a, b), b)).is_zero(),
              "adjacent relation vanishes, n=" + std::to_string(n));
    }
    for (int i = 1; i <= n; ++i)
      for (int j = i + 2; j <= n; ++j)
        r.check(omega(bc, skew_bracket(bc, FreeElement::letter(i, n, bc.vars()),
                                       FreeElement::letter(j, n, bc.vars())))
                    .is_zero(),
                "distant relation vanishes, n=" + std::to_string(n));
    for (int rep = 0; rep < 20 && r.ok; ++rep) {
      FreeElement u = elt(bc, random_word(rng, n, 1 + rep % 3));
      FreeElement v = elt(bc, random_word(rng, n, 1 + (rep / 3) % 3));
      r.check(omega(bc, u * v) ==
                  nichols::shuffle_product(bc, omega(bc, u), omega(bc, v)),
              "multiplicativity, n=" + std::to_string(n));
    }
  }
  return r;
}

size_t exact_rank(const std::vector<CanonicalElement>& cols,
                  const ring::VarSetPtr& vars) {
  std::set<Word> support;
  for (const auto& c : cols)
    for (const auto& [w, coef] : c.terms()) support.insert(w);
  std::vector<Word> rows(support.begin(), support.end());
  ring::ExactMatrix m(rows.size(), cols.size(), vars);
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < cols.size(); ++j) {
      auto it = cols[j].terms().find(rows[i]);
      if (it != cols[j].terms().end()) m.at(i, j) = it->second;
    }
  return ring::exact_rank_solve(m).rank;
}

void all_degrees(int n, int total, std::vector<int>& cur, std::vector<DegreeVector>& out) {
  if (static_cast<int>(cur.size()) == n) {
    if (total > 0) out.push_back(DegreeVector{cur});
    return;
  }
  for (int c = 0; c <= total; ++c) {
    cur.push_back(c);
    all_degrees(n, total - c, cur, out);
    cur.pop_back();
  }
}

void all_words_of_degree(const DegreeVector& d, Word& cur, std::vector<Word>& out) {
  bool done = true;
  for (size_t i = 0; i < d.d.size(); ++i) {
    int used = static_cast<int>(std::count(cur.begin(), cur.end(), static_cast<int>(i + 1)));
    if (used < d.d[i]) {
      done = false;
      cur.push_back(static_cast<int>(i + 1));
      all_words_of_degree(d, cur, out);
      cur.pop_back();
    }
  }
  if (done) out.push_back(cur);
}

SuiteResult suite_pbw(const RunConfig& cfg) {
  SuiteResult r;
  auto mode = cfg.multiparameter ? Bicharacter::Mode::Multiparameter
                                 : Bicharacter::Mode::OneParameter;
  int n = std::min(cfg.n, 3);
  int bound = std::min(cfg.bound, 6);
  Bicharacter bc(n, mode);
  std::vector<DegreeVector> degs;
  std::vector<int> cur;
  for (int t = 1; t <= bound; ++t) all_degrees(n, t, cur, degs);
  for (const auto& d : degs) {
    auto monos = nichols::pbw_monomials(d);
    std::vector<CanonicalElement> cols;
    for (const auto& m : monos) cols.push_back(nichols::omega_monomial(bc, m));
    size_t rank_m = exact_rank(cols, bc.vars());
    std::vector<Word> words;
    Word w;
    all_words_of_degree(d, w, words);
    std::vector<CanonicalElement> wcols;
    for (const auto& word : words) wcols.push_back(omega(bc, elt(bc, word)));
    size_t rank_w = exact_rank(wcols, bc.vars());
    std::ostringstream ds;
    for (int c : d.d) ds << c << " ";
    r.check(monos.size() == rank_m && rank_m == rank_w,
            "basis count equals both ranks at multidegree " + ds.str());
  }
  return r;
}

SuiteResult suite_coideal(const RunConfig& cfg) {
  SuiteResult r;
  auto mode = cfg.multiparameter ? Bicharacter::Mode::Multiparameter
                                 : Bicharacter::Mode::OneParameter;
  int n = std::min(cfg.n, 3);
  Bicharacter bc(n, mode);
  for (const auto& th : enumerate_theta(n)) {
    RTProfile p = build_RT(th);
    std::vector<FreeElement> gens;
    for (const GenDesc& g : rootdata::pbw_generators(p)) gens.push_back(psi(bc, g));
    Verdict c = nichols::coideal_check(bc, gens, cfg.bound);
    r.check(c.ok, "coideal check, theta=" + theta_str(th) + ": " + c.detail);
    Verdict d = nichols::differential_closure_check(bc, p, cfg.bound);
    r.check(d.ok, "differential closure, theta=" + theta_str(th) + ": " + d.detail);
    if (!r.ok) break;
  }
  return r;
}

SuiteResult suite_theorem26(const RunConfig& cfg) {
  SuiteResult r;
  auto mode = cfg.multiparameter ? Bicharacter::Mode::Multiparameter
                                 : Bicharacter::Mode::OneParameter;
  int n = std::min(cfg.n, 3);
  Bicharacter bc(n, mode);
  for (const GenDesc& g : all_descriptors(n)) {
    Verdict v = nichols::span_of_derivatives_check(bc, g);
    r.check(v.ok, "derivative-span equality, (" + std::to_string(g.k) + "," +
                      std::to_string(g.m) + "," + mask_str(g.s_effective()) +
                      "): " + v.detail);
    if (!r.ok) break;
  }
  return r;
}

SuiteResult suite_decode(const RunConfig& cfg) {
  SuiteResult r;
  for (int n = 1; n <= std::min(cfg.n, 4); ++n)
    for (const GenDesc& g : all_descriptors(n))
      r.check(freealg::decode(freealg::decode(g, n), n) == g,
              "decode is an involution at n=" + std::to_string(n));
  return r;
}

SuiteResult suite_double(const RunConfig& cfg) {
  SuiteResult r;
  auto mode = cfg.multiparameter ? Bicharacter::Mode::Multiparameter
                                 : Bicharacter::Mode::OneParameter;
  for (int n = 1; n <= std::min(cfg.n, 4); ++n) {
    dblwing::DoubleWing dw(n, mode);
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) {
        auto lhs = dblwing::straighten(dw, dblwing::SignedWord{i, -j});
        auto rhs = dblwing::straighten(dw, dblwing::SignedWord{-j, i})
                       .scaled(dw.plus().p(j, i));
        if (i == j) {
          auto one = dblwing::TriangularElement::unit(dw);
          auto hi = dblwing::group_element(
              dw, dblwing::GroupElement::h(i, n));
          rhs = rhs + one - hi;
        }
        r.check(lhs == rhs, "letter crossing, n=" + std::to_string(n) + " i=" +
                                std::to_string(i) + " j=" + std::to_string(j));
      }
  }
  return r;
}

SuiteResult suite_sh(const RunConfig& cfg) {
  SuiteResult r;
  auto mode = cfg.multiparameter ? Bicharacter::Mode::Multiparameter
                                 : Bicharacter::Mode::OneParameter;
  int n = std::min(cfg.n, 4);
  dblwing::DoubleWing dw(n, mode);
  for (const GenDesc& g : all_descriptors(n)) {
    Verdict v = dblwing::verify_sh(dw, g);
    r.check(v.ok, "complementary cross-bracket, (" + std::to_string(g.k) + "," +
                      std::to_string(g.m) + "," + mask_str(g.s_effective()) +
                      "): " + v.detail);
    if (!r.ok) break;
  }
  return r;
}

SuiteResult suite_derm(const RunConfig& cfg) {
  SuiteResult r;
  auto mode = cfg.multiparameter ? Bicharacter::Mode::Multiparameter
                                 : Bicharacter::Mode::OneParameter;
  int n = std::min(cfg.n, 3);
  dblwing::DoubleWing dw(n, mode);
  for (const GenDesc& g : all_descriptors(n))
    for (int i = 1; i <= n && r.ok; ++i) {
      Verdict v = dblwing::verify_derm(dw, g.k, g.m, g.S, i);
      r.check(v.ok, "letter cross-bracket, (" + std::to_string(g.k) + "," +
                        std::to_string(g.m) + "," + mask_str(g.s_effective()) +
                        ") i=" + std::to_string(i) + ": " + v.detail);
    }
  return r;
}

SuiteResult suite_consistency(const RunConfig& cfg, std::ostream& os) {
  SuiteResult r;
  auto mode = cfg.multiparameter ? Bicharacter::Mode::Multiparameter
                                 : Bicharacter::Mode::OneParameter;
  int n = std::min(cfg.n, 3);
  auto rep = dblwing::consistency_experiment(n, cfg.bound, mode);
  os << "pairs: " << rep.total << ", agreements: " << rep.agreements
     << ", accepted: " << rep.passes << "\n";
  r.checks = rep.total;
  if (!rep.ok()) {
    std::string d = "symbolic closure disagrees with the pair condition";
    if (!rep.disagreements.empty())
      d += " at theta=" + theta_str(rep.disagreements.front().theta_plus) +
           " / theta'=" + theta_str(rep.disagreements.front().theta_minus);
    r.fail(d);
  }
  return r;
}

}  // namespace

// --- public helpers ------------------------------------------------------

std::string compact_bracket_str(const GenDesc& g) {
  std::vector<int> s = s_pieces(g);
  std::vector<std::pair<int, int>> pieces;  // ascending
  int lo = g.k;
  for (int cut : s) {
    pieces.emplace_back(lo, cut);
    lo = cut + 1;
  }
  pieces.emplace_back(lo, g.m);
  std::string body;
  for (size_t i = pieces.size(); i-- > 0;) {
    auto [a, b] = pieces[i];
    if (a == b)
      body += "x_" + std::to_string(a);
    else
      body += "[" + run_str(a, b) + "]";
  }
  if (pieces.size() == 1) return body;
  return "[" + body + "]";
}

std::vector<GenDesc> coideal_generators(const RTProfile& p) {
  std::vector<GenDesc> cands;
  for (int k = 1; k <= p.n; ++k)
    if (p.theta.theta_at(k) != 0)
      cands.push_back(GenDesc{k, p.theta.theta_tilde(k), p.t_at(k)});
  std::vector<GenDesc> kept;
  for (size_t i = 0; i < cands.size(); ++i) {
    bool redundant = false;
    for (size_t j = 0; j < cands.size() && !redundant; ++j) {
      if (i == j) continue;
      for (const GenDesc& w : nichols::w_set(cands[j]))
        if (w == cands[i]) {
          redundant = true;
          break;
        }
    }
    if (!redundant) kept.push_back(cands[i]);
  }
  return kept;
}

// --- commands -------------------------------------------------------------

int cmd_borel(const RunConfig& cfg, std::ostream& os, std::ostream& err) {
  if (cfg.n < 1 || cfg.n > 12) {
    err << "borel: n must be between 1 and 12\n";
    return 2;
  }
  auto thetas = enumerate_theta(cfg.n);
  if (cfg.format == "json") {
    json root;
    root["schema"] = kSchema;
    root["command"] = "borel";
    root["n"] = cfg.n;
    json records = json::array();
    for (const auto& th : thetas) {
      RTProfile p = build_RT(th);
      json rec;
      rec["theta"] = th.theta;
      json R = json::array(), T = json::array();
      for (int k = 1; k <= cfg.n; ++k) {
        R.push_back(mask_elements(p.r_at(k)));
        T.push_back(mask_elements(p.t_at(k)));
      }
      rec["R"] = R;
      rec["T"] = T;
      json simple = json::array();
      for (const auto& rt : rootdata::simple_roots_of(p))
        simple.push_back({rt.k, rt.m});
      rec["simple_roots"] = simple;
      json pbw = json::array();
      for (const GenDesc& g : pbw_sorted(p)) pbw.push_back(desc_json(g));
      rec["pbw"] = pbw;
      json gens = json::array();
      for (const GenDesc& g : coideal_generators(p)) {
        json gj = desc_json(g);
        gj["diagram"] = rootdata::diagram(g, cfg.unicode);
        gens.push_back(gj);
      }
      rec["generators"] = gens;
      rec["hopf"] = rootdata::is_hopf(th);
      rec["adr_invariant"] = rootdata::is_adr_invariant(p);
      rec["max_hopf"] = mask_elements(rootdata::max_hopf(p));
      if (rootdata::is_adr_invariant(p))
        rec["kpi"] = mask_elements(rootdata::kpi_of(p));
      records.push_back(rec);
    }
    root["records"] = records;
    emit(root.dump(2) + "\n", os);
    return 0;
  }
  if (cfg.format == "csv") {
    os << "theta,R,T,simple_roots,pbw,generators,hopf,adr_invariant,max_hopf\n";
    for (const auto& th : thetas) {
      RTProfile p = build_RT(th);
      std::string simple;
      for (const auto& rt : rootdata::simple_roots_of(p)) {
        if (!simple.empty()) simple += " ";
        simple += "[" + std::to_string(rt.k) + ":" + std::to_string(rt.m) + "]";
      }
      os << '"' << theta_str(th) << "\",\"" << rt_str(p.R) << "\",\"" << rt_str(p.T)
         << "\",\"" << simple << "\",\"" << join_words(pbw_sorted(p)) << "\",\""
         << join_words(coideal_generators(p)) << "\","
         << (rootdata::is_hopf(th) ? "1" : "0") << ","
         << (rootdata::is_adr_invariant(p) ? "1" : "0") << ",\""
         << mask_str(rootdata::max_hopf(p)) << "\"\n";
    }
    return 0;
  }
  if (cfg.format != "text") {
    err << "borel: unknown format '" << cfg.format << "'\n";
    return 2;
  }
  for (const auto& th : thetas) {
    RTProfile p = build_RT(th);
    os << "theta=" << theta_str(th);
    if (rootdata::is_adr_invariant(p)) os << " *";
    os << "\n  R: " << rt_str(p.R) << "   T: " << rt_str(p.T) << "\n  simple roots:";
    for (const auto& rt : rootdata::simple_roots_of(p))
      os << " [" << rt.k << ":" << rt.m << "]";
    os << "\n  PBW: " << join_words(pbw_sorted(p))
       << "\n  generators: " << join_words(coideal_generators(p)) << "\n";
    for (const GenDesc& g : coideal_generators(p)) {
      std::istringstream d(rootdata::diagram(g, cfg.unicode));
      std::string line;
      while (std::getline(d, line)) os << "    " << line << "\n";
    }
    os << "  hopf: " << (rootdata::is_hopf(th) ? "yes" : "no")
       << "   max hopf: " << mask_str(rootdata::max_hopf(p)) << "\n";
  }
  return 0;
}

int cmd_tableau(const RunConfig& cfg, std::ostream& os, std::ostream& err) {
  if (cfg.n != 3) {
    err << "tableau: only n=3 is tabulated\n";
    return 2;
  }
  auto thetas = enumerate_theta(3);
  std::vector<std::array<std::string, 5>> rows;
  rows.push_back({"r(U)", "R_3;R_2;R_1", "T_3;T_2;T_1", "PBW-generators",
                  "coideal generators"});
  for (size_t i = thetas.size(); i-- > 0;) {
    const auto& th = thetas[i];
    if (rootdata::is_hopf(th)) continue;
    RTProfile p = build_RT(th);
    std::string name = theta_str(th);
    if (rootdata::is_adr_invariant(p)) name += "*";
    rows.push_back({name, rt_str(p.R), rt_str(p.T), join_words(pbw_sorted(p)),
                    join_words(coideal_generators(p))});
  }
  std::array<size_t, 5> width{};
  for (const auto& row : rows)
    for (size_t c = 0; c < 5; ++c) width[c] = std::max(width[c], row[c].size());
  for (const auto& row : rows) {
    std::string line;
    for (size_t c = 0; c < 5; ++c) {
      std::string cell = row[c];
      cell.resize(width[c], ' ');
      if (c) line += "  ";
      line += cell;
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    os << line << "\n";
  }
  return 0;
}

int cmd_count(const RunConfig& cfg, const std::string& which, std::ostream& os,
              std::ostream& err) {
  if (which != "borel" && which != "full") {
    err << "count: expected 'borel' or 'full'\n";
    return 2;
  }
  if (cfg.n < 1 || (which == "full" && cfg.n > 7) || cfg.n > 12) {
    err << "count: n out of the supported range\n";
    return 2;
  }
  auto t0 = std::chrono::steady_clock::now();
  unsigned long long total = 0;
  rootdata::CountStats stats;
  if (which == "borel") {
    total = rootdata::count_borel(cfg.n);
  } else {
    stats = rootdata::count_full(cfg.n, cfg.threads, cfg.n >= 6);
    total = stats.total;
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (cfg.format == "json") {
    json root;
    root["schema"] = kSchema;
    root["command"] = "count";
    root["which"] = which;
    root["n"] = cfg.n;
    root["count"] = total;
    if (which == "full") {
      root["via_cond1"] = stats.via_cond1;
      root["via_cond2"] = stats.via_cond2;
    }
    root["seconds"] = secs;
    emit(root.dump(2) + "\n", os);
    return 0;
  }
  os << "count " << which << " n=" << cfg.n << ": " << total;
  if (which == "full")
    os << "  (condition-1-only pairs: " << stats.via_cond1
       << ", pairs needing condition 2: " << stats.via_cond2 << ")";
  std::ostringstream ts;
  ts.setf(std::ios::fixed);
  ts.precision(3);
  ts << secs;
  os << "  [" << ts.str() << " s]\n";
  return 0;
}

int cmd_verify(const RunConfig& cfg, const std::string& suite, std::ostream& os,
               std::ostream& err) {
  SuiteResult r;
  if (suite == "identities")
    r = suite_identities(cfg);
  else if (suite == "derivatives")
    r = suite_derivatives(cfg);
  else if (suite == "omega")
    r = suite_omega(cfg);
  else if (suite == "pbw")
    r = suite_pbw(cfg);
  else if (suite == "coideal")
    r = suite_coideal(cfg);
  else if (suite == "theorem26")
    r = suite_theorem26(cfg);
  else if (suite == "decode")
    r = suite_decode(cfg);
  else if (suite == "double")
    r = suite_double(cfg);
  else if (suite == "sh")
    r = suite_sh(cfg);
  else if (suite == "derm")
    r = suite_derm(cfg);
  else if (suite == "consistency")
    r = suite_consistency(cfg, os);
  else {
    err << "verify: unknown suite '" << suite << "'\n";
    return 2;
  }
  os << "suite " << suite << ": " << (r.ok ? "PASS" : "FAIL") << " (" << r.checks
     << " checks)\n";
  if (!r.ok) os << "first counterexample: " << r.detail << "\n";
  return r.ok ? 0 : 1;
}

int cmd_pair(const RunConfig& cfg, const std::vector<int>& theta_plus,
             const std::vector<int>& theta_minus, bool symbolic, std::ostream& os,
             std::ostream& err) {
  auto make = [&](const std::vector<int>& t) {
    RootSequence th{cfg.n, t};
    if (static_cast<int>(t.size()) != cfg.n || !th.valid())
      throw std::invalid_argument("invalid root sequence");
    return th;
  };
  RootSequence tp, tm;
  try {
    tp = make(theta_plus);
    tm = make(theta_minus);
  } catch (const std::exception&) {
    err << "pair: each sequence needs n entries with 0 <= theta_k <= n-k+1\n";
    return 2;
  }
  RTProfile pp_ = build_RT(tp), pm = build_RT(tm);
  rootdata::PairReport rep;
  bool ok = rootdata::cond_pair(pp_, pm, &rep);
  os << "theta+ = " << theta_str(tp) << "   theta- = " << theta_str(tm) << "\n";
  for (const auto& cell : rep.cells)
    os << "  (k=" << cell.k << ", i=" << cell.i << "): condition 1 "
       << (cell.cond1 ? "holds" : "fails") << ", condition 2 "
       << (cell.cond2 ? "holds" : "fails") << " -> "
       << ((cell.cond1 || cell.cond2) ? "ok" : "REJECT") << "\n";
  os << "verdict: " << (ok ? "ACCEPT" : "REJECT") << "\n";
  if (symbolic) {
    auto mode = cfg.multiparameter ? Bicharacter::Mode::Multiparameter
                                   : Bicharacter::Mode::OneParameter;
    dblwing::DoubleWing dw(cfg.n, mode);
    for (const GenDesc& gp : rootdata::pbw_generators(pp_))
      for (const GenDesc& gm : rootdata::pbw_generators(pm)) {
        auto b = dblwing::tri_bracket(dblwing::psi_plus(dw, gp),
                                      dblwing::psi_minus(dw, gm));
        os << "  [" << compact_bracket_str(gp) << ", " << compact_bracket_str(gm)
           << "^-] = " << b.str() << "\n";
      }
  }
  return ok ? 0 : 1;
}

}  // namespace atlas::report
