#include "atlas/freealg.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace atlas::freealg {

using ring::Exp;

std::string word_str(const Word& w) {
  if (w.empty()) return "1";
  std::string s;
  for (int l : w) s += "x" + std::to_string(l);
  return s;
}

bool word_less(const Word& a, const Word& b) {
  const size_t n = std::min(a.size(), b.size());
  for (size_t t = 0; t < n; ++t)
    if (a[t] != b[t]) return a[t] > b[t];  // smaller letter index = greater word
  // a proper beginning is greater
  return a.size() > b.size();
}

int DegreeVector::total() const {
  int t = 0;
  for (int x : d) t += x;
  return t;
}

DegreeVector degree_of(const Word& w, int n) {
  DegreeVector dv{std::vector<int>(static_cast<size_t>(n), 0)};
  for (int l : w) {
    if (l < 1 || l > n) throw std::out_of_range("letter out of range");
    ++dv.d[static_cast<size_t>(l - 1)];
  }
  return dv;
}

Bicharacter::Bicharacter(int n, Mode mode) : n_(n), mode_(mode) {
  if (n < 1) throw std::invalid_argument("rank must be positive");
  if (mode == Mode::OneParameter) {
    vars_ = ring::qvars();
  } else {
    std::vector<std::string> names{"q"};
    for (int i = 1; i < n; ++i)
      names.push_back("t" + std::to_string(i) + std::to_string(i + 1));
    vars_ = ring::make_vars(std::move(names));
  }
  const size_t nv = vars_->names.size();
  auto unit = [&](std::vector<std::pair<size_t, int>> exps) {
    Exp e(nv, 0);
    for (auto [idx, pw] : exps) e[idx] += pw;
    return LaurentPoly::monomial(Rational(1), e, vars_);
  };
  table_.assign(static_cast<size_t>((n + 1) * (n + 1)),
                LaurentPoly::constant(Rational(1), vars_));
  auto set = [&](int i, int j, LaurentPoly v) {
    table_[static_cast<size_t>(i * (n + 1) + j)] = std::move(v);
  };
  for (int i = 1; i <= n; ++i) set(i, i, unit({{0, 1}}));
  for (int i = 1; i < n; ++i) {
    if (mode == Mode::OneParameter) {
      set(i, i + 1, unit({{0, -1}}));
      // p_{i+1,i} stays 1
    } else {
      set(i, i + 1, unit({{static_cast<size_t>(i), 1}}));
      set(i + 1, i, unit({{0, -1}, {static_cast<size_t>(i), -1}}));
    }
  }
  check_relations();
}

Bicharacter::Bicharacter(int n, Mode mode, std::vector<LaurentPoly> table,
                         VarSetPtr vars)
    : n_(n), mode_(mode), vars_(std::move(vars)), table_(std::move(table)) {
  check_relations();
}

void Bicharacter::check_relations() const {
  const LaurentPoly q = p(1, 1);
  const LaurentPoly qinv = q.inv_monomial();
  const LaurentPoly one = LaurentPoly::constant(Rational(1), vars_);
  for (int i = 1; i <= n_; ++i) {
    if (p(i, i) != q) throw std::logic_error("bicharacter: p_ii must equal q");
    for (int j = 1; j <= n_; ++j) {
      if (j == i + 1 && p(i, j) * p(j, i) != qinv)
        throw std::logic_error("bicharacter: p_{i,i+1} p_{i+1,i} must be q^-1");
      if (std::abs(i - j) > 1 && p(i, j) * p(j, i) != one)
        throw std::logic_error("bicharacter: distant letters must have p_ij p_ji = 1");
    }
  }
}

const LaurentPoly& Bicharacter::p(int i, int j) const {
  if (i < 1 || i > n_ || j < 1 || j > n_)
    throw std::out_of_range("bicharacter index");
  return table_[static_cast<size_t>(i * (n_ + 1) + j)];
}

LaurentPoly Bicharacter::p_deg(const DegreeVector& du, const DegreeVector& dv) const {
  Exp acc(vars_->names.size(), 0);
  Rational c(1);
  for (int i = 1; i <= n_; ++i) {
    int a = du.d[static_cast<size_t>(i - 1)];
    if (a == 0) continue;
    for (int j = 1; j <= n_; ++j) {
      int b = dv.d[static_cast<size_t>(j - 1)];
      if (b == 0) continue;
      const LaurentPoly& pij = p(i, j);
      const auto& [e, coeff] = *pij.terms().begin();
      for (size_t t = 0; t < acc.size(); ++t) acc[t] += e[t] * a * b;
      // coefficients of the table are 1, but keep this general
      for (int r = 0; r < a * b; ++r) c *= coeff;
    }
  }
  return LaurentPoly::monomial(c, acc, vars_);
}

Bicharacter Bicharacter::relabeled() const {
  auto phi = [this](int i) { return n_ - i + 1; };
  std::vector<LaurentPoly> table(static_cast<size_t>((n_ + 1) * (n_ + 1)),
                                 LaurentPoly::constant(Rational(1), vars_));
  for (int i = 1; i <= n_; ++i)
    for (int j = 1; j <= n_; ++j)
      table[static_cast<size_t>(i * (n_ + 1) + j)] = p(phi(i), phi(j));
  return Bicharacter(n_, mode_, std::move(table), vars_);
}

Bicharacter Bicharacter::inverse_transposed() const {
  std::vector<LaurentPoly> table(static_cast<size_t>((n_ + 1) * (n_ + 1)),
                                 LaurentPoly::constant(Rational(1), vars_));
  for (int i = 1; i <= n_; ++i)
    for (int j = 1; j <= n_; ++j)
      table[static_cast<size_t>(i * (n_ + 1) + j)] = p(j, i).inv_monomial();
  return Bicharacter(n_, mode_, std::move(table), vars_);
}

FreeElement::FreeElement(int n, VarSetPtr vars) : n_(n), vars_(std::move(vars)) {}

FreeElement FreeElement::zero(int n, VarSetPtr vars) { return FreeElement(n, vars); }

FreeElement FreeElement::unit(int n, VarSetPtr vars) {
  FreeElement e(n, vars);
  e.terms_.emplace(Word{}, LaurentPoly::constant(Rational(1), e.vars_));
  return e;
}

FreeElement FreeElement::letter(int i, int n, VarSetPtr vars) {
  return from_word(Word{i}, n, std::move(vars));
}

FreeElement FreeElement::from_word(const Word& w, int n, VarSetPtr vars) {
  FreeElement e(n, std::move(vars));
  degree_of(w, n);  // validates letters
  e.terms_.emplace(w, LaurentPoly::constant(Rational(1), e.vars_));
  return e;
}

bool FreeElement::homogeneous(DegreeVector* deg) const {
  if (terms_.empty()) return true;
  DegreeVector d0 = degree_of(terms_.begin()->first, n_);
  for (const auto& [w, c] : terms_)
    if (!(degree_of(w, n_) == d0)) return false;
  if (deg) *deg = d0;
  return true;
}

void FreeElement::add_term(const Word& w, const LaurentPoly& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(w);
  if (it == terms_.end()) {
    terms_.emplace(w, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

FreeElement FreeElement::operator+(const FreeElement& o) const {
  FreeElement r = *this;
  r += o;
  return r;
}

FreeElement& FreeElement::operator+=(const FreeElement& o) {
  for (const auto& [w, c] : o.terms_) add_term(w, c);
  return *this;
}

FreeElement FreeElement::operator-(const FreeElement& o) const {
  FreeElement r = *this;
  for (const auto& [w, c] : o.terms_) r.add_term(w, -c);
  return r;
}

FreeElement FreeElement::operator-() const {
  FreeElement r(n_, vars_);
  for (const auto& [w, c] : terms_) r.terms_.emplace(w, -c);
  return r;
}

FreeElement FreeElement::operator*(const FreeElement& o) const {
  FreeElement r(n_, vars_);
  for (const auto& [wa, ca] : terms_)
    for (const auto& [wb, cb] : o.terms_) {
      Word w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      r.add_term(w, ca * cb);
    }
  return r;
}

FreeElement FreeElement::scaled(const LaurentPoly& c) const {
  FreeElement r(n_, vars_);
  if (c.is_zero()) return r;
  for (const auto& [w, k] : terms_) r.add_term(w, k * c);
  return r;
}

bool FreeElement::operator==(const FreeElement& o) const {
  return n_ == o.n_ && terms_ == o.terms_;
}

std::string FreeElement::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [w, c] : terms_) {
    if (!first) out << " + ";
    first = false;
    std::string cs = c.str();
    if (cs.find_first_of("+-", 1) != std::string::npos || cs[0] == '-')
      cs = "(" + cs + ")";
    out << cs << " * " << word_str(w);
  }
  return out.str();
}

LaurentPoly p_of(const Bicharacter& bc, const Word& u, const Word& v) {
  return bc.p_deg(degree_of(u, bc.n()), degree_of(v, bc.n()));
}

FreeElement skew_bracket(const Bicharacter& bc, const FreeElement& u,
                         const FreeElement& v) {
  DegreeVector du, dv;
  if (!u.homogeneous(&du) || !v.homogeneous(&dv))
    throw std::invalid_argument("skew_bracket needs homogeneous arguments");
  if (u.is_zero() || v.is_zero()) return FreeElement::zero(u.n(), u.vars());
  return u * v - (v * u).scaled(bc.p_deg(du, dv));
}

FreeElement partial(const Bicharacter& bc, int i, const FreeElement& u) {
  FreeElement r(u.n(), u.vars());
  for (const auto& [w, c] : u.terms()) {
    LaurentPoly prefix = bc.one();
    for (size_t t = 0; t < w.size(); ++t) {
      if (w[t] == i) {
        Word rest = w;
        rest.erase(rest.begin() + static_cast<long>(t));
        r.add_term(rest, c * prefix);
      }
      prefix *= bc.p(w[t], i);
    }
  }
  return r;
}

FreeElement partial_star(const Bicharacter& bc, int i, const FreeElement& u) {
  FreeElement r(u.n(), u.vars());
  for (const auto& [w, c] : u.terms()) {
    LaurentPoly suffix = bc.one();
    for (size_t t = w.size(); t-- > 0;) {
      if (w[t] == i) {
        Word rest = w;
        rest.erase(rest.begin() + static_cast<long>(t));
        r.add_term(rest, c * suffix);
      }
      suffix *= bc.p(i, w[t]);
    }
  }
  return r;
}

FreeElement d_w(const Bicharacter& bc, const Word& w, const FreeElement& u) {
  FreeElement r = u;
  for (int l : w) r = partial(bc, l, r);
  return r;
}

Word u_word(int k, int m) {
  Word w;
  for (int i = k; i <= m; ++i) w.push_back(i);
  return w;
}

FreeElement u_bracket(const Bicharacter& bc, int k, int m) {
  if (k < 1 || m > bc.n() || k > m) throw std::out_of_range("u_bracket bounds");
  FreeElement acc = FreeElement::letter(m, bc.n(), bc.vars());
  for (int i = m - 1; i >= k; --i)
    acc = skew_bracket(bc, FreeElement::letter(i, bc.n(), bc.vars()), acc);
  return acc;
}

namespace {

std::vector<int> s_list(const GenDesc& g) {
  return rootdata::mask_elements(g.s_effective());
}

}  // namespace

FreeElement psi(const Bicharacter& bc, const GenDesc& g) {
  if (g.k < 1 || g.m > bc.n() || g.k > g.m) throw std::out_of_range("psi bounds");
  std::vector<int> s = s_list(g);
  const int r = static_cast<int>(s.size());
  auto piece_lo = [&](int i) { return i == 0 ? g.k : 1 + s[static_cast<size_t>(i - 1)]; };
  auto piece_hi = [&](int i) { return i == r ? g.m : s[static_cast<size_t>(i)]; };
  FreeElement acc = u_bracket(bc, piece_lo(r), piece_hi(r));
  for (int i = r - 1; i >= 0; --i)
    acc = skew_bracket(bc, acc, u_bracket(bc, piece_lo(i), piece_hi(i)));
  return acc;
}

Word u_pw(const GenDesc& g) {
  std::vector<int> s = s_list(g);
  const int r = static_cast<int>(s.size());
  auto piece_lo = [&](int i) { return i == 0 ? g.k : 1 + s[static_cast<size_t>(i - 1)]; };
  auto piece_hi = [&](int i) { return i == r ? g.m : s[static_cast<size_t>(i)]; };
  Word w;
  for (int i = r; i >= 0; --i) {
    Word piece = u_word(piece_lo(i), piece_hi(i));
    w.insert(w.end(), piece.begin(), piece.end());
  }
  return w;
}

GenDesc decode(const GenDesc& g, int n) {
  auto phi = [n](int i) { return n - i + 1; };
  const int k2 = phi(g.m), m2 = phi(g.k);
  rootdata::Mask moved = 0;
  for (int s : s_list(g)) moved |= rootdata::bit(phi(s) - 1);
  const rootdata::Mask s2 = rootdata::interval(k2, m2 - 1) & ~moved;
  return GenDesc{k2, m2, s2};
}

namespace {

FreeElement parse_bracket_term(const Bicharacter& bc, const std::string& s, size_t& pos) {
  auto skip = [&] {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  };
  skip();
  if (pos >= s.size()) throw std::invalid_argument("truncated bracket word");
  if (s[pos] == '[') {
    ++pos;
    FreeElement left = parse_bracket_term(bc, s, pos);
    skip();
    if (pos >= s.size() || s[pos] != ',')
      throw std::invalid_argument("expected ',' in bracket word");
    ++pos;
    FreeElement right = parse_bracket_term(bc, s, pos);
    skip();
    if (pos >= s.size() || s[pos] != ']')
      throw std::invalid_argument("expected ']' in bracket word");
    ++pos;
    return skew_bracket(bc, left, right);
  }
  if (s[pos] == 'x') {
    ++pos;
    size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (start == pos) throw std::invalid_argument("expected letter index");
    int i = std::stoi(s.substr(start, pos - start));
    return FreeElement::letter(i, bc.n(), bc.vars());
  }
  throw std::invalid_argument("unexpected character in bracket word");
}

std::string u_bracket_str(int k, int m) {
  if (k == m) return "x" + std::to_string(k);
  return "[x" + std::to_string(k) + "," + u_bracket_str(k + 1, m) + "]";
}

}  // namespace

FreeElement parse_bracket(const Bicharacter& bc, const std::string& text) {
  size_t pos = 0;
  FreeElement e = parse_bracket_term(bc, text, pos);
  while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  if (pos != text.size()) throw std::invalid_argument("trailing bracket-word text");
  return e;
}

std::string psi_bracket_str(const GenDesc& g) {
  std::vector<int> s = s_list(g);
  const int r = static_cast<int>(s.size());
  auto piece_lo = [&](int i) { return i == 0 ? g.k : 1 + s[static_cast<size_t>(i - 1)]; };
  auto piece_hi = [&](int i) { return i == r ? g.m : s[static_cast<size_t>(i)]; };
  std::string acc = u_bracket_str(piece_lo(r), piece_hi(r));
  for (int i = r - 1; i >= 0; --i)
    acc = "[" + acc + "," + u_bracket_str(piece_lo(i), piece_hi(i)) + "]";
  return acc;
}

}  // namespace atlas::freealg
