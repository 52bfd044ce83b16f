#include "atlas/dblwing.hpp"

#include <algorithm>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace atlas::dblwing {

using freealg::DegreeVector;
using nichols::CanonicalElement;
using nichols::Subalgebra;
using ring::ExactMatrix;
using ring::exact_rank_solve;
using ring::Rational;
using rootdata::bit;
using rootdata::has;
using rootdata::interval;

// ---------------------------------------------------------------- group

GroupElement GroupElement::identity(int n) {
  return GroupElement{std::vector<int>(static_cast<size_t>(2 * n), 0)};
}

GroupElement GroupElement::g(int i, int n) {
  GroupElement r = identity(n);
  r.e[static_cast<size_t>(i - 1)] = 1;
  return r;
}

GroupElement GroupElement::f(int i, int n) {
  GroupElement r = identity(n);
  r.e[static_cast<size_t>(n + i - 1)] = 1;
  return r;
}

GroupElement GroupElement::h(int i, int n) { return g(i, n) * f(i, n); }

bool GroupElement::is_identity() const {
  return std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
}

GroupElement GroupElement::operator*(const GroupElement& o) const {
  if (e.size() != o.e.size()) throw std::invalid_argument("group rank mismatch");
  GroupElement r = *this;
  for (size_t t = 0; t < e.size(); ++t) r.e[t] += o.e[t];
  return r;
}

std::string GroupElement::str() const {
  std::ostringstream os;
  const int n = rank();
  for (int i = 1; i <= 2 * n; ++i) {
    int x = e[static_cast<size_t>(i - 1)];
    if (x == 0) continue;
    os << (i <= n ? "g" : "f") << (i <= n ? i : i - n);
    if (x != 1) os << "^" << x;
  }
  std::string s = os.str();
  return s.empty() ? "1" : s;
}

GroupElement hbar(int k, int a, int n) {
  GroupElement r = GroupElement::identity(n);
  for (int t = k; t < a; ++t) r = r * GroupElement::h(t, n);
  return r;
}

// ---------------------------------------------------------------- wing pair

DoubleWing::DoubleWing(int n, Bicharacter::Mode mode)
    : plus_(n, mode), minus_(plus_.inverse_transposed()) {}

static LaurentPoly mono_pow(const LaurentPoly& m, int e, const VarSetPtr& vars) {
  LaurentPoly r = LaurentPoly::constant(Rational(1), vars);
  if (e >= 0) {
    for (int t = 0; t < e; ++t) r = r * m;
  } else {
    const LaurentPoly inv = m.inv_monomial();
    for (int t = 0; t < -e; ++t) r = r * inv;
  }
  return r;
}

LaurentPoly DoubleWing::chi(int i, const GroupElement& h) const {
  const int nn = n();
  LaurentPoly r = LaurentPoly::constant(Rational(1), vars());
  for (int j = 1; j <= nn; ++j) {
    r = r * mono_pow(plus_.p(i, j), h.e[static_cast<size_t>(j - 1)], vars());
    r = r * mono_pow(plus_.p(j, i), h.e[static_cast<size_t>(nn + j - 1)], vars());
  }
  return r;
}

LaurentPoly DoubleWing::chi_minus(int i, const GroupElement& h) const {
  return chi(i, h).inv_monomial();
}

LaurentPoly DoubleWing::chi_gamma(const std::vector<int>& gamma,
                                  const GroupElement& h) const {
  LaurentPoly r = LaurentPoly::constant(Rational(1), vars());
  for (int i = 1; i <= n(); ++i)
    r = r * mono_pow(chi(i, h), gamma[static_cast<size_t>(i - 1)], vars());
  return r;
}

// ---------------------------------------------------------------- element

TriangularElement::TriangularElement(const DoubleWing& dw) : dw_(&dw) {}

TriangularElement TriangularElement::zero(const DoubleWing& dw) {
  return TriangularElement(dw);
}

TriangularElement TriangularElement::unit(const DoubleWing& dw) {
  TriangularElement r(dw);
  r.add_raw(TriKey{{}, GroupElement::identity(dw.n()), {}},
            LaurentPoly::constant(Rational(1), dw.vars()));
  r.gamma_ = std::vector<int>(static_cast<size_t>(dw.n()), 0);
  r.gdeg_ = GroupElement::identity(dw.n());
  return r;
}

void TriangularElement::add_raw(const TriKey& k, const LaurentPoly& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = raw_.emplace(k, c);
  if (!fresh) {
    it->second = it->second + c;
    if (it->second.is_zero()) raw_.erase(it);
  }
  const int n = dw_->n();
  const auto& vars = dw_->vars();
  const CanonicalElement cn =
      nichols::omega(dw_->minus(), FreeElement::from_word(k.neg, n, vars));
  const CanonicalElement cp =
      nichols::omega(dw_->plus(), FreeElement::from_word(k.pos, n, vars));
  for (const auto& [nw, nc] : cn.terms())
    for (const auto& [pw, pc] : cp.terms()) {
      TriKey ck{nw, k.h, pw};
      LaurentPoly v = c * nc * pc;
      auto [jt, nf] = canon_.emplace(ck, v);
      if (!nf) {
        jt->second = jt->second + v;
        if (jt->second.is_zero()) canon_.erase(jt);
      }
    }
}

TriangularElement TriangularElement::operator+(const TriangularElement& o) const {
  if (dw_ != o.dw_) throw std::invalid_argument("mixed wing contexts");
  TriangularElement r = *this;
  for (const auto& [k, c] : o.raw_) {
    auto [it, fresh] = r.raw_.emplace(k, c);
    if (!fresh) {
      it->second = it->second + c;
      if (it->second.is_zero()) r.raw_.erase(it);
    }
  }
  for (const auto& [k, c] : o.canon_) {
    auto [it, fresh] = r.canon_.emplace(k, c);
    if (!fresh) {
      it->second = it->second + c;
      if (it->second.is_zero()) r.canon_.erase(it);
    }
  }
  if (!(gamma_ && o.gamma_ && *gamma_ == *o.gamma_)) r.gamma_.reset();
  if (!(gdeg_ && o.gdeg_ && *gdeg_ == *o.gdeg_)) r.gdeg_.reset();
  return r;
}

TriangularElement TriangularElement::operator-(const TriangularElement& o) const {
  return *this + o.scaled(LaurentPoly::constant(Rational(-1), dw_->vars()));
}

TriangularElement TriangularElement::scaled(const LaurentPoly& c) const {
  TriangularElement r(*dw_);
  r.gamma_ = gamma_;
  r.gdeg_ = gdeg_;
  if (c.is_zero()) return r;
  for (const auto& [k, v] : raw_) r.raw_.emplace(k, v * c);
  for (const auto& [k, v] : canon_) r.canon_.emplace(k, v * c);
  return r;
}

bool TriangularElement::operator==(const TriangularElement& o) const {
  return canon_ == o.canon_;
}

static std::string signed_word_str(const Word& w, bool neg) {
  std::ostringstream os;
  for (int l : w) {
    os << "x" << l;
    if (neg) os << "^-";
  }
  return os.str();
}

std::string TriangularElement::str() const {
  if (raw_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : raw_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")";
    std::string part;
    if (!k.neg.empty()) part += signed_word_str(k.neg, true);
    if (!k.h.is_identity()) {
      if (!part.empty()) part += ".";
      part += k.h.str();
    }
    if (!k.pos.empty()) {
      if (!part.empty()) part += ".";
      part += signed_word_str(k.pos, false);
    }
    if (part.empty()) part = "1";
    os << part;
  }
  return os.str();
}

bool proportional(const TriangularElement& a, const TriangularElement& b) {
  const auto& ta = a.terms();
  const auto& tb = b.terms();
  if (ta.size() != tb.size()) return false;
  if (ta.empty()) return true;
  auto ia = ta.begin();
  auto ib = tb.begin();
  const LaurentPoly a0 = ia->second, b0 = ib->second;
  for (; ia != ta.end(); ++ia, ++ib) {
    if (ia->first != ib->first) return false;
    if (ia->second * b0 != ib->second * a0) return false;
  }
  return true;
}

// ---------------------------------------------------------------- rewriting

namespace {

struct PendingTerm {
  LaurentPoly c;
  std::vector<Atom> a;
};

// Rewrites one mixed word into normal order, accumulating the resulting
// normal-form free-word terms.
void normalize_atoms(const DoubleWing& dw, const LaurentPoly& c0,
                     const std::vector<Atom>& a0,
                     std::map<TriKey, LaurentPoly>& out) {
  std::vector<PendingTerm> stack;
  stack.push_back(PendingTerm{c0, a0});
  while (!stack.empty()) {
    PendingTerm pt = std::move(stack.back());
    stack.pop_back();
    auto& a = pt.a;
    size_t v = a.size();
    for (size_t t = 0; t + 1 < a.size(); ++t) {
      const int la = a[t].letter, lb = a[t + 1].letter;
      if ((la == 0 && lb == 0) || (la > 0 && lb <= 0) || (la == 0 && lb < 0)) {
        v = t;
        break;
      }
    }
    if (v == a.size()) {
      Word nw, pw;
      GroupElement h = GroupElement::identity(dw.n());
      for (const Atom& at : a) {
        if (at.letter < 0)
          nw.push_back(-at.letter);
        else if (at.letter > 0)
          pw.push_back(at.letter);
        else
          h = h * at.h;
      }
      TriKey key{std::move(nw), std::move(h), std::move(pw)};
      auto [it, fresh] = out.emplace(std::move(key), pt.c);
      if (!fresh) {
        it->second = it->second + pt.c;
        if (it->second.is_zero()) out.erase(it);
      }
      continue;
    }
    const Atom A = a[v], B = a[v + 1];
    if (A.letter == 0 && B.letter == 0) {
      a[v].h = A.h * B.h;
      a.erase(a.begin() + static_cast<long>(v) + 1);
      stack.push_back(std::move(pt));
    } else if (A.letter > 0 && B.letter == 0) {
      // x_i h = chi^i(h) h x_i
      pt.c = pt.c * dw.chi(A.letter, B.h);
      std::swap(a[v], a[v + 1]);
      stack.push_back(std::move(pt));
    } else if (A.letter == 0 && B.letter < 0) {
      // h x_j^- = chi^j(h) x_j^- h
      pt.c = pt.c * dw.chi(-B.letter, A.h);
      std::swap(a[v], a[v + 1]);
      stack.push_back(std::move(pt));
    } else {
      // x_i x_j^- = p_ji x_j^- x_i + delta_ij (1 - g_i f_i)
      const int i = A.letter, j = -B.letter;
      PendingTerm swapped{pt.c * dw.plus().p(j, i), pt.a};
      std::swap(swapped.a[v], swapped.a[v + 1]);
      stack.push_back(std::move(swapped));
      if (i == j) {
        PendingTerm dropped{pt.c, pt.a};
        dropped.a.erase(dropped.a.begin() + static_cast<long>(v),
                        dropped.a.begin() + static_cast<long>(v) + 2);
        stack.push_back(std::move(dropped));
        PendingTerm grp{pt.c.scale(Rational(-1)), pt.a};
        grp.a[v] = Atom{0, GroupElement::h(i, dw.n())};
        grp.a.erase(grp.a.begin() + static_cast<long>(v) + 1);
        stack.push_back(std::move(grp));
      }
    }
  }
}

std::vector<Atom> atoms_of_raw(const TriKey& k) {
  std::vector<Atom> a;
  for (int l : k.neg) a.push_back(Atom{-l, {}});
  if (!k.h.is_identity()) a.push_back(Atom{0, k.h});
  for (int l : k.pos) a.push_back(Atom{l, {}});
  return a;
}

}  // namespace

TriangularElement straighten(const DoubleWing& dw, const std::vector<Atom>& atoms) {
  TriangularElement r(dw);
  std::map<TriKey, LaurentPoly> out;
  normalize_atoms(dw, LaurentPoly::constant(Rational(1), dw.vars()), atoms, out);
  for (const auto& [k, c] : out) r.add_raw(k, c);
  std::vector<int> gamma(static_cast<size_t>(dw.n()), 0);
  GroupElement gd = GroupElement::identity(dw.n());
  for (const Atom& at : atoms) {
    if (at.letter > 0) {
      ++gamma[static_cast<size_t>(at.letter - 1)];
      gd = gd * GroupElement::g(at.letter, dw.n());
    } else if (at.letter < 0) {
      --gamma[static_cast<size_t>(-at.letter - 1)];
      gd = gd * GroupElement::f(-at.letter, dw.n());
    } else {
      gd = gd * at.h;
    }
  }
  r.gamma_ = std::move(gamma);
  r.gdeg_ = std::move(gd);
  return r;
}

TriangularElement straighten(const DoubleWing& dw, const SignedWord& w) {
  std::vector<Atom> atoms;
  for (int l : w) atoms.push_back(Atom{l, {}});
  return straighten(dw, atoms);
}

TriangularElement tri_product(const TriangularElement& a, const TriangularElement& b) {
  if (&a.wing() != &b.wing()) throw std::invalid_argument("mixed wing contexts");
  const DoubleWing& dw = a.wing();
  TriangularElement r(dw);
  std::map<TriKey, LaurentPoly> out;
  for (const auto& [ka, ca] : a.raw_) {
    std::vector<Atom> left = atoms_of_raw(ka);
    for (const auto& [kb, cb] : b.raw_) {
      std::vector<Atom> atoms = left;
      std::vector<Atom> right = atoms_of_raw(kb);
      atoms.insert(atoms.end(), right.begin(), right.end());
      normalize_atoms(dw, ca * cb, atoms, out);
    }
  }
  for (const auto& [k, c] : out) r.add_raw(k, c);
  if (a.gamma_ && b.gamma_) {
    std::vector<int> gm = *a.gamma_;
    for (size_t t = 0; t < gm.size(); ++t) gm[t] += (*b.gamma_)[t];
    r.gamma_ = std::move(gm);
  }
  if (a.gdeg_ && b.gdeg_) r.gdeg_ = *a.gdeg_ * *b.gdeg_;
  return r;
}

TriangularElement tri_bracket(const TriangularElement& u, const TriangularElement& v) {
  if (!u.gamma() || !v.group_degree())
    throw std::invalid_argument("bracket needs nominal degrees of both factors");
  const DoubleWing& dw = u.wing();
  const LaurentPoly scalar = dw.chi_gamma(*u.gamma(), *v.group_degree());
  return tri_product(u, v) - tri_product(v, u).scaled(scalar);
}

TriangularElement embed_positive(const DoubleWing& dw, const FreeElement& u) {
  TriangularElement r(dw);
  for (const auto& [w, c] : u.terms())
    r.add_raw(TriKey{{}, GroupElement::identity(dw.n()), w}, c);
  DegreeVector deg;
  if (!u.is_zero() && u.homogeneous(&deg)) {
    r.gamma_ = deg.d;
    GroupElement gd = GroupElement::identity(dw.n());
    for (int i = 1; i <= dw.n(); ++i)
      for (int t = 0; t < deg.d[static_cast<size_t>(i - 1)]; ++t)
        gd = gd * GroupElement::g(i, dw.n());
    r.gdeg_ = std::move(gd);
  }
  return r;
}

TriangularElement embed_negative(const DoubleWing& dw, const FreeElement& u) {
  TriangularElement r(dw);
  for (const auto& [w, c] : u.terms())
    r.add_raw(TriKey{w, GroupElement::identity(dw.n()), {}}, c);
  DegreeVector deg;
  if (!u.is_zero() && u.homogeneous(&deg)) {
    std::vector<int> gm(deg.d.size(), 0);
    GroupElement gd = GroupElement::identity(dw.n());
    for (int i = 1; i <= dw.n(); ++i) {
      gm[static_cast<size_t>(i - 1)] = -deg.d[static_cast<size_t>(i - 1)];
      for (int t = 0; t < deg.d[static_cast<size_t>(i - 1)]; ++t)
        gd = gd * GroupElement::f(i, dw.n());
    }
    r.gamma_ = std::move(gm);
    r.gdeg_ = std::move(gd);
  }
  return r;
}

TriangularElement group_element(const DoubleWing& dw, const GroupElement& h) {
  TriangularElement r(dw);
  r.add_raw(TriKey{{}, h, {}}, LaurentPoly::constant(Rational(1), dw.vars()));
  r.gamma_ = std::vector<int>(static_cast<size_t>(dw.n()), 0);
  r.gdeg_ = h;
  return r;
}

TriangularElement psi_plus(const DoubleWing& dw, const GenDesc& g) {
  return embed_positive(dw, freealg::psi(dw.plus(), g));
}

TriangularElement psi_minus(const DoubleWing& dw, const GenDesc& g) {
  return embed_negative(dw, freealg::psi(dw.minus(), g));
}

// ---------------------------------------------------------------- spans

std::map<std::vector<int>, SpanBasis> proper_derivative_spans(const Bicharacter& bc,
                                                              const GenDesc& g) {
  std::map<std::vector<int>, SpanBasis> spans;
  const FreeElement base = freealg::psi(bc, g);
  std::vector<FreeElement> work;
  for (int j = 1; j <= bc.n(); ++j) {
    FreeElement d = freealg::partial(bc, j, base);
    if (!d.is_zero()) work.push_back(std::move(d));
  }
  while (!work.empty()) {
    FreeElement u = std::move(work.back());
    work.pop_back();
    DegreeVector deg;
    if (u.is_zero() || !u.homogeneous(&deg)) continue;
    if (deg.total() == 0) continue;
    CanonicalElement c = nichols::omega(bc, u);
    if (c.is_zero()) continue;
    auto [it, fresh] = spans.emplace(deg.d, SpanBasis{});
    if (!it->second.add(c)) continue;
    for (int j = 1; j <= bc.n(); ++j) {
      FreeElement d = freealg::partial(bc, j, u);
      if (!d.is_zero()) work.push_back(std::move(d));
    }
  }
  return spans;
}

namespace {

// Exact membership of target in the linear span of the basis maps.
bool tri_in_span(const std::vector<const std::map<TriKey, LaurentPoly>*>& basis,
                 const std::map<TriKey, LaurentPoly>& target, const VarSetPtr& vars) {
  if (target.empty()) return true;
  if (basis.empty()) return false;
  std::map<TriKey, size_t> index;
  for (const auto* b : basis)
    for (const auto& [k, c] : *b) index.emplace(k, 0);
  for (const auto& [k, c] : target) index.emplace(k, 0);
  size_t row = 0;
  for (auto& [k, r] : index) r = row++;
  ExactMatrix m(index.size(), basis.size(), vars);
  for (size_t col = 0; col < basis.size(); ++col)
    for (const auto& [k, c] : *basis[col]) m.at(index.at(k), col) = c;
  std::vector<LaurentPoly> t(index.size(), LaurentPoly::zero(vars));
  for (const auto& [k, c] : target) t[index.at(k)] = c;
  return exact_rank_solve(m, &t).consistent;
}

// Outer product N (x) h (x) P of two wing coordinate vectors.
std::map<TriKey, LaurentPoly> assemble(const CanonicalElement& neg,
                                       const GroupElement& h,
                                       const CanonicalElement& pos) {
  std::map<TriKey, LaurentPoly> r;
  for (const auto& [nw, nc] : neg.terms())
    for (const auto& [pw, pc] : pos.terms()) r.emplace(TriKey{nw, h, pw}, nc * pc);
  return r;
}

std::vector<int> word_degree(const Word& w, int n) {
  return freealg::degree_of(w, n).d;
}

}  // namespace

// ---------------------------------------------------------------- verifiers

Verdict verify_sh(const DoubleWing& dw, const GenDesc& g) {
  const int k = g.k, m = g.m, n = dw.n();
  const Mask sbar = interval(k, m - 1) & ~g.s_effective();
  const TriangularElement b =
      tri_bracket(psi_plus(dw, g), psi_minus(dw, GenDesc{k, m, sbar}));
  const TriangularElement expected =
      TriangularElement::unit(dw) - group_element(dw, hbar(k, m + 1, n));
  if (b.is_zero())
    return Verdict{false, "cross bracket vanished at (" + std::to_string(k) + "," +
                              std::to_string(m) + ")"};
  if (!proportional(b, expected))
    return Verdict{false, "bracket of (" + std::to_string(k) + "," + std::to_string(m) +
                              ") not proportional to 1 - hbar: " + b.str()};
  return Verdict{};
}

static TriangularElement psi_plus_or_unit(const DoubleWing& dw, int a, int b, Mask S) {
  if (a > b) return TriangularElement::unit(dw);
  return psi_plus(dw, GenDesc{a, b, S});
}

static TriangularElement psi_minus_or_unit(const DoubleWing& dw, int a, int b, Mask S) {
  if (a > b) return TriangularElement::unit(dw);
  return psi_minus(dw, GenDesc{a, b, S});
}

Verdict verify_derm(const DoubleWing& dw, int k, int m, Mask S, int i) {
  const int n = dw.n();
  const GenDesc g{k, m, S};
  const Mask s = g.s_effective();
  const TriangularElement b =
      tri_bracket(psi_plus(dw, g), straighten(dw, SignedWord{-i}));

  bool expect_zero = false;
  TriangularElement e = TriangularElement::zero(dw);
  if (i < k || i > m) {
    // the letter is outside the support: both derivatives vanish
    expect_zero = true;
  } else if (k == m) {
    e = TriangularElement::unit(dw) - group_element(dw, GroupElement::h(k, n));
  } else if (i == k) {
    TriangularElement t = psi_plus(dw, GenDesc{k + 1, m, S});
    e = has(s, k) ? t : tri_product(group_element(dw, GroupElement::h(k, n)), t);
  } else if (i == m) {
    TriangularElement t = psi_plus(dw, GenDesc{k, m - 1, S});
    e = has(s, m - 1) ? tri_product(group_element(dw, GroupElement::h(m, n)), t) : t;
  } else {
    const bool left = has(s, i - 1), here = has(s, i);
    if (left && !here)
      e = tri_product(group_element(dw, GroupElement::h(i, n)),
                      tri_product(psi_plus(dw, GenDesc{i + 1, m, S}),
                                  psi_plus(dw, GenDesc{k, i - 1, S})));
    else if (!left && here)
      e = tri_product(psi_plus(dw, GenDesc{i + 1, m, S}),
                      psi_plus(dw, GenDesc{k, i - 1, S}));
    else
      expect_zero = true;
  }
  const std::string where = "[psi(" + std::to_string(k) + "," + std::to_string(m) +
                            "), x" + std::to_string(i) + "^-]";
  if (expect_zero) {
    if (!b.is_zero()) return Verdict{false, where + " expected 0, got " + b.str()};
  } else {
    if (!proportional(b, e))
      return Verdict{false, where + " does not match the case table: " + b.str()};
  }

  // Membership in the group-algebra span of proper derivatives must hold
  // exactly when i is not a (k,m)-entrance.
  auto spans = proper_derivative_spans(dw.plus(), g);
  bool inprw = true;
  std::map<GroupElement, CanonicalElement> parts;
  for (const auto& [key, c] : b.terms()) {
    if (!key.neg.empty()) {
      inprw = false;
      break;
    }
    auto [it, fresh] =
        parts.emplace(key.h, CanonicalElement::zero(n, dw.vars()));
    it->second.add_term(key.pos, c);
  }
  if (inprw) {
    for (const auto& [h, part] : parts) {
      DegreeVector deg;
      part.homogeneous(&deg);
      if (deg.total() == 0) {
        inprw = false;
        break;
      }
      auto it = spans.find(deg.d);
      if (it == spans.end() || !it->second.contains(part)) {
        inprw = false;
        break;
      }
    }
  }
  const bool entrance = has(rootdata::entrances(g), i);
  if (inprw == entrance)
    return Verdict{false, where + (entrance ? " lies in" : " escapes") +
                              " the proper-derivative span, contradicting the entrance rule"};
  return Verdict{};
}

namespace {

int mask_sup(Mask m) {
  int r = -1000;
  for (int t = 0; t < 64; ++t)
    if (has(m, t)) r = t;
  return r;
}

int mask_inf(Mask m) {
  for (int t = 0; t < 64; ++t)
    if (has(m, t)) return t;
  return 1000;
}

}  // namespace

Verdict verify_cross(const DoubleWing& dw, const GenDesc& gp, const GenDesc& gm) {
  const int n = dw.n();
  const int k = gp.k, m = gp.m, i = gm.k, j = gm.m;
  const Mask S = gp.s_effective(), T = gm.s_effective();
  const Mask Sb = gp.s_bullet(), Sc = gp.s_circle();
  const Mask Tb = gm.s_bullet(), Tc = gm.s_circle();
  const Mask Sbar = interval(k, m - 1) & ~S, Tbar = interval(i, j - 1) & ~T;
  const Mask Sbar_c = Sbar | bit(k - 1), Sbar_b = Sbar | bit(m);
  const Mask Tbar_c = Tbar | bit(i - 1), Tbar_b = Tbar | bit(j);

  const TriangularElement b = tri_bracket(psi_plus(dw, gp), psi_minus(dw, gm));
  const std::string where = "[psi(" + std::to_string(k) + "," + std::to_string(m) +
                            "), psi-(" + std::to_string(i) + "," + std::to_string(j) + ")]";

  if ((Sb & Tb) == 0 && (Sc & Tc) == 0) {
    if (!b.is_zero())
      return Verdict{false, where + " expected exact zero (disjoint diagrams)"};
    return Verdict{};
  }
  if ((Sbar_c & Tbar_c) == 0 && (Sbar_b & Tbar_b) == 0) {
    if (!b.is_zero())
      return Verdict{false, where + " expected exact zero (complement diagrams disjoint)"};
    return Verdict{};
  }

  const int nu = std::max(k, i), mu = std::min(m, j);

  if ((Sb & Tb) == 0 && (Sc & Tc) != 0) {
    // One-point circle intersection: the displayed single sum over a.
    std::vector<TriangularElement> cands;
    for (int a = nu + 1; a <= mu + 1; ++a) {
      if (a != mu + 1 && has(S | T, a - 1)) continue;
      TriangularElement c = psi_minus_or_unit(dw, i, nu - 1, T);
      c = tri_product(c, group_element(dw, hbar(nu, a, n)));
      c = tri_product(c, psi_minus_or_unit(dw, a, j, T));
      c = tri_product(c, psi_plus_or_unit(dw, a, m, S));
      c = tri_product(c, psi_plus_or_unit(dw, k, nu - 1, S));
      cands.push_back(std::move(c));
    }
    std::vector<const std::map<TriKey, LaurentPoly>*> basis;
    for (const auto& c : cands) basis.push_back(&c.terms());
    if (!tri_in_span(basis, b.terms(), dw.vars()))
      return Verdict{false, where + " not in the displayed sum shape (circle case)"};
    return Verdict{};
  }
  if ((Sbar_c & Tbar_c) == 0 && (Sbar_b & Tbar_b) != 0) {
    std::vector<TriangularElement> cands;
    for (int bb = nu - 1; bb <= mu - 1; ++bb) {
      if (bb != nu - 1 && !has(S & T, bb)) continue;
      TriangularElement c = psi_minus_or_unit(dw, mu + 1, j, T);
      c = tri_product(c, group_element(dw, hbar(bb + 1, mu + 1, n)));
      c = tri_product(c, psi_minus_or_unit(dw, i, bb, T));
      c = tri_product(c, psi_plus_or_unit(dw, k, bb, S));
      c = tri_product(c, psi_plus_or_unit(dw, mu + 1, m, S));
      cands.push_back(std::move(c));
    }
    std::vector<const std::map<TriKey, LaurentPoly>*> basis;
    for (const auto& c : cands) basis.push_back(&c.terms());
    if (!tri_in_span(basis, b.terms(), dw.vars()))
      return Verdict{false, where + " not in the displayed sum shape (bullet case)"};
    return Verdict{};
  }

  const bool cond_a = mask_sup(Sb & Tb) < mask_inf(Sbar_c & Tbar_c);
  const bool cond_b = (i == k && j == m && T == Sbar);
  if (!(cond_a || cond_b)) return Verdict{};  // nothing asserted

  auto sp_pos = proper_derivative_spans(dw.plus(), gp);
  auto sp_neg = proper_derivative_spans(dw.minus(), gm);
  const std::vector<int> zero_deg(static_cast<size_t>(n), 0);
  sp_pos[zero_deg].add(CanonicalElement::unit(n, dw.vars()));
  sp_neg[zero_deg].add(CanonicalElement::unit(n, dw.vars()));

  // Group the bracket by (group element, negative multidegree) and test each
  // component against the tensor span of the two derivative spaces.
  std::map<std::pair<GroupElement, std::vector<int>>, std::map<TriKey, LaurentPoly>>
      groups;
  for (const auto& [key, c] : b.terms())
    groups[{key.h, word_degree(key.neg, n)}].emplace(key, c);
  const std::vector<int>& gamma = *b.gamma();
  for (const auto& [gk, comp] : groups) {
    const auto& [h, nd] = gk;
    std::vector<int> pd(nd.size());
    bool feasible = true;
    for (size_t t = 0; t < nd.size(); ++t) {
      pd[t] = gamma[t] + nd[t];
      if (pd[t] < 0) feasible = false;
    }
    auto in = feasible ? sp_neg.find(nd) : sp_neg.end();
    auto ip = feasible ? sp_pos.find(pd) : sp_pos.end();
    if (in == sp_neg.end() || ip == sp_pos.end())
      return Verdict{false, where + " has a component outside the derivative spans"};
    std::vector<std::map<TriKey, LaurentPoly>> cands;
    for (const auto& N : in->second.elements())
      for (const auto& P : ip->second.elements()) cands.push_back(assemble(N, h, P));
    std::vector<const std::map<TriKey, LaurentPoly>*> basis;
    for (const auto& c : cands) basis.push_back(&c);
    if (!tri_in_span(basis, comp, dw.vars()))
      return Verdict{false, where + " component not in prW- x prW+ span"};
  }
  return Verdict{};
}

// ---------------------------------------------------------------- experiment

ConsistencyReport consistency_experiment(int n, int bound, Bicharacter::Mode mode) {
  ConsistencyReport rep;
  rep.n = n;
  rep.bound = bound;
  const DoubleWing dw(n, mode);
  const auto thetas = rootdata::enumerate_theta(n);

  struct WingData {
    RTProfile profile;
    std::vector<GenDesc> gens;
    std::vector<TriangularElement> pos, neg;
    std::unique_ptr<Subalgebra> sub_pos, sub_neg;
  };
  std::vector<WingData> data;
  data.reserve(thetas.size());
  for (const auto& th : thetas) {
    WingData wd;
    wd.profile = rootdata::build_RT(th);
    wd.gens = rootdata::pbw_generators(wd.profile);
    std::vector<FreeElement> gp, gn;
    for (const auto& g : wd.gens) {
      gp.push_back(freealg::psi(dw.plus(), g));
      gn.push_back(freealg::psi(dw.minus(), g));
      wd.pos.push_back(psi_plus(dw, g));
      wd.neg.push_back(psi_minus(dw, g));
    }
    wd.sub_pos = std::make_unique<Subalgebra>(dw.plus(), gp, bound);
    wd.sub_neg = std::make_unique<Subalgebra>(dw.minus(), gn, bound);
    data.push_back(std::move(wd));
  }

  for (const auto& plus : data) {
    for (const auto& minus : data) {
      const bool comb = rootdata::cond_pair(plus.profile, minus.profile);
      bool closure = true;
      for (size_t a = 0; a < plus.pos.size() && closure; ++a) {
        for (size_t bidx = 0; bidx < minus.neg.size() && closure; ++bidx) {
          const TriangularElement br = tri_bracket(plus.pos[a], minus.neg[bidx]);
          std::map<std::pair<GroupElement, std::vector<int>>,
                   std::map<TriKey, LaurentPoly>>
              groups;
          for (const auto& [key, c] : br.terms())
            groups[{key.h, word_degree(key.neg, n)}].emplace(key, c);
          const std::vector<int>& gamma = *br.gamma();
          for (const auto& [gk, comp] : groups) {
            const auto& [h, nd] = gk;
            std::vector<int> pd(nd.size());
            bool feasible = true;
            for (size_t t = 0; t < nd.size(); ++t) {
              pd[t] = gamma[t] + nd[t];
              if (pd[t] < 0) feasible = false;
            }
            const SpanBasis* sn =
                feasible ? minus.sub_neg->span(DegreeVector{nd}) : nullptr;
            const SpanBasis* sp =
                feasible ? plus.sub_pos->span(DegreeVector{pd}) : nullptr;
            if (!sn || !sp) {
              closure = false;
              break;
            }
            std::vector<std::map<TriKey, LaurentPoly>> cands;
            for (const auto& N : sn->elements())
              for (const auto& P : sp->elements()) cands.push_back(assemble(N, h, P));
            std::vector<const std::map<TriKey, LaurentPoly>*> basis;
            for (const auto& c : cands) basis.push_back(&c);
            if (!tri_in_span(basis, comp, dw.vars())) {
              closure = false;
              break;
            }
          }
        }
      }
      ++rep.total;
      if (closure) ++rep.passes;
      PairVerdict pv{plus.profile.theta, minus.profile.theta, comb, closure};
      if (closure == comb)
        ++rep.agreements;
      else
        rep.disagreements.push_back(pv);
      rep.pairs.push_back(std::move(pv));
    }
  }
  return rep;
}

}  // namespace atlas::dblwing
