#include "atlas/nichols.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace atlas::nichols {

using freealg::degree_of;
using freealg::p_of;
using freealg::partial;
using freealg::psi;
using freealg::u_bracket;
using freealg::word_less;
using ring::ExactMatrix;
using ring::exact_rank_solve;
using ring::RankSolveResult;
using rootdata::has;
using rootdata::Mask;
using rootdata::mask_elements;

CanonicalElement::CanonicalElement(int n, VarSetPtr vars)
    : n_(n), vars_(std::move(vars)) {}

CanonicalElement CanonicalElement::zero(int n, VarSetPtr vars) {
  return CanonicalElement(n, std::move(vars));
}

CanonicalElement CanonicalElement::unit(int n, VarSetPtr vars) {
  CanonicalElement c(n, vars);
  c.add_term({}, LaurentPoly::constant(ring::Rational(1), vars));
  return c;
}

bool CanonicalElement::homogeneous(DegreeVector* deg) const {
  bool first = true;
  DegreeVector d0;
  for (const auto& [w, c] : terms_) {
    DegreeVector d = degree_of(w, n_);
    if (first) {
      d0 = d;
      first = false;
    } else if (!(d == d0)) {
      return false;
    }
  }
  if (!first && deg) *deg = d0;
  return true;
}

void CanonicalElement::add_term(const Word& w, const LaurentPoly& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

CanonicalElement CanonicalElement::operator+(const CanonicalElement& o) const {
  CanonicalElement r = *this;
  for (const auto& [w, c] : o.terms_) r.add_term(w, c);
  return r;
}

CanonicalElement CanonicalElement::operator-(const CanonicalElement& o) const {
  CanonicalElement r = *this;
  for (const auto& [w, c] : o.terms_) r.add_term(w, -c);
  return r;
}

CanonicalElement CanonicalElement::scaled(const LaurentPoly& c) const {
  CanonicalElement r(n_, vars_);
  if (c.is_zero()) return r;
  for (const auto& [w, t] : terms_) r.terms_.emplace(w, t * c);
  return r;
}

bool CanonicalElement::operator==(const CanonicalElement& o) const {
  return terms_ == o.terms_;
}

std::string CanonicalElement::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")(" << freealg::word_str(w) << ")";
  }
  return os.str();
}

bool proportional(const CanonicalElement& a, const CanonicalElement& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  const auto& ta = a.terms();
  const auto& tb = b.terms();
  if (ta.size() != tb.size()) return false;
  auto ia = ta.begin();
  auto ib = tb.begin();
  const LaurentPoly& a0 = ia->second;
  const LaurentPoly& b0 = ib->second;
  for (; ia != ta.end(); ++ia, ++ib) {
    if (ia->first != ib->first) return false;
    if (ia->second * b0 != ib->second * a0) return false;
  }
  return true;
}

namespace {

CanonicalElement omega_hom(const Bicharacter& bc, const FreeElement& u,
                           const DegreeVector& d) {
  CanonicalElement out(bc.n(), bc.vars());
  if (u.is_zero()) return out;
  if (d.total() == 0) {
    out.add_term({}, u.terms().begin()->second);
    return out;
  }
  for (int i = 1; i <= bc.n(); ++i) {
    if (d.d[static_cast<size_t>(i - 1)] == 0) continue;
    FreeElement du = partial(bc, i, u);
    if (du.is_zero()) continue;
    DegreeVector rest = d;
    --rest.d[static_cast<size_t>(i - 1)];
    DegreeVector ei{std::vector<int>(static_cast<size_t>(bc.n()), 0)};
    ei.d[static_cast<size_t>(i - 1)] = 1;
    // the braided derivative carries the conjugation scalar
    LaurentPoly scale = bc.p_deg(rest, ei).inv_monomial();
    CanonicalElement sub = omega_hom(bc, du.scaled(scale), rest);
    for (const auto& [w, c] : sub.terms()) {
      Word nw = w;
      nw.push_back(i);
      out.add_term(nw, c);
    }
  }
  return out;
}

}  // namespace

CanonicalElement omega(const Bicharacter& bc, const FreeElement& u) {
  std::map<std::vector<int>, FreeElement> comps;
  for (const auto& [w, c] : u.terms()) {
    DegreeVector d = degree_of(w, bc.n());
    auto [it, ins] = comps.try_emplace(d.d, FreeElement(bc.n(), bc.vars()));
    it->second.add_term(w, c);
  }
  CanonicalElement out(bc.n(), bc.vars());
  for (const auto& [dvec, comp] : comps)
    out = out + omega_hom(bc, comp, DegreeVector{dvec});
  return out;
}

namespace {

void shuffle_words(const Bicharacter& bc, const Word& u, size_t iu, const Word& v,
                   size_t iv, Word& acc, const LaurentPoly& coeff,
                   CanonicalElement& out) {
  if (iu == u.size() && iv == v.size()) {
    out.add_term(acc, coeff);
    return;
  }
  if (iu < u.size()) {
    acc.push_back(u[iu]);
    shuffle_words(bc, u, iu + 1, v, iv, acc, coeff, out);
    acc.pop_back();
  }
  if (iv < v.size()) {
    // the right-factor letter crosses every remaining left-factor letter
    LaurentPoly f = coeff;
    for (size_t t = iu; t < u.size(); ++t)
      f *= bc.p(v[iv], u[t]).inv_monomial();
    acc.push_back(v[iv]);
    shuffle_words(bc, u, iu, v, iv + 1, acc, f, out);
    acc.pop_back();
  }
}

}  // namespace

CanonicalElement shuffle_product(const Bicharacter& bc, const CanonicalElement& a,
                                 const CanonicalElement& b) {
  CanonicalElement out(a.n(), a.vars());
  for (const auto& [wu, cu] : a.terms())
    for (const auto& [wv, cv] : b.terms()) {
      Word acc;
      acc.reserve(wu.size() + wv.size());
      shuffle_words(bc, wu, 0, wv, 0, acc, cu * cv, out);
    }
  return out;
}

std::vector<std::pair<CanonicalElement, Word>> deconcat(
    const CanonicalElement& c) {
  std::map<Word, CanonicalElement> grouped;
  for (const auto& [w, coef] : c.terms()) {
    for (size_t cut = 0; cut <= w.size(); ++cut) {
      Word left(w.begin(), w.begin() + static_cast<long>(cut));
      Word right(w.begin() + static_cast<long>(cut), w.end());
      auto [it, ins] =
          grouped.try_emplace(right, CanonicalElement::zero(c.n(), c.vars()));
      it->second.add_term(left, coef);
    }
  }
  std::vector<std::pair<CanonicalElement, Word>> out;
  out.reserve(grouped.size());
  for (auto& [right, left] : grouped) out.emplace_back(std::move(left), right);
  return out;
}

FreeElement flip_letters(const FreeElement& u) {
  FreeElement r(u.n(), u.vars());
  for (const auto& [w, c] : u.terms()) {
    Word nw;
    nw.reserve(w.size());
    for (int l : w) nw.push_back(u.n() - l + 1);
    r.add_term(nw, c);
  }
  return r;
}

DegreeVector PBWMonomial::degree(int n) const {
  DegreeVector d{std::vector<int>(static_cast<size_t>(n), 0)};
  for (const auto& [iv, e] : factors)
    for (int i = iv.k; i <= iv.m; ++i) d.d[static_cast<size_t>(i - 1)] += e;
  return d;
}

std::string PBWMonomial::str() const {
  if (factors.empty()) return "1";
  std::ostringstream os;
  bool first = true;
  for (const auto& [iv, e] : factors) {
    if (!first) os << "*";
    first = false;
    os << "u[" << iv.k << "," << iv.m << "]";
    if (e > 1) os << "^" << e;
  }
  return os.str();
}

bool PBWMonomial::operator==(const PBWMonomial& o) const {
  if (factors.size() != o.factors.size()) return false;
  for (size_t i = 0; i < factors.size(); ++i)
    if (factors[i].first.k != o.factors[i].first.k ||
        factors[i].first.m != o.factors[i].first.m ||
        factors[i].second != o.factors[i].second)
      return false;
  return true;
}

namespace {

// u[k,m] precedes u[k',m'] when k > k', or k = k' and m > m' (the standard
// word order with proper beginnings greater).
bool super_letter_less(const RootInterval& a, const RootInterval& b) {
  return a.k > b.k || (a.k == b.k && a.m > b.m);
}

void enum_monomials(const std::vector<RootInterval>& letters, size_t start,
                    std::vector<int>& rem, PBWMonomial& cur,
                    std::vector<PBWMonomial>& out) {
  bool done = std::all_of(rem.begin(), rem.end(), [](int x) { return x == 0; });
  if (done) {
    out.push_back(cur);
    return;
  }
  for (size_t i = start; i < letters.size(); ++i) {
    const RootInterval& iv = letters[i];
    int e = 0;
    bool ok = true;
    while (ok) {
      for (int j = iv.k; j <= iv.m && ok; ++j)
        if (rem[static_cast<size_t>(j - 1)] == 0) ok = false;
      if (!ok) break;
      for (int j = iv.k; j <= iv.m; ++j) --rem[static_cast<size_t>(j - 1)];
      ++e;
      cur.factors.emplace_back(iv, e);
      enum_monomials(letters, i + 1, rem, cur, out);
      cur.factors.pop_back();
    }
    for (int j = iv.k; j <= iv.m; ++j) rem[static_cast<size_t>(j - 1)] += e;
  }
}

}  // namespace

std::vector<PBWMonomial> pbw_monomials(const DegreeVector& d) {
  const int n = static_cast<int>(d.d.size());
  std::vector<RootInterval> letters;
  for (int k = 1; k <= n; ++k)
    for (int m = k; m <= n; ++m) letters.push_back({k, m});
  std::sort(letters.begin(), letters.end(), super_letter_less);
  std::vector<int> rem = d.d;
  PBWMonomial cur;
  std::vector<PBWMonomial> out;
  enum_monomials(letters, 0, rem, cur, out);
  return out;
}

CanonicalElement omega_monomial(const Bicharacter& bc, const PBWMonomial& m) {
  CanonicalElement out = CanonicalElement::unit(bc.n(), bc.vars());
  for (const auto& [iv, e] : m.factors) {
    CanonicalElement w = omega(bc, u_bracket(bc, iv.k, iv.m));
    for (int t = 0; t < e; ++t) out = shuffle_product(bc, out, w);
  }
  return out;
}

namespace {

// Column-major solve: does the target lie in the span of the columns, and if
// so with which exact coordinates.
RankSolveResult solve_in_span(const std::vector<const CanonicalElement*>& cols,
                              const CanonicalElement& target,
                              const VarSetPtr& vars) {
  std::set<Word> words;
  for (const auto* c : cols)
    for (const auto& [w, coef] : c->terms()) words.insert(w);
  for (const auto& [w, coef] : target.terms()) words.insert(w);
  std::vector<Word> rows(words.begin(), words.end());
  ExactMatrix m(rows.size(), cols.size(), vars);
  std::vector<LaurentPoly> rhs(rows.size(), LaurentPoly::zero(vars));
  for (size_t i = 0; i < rows.size(); ++i) {
    for (size_t j = 0; j < cols.size(); ++j) {
      auto it = cols[j]->terms().find(rows[i]);
      if (it != cols[j]->terms().end()) m.at(i, j) = it->second;
    }
    auto it = target.terms().find(rows[i]);
    if (it != target.terms().end()) rhs[i] = it->second;
  }
  return exact_rank_solve(m, &rhs);
}

}  // namespace

std::vector<PBWCoordinate> pbw_decompose(const Bicharacter& bc,
                                         const FreeElement& u) {
  DegreeVector d;
  if (!u.homogeneous(&d))
    throw std::invalid_argument("pbw_decompose: element not homogeneous");
  CanonicalElement target = omega(bc, u);
  if (target.is_zero()) return {};
  std::vector<PBWMonomial> monos = pbw_monomials(d);
  std::vector<CanonicalElement> images;
  images.reserve(monos.size());
  for (const auto& m : monos) images.push_back(omega_monomial(bc, m));
  std::vector<const CanonicalElement*> cols;
  cols.reserve(images.size());
  for (const auto& c : images) cols.push_back(&c);
  RankSolveResult r = solve_in_span(cols, target, bc.vars());
  if (!r.consistent)
    throw std::logic_error("pbw_decompose: basis does not span the target");
  std::vector<PBWCoordinate> out;
  for (size_t j = 0; j < monos.size(); ++j) {
    if (r.solution[j].first.is_zero()) continue;
    out.push_back({monos[j], r.solution[j].first, r.solution[j].second});
  }
  return out;
}

bool SpanBasis::contains(const CanonicalElement& c) const {
  if (c.is_zero()) return true;
  if (elements_.empty()) return false;
  std::vector<const CanonicalElement*> cols;
  cols.reserve(elements_.size());
  for (const auto& e : elements_) cols.push_back(&e);
  return solve_in_span(cols, c, c.vars()).consistent;
}

bool SpanBasis::add(const CanonicalElement& c) {
  if (contains(c)) return false;
  elements_.push_back(c);
  return true;
}

Subalgebra::Subalgebra(const Bicharacter& bc,
                       const std::vector<FreeElement>& generators, int bound)
    : bc_(bc), bound_(bound) {
  std::vector<std::pair<CanonicalElement, DegreeVector>> gens;
  for (const auto& g : generators) {
    DegreeVector d;
    if (!g.homogeneous(&d))
      throw std::invalid_argument("subalgebra generators must be homogeneous");
    CanonicalElement c = omega(bc, g);
    if (c.is_zero()) continue;
    if (d.total() == 0 || d.total() > bound) continue;
    gens.emplace_back(std::move(c), d);
  }
  const std::vector<int> zero(static_cast<size_t>(bc.n()), 0);
  spans_[zero].add(CanonicalElement::unit(bc.n(), bc.vars()));
  for (int t = 0; t < bound; ++t) {
    std::vector<std::vector<int>> keys;
    for (const auto& [k, s] : spans_) {
      int tot = 0;
      for (int x : k) tot += x;
      if (tot == t) keys.push_back(k);
    }
    for (const auto& key : keys)
      for (const auto& [gc, gd] : gens) {
        if (t + gd.total() > bound) continue;
        std::vector<int> nk = key;
        for (size_t i = 0; i < nk.size(); ++i) nk[i] += gd.d[i];
        // snapshot: elements added to spans_[key] mid-loop cannot exist since
        // key has total t and products only raise the total
        const auto& base = spans_.at(key).elements();
        SpanBasis& dst = spans_[nk];
        for (const auto& b : base) dst.add(shuffle_product(bc_, b, gc));
      }
  }
}

const SpanBasis* Subalgebra::span(const DegreeVector& d) const {
  auto it = spans_.find(d.d);
  return it == spans_.end() ? nullptr : &it->second;
}

bool Subalgebra::member(const CanonicalElement& c) const {
  if (c.is_zero()) return true;
  DegreeVector d;
  if (!c.homogeneous(&d))
    throw std::invalid_argument("membership needs a homogeneous element");
  if (d.total() > bound_)
    throw std::invalid_argument("membership query beyond the degree bound");
  const SpanBasis* s = span(d);
  return s && s->contains(c);
}

bool Subalgebra::member(const FreeElement& u) const {
  return member(omega(bc_, u));
}

Verdict coideal_check(const Bicharacter& bc,
                      const std::vector<FreeElement>& generators, int bound) {
  Subalgebra a(bc, generators, bound);
  for (const auto& [key, basis] : a.spans()) {
    for (const auto& c : basis.elements()) {
      for (const auto& [left, right] : deconcat(c)) {
        if (right.empty()) continue;  // left leg is c itself
        DegreeVector dl;
        left.homogeneous(&dl);
        if (dl.total() == 0) continue;  // scalar left leg
        if (!a.member(left)) {
          Verdict v;
          v.ok = false;
          std::ostringstream os;
          os << "left leg " << left.str() << " grouped by ("
             << freealg::word_str(right) << ") escapes the subalgebra";
          v.detail = os.str();
          return v;
        }
      }
    }
  }
  return {};
}

Verdict differential_closure_check(const Bicharacter& bc, const RTProfile& p,
                                   int bound) {
  std::vector<FreeElement> gens;
  for (const auto& g : rootdata::pbw_generators(p)) gens.push_back(psi(bc, g));
  if (gens.empty()) return {};
  Subalgebra a(bc, gens, bound);
  const auto descs = rootdata::pbw_generators(p);
  for (size_t t = 0; t < gens.size(); ++t)
    for (int i = 1; i <= bc.n(); ++i) {
      FreeElement df = partial(bc, i, gens[t]);
      CanonicalElement c = omega(bc, df);
      if (c.is_zero()) continue;
      if (!a.member(c)) {
        Verdict v;
        v.ok = false;
        std::ostringstream os;
        os << "derivative " << i << " of "
           << freealg::psi_bracket_str(descs[t]) << " escapes the subalgebra";
        v.detail = os.str();
        return v;
      }
    }
  return {};
}

std::vector<GenDesc> w_set(const GenDesc& g) {
  const Mask s = g.s_effective();
  std::vector<GenDesc> out;
  for (int a = g.k; a <= g.m; ++a)
    for (int b = a; b <= g.m; ++b) {
      if (!(has(s, b) || b == g.m)) continue;
      if (!(!has(s, a - 1) || a == g.k)) continue;
      out.push_back({a, b, s});
    }
  return out;
}

namespace {

void enum_separated(const Bicharacter& bc, const std::vector<GenDesc>& w,
                    const std::vector<CanonicalElement>& images, size_t start,
                    int last_m, const CanonicalElement& acc,
                    std::map<std::vector<int>, SpanBasis>& spans) {
  DegreeVector d;
  acc.homogeneous(&d);
  spans[d.d].add(acc);
  for (size_t i = start; i < w.size(); ++i) {
    if (w[i].k <= last_m + 1) continue;  // factors must leave a gap
    enum_separated(bc, w, images, i + 1, w[i].m,
                   shuffle_product(bc, acc, images[i]), spans);
  }
}

}  // namespace

Verdict span_of_derivatives_check(const Bicharacter& bc, const GenDesc& g) {
  // derivative closure of psi(g)
  std::map<std::vector<int>, SpanBasis> closure;
  std::vector<FreeElement> work{psi(bc, g)};
  while (!work.empty()) {
    FreeElement u = work.back();
    work.pop_back();
    CanonicalElement c = omega(bc, u);
    if (c.is_zero()) continue;
    DegreeVector d;
    c.homogeneous(&d);
    if (closure[d.d].add(c))
      for (int i = 1; i <= bc.n(); ++i) work.push_back(partial(bc, i, u));
  }
  // products of pairwise separated sub-bracket values
  std::vector<GenDesc> w = w_set(g);
  std::sort(w.begin(), w.end(),
            [](const GenDesc& a, const GenDesc& b) { return a.k < b.k; });
  std::vector<CanonicalElement> images;
  images.reserve(w.size());
  for (const auto& d : w) images.push_back(omega(bc, psi(bc, d)));
  std::map<std::vector<int>, SpanBasis> products;
  enum_separated(bc, w, images, 0, -2,
                 CanonicalElement::unit(bc.n(), bc.vars()), products);
  // mutual containment, degree by degree
  std::set<std::vector<int>> keys;
  for (const auto& [k, s] : closure) keys.insert(k);
  for (const auto& [k, s] : products) keys.insert(k);
  for (const auto& key : keys) {
    auto ic = closure.find(key);
    auto ip = products.find(key);
    const SpanBasis empty;
    const SpanBasis& c = ic == closure.end() ? empty : ic->second;
    const SpanBasis& p = ip == products.end() ? empty : ip->second;
    for (const auto& e : c.elements())
      if (!p.contains(e)) {
        Verdict v;
        v.ok = false;
        v.detail = "derivative " + e.str() + " outside the product span";
        return v;
      }
    for (const auto& e : p.elements())
      if (!c.contains(e)) {
        Verdict v;
        v.ok = false;
        v.detail = "product " + e.str() + " outside the derivative span";
        return v;
      }
  }
  return {};
}

std::pair<GenDesc, FreeElement> psi_from_element(const Bicharacter& bc,
                                                 const FreeElement& c) {
  DegreeVector d;
  if (!c.homogeneous(&d) || c.is_zero())
    throw std::invalid_argument("expected a nonzero homogeneous element");
  int k = 0, m = 0;
  for (int i = 1; i <= bc.n(); ++i) {
    int x = d.d[static_cast<size_t>(i - 1)];
    if (x == 0) continue;
    if (x != 1 || (k != 0 && i != m + 1))
      throw std::invalid_argument("multidegree is not an interval");
    if (k == 0) k = i;
    m = i;
  }
  if (k == 0) throw std::invalid_argument("multidegree is not an interval");
  bool leading = false;
  Mask s = 0;
  for (const auto& coord : pbw_decompose(bc, c)) {
    const auto& f = coord.mono.factors;
    if (f.size() == 1 && f[0].first.k == k && f[0].first.m == m) {
      leading = true;
      continue;
    }
    const auto& last = f.back().first;
    if (last.k != k || f.back().second != 1 || last.m >= m)
      throw std::invalid_argument("coordinates do not have the expected shape");
    s |= rootdata::bit(last.m);
  }
  if (!leading)
    throw std::invalid_argument("leading interval bracket coordinate is zero");
  GenDesc g{k, m, s};
  return {g, psi(bc, g)};
}

}  // namespace atlas::nichols
