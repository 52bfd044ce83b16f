#include "atlas/ring.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <random>
#include <sstream>
#include <stdexcept>

namespace atlas::ring {

Rational rat(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string rat_str(const Rational& r) { return r.get_str(); }

VarSetPtr qvars() {
  static VarSetPtr v = std::make_shared<VarSet>(VarSet{{"q"}});
  return v;
}

VarSetPtr make_vars(std::vector<std::string> names) {
  return std::make_shared<VarSet>(VarSet{std::move(names)});
}

namespace {

bool same_vars(const VarSetPtr& a, const VarSetPtr& b) {
  return a == b || *a == *b;
}

void require_same_vars(const VarSetPtr& a, const VarSetPtr& b) {
  if (!same_vars(a, b)) throw std::invalid_argument("variable-set mismatch");
}

// Graded-lex: higher total degree first, ties broken lexicographically.
bool grlex_less(const Exp& a, const Exp& b) {
  long ta = 0, tb = 0;
  for (int e : a) ta += e;
  for (int e : b) tb += e;
  if (ta != tb) return ta < tb;
  return a < b;
}

Exp exp_add(const Exp& a, const Exp& b) {
  Exp r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Exp exp_sub(const Exp& a, const Exp& b) {
  Exp r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Rational pow_rat(const Rational& base, long e) {
  if (e == 0) return Rational(1);
  Rational b = e > 0 ? base : Rational(1) / base;
  unsigned long k = static_cast<unsigned long>(e > 0 ? e : -e);
  Rational acc(1);
  while (k) {
    if (k & 1) acc *= b;
    b *= b;
    k >>= 1;
  }
  return acc;
}

}  // namespace

LaurentPoly::LaurentPoly() : vars_(qvars()) {}
LaurentPoly::LaurentPoly(VarSetPtr vars) : vars_(std::move(vars)) {}

LaurentPoly LaurentPoly::zero(VarSetPtr vars) { return LaurentPoly(std::move(vars)); }

LaurentPoly LaurentPoly::constant(const Rational& c, VarSetPtr vars) {
  LaurentPoly p(std::move(vars));
  if (c != 0) p.terms_.emplace(Exp(p.vars_->names.size(), 0), c);
  return p;
}

LaurentPoly LaurentPoly::monomial(const Rational& c, Exp e, VarSetPtr vars) {
  LaurentPoly p(std::move(vars));
  if (e.size() != p.vars_->names.size())
    throw std::invalid_argument("exponent vector length mismatch");
  if (c != 0) p.terms_.emplace(std::move(e), c);
  return p;
}

LaurentPoly LaurentPoly::q_power(long e) {
  return monomial(Rational(1), Exp{static_cast<int>(e)}, qvars());
}

bool LaurentPoly::is_one() const {
  if (terms_.size() != 1) return false;
  const auto& [e, c] = *terms_.begin();
  return c == 1 && std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
}

void LaurentPoly::insert_term(const Exp& e, const Rational& c) {
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    if (c != 0) terms_.emplace(e, c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
  LaurentPoly r = *this;
  r += o;
  return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  require_same_vars(vars_, o.vars_);
  for (const auto& [e, c] : o.terms_) insert_term(e, c);
  return *this;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const {
  LaurentPoly r = *this;
  r -= o;
  return r;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  require_same_vars(vars_, o.vars_);
  for (const auto& [e, c] : o.terms_) insert_term(e, -c);
  return *this;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r(vars_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
  require_same_vars(vars_, o.vars_);
  LaurentPoly r(vars_);
  for (const auto& [ea, ca] : terms_)
    for (const auto& [eb, cb] : o.terms_) r.insert_term(exp_add(ea, eb), ca * cb);
  return r;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) {
  *this = *this * o;
  return *this;
}

bool LaurentPoly::operator==(const LaurentPoly& o) const {
  return same_vars(vars_, o.vars_) && terms_ == o.terms_;
}

LaurentPoly LaurentPoly::scale(const Rational& c) const {
  LaurentPoly r(vars_);
  if (c == 0) return r;
  for (const auto& [e, k] : terms_) r.terms_.emplace(e, k * c);
  return r;
}

LaurentPoly LaurentPoly::inv_monomial() const {
  if (terms_.size() != 1) throw std::domain_error("inverse of a non-monomial");
  const auto& [e, c] = *terms_.begin();
  Exp ne(e.size());
  for (size_t i = 0; i < e.size(); ++i) ne[i] = -e[i];
  return monomial(Rational(1) / c, std::move(ne), vars_);
}

Rational LaurentPoly::eval(const std::vector<Rational>& point) const {
  if (point.size() != vars_->names.size())
    throw std::invalid_argument("evaluation point arity mismatch");
  Rational acc(0);
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0) t *= pow_rat(point[i], e[i]);
    acc += t;
  }
  return acc;
}

std::optional<Exp> LaurentPoly::min_exp() const {
  if (terms_.empty()) return std::nullopt;
  Exp m = terms_.begin()->first;
  for (const auto& [e, c] : terms_)
    for (size_t i = 0; i < m.size(); ++i) m[i] = std::min(m[i], e[i]);
  return m;
}

std::optional<Exp> LaurentPoly::max_exp() const {
  if (terms_.empty()) return std::nullopt;
  Exp m = terms_.begin()->first;
  for (const auto& [e, c] : terms_)
    for (size_t i = 0; i < m.size(); ++i) m[i] = std::max(m[i], e[i]);
  return m;
}

std::string LaurentPoly::str() const {
  if (terms_.empty()) return "0";
  std::vector<const std::pair<const Exp, Rational>*> ts;
  ts.reserve(terms_.size());
  for (const auto& t : terms_) ts.push_back(&t);
  std::sort(ts.begin(), ts.end(),
            [](auto* a, auto* b) { return grlex_less(b->first, a->first); });
  std::ostringstream out;
  bool first = true;
  for (auto* t : ts) {
    const Exp& e = t->first;
    Rational c = t->second;
    bool neg = c < 0;
    if (neg) c = -c;
    if (first) {
      if (neg) out << "-";
      first = false;
    } else {
      out << (neg ? " - " : " + ");
    }
    std::string mono;
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += vars_->names[i];
      if (e[i] != 1) mono += "^" + std::to_string(e[i]);
    }
    if (mono.empty()) {
      out << rat_str(c);
    } else if (c == 1) {
      out << mono;
    } else {
      out << rat_str(c) << "*" << mono;
    }
  }
  return out.str();
}

namespace {

struct Lexer {
  const std::string& s;
  size_t pos = 0;
  explicit Lexer(const std::string& str) : s(str) {}
  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }
  bool eat(char c) {
    if (peek() == c) {
      ++pos;
      return true;
    }
    return false;
  }
  std::string number() {
    skip_ws();
    size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    return s.substr(start, pos - start);
  }
  std::string ident() {
    skip_ws();
    size_t start = pos;
    while (pos < s.size() &&
           (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
      ++pos;
    return s.substr(start, pos - start);
  }
  long integer() {
    skip_ws();
    bool neg = eat('-');
    std::string n = number();
    if (n.empty()) throw std::invalid_argument("expected integer in Laurent text");
    long v = std::stol(n);
    return neg ? -v : v;
  }
};

}  // namespace

LaurentPoly LaurentPoly::parse(const std::string& text, VarSetPtr vars) {
  Lexer lx(text);
  LaurentPoly result(vars);
  const auto& names = vars->names;
  bool any = false;
  while (true) {
    char c = lx.peek();
    if (c == '\0') break;
    int sign = 1;
    if (any || c == '+' || c == '-') {
      if (lx.eat('+')) {
      } else if (lx.eat('-')) {
        sign = -1;
      } else if (any) {
        throw std::invalid_argument("expected '+' or '-' in Laurent text");
      }
    }
    Rational coeff(sign);
    Exp e(names.size(), 0);
    bool saw_factor = false;
    while (true) {
      char f = lx.peek();
      if (std::isdigit(static_cast<unsigned char>(f))) {
        std::string num = lx.number();
        Rational v(num);
        if (lx.eat('/')) {
          std::string den = lx.number();
          if (den.empty()) throw std::invalid_argument("bad rational in Laurent text");
          v /= Rational(den);
        }
        coeff *= v;
        saw_factor = true;
      } else if (std::isalpha(static_cast<unsigned char>(f))) {
        std::string name = lx.ident();
        auto it = std::find(names.begin(), names.end(), name);
        if (it == names.end())
          throw std::invalid_argument("unknown variable '" + name + "'");
        long ex = 1;
        if (lx.eat('^')) ex = lx.integer();
        e[static_cast<size_t>(it - names.begin())] += static_cast<int>(ex);
        saw_factor = true;
      } else {
        break;
      }
      lx.eat('*');
    }
    if (!saw_factor) throw std::invalid_argument("empty term in Laurent text");
    result += monomial(coeff, e, vars);
    any = true;
  }
  if (!any) throw std::invalid_argument("empty Laurent text");
  return result;
}

LaurentPoly divexact(const LaurentPoly& a, const LaurentPoly& b) {
  require_same_vars(a.vars_, b.vars_);
  if (b.is_zero()) throw std::domain_error("division by zero");
  LaurentPoly q(a.vars_);
  if (a.is_zero()) return q;
  auto lead = [](const LaurentPoly& p) {
    auto it = p.terms_.begin();
    auto best = it;
    for (; it != p.terms_.end(); ++it)
      if (grlex_less(best->first, it->first)) best = it;
    return best;
  };
  auto lb = lead(b);
  LaurentPoly r = a;
  while (!r.is_zero()) {
    auto lr = lead(r);
    const Exp le = lr->first;
    Exp e = exp_sub(le, lb->first);
    Rational c = lr->second / lb->second;
    LaurentPoly t = LaurentPoly::monomial(c, e, a.vars_);
    q += t;
    r -= t * b;
    if (!r.is_zero() && !grlex_less(lead(r)->first, le))
      throw std::domain_error("inexact division");
  }
  return q;
}

LaurentPoly gcd_univariate(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.vars()->names.size() != 1 || b.vars()->names.size() != 1)
    throw std::invalid_argument("gcd_univariate needs one variable");
  auto dense = [](const LaurentPoly& p) {
    std::vector<Rational> v;
    if (p.is_zero()) return v;
    int lo = (*p.min_exp())[0], hi = (*p.max_exp())[0];
    v.assign(static_cast<size_t>(hi - lo + 1), Rational(0));
    for (const auto& [e, c] : p.terms()) v[static_cast<size_t>(e[0] - lo)] = c;
    return v;
  };
  std::vector<Rational> u = dense(a), v = dense(b);
  auto trim = [](std::vector<Rational>& w) {
    while (!w.empty() && w.back() == 0) w.pop_back();
  };
  trim(u);
  trim(v);
  if (u.empty()) std::swap(u, v);
  while (!v.empty()) {
    // u mod v over Q[x]
    while (u.size() >= v.size() && !u.empty()) {
      Rational f = u.back() / v.back();
      size_t off = u.size() - v.size();
      for (size_t i = 0; i < v.size(); ++i) u[off + i] -= f * v[i];
      trim(u);
      if (u.size() >= v.size() && !u.empty() && u.back() == 0) trim(u);
    }
    std::swap(u, v);
    trim(v);
  }
  if (u.empty()) return LaurentPoly::zero(a.vars());
  Rational lead = u.back();
  LaurentPoly g(a.vars());
  for (size_t i = 0; i < u.size(); ++i)
    if (u[i] != 0)
      g += LaurentPoly::monomial(u[i] / lead, Exp{static_cast<int>(i)}, a.vars());
  return g;
}

ExactMatrix::ExactMatrix(size_t rows, size_t cols, VarSetPtr vars)
    : rows_(rows), cols_(cols), vars_(vars),
      a_(rows * cols, LaurentPoly(vars)) {}

namespace {

// Divide a row by its rational content and common monomial factor; preserves
// rank, consistency, and the solution set of the corresponding equation.
void strip_row_content(std::vector<LaurentPoly>& row) {
  std::optional<Exp> common;
  Rational content(0);
  for (const auto& p : row) {
    if (p.is_zero()) continue;
    Exp m = *p.min_exp();
    if (!common) {
      common = m;
    } else {
      for (size_t i = 0; i < m.size(); ++i) (*common)[i] = std::min((*common)[i], m[i]);
    }
    for (const auto& [e, c] : p.terms()) {
      Rational ac = abs(c);
      if (content == 0) {
        content = ac;
      } else {
        // gcd of rationals: gcd of numerators over lcm of denominators
        mpz_class gn, gl;
        mpz_gcd(gn.get_mpz_t(), content.get_num().get_mpz_t(), ac.get_num().get_mpz_t());
        mpz_lcm(gl.get_mpz_t(), content.get_den().get_mpz_t(), ac.get_den().get_mpz_t());
        content = Rational(gn, gl);
        content.canonicalize();
      }
    }
  }
  if (!common) return;
  bool trivial = content == 1 &&
                 std::all_of(common->begin(), common->end(), [](int x) { return x == 0; });
  if (trivial) return;
  Exp ne(common->size());
  for (size_t i = 0; i < ne.size(); ++i) ne[i] = -(*common)[i];
  LaurentPoly f = LaurentPoly::monomial(Rational(1) / content, ne, row[0].vars());
  for (auto& p : row) p = p * f;
}

struct Frac {
  LaurentPoly num, den;
  void normalize() {
    if (num.is_zero()) {
      den = LaurentPoly::constant(Rational(1), den.vars());
      return;
    }
    if (den.is_monomial()) {
      num = num * den.inv_monomial();
      den = LaurentPoly::constant(Rational(1), den.vars());
      return;
    }
    if (num.vars()->names.size() == 1) {
      LaurentPoly g = gcd_univariate(num, den);
      if (!g.is_one()) {
        num = divexact(num, g);
        den = divexact(den, g);
      }
      if (den.is_monomial()) {
        num = num * den.inv_monomial();
        den = LaurentPoly::constant(Rational(1), den.vars());
      }
    }
  }
};

}  // namespace

RankSolveResult exact_rank_solve(const ExactMatrix& m,
                                 const std::vector<LaurentPoly>* target) {
  const size_t rows = m.rows(), cols = m.cols();
  const size_t tcols = cols + (target ? 1 : 0);
  RankSolveResult res;
  res.has_target = target != nullptr;
  if (target && target->size() != rows)
    throw std::invalid_argument("target length mismatch");

  std::vector<std::vector<LaurentPoly>> w(rows);
  for (size_t i = 0; i < rows; ++i) {
    w[i].reserve(tcols);
    for (size_t j = 0; j < cols; ++j) w[i].push_back(m.at(i, j));
    if (target) w[i].push_back((*target)[i]);
    strip_row_content(w[i]);
  }
  std::vector<size_t> colperm(cols);
  for (size_t j = 0; j < cols; ++j) colperm[j] = j;

  LaurentPoly prev = LaurentPoly::constant(Rational(1), m.vars());
  size_t rank = 0;
  const size_t steps = std::min(rows, cols);
  for (size_t k = 0; k < steps; ++k) {
    // pivot with the fewest terms, to limit growth
    size_t pi = rows, pj = cols, best = SIZE_MAX;
    for (size_t i = k; i < rows; ++i)
      for (size_t j = k; j < cols; ++j) {
        if (w[i][j].is_zero()) continue;
        size_t sz = w[i][j].terms().size();
        if (sz < best) {
          best = sz;
          pi = i;
          pj = j;
        }
      }
    if (pi == rows) break;
    std::swap(w[k], w[pi]);
    if (pj != k) {
      for (size_t i = 0; i < rows; ++i) std::swap(w[i][k], w[i][pj]);
      std::swap(colperm[k], colperm[pj]);
    }
    for (size_t i = k + 1; i < rows; ++i) {
      for (size_t j = k + 1; j < tcols; ++j)
        w[i][j] = divexact(w[k][k] * w[i][j] - w[i][k] * w[k][j], prev);
      w[i][k] = LaurentPoly::zero(m.vars());
    }
    prev = w[k][k];
    ++rank;
  }
  res.rank = rank;
  if (!target) return res;

  res.consistent = true;
  for (size_t i = rank; i < rows; ++i)
    if (!w[i][cols].is_zero()) res.consistent = false;
  if (!res.consistent) return res;

  // back-substitution; free columns get 0
  std::vector<Frac> x(cols);
  LaurentPoly one = LaurentPoly::constant(Rational(1), m.vars());
  for (size_t j = 0; j < cols; ++j) x[j] = {LaurentPoly::zero(m.vars()), one};
  for (size_t i = rank; i-- > 0;) {
    Frac acc{w[i][cols], one};
    for (size_t j = i + 1; j < cols; ++j) {
      if (w[i][j].is_zero() || x[j].num.is_zero()) continue;
      // acc -= w[i][j] * x[j]
      acc.num = acc.num * x[j].den - w[i][j] * x[j].num * acc.den;
      acc.den = acc.den * x[j].den;
      acc.normalize();
    }
    acc.den = acc.den * w[i][i];
    acc.normalize();
    x[i] = acc;
  }
  res.solution.assign(cols, {LaurentPoly::zero(m.vars()), one});
  for (size_t j = 0; j < cols; ++j)
    res.solution[colperm[j]] = {x[j].num, x[j].den};
  return res;
}

size_t rank_eval(const ExactMatrix& m, unsigned seed) {
  std::mt19937_64 rng(seed);
  auto rand_rat = [&]() {
    std::uniform_int_distribution<long> d(1u << 10, (1L << 31) - 1);
    Rational r(d(rng), d(rng));
    r.canonicalize();
    return r;
  };
  const size_t nv = m.vars()->names.size();
  std::vector<Rational> point(nv);
  for (auto& p : point) p = rand_rat();

  const size_t rows = m.rows(), cols = m.cols();
  std::vector<std::vector<Rational>> a(rows, std::vector<Rational>(cols));
  for (size_t i = 0; i < rows; ++i)
    for (size_t j = 0; j < cols; ++j) a[i][j] = m.at(i, j).eval(point);

  size_t rank = 0;
  for (size_t k = 0; rank < rows && k < cols; ++k) {
    size_t pivot = rows;
    for (size_t i = rank; i < rows; ++i)
      if (a[i][k] != 0) {
        pivot = i;
        break;
      }
    if (pivot == rows) continue;
    std::swap(a[rank], a[pivot]);
    for (size_t i = rank + 1; i < rows; ++i) {
      if (a[i][k] == 0) continue;
      Rational f = a[i][k] / a[rank][k];
      for (size_t j = k; j < cols; ++j) a[i][j] -= f * a[rank][j];
    }
    ++rank;
  }
  return rank;
}

}  // namespace atlas::ring
