#pragma once

#include <gmpxx.h>

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace atlas::ring {

// Arbitrary-precision rational; mpq canonical form keeps it reduced with a
// positive denominator.
using Rational = mpq_class;

Rational rat(long num, long den = 1);
std::string rat_str(const Rational& r);

struct VarSet {
  std::vector<std::string> names;
  bool operator==(const VarSet& o) const { return names == o.names; }
};
using VarSetPtr = std::shared_ptr<const VarSet>;

// The default coefficient ring is Laurent polynomials in the single variable q.
VarSetPtr qvars();
VarSetPtr make_vars(std::vector<std::string> names);

using Exp = std::vector<int>;

// Sparse multivariate Laurent polynomial over Q. Terms are kept in a map from
// exponent vector to nonzero rational; printing uses graded-lex descending
// order. Immutable in spirit: all operations return new values.
class LaurentPoly {
 public:
  LaurentPoly();
  explicit LaurentPoly(VarSetPtr vars);

  static LaurentPoly zero(VarSetPtr vars = qvars());
  static LaurentPoly constant(const Rational& c, VarSetPtr vars = qvars());
  static LaurentPoly monomial(const Rational& c, Exp e, VarSetPtr vars = qvars());
  static LaurentPoly q_power(long e);  // q^e over the default variable set

  const VarSetPtr& vars() const { return vars_; }
  const std::map<Exp, Rational>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_one() const;
  bool is_monomial() const { return terms_.size() == 1; }

  LaurentPoly operator+(const LaurentPoly& o) const;
  LaurentPoly operator-(const LaurentPoly& o) const;
  LaurentPoly operator-() const;
  LaurentPoly operator*(const LaurentPoly& o) const;
  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(const LaurentPoly& o);
  bool operator==(const LaurentPoly& o) const;
  bool operator!=(const LaurentPoly& o) const { return !(*this == o); }

  LaurentPoly scale(const Rational& c) const;

  // Multiplicative inverse; defined only for single-term polynomials.
  LaurentPoly inv_monomial() const;

  // Evaluation at a point (one rational per variable, all nonzero).
  Rational eval(const std::vector<Rational>& point) const;

  std::string str() const;
  static LaurentPoly parse(const std::string& text, VarSetPtr vars = qvars());

  // Componentwise min/max exponent over all terms; nullopt when zero.
  std::optional<Exp> min_exp() const;
  std::optional<Exp> max_exp() const;

 private:
  VarSetPtr vars_;
  std::map<Exp, Rational> terms_;
  void insert_term(const Exp& e, const Rational& c);
  friend LaurentPoly divexact(const LaurentPoly& a, const LaurentPoly& b);
  friend class ExactMatrix;
};

// Exact quotient a/b; b must divide a exactly (asserted).
LaurentPoly divexact(const LaurentPoly& a, const LaurentPoly& b);

// Gcd of two univariate polynomials (over the default single-variable ring),
// normalized monic-primitive. Used to keep back-substitution fractions small.
LaurentPoly gcd_univariate(const LaurentPoly& a, const LaurentPoly& b);

class ExactMatrix {
 public:
  ExactMatrix(size_t rows, size_t cols, VarSetPtr vars = qvars());

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  const VarSetPtr& vars() const { return vars_; }

  LaurentPoly& at(size_t i, size_t j) { return a_[i * cols_ + j]; }
  const LaurentPoly& at(size_t i, size_t j) const { return a_[i * cols_ + j]; }

 private:
  size_t rows_, cols_;
  VarSetPtr vars_;
  std::vector<LaurentPoly> a_;
};

struct RankSolveResult {
  size_t rank = 0;
  bool has_target = false;
  bool consistent = false;
  // Solution as (numerator, denominator) pairs, one per column; empty when no
  // target was given or the system is inconsistent.
  std::vector<std::pair<LaurentPoly, LaurentPoly>> solution;
};

// Fraction-free (Bareiss) elimination over the Laurent ring: the exact
// authority for rank and column-span membership.
RankSolveResult exact_rank_solve(const ExactMatrix& m,
                                 const std::vector<LaurentPoly>* target = nullptr);

// Rank of the matrix specialized at random rational points; lower bound on the
// true rank, equal to it with overwhelming probability. Used as a cheap
// pre-pass and as a cross-check in tests.
size_t rank_eval(const ExactMatrix& m, unsigned seed = 1);

}  // namespace atlas::ring
