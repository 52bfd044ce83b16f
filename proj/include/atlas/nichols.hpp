#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "atlas/freealg.hpp"

namespace atlas::nichols {

using freealg::Bicharacter;
using freealg::DegreeVector;
using freealg::FreeElement;
using freealg::Word;
using ring::LaurentPoly;
using ring::VarSetPtr;
using rootdata::GenDesc;
using rootdata::RootInterval;
using rootdata::RTProfile;

// Element written in shuffle coordinates: coefficients of tensor words.
// Equal coordinates mean equal elements of the quantum Borel algebra, and a
// zero coordinate map means the element vanishes there.
class CanonicalElement {
 public:
  CanonicalElement(int n, VarSetPtr vars);

  static CanonicalElement zero(int n, VarSetPtr vars);
  static CanonicalElement unit(int n, VarSetPtr vars);

  int n() const { return n_; }
  const VarSetPtr& vars() const { return vars_; }
  const std::map<Word, LaurentPoly>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool homogeneous(DegreeVector* deg = nullptr) const;

  CanonicalElement operator+(const CanonicalElement& o) const;
  CanonicalElement operator-(const CanonicalElement& o) const;
  CanonicalElement scaled(const LaurentPoly& c) const;
  bool operator==(const CanonicalElement& o) const;

  void add_term(const Word& w, const LaurentPoly& c);

  std::string str() const;

 private:
  int n_;
  VarSetPtr vars_;
  std::map<Word, LaurentPoly> terms_;
};

// a ~ b: same support and all coordinate cross products agree.
bool proportional(const CanonicalElement& a, const CanonicalElement& b);

// The coordinate of omega(u) on a tensor word is the scalar produced by the
// iterated braided derivatives taken from the right end of the word.
CanonicalElement omega(const Bicharacter& bc, const FreeElement& u);

// Braided shuffle: a letter of the right factor passing a letter a of the
// left factor contributes p(letter, a)^-1.
CanonicalElement shuffle_product(const Bicharacter& bc, const CanonicalElement& a,
                                 const CanonicalElement& b);

// All splittings of the tensor words, grouped by the right part; this is the
// braided coproduct in shuffle coordinates.
std::vector<std::pair<CanonicalElement, Word>> deconcat(const CanonicalElement& c);

// Letters relabeled through phi(i) = n - i + 1.
FreeElement flip_letters(const FreeElement& u);

// Monotone product of super-letters u[k,m]: strictly increasing factors
// (under the standard word order) with positive exponents.
struct PBWMonomial {
  std::vector<std::pair<RootInterval, int>> factors;
  DegreeVector degree(int n) const;
  std::string str() const;
  bool operator==(const PBWMonomial& o) const;
};

std::vector<PBWMonomial> pbw_monomials(const DegreeVector& d);

CanonicalElement omega_monomial(const Bicharacter& bc, const PBWMonomial& m);

struct PBWCoordinate {
  PBWMonomial mono;
  LaurentPoly num, den;  // exact coordinate num/den, num nonzero
};

// Exact coordinates of a homogeneous element in the monotone-product basis.
std::vector<PBWCoordinate> pbw_decompose(const Bicharacter& bc,
                                         const FreeElement& u);

// A set of canonical elements of one multidegree kept linearly independent.
class SpanBasis {
 public:
  bool contains(const CanonicalElement& c) const;
  bool add(const CanonicalElement& c);  // true if the span grew
  const std::vector<CanonicalElement>& elements() const { return elements_; }
  size_t dim() const { return elements_.size(); }

 private:
  std::vector<CanonicalElement> elements_;
};

// Graded span of all products of the given homogeneous generators, computed
// up to the total degree bound.
class Subalgebra {
 public:
  Subalgebra(const Bicharacter& bc, const std::vector<FreeElement>& generators,
             int bound);

  int bound() const { return bound_; }
  const std::map<std::vector<int>, SpanBasis>& spans() const { return spans_; }
  const SpanBasis* span(const DegreeVector& d) const;

  bool member(const FreeElement& u) const;
  bool member(const CanonicalElement& c) const;

 private:
  const Bicharacter& bc_;
  int bound_;
  std::map<std::vector<int>, SpanBasis> spans_;
};

struct Verdict {
  bool ok = true;
  std::string detail;  // first counterexample when not ok
};

// Every left coproduct leg of every basis element stays in the subalgebra.
Verdict coideal_check(const Bicharacter& bc,
                      const std::vector<FreeElement>& generators, int bound);

// All partial derivatives of the profile's bracket generators stay in the
// subalgebra those generators produce.
Verdict differential_closure_check(const Bicharacter& bc, const RTProfile& p,
                                   int bound);

// The subset of sub-bracket descriptors attached to psi(g): b in S or b = m,
// and a - 1 not in S or a = k.
std::vector<GenDesc> w_set(const GenDesc& g);

// The derivative closure of psi(g) equals the span of w_set(g) together with
// all products of pairwise separated members, degree by degree.
Verdict span_of_derivatives_check(const Bicharacter& bc, const GenDesc& g);

// Recover the bracket descriptor from a homogeneous element of interval
// multidegree whose basis coordinates have the shape
//   c = u[k,m] + sum_i A_i u[k,i]
// returns the descriptor S = { i : A_i != 0 } and psi of it.
std::pair<GenDesc, FreeElement> psi_from_element(const Bicharacter& bc,
                                                 const FreeElement& c);

}  // namespace atlas::nichols
