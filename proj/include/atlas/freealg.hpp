#pragma once

#include <map>
#include <string>
#include <vector>

#include "atlas/ring.hpp"
#include "atlas/rootdata.hpp"

namespace atlas::freealg {

using ring::LaurentPoly;
using ring::Rational;
using ring::VarSetPtr;
using rootdata::GenDesc;

// A word in the letters x_1 .. x_n, stored as the letter indices.
using Word = std::vector<int>;

std::string word_str(const Word& w);  // e.g. "x1x2x3"; empty word prints "1"

// Standard-word comparison with x_1 > x_2 > ... > x_n and a proper beginning
// counted as greater. word_less(a, b) is true when a is smaller than b.
bool word_less(const Word& a, const Word& b);

struct DegreeVector {
  std::vector<int> d;  // d[i-1] = multiplicity of x_i
  int total() const;
  bool operator==(const DegreeVector& o) const = default;
};

DegreeVector degree_of(const Word& w, int n);

// The quantification parameters p_{ij}. One-parameter mode specializes
// p_{i,i+1} = q^{-1}, p_{i+1,i} = 1; multiparameter mode keeps independent
// units t_{i,i+1} with p_{i,i+1} = t_{i,i+1}, p_{i+1,i} = q^{-1} t_{i,i+1}^{-1}.
class Bicharacter {
 public:
  enum class Mode { OneParameter, Multiparameter };

  explicit Bicharacter(int n, Mode mode = Mode::OneParameter);

  int n() const { return n_; }
  Mode mode() const { return mode_; }
  const VarSetPtr& vars() const { return vars_; }

  const LaurentPoly& p(int i, int j) const;
  LaurentPoly p_deg(const DegreeVector& du, const DegreeVector& dv) const;
  LaurentPoly one() const { return LaurentPoly::constant(Rational(1), vars_); }
  LaurentPoly q() const { return p(1, 1); }

  // A relabeled bicharacter for the generators y_i = x_{phi(i)}, phi(i)=n-i+1.
  Bicharacter relabeled() const;

  // The bicharacter p'(i,j) = p(j,i)^-1 of the opposite wing; its diagonal
  // value is q^-1 and it satisfies the same defining relations.
  Bicharacter inverse_transposed() const;

 private:
  int n_;
  Mode mode_;
  VarSetPtr vars_;
  std::vector<LaurentPoly> table_;  // (n+1) x (n+1), 1-based access
  Bicharacter(int n, Mode mode, std::vector<LaurentPoly> table, VarSetPtr vars);
  void check_relations() const;
};

// Element of the free algebra k<X>: finitely supported map word -> coefficient.
class FreeElement {
 public:
  FreeElement(int n, VarSetPtr vars);

  static FreeElement zero(int n, VarSetPtr vars);
  static FreeElement unit(int n, VarSetPtr vars);  // the empty word
  static FreeElement letter(int i, int n, VarSetPtr vars);
  static FreeElement from_word(const Word& w, int n, VarSetPtr vars);

  int n() const { return n_; }
  const VarSetPtr& vars() const { return vars_; }
  const std::map<Word, LaurentPoly>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  // True when all words share one multidegree (the zero element is homogeneous
  // of any degree); fills *deg for nonzero elements when given.
  bool homogeneous(DegreeVector* deg = nullptr) const;

  FreeElement operator+(const FreeElement& o) const;
  FreeElement operator-(const FreeElement& o) const;
  FreeElement operator*(const FreeElement& o) const;
  FreeElement operator-() const;
  FreeElement& operator+=(const FreeElement& o);
  FreeElement scaled(const LaurentPoly& c) const;
  bool operator==(const FreeElement& o) const;

  void add_term(const Word& w, const LaurentPoly& c);

  std::string str() const;

 private:
  int n_;
  VarSetPtr vars_;
  std::map<Word, LaurentPoly> terms_;
};

LaurentPoly p_of(const Bicharacter& bc, const Word& u, const Word& v);

// [u, v] = uv - p(u,v) vu; defined for multidegree-homogeneous arguments.
FreeElement skew_bracket(const Bicharacter& bc, const FreeElement& u,
                         const FreeElement& v);

FreeElement partial(const Bicharacter& bc, int i, const FreeElement& u);
FreeElement partial_star(const Bicharacter& bc, int i, const FreeElement& u);

// u . D_{x_k v} = partial_k(u) . D_v: the letters of w act left to right.
FreeElement d_w(const Bicharacter& bc, const Word& w, const FreeElement& u);

Word u_word(int k, int m);  // x_k x_{k+1} ... x_m
FreeElement u_bracket(const Bicharacter& bc, int k, int m);

// The bracketed piecewise continuous word Psi^S(k,m), left-nested outer
// brackets; Psi^S(k,k) = x_k.
FreeElement psi(const Bicharacter& bc, const GenDesc& g);
Word u_pw(const GenDesc& g);  // the piecewise word u^S(k,m)

// Relabeling phi(i) = n-i+1: the descriptor whose psi over the relabeled
// bicharacter is proportional to psi(g).
GenDesc decode(const GenDesc& g, int n);

// Bracket-word text: term := "x"INT | "[" term "," term "]".
FreeElement parse_bracket(const Bicharacter& bc, const std::string& text);
std::string psi_bracket_str(const GenDesc& g);  // rendering per the definition

}  // namespace atlas::freealg
