#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace atlas::rootdata {

// Subsets of [1,n] are machine-word bitmasks: bit i (1-based) set iff i is in
// the set. Supports n up to 63.
using Mask = std::uint64_t;

inline bool has(Mask m, int i) { return (m >> i) & 1u; }
inline Mask bit(int i) { return Mask{1} << i; }
// Mask of the closed interval [lo, hi]; empty when lo > hi.
inline Mask interval(int lo, int hi) {
  if (lo > hi) return 0;
  return ((Mask{1} << (hi + 1)) - 1) & ~((Mask{1} << lo) - 1);
}
std::vector<int> mask_elements(Mask m);

struct RootSequence {
  int n = 0;
  std::vector<int> theta;  // theta[k-1] holds theta_k

  bool valid() const;
  int theta_at(int k) const { return theta[static_cast<size_t>(k - 1)]; }
  // theta~_k = k + theta_k - 1; equals k-1 when theta_k = 0.
  int theta_tilde(int k) const { return k + theta_at(k) - 1; }
  bool operator==(const RootSequence& o) const = default;
};

struct RTProfile {
  int n = 0;
  RootSequence theta;
  std::vector<Mask> R, T;  // index k-1 for k = 1..n

  Mask r_at(int k) const { return R[static_cast<size_t>(k - 1)]; }
  Mask t_at(int k) const { return T[static_cast<size_t>(k - 1)]; }
  bool operator==(const RTProfile& o) const = default;
};

// Descriptor (k, m, S) of one generator; S is read through S ∩ [k, m-1].
struct GenDesc {
  int k = 1, m = 1;
  Mask S = 0;

  Mask s_effective() const { return S & interval(k, m - 1); }
  Mask s_circle() const { return s_effective() | bit(k - 1); }
  Mask s_bullet() const { return s_effective() | bit(m); }
  bool operator==(const GenDesc& o) const {
    return k == o.k && m == o.m && s_effective() == o.s_effective();
  }
};

struct RootInterval {
  int k = 1, m = 1;
  bool operator==(const RootInterval& o) const = default;
};

RTProfile build_RT(const RootSequence& theta);

// All valid root sequences for rank n, in lexicographic order; (n+1)! of them.
std::vector<RootSequence> enumerate_theta(int n);

std::vector<RootInterval> roots_of(const RTProfile& p);
std::vector<RootInterval> simple_roots_of(const RTProfile& p);

// Two-row black/white point diagram with labels k-1 .. m.
std::string diagram(const GenDesc& g, bool unicode = false);

// Elements s of S_bullet with s = k or s-1 not in S.
Mask entrances(const GenDesc& g);

bool is_hopf(const RootSequence& theta);
Mask max_hopf(const RTProfile& p);  // {j : j in T_j}

bool is_adr_invariant(const RTProfile& p);
Mask kpi_of(const RTProfile& p);
std::optional<RootSequence> theta_of_kpi(int n, Mask pi);

struct PairCell {
  int k = 0, i = 0;
  bool cond1 = false, cond2 = false;
};
struct PairReport {
  bool ok = true;
  std::vector<PairCell> cells;
};

// Compatibility of U_theta (positive wing) with U_theta' (negative wing): every
// (k, i) cell must satisfy condition 1 (sup A < inf B) or condition 2.
bool cond_pair(const RTProfile& plus, const RTProfile& minus,
               PairReport* report = nullptr);

struct CountStats {
  unsigned long long total = 0;      // accepted ordered pairs
  unsigned long long via_cond1 = 0;  // accepted with every cell passing condition 1
  unsigned long long via_cond2 = 0;  // accepted pairs that needed condition 2 somewhere
};

unsigned long long count_borel(int n);
CountStats count_full(int n, int threads = 0, bool progress = false);

// PBW generator descriptors (k, m, T_k) for m in T_k, k ascending then m.
std::vector<GenDesc> pbw_generators(const RTProfile& p);

struct U1Desc {
  std::vector<int> group_word;  // indices of g_k ... g_m
  GenDesc gen;
};
std::vector<U1Desc> u1_descriptors(const RTProfile& p);

}  // namespace atlas::rootdata
