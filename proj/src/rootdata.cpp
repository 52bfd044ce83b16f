#include "atlas/rootdata.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdio>
#include <map>
#include <stdexcept>
#include <thread>

namespace atlas::rootdata {

std::vector<int> mask_elements(Mask m) {
  std::vector<int> out;
  while (m) {
    int i = std::countr_zero(m);
    out.push_back(i);
    m &= m - 1;
  }
  return out;
}

bool RootSequence::valid() const {
  if (n < 1 || static_cast<int>(theta.size()) != n) return false;
  for (int k = 1; k <= n; ++k)
    if (theta_at(k) < 0 || theta_at(k) > n - k + 1) return false;
  return true;
}

RTProfile build_RT(const RootSequence& theta) {
  if (!theta.valid()) throw std::invalid_argument("invalid root sequence");
  const int n = theta.n;
  RTProfile p;
  p.n = n;
  p.theta = theta;
  p.R.assign(static_cast<size_t>(n), 0);
  p.T.assign(static_cast<size_t>(n), 0);
  for (int k = n; k >= 1; --k) {
    if (theta.theta_at(k) == 0) continue;
    const int tt = theta.theta_tilde(k);
    Mask r = bit(tt);
    for (int m = k; m < tt; ++m) {
      if (has(p.t_at(m + 1), tt)) continue;
      bool ok = true;
      for (int rr = k; rr < m && ok; ++rr)
        ok = has(p.t_at(rr + 1), m) == has(p.t_at(rr + 1), tt);
      if (ok) r |= bit(m);
    }
    Mask t = r;
    for (int s : mask_elements(r))
      if (s != n) t |= p.t_at(s + 1);
    p.R[static_cast<size_t>(k - 1)] = r;
    p.T[static_cast<size_t>(k - 1)] = t;
  }
  return p;
}

std::vector<RootSequence> enumerate_theta(int n) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  std::vector<RootSequence> out;
  RootSequence cur{n, std::vector<int>(static_cast<size_t>(n), 0)};
  while (true) {
    out.push_back(cur);
    int k = n;
    while (k >= 1 && cur.theta[static_cast<size_t>(k - 1)] == n - k + 1) {
      cur.theta[static_cast<size_t>(k - 1)] = 0;
      --k;
    }
    if (k == 0) break;
    ++cur.theta[static_cast<size_t>(k - 1)];
  }
  return out;
}

std::vector<RootInterval> roots_of(const RTProfile& p) {
  std::vector<RootInterval> out;
  for (int k = 1; k <= p.n; ++k)
    for (int m : mask_elements(p.t_at(k))) out.push_back({k, m});
  return out;
}

std::vector<RootInterval> simple_roots_of(const RTProfile& p) {
  std::vector<RootInterval> out;
  for (int k = 1; k <= p.n; ++k)
    for (int m : mask_elements(p.r_at(k))) out.push_back({k, m});
  return out;
}

std::string diagram(const GenDesc& g, bool unicode) {
  const Mask s = g.s_effective();
  std::string labels, points;
  const char* white = unicode ? "○" : "o";
  const char* black = unicode ? "●" : "*";
  for (int i = g.k - 1; i <= g.m; ++i) {
    std::string lab = std::to_string(i);
    bool is_black = (i == g.m) || (i != g.k - 1 && has(s, i));
    std::string pt = is_black ? black : white;
    size_t w = lab.size();
    if (!labels.empty()) {
      labels += ' ';
      points += ' ';
    }
    labels += lab;
    points += pt;
    // pad the point column to the label width (labels can be multi-digit)
    for (size_t j = 1; j < w; ++j) points += ' ';
  }
  return labels + "\n" + points + "\n";
}

Mask entrances(const GenDesc& g) {
  const Mask s = g.s_effective();
  Mask out = 0;
  for (int i : mask_elements(g.s_bullet()))
    if (i == g.k || !has(s, i - 1)) out |= bit(i);
  return out;
}

bool is_hopf(const RootSequence& theta) {
  for (int t : theta.theta)
    if (t > 1) return false;
  return true;
}

Mask max_hopf(const RTProfile& p) {
  Mask out = 0;
  for (int j = 1; j <= p.n; ++j)
    if (has(p.t_at(j), j)) out |= bit(j);
  return out;
}

Mask kpi_of(const RTProfile& p) { return max_hopf(p); }

bool is_adr_invariant(const RTProfile& p) {
  const Mask pi = kpi_of(p);
  for (int k = 1; k <= p.n; ++k) {
    // j(k) = least j >= k with j in pi
    Mask cand = pi & ~(bit(k) - 1);
    if (cand == 0) {
      if (p.t_at(k) != 0) return false;
    } else {
      int j = std::countr_zero(cand);
      if (p.t_at(k) != interval(j, p.n)) return false;
    }
  }
  return true;
}

std::optional<RootSequence> theta_of_kpi(int n, Mask pi) {
  for (const auto& th : enumerate_theta(n)) {
    RTProfile p = build_RT(th);
    if (is_adr_invariant(p) && kpi_of(p) == pi) return th;
  }
  return std::nullopt;
}

namespace {

// One row of a pair-check signature: everything condition 1/2 reads per k.
struct SigRow {
  Mask T;
  int theta_tilde;
  int theta;
  auto operator<=>(const SigRow&) const = default;
};
using Signature = std::vector<SigRow>;

bool cell_cond1(const SigRow& a, int k, const SigRow& b, int i) {
  const int hi = std::min(a.theta_tilde, b.theta_tilde);
  const Mask A = interval(std::max(k, i), hi) & a.T & b.T;
  const Mask B = interval(std::max(k - 1, i - 1), hi - 1) & ~a.T & ~b.T;
  if (A == 0 || B == 0) return true;
  const int supA = 63 - std::countl_zero(A);
  const int infB = std::countr_zero(B);
  return supA < infB;
}

bool cell_cond2(const SigRow& a, int k, const SigRow& b, int i) {
  if (i != k || a.theta != b.theta) return false;
  const Mask range = interval(k, a.theta_tilde - 1);
  if (range & a.T & b.T) return false;
  if (range & ~a.T & ~b.T) return false;
  return true;
}

Signature signature_of(const RTProfile& p) {
  Signature s(static_cast<size_t>(p.n));
  for (int k = 1; k <= p.n; ++k)
    s[static_cast<size_t>(k - 1)] = {p.t_at(k), p.theta.theta_tilde(k),
                                     p.theta.theta_at(k)};
  return s;
}

bool pair_ok(const Signature& a, const Signature& b, int n, bool* used_cond2) {
  bool c2 = false;
  for (int k = 1; k <= n; ++k)
    for (int i = 1; i <= n; ++i) {
      const SigRow& ra = a[static_cast<size_t>(k - 1)];
      const SigRow& rb = b[static_cast<size_t>(i - 1)];
      if (cell_cond1(ra, k, rb, i)) continue;
      if (cell_cond2(ra, k, rb, i)) {
        c2 = true;
        continue;
      }
      return false;
    }
  if (used_cond2) *used_cond2 = c2;
  return true;
}

}  // namespace

bool cond_pair(const RTProfile& plus, const RTProfile& minus, PairReport* report) {
  if (plus.n != minus.n) throw std::invalid_argument("rank mismatch");
  const Signature a = signature_of(plus), b = signature_of(minus);
  bool ok = true;
  if (report) report->cells.clear();
  for (int k = 1; k <= plus.n; ++k)
    for (int i = 1; i <= plus.n; ++i) {
      const SigRow& ra = a[static_cast<size_t>(k - 1)];
      const SigRow& rb = b[static_cast<size_t>(i - 1)];
      bool c1 = cell_cond1(ra, k, rb, i);
      bool c2 = cell_cond2(ra, k, rb, i);
      if (!c1 && !c2) ok = false;
      if (report) report->cells.push_back({k, i, c1, c2});
      if (!report && !ok) return false;
    }
  if (report) report->ok = ok;
  return ok;
}

unsigned long long count_borel(int n) {
  auto thetas = enumerate_theta(n);
  std::vector<std::vector<Mask>> profiles;
  profiles.reserve(thetas.size());
  for (const auto& th : thetas) profiles.push_back(build_RT(th).R);
  std::sort(profiles.begin(), profiles.end());
  profiles.erase(std::unique(profiles.begin(), profiles.end()), profiles.end());
  return profiles.size();
}

CountStats count_full(int n, int threads, bool progress) {
  auto thetas = enumerate_theta(n);
  // Group by signature and weight pairs by class multiplicities; for sl_{n+1}
  // the map theta -> signature is injective, so classes are usually singletons,
  // but the counting is written against classes regardless.
  std::map<Signature, unsigned long long> classes;
  for (const auto& th : thetas) ++classes[signature_of(build_RT(th))];
  std::vector<Signature> sig;
  std::vector<unsigned long long> mult;
  for (auto& [s, c] : classes) {
    sig.push_back(s);
    mult.push_back(c);
  }
  const size_t m = sig.size();

  if (threads <= 0) {
    unsigned hc = std::thread::hardware_concurrency();
    threads = hc ? static_cast<int>(hc) : 1;
  }
  const size_t nt = std::min<size_t>(static_cast<size_t>(threads), m ? m : 1);

  std::vector<CountStats> partial(nt);
  std::atomic<size_t> next{0};
  std::atomic<unsigned long long> done{0};
  auto worker = [&](size_t tid) {
    CountStats& st = partial[tid];
    while (true) {
      size_t i = next.fetch_add(1);
      if (i >= m) break;
      for (size_t j = 0; j < m; ++j) {
        bool c2 = false;
        if (pair_ok(sig[i], sig[j], n, &c2)) {
          unsigned long long w = mult[i] * mult[j];
          st.total += w;
          if (c2)
            st.via_cond2 += w;
          else
            st.via_cond1 += w;
        }
      }
      if (progress) {
        unsigned long long d = done.fetch_add(m) + m;
        if ((i & 1023) == 0)
          std::fprintf(stderr, "\rpairs checked: %llu / %llu", d,
                       static_cast<unsigned long long>(m) * m);
      }
    }
  };
  std::vector<std::thread> pool;
  for (size_t t = 1; t < nt; ++t) pool.emplace_back(worker, t);
  worker(0);
  for (auto& th : pool) th.join();
  if (progress) std::fprintf(stderr, "\n");

  CountStats total;
  for (const auto& st : partial) {
    total.total += st.total;
    total.via_cond1 += st.via_cond1;
    total.via_cond2 += st.via_cond2;
  }
  return total;
}

std::vector<GenDesc> pbw_generators(const RTProfile& p) {
  std::vector<GenDesc> out;
  for (int k = 1; k <= p.n; ++k)
    for (int m : mask_elements(p.t_at(k))) out.push_back({k, m, p.t_at(k)});
  return out;
}

std::vector<U1Desc> u1_descriptors(const RTProfile& p) {
  std::vector<U1Desc> out;
  for (const auto& g : pbw_generators(p)) {
    U1Desc d;
    d.gen = g;
    for (int i = g.k; i <= g.m; ++i) d.group_word.push_back(i);
    out.push_back(std::move(d));
  }
  return out;
}

}  // namespace atlas::rootdata
