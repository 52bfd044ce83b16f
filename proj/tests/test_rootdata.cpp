#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>

#include "atlas/rootdata.hpp"

using namespace atlas::rootdata;

namespace {

Mask mask_of(std::initializer_list<int> xs) {
  Mask m = 0;
  for (int x : xs) m |= bit(x);
  return m;
}

// Claim 1 reachability: m in C(k) iff there is a chain
// k = k_0 < k_1 < ... < k_r = m+1 with k_{i+1}-1 in R_{k_i}.
Mask chain_set(const RTProfile& p, int k) {
  Mask out = 0;
  for (int m : mask_elements(p.r_at(k))) {
    out |= bit(m);
    if (m + 1 <= p.n) out |= chain_set(p, m + 1);
  }
  return out;
}

}  // namespace

TEST_CASE("worked examples for build_RT") {
  RTProfile a = build_RT({3, {3, 1, 0}});
  CHECK(a.r_at(1) == mask_of({1, 3}));
  CHECK(a.t_at(1) == mask_of({1, 2, 3}));
  CHECK(a.r_at(2) == mask_of({2}));
  CHECK(a.t_at(2) == mask_of({2}));
  CHECK(a.r_at(3) == 0);
  CHECK(a.t_at(3) == 0);

  RTProfile b = build_RT({3, {2, 1, 1}});
  CHECK(b.r_at(3) == mask_of({3}));
  CHECK(b.t_at(3) == mask_of({3}));
  CHECK(b.r_at(2) == mask_of({2}));
  CHECK(b.t_at(2) == mask_of({2, 3}));
  CHECK(b.r_at(1) == mask_of({2}));
  CHECK(b.t_at(1) == mask_of({2, 3}));
}

TEST_CASE("degenerate and extreme sequences") {
  for (int n : {1, 3, 5}) {
    RTProfile z = build_RT({n, std::vector<int>(static_cast<size_t>(n), 0)});
    for (int k = 1; k <= n; ++k) {
      CHECK(z.r_at(k) == 0);
      CHECK(z.t_at(k) == 0);
    }

    std::vector<int> stair(static_cast<size_t>(n));
    for (int k = 1; k <= n; ++k) stair[static_cast<size_t>(k - 1)] = n - k + 1;
    RTProfile s = build_RT({n, stair});
    for (int k = 1; k <= n; ++k) {
      CHECK(s.r_at(k) == mask_of({n}));
      CHECK(s.t_at(k) == mask_of({n}));
    }

    std::vector<int> first(static_cast<size_t>(n), 0);
    first[0] = n;
    RTProfile f = build_RT({n, first});
    CHECK(f.r_at(1) == interval(1, n));
    CHECK(f.t_at(1) == interval(1, n));
  }
}

TEST_CASE("enumerate_theta counts and order") {
  CHECK(enumerate_theta(2).size() == 6);
  CHECK(enumerate_theta(3).size() == 24);
  CHECK(enumerate_theta(7).size() == 40320);
  auto all = enumerate_theta(3);
  std::set<std::vector<int>> seen;
  for (const auto& th : all) {
    CHECK(th.valid());
    seen.insert(th.theta);
  }
  CHECK(seen.size() == all.size());
  CHECK(std::is_sorted(all.begin(), all.end(),
                       [](const RootSequence& a, const RootSequence& b) {
                         return a.theta < b.theta;
                       }));
}

TEST_CASE("roots and simple roots") {
  RTProfile p = build_RT({3, {3, 2, 1}});
  auto sr = simple_roots_of(p);
  REQUIRE(sr.size() == 3);
  CHECK(sr[0] == RootInterval{1, 3});
  CHECK(sr[1] == RootInterval{2, 3});
  CHECK(sr[2] == RootInterval{3, 3});

  RTProfile z = build_RT({3, {0, 0, 0}});
  CHECK(roots_of(z).empty());
  CHECK(simple_roots_of(z).empty());

  RTProfile f = build_RT({4, {4, 0, 0, 0}});
  auto r = roots_of(f);
  REQUIRE(r.size() == 4);
  for (int m = 1; m <= 4; ++m) CHECK(r[static_cast<size_t>(m - 1)] == RootInterval{1, m});
  CHECK(simple_roots_of(f) == r);
}

TEST_CASE("diagrams") {
  CHECK(diagram({1, 3, 0}) == "0 1 2 3\no o o *\n");
  CHECK(diagram({1, 3, mask_of({1, 2})}) == "0 1 2 3\no * * *\n");
  CHECK(diagram({2, 2, 0}) == "1 2\no *\n");
  // labels wider than one character stay aligned
  CHECK(diagram({9, 10, 0}) == "8 9 10\no o * \n");
}

TEST_CASE("entrances") {
  CHECK(entrances({1, 3, mask_of({2})}) == mask_of({2}));
  CHECK(entrances({1, 3, 0}) == mask_of({3}));
  CHECK(entrances({2, 2, 0}) == mask_of({2}));
  CHECK(entrances({1, 3, mask_of({1, 2})}) == mask_of({1}));
}

TEST_CASE("hopf predicates") {
  for (int n : {2, 4}) {
    std::vector<int> stair(static_cast<size_t>(n));
    for (int k = 1; k <= n; ++k) stair[static_cast<size_t>(k - 1)] = n - k + 1;
    CHECK(max_hopf(build_RT({n, stair})) == mask_of({n}));
    std::vector<int> first(static_cast<size_t>(n), 0);
    first[0] = n;
    CHECK(max_hopf(build_RT({n, first})) == mask_of({1}));
  }
  CHECK(is_hopf({3, {1, 0, 1}}));
  CHECK(!is_hopf({3, {2, 0, 0}}));
}

TEST_CASE("ad_r invariance classification") {
  RTProfile a = build_RT({3, {3, 2, 1}});
  CHECK(is_adr_invariant(a));
  CHECK(kpi_of(a) == mask_of({3}));

  RTProfile b = build_RT({3, {3, 1, 1}});
  CHECK(!is_adr_invariant(b));

  int count = 0;
  for (const auto& th : enumerate_theta(3))
    if (is_adr_invariant(build_RT(th))) ++count;
  CHECK(count == 8);

  for (int n = 1; n <= 4; ++n) {
    std::set<Mask> pis;
    for (const auto& th : enumerate_theta(n)) {
      RTProfile p = build_RT(th);
      if (is_adr_invariant(p)) pis.insert(kpi_of(p));
    }
    CHECK(pis.size() == (Mask{1} << n));
    for (Mask pi = 0; pi < (Mask{1} << n); ++pi) {
      auto th = theta_of_kpi(n, pi << 1);
      CHECK(th.has_value());
    }
  }
}

TEST_CASE("pair condition examples") {
  RTProfile one1 = build_RT({1, {1}});
  RTProfile zero1 = build_RT({1, {0}});
  PairReport rep;
  CHECK(cond_pair(one1, one1, &rep));
  REQUIRE(rep.cells.size() == 1);
  CHECK(rep.cells[0].cond2);
  CHECK(cond_pair(one1, zero1, &rep));
  CHECK(rep.cells[0].cond1);

  RTProfile p10 = build_RT({2, {1, 0}});
  RTProfile p20 = build_RT({2, {2, 0}});
  CHECK(!cond_pair(p10, p20, &rep));
  for (const auto& c : rep.cells)
    if (c.k == 1 && c.i == 1) {
      CHECK(!c.cond1);
      CHECK(!c.cond2);
    }
  CHECK(cond_pair(build_RT({2, {0, 0}}), build_RT({2, {0, 0}})));
}

TEST_CASE("counts at small rank") {
  CHECK(count_borel(1) == 2);
  CHECK(count_borel(4) == 120);
  CHECK(count_full(1).total == 4);
  CHECK(count_full(2).total == 26);
  CHECK(count_full(3).total == 252);
}

TEST_CASE("claims 1-4 at small rank") {
  for (int n = 1; n <= 4; ++n) {
    for (const auto& th : enumerate_theta(n)) {
      RTProfile p = build_RT(th);
      for (int k = 1; k <= n; ++k) {
        CHECK(p.t_at(k) == chain_set(p, k));  // Claim 1
        for (int s : mask_elements(p.t_at(k)))
          if (s + 1 <= n)
            for (int m : mask_elements(p.t_at(s + 1)))
              CHECK(has(p.t_at(k), m));  // Claim 2
        for (int m : mask_elements(p.t_at(k)))
          for (int s = k; s < m; ++s)  // Claim 3
            CHECK((has(p.t_at(k), s) || has(p.t_at(s + 1), m)));
        int tt = p.theta.theta_tilde(k);
        if (p.theta.theta_at(k) != 0)
          for (int m = k; m < tt; ++m)  // Claim 4
            CHECK(has(p.t_at(k), m) == !has(p.t_at(m + 1), tt));
      }
    }
  }
}

TEST_CASE("theta to R is injective") {
  for (int n = 1; n <= 5; ++n) {
    std::set<std::vector<Mask>> rs;
    auto all = enumerate_theta(n);
    for (const auto& th : all) rs.insert(build_RT(th).R);
    CHECK(rs.size() == all.size());
  }
}

TEST_CASE("u1 descriptors") {
  RTProfile z = build_RT({3, {0, 0, 0}});
  CHECK(u1_descriptors(z).empty());

  RTProfile a = build_RT({3, {3, 1, 0}});
  auto ds = u1_descriptors(a);
  REQUIRE(ds.size() == 4);
  CHECK(ds[0].group_word == std::vector<int>{1});
  CHECK(ds[0].gen == GenDesc{1, 1, mask_of({1, 2, 3})});
  CHECK(ds[1].group_word == std::vector<int>{1, 2});
  CHECK(ds[2].group_word == std::vector<int>{1, 2, 3});
  CHECK(ds[3].group_word == std::vector<int>{2});
  CHECK(ds[3].gen == GenDesc{2, 2, mask_of({2})});
}
