#include "doctest.h"
#include "g17/galverify.hpp"
#include "g17/polymodp.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

using namespace g17;

namespace {

// f(x + 1) by Horner on polynomials
ZPoly shift_by_one(ZPoly const & f)
{
    ZPoly r = {f.back()};
    for (int i = (int)f.size() - 2; i >= 0; --i) {
        ZPoly s(r.size() + 1);
        for (size_t j = 0; j < r.size(); ++j) {
            s[j + 1] += r[j];
            s[j] += r[j];
        }
        s[0] += f[i];
        r = s;
    }
    return r;
}

// automorphisms fixing the left side pointwise, by enumerating right permutations
long kernel_size_fixing_left(BipartiteGraph const & G)
{
    std::set<std::pair<int, int>> E(G.edges.begin(), G.edges.end());
    std::vector<int> s(G.right);
    std::iota(s.begin(), s.end(), 0);
    long n = 0;
    do {
        bool ok = true;
        for (auto [a, b] : G.edges)
            if (!E.count({a, s[b]})) { ok = false; break; }
        n += ok;
    } while (std::next_permutation(s.begin(), s.end()));
    return n;
}

BipartiteGraph transposed(BipartiteGraph const & G)
{
    BipartiteGraph T{G.right, G.left, {}};
    for (auto [a, b] : G.edges) T.edges.push_back({b, a});
    return T;
}

}

TEST_CASE("degree patterns")
{
    ZPoly x2p1 = {1, 0, 1};
    CHECK(*degree_pattern_mod_p(x2p1, 5) == Partition{1, 1});
    CHECK(*degree_pattern_mod_p(x2p1, 7) == Partition{2});
    CHECK(!degree_pattern_mod_p(x2p1, 2));        // (x+1)^2
    CHECK(!degree_pattern_mod_p({1, 0, 3}, 3));   // leading fine, x^2 mod 3 not squarefree
    CHECK_THROWS(degree_pattern_mod_p(x2p1, 9));
    // Phi_5: Frobenius has the order of p mod 5 as every cycle length
    ZPoly phi5 = {1, 1, 1, 1, 1};
    int n = 0;
    for (long p = 2; n < 50; ++p) {
        if (!is_prime_u64(p) || p == 5) continue;
        ++n;
        int o = 1;
        for (long t = p % 5; t != 1; t = t * p % 5) ++o;
        CHECK(*degree_pattern_mod_p(phi5, p) == Partition(4 / o, o));
    }
}

TEST_CASE("the 17T7 polynomial census")
{
    ZPoly f = fx17_polynomial();
    PermGroup G = build_17T7();
    auto types = G.cycle_type_set();
    auto c20 = cycle_census(f, 20);
    CHECK(c20.patterns.size() == 20);
    for (auto const & [p, pat] : c20.patterns) {
        CHECK(std::accumulate(pat.begin(), pat.end(), 0) == 17);
        CHECK(types.count(pat));
    }
    auto c = cycle_census(f, 500);
    auto r = census_consistent(c, G, 500);
    CHECK(r.membership);
    CHECK(r.coverage >= 0.9);
    CHECK(r.consistent);
    CHECK(r.max_frequency_deviation < 0.06);
    // excluded primes divide the discriminant: 2, 3, 17 only
    for (long p : c.excluded) CHECK((p == 2 || p == 3 || p == 17));
    // x^17 - 2 has patterns outside 17T7
    ZPoly g(18);
    g[0] = -2;
    g[17] = 1;
    auto rg = census_consistent(cycle_census(g, 500), G, 500);
    CHECK(!rg.membership);
    CHECK(!rg.consistent);
    // a product of linear factors: only the identity pattern, large frequency deviation
    ZPoly lin = {1};
    for (long a = 1; a <= 17; ++a) {
        ZPoly s(lin.size() + 1);
        for (size_t j = 0; j < lin.size(); ++j) {
            s[j + 1] += lin[j];
            s[j] -= a * lin[j];
        }
        lin = s;
    }
    auto rl = census_consistent(cycle_census(lin, 100, 20), G, 100);
    CHECK(rl.membership);
    CHECK(rl.coverage < 0.2);
    CHECK(!rl.consistent);
    CHECK(rl.max_frequency_deviation > 0.9);
}

TEST_CASE("census monotonicity")
{
    ZPoly f = fx17_polynomial();
    PermGroup G = build_17T7();
    auto big = cycle_census(f, 300);
    bool was = false;
    for (int n : {100, 150, 200, 250, 300}) {
        CycleCensus c = big;
        c.patterns.resize(n);
        bool now = census_consistent(c, G, n).consistent;
        if (was) CHECK(now);
        was = now;
    }
}

TEST_CASE("field comparison")
{
    ZPoly f = fx17_polynomial();
    auto r = fields_likely_equal(f, shift_by_one(f), 200);
    CHECK(r.equal_patterns);
    CHECK(r.compared > 190);
    auto r2 = fields_likely_equal({1, 0, 1}, {3, 0, 1}, 10);
    CHECK(!r2.equal_patterns);
    CHECK(r2.first_difference == 5);   // -1 is a square mod 5, -3 is not
    CHECK(*degree_pattern_mod_p({3, 0, 1}, 7) == Partition{1, 1});
    CHECK(*degree_pattern_mod_p({1, 0, 1}, 7) == Partition{2});
    CHECK_THROWS(fields_likely_equal({1, 0, 1}, {1, 0, 0, 1}, 10));
}

TEST_CASE("bipartite projections")
{
    BipartiteGraph M{5, 5, {}};
    for (int i = 0; i < 5; ++i) M.edges.push_back({i, (i + 2) % 5});
    auto vm = bipartite_projection_injective(M);
    CHECK(vm.left_injective);
    CHECK(vm.right_injective);
    BipartiteGraph K23{2, 3, {}};
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 3; ++b) K23.edges.push_back({a, b});
    auto vk = bipartite_projection_injective(K23);
    CHECK(!vk.left_injective);
    CHECK(!vk.right_injective);
    REQUIRE(vk.right_twins);
    CHECK(vk.right_twins->first != vk.right_twins->second);
    std::mt19937 rng(5);
    for (int t = 0; t < 200; ++t) {
        BipartiteGraph G{1 + (int)(rng() % 7), 1 + (int)(rng() % 7), {}};
        double dens = 0.2 + 0.6 * (rng() % 100) / 100.0;
        for (int a = 0; a < G.left; ++a)
            for (int b = 0; b < G.right; ++b)
                if ((rng() % 1000) < dens * 1000) G.edges.push_back({a, b});
        auto v = bipartite_projection_injective(G);
        CHECK(v.left_injective == (kernel_size_fixing_left(G) == 1));
        CHECK(v.right_injective == (kernel_size_fixing_left(transposed(G)) == 1));
        auto vt = bipartite_projection_injective(transposed(G));
        CHECK(vt.left_injective == v.right_injective);
        CHECK(vt.right_injective == v.left_injective);
    }
    CHECK_THROWS(bipartite_projection_injective(BipartiteGraph{1, 1, {{0, 3}}}));
}
