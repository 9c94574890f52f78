#include "doctest.h"
#include "g17/ffgroup.hpp"

#include <random>

using namespace g17;

TEST_CASE("finite field construction")
{
    auto K = FiniteField::f16();
    CHECK(K->q == 16);
    CHECK(K->order(2) == 15);    // x is primitive for x^4+x+1
    CHECK_THROWS_AS(FiniteField(2, {1, 0, 1}), std::invalid_argument);    // x^2+1 = (x+1)^2
    auto F7 = FiniteField::make(7, 1);
    CHECK(F7->mul(3, 5) == 1);
    auto F9 = FiniteField::make(3, 2);
    CHECK(F9->q == 9);
    // every nonzero element is a power of the generator
    std::set<unsigned> seen;
    for (unsigned k = 0; k < 8; ++k) seen.insert(F9->pow(F9->gen(), k));
    CHECK(seen.size() == 8);
    // field axioms spot check against the slow path via distributivity
    std::mt19937 rng(1);
    for (int t = 0; t < 200; ++t) {
        unsigned a = rng() % 16, b = rng() % 16, c = rng() % 16;
        CHECK(K->mul(a, K->add(b, c)) == K->add(K->mul(a, b), K->mul(a, c)));
        if (a) CHECK(K->mul(a, K->inv(a)) == 1);
    }
}

TEST_CASE("u invariant")
{
    auto K = FiniteField::f16();
    CHECK(u_invariant(*K, {0, 1, 1, 0}) == 0);
    for (unsigned v = 1; v < 16; ++v) CHECK(u_invariant(*K, {v, K->neg(v), 1, 0}) == v);
    auto F7 = FiniteField::make(7, 1);
    CHECK(u_invariant(*F7, mat_identity()) == 4);
    CHECK_THROWS(u_invariant(*K, {1, 1, 1, 1}));
    std::mt19937 rng(2);
    for (int t = 0; t < 300; ++t) {
        Mat2 g{(unsigned)rng() % 16, (unsigned)rng() % 16, (unsigned)rng() % 16, (unsigned)rng() % 16};
        if (!mat_det(*K, g)) continue;
        unsigned c = 1 + rng() % 15;
        CHECK(u_invariant(*K, mat_scale(*K, c, g)) == u_invariant(*K, g));
        Mat2 h{(unsigned)rng() % 16, (unsigned)rng() % 16, (unsigned)rng() % 16, (unsigned)rng() % 16};
        if (!mat_det(*K, h)) continue;
        CHECK(u_invariant(*K, mat_mul(*K, h, mat_mul(*K, g, mat_inv(*K, h)))) == u_invariant(*K, g));
    }
}

TEST_CASE("PGammaL action on the projective line")
{
    auto K = FiniteField::f16();
    // identity with frob 0 fixes everything
    for (unsigned i = 0; i <= 16; ++i) CHECK(proj_index(*K, pgammal_action(*K, mat_identity(), 0, proj_point(*K, i))) == i);
    // a -> a^4: fixed points counted directly
    int fixed_direct = 1;    // infinity
    for (unsigned a = 0; a < 16; ++a)
        if (K->mul(K->mul(a, a), K->mul(a, a)) == a) ++fixed_direct;
    int fixed = 0;
    Perm p(17);
    for (unsigned i = 0; i <= 16; ++i) {
        p[i] = (uint8_t)proj_index(*K, pgammal_action(*K, mat_identity(), 2, proj_point(*K, i)));
        if (p[i] == i) ++fixed;
    }
    CHECK(fixed == fixed_direct);
    CHECK(fixed == 5);
    CHECK(cycle_type(p) == std::vector<int>{2, 2, 2, 2, 2, 2, 1, 1, 1, 1, 1});
    // scalars act trivially
    for (unsigned s = 1; s < 16; ++s)
        for (unsigned i = 0; i <= 16; ++i)
            CHECK(proj_index(*K, pgammal_action(*K, {s, 0, 0, s}, 0, proj_point(*K, i))) == i);
    // action property: (g, s^i)(h, s^j) = (g s^i(h), s^{i+j})
    std::mt19937 rng(3);
    auto frobm = [&](Mat2 m, unsigned k) { return Mat2{K->frob(m.a, k), K->frob(m.b, k), K->frob(m.c, k), K->frob(m.d, k)}; };
    for (int t = 0; t < 200; ++t) {
        Mat2 g{(unsigned)rng() % 16, (unsigned)rng() % 16, (unsigned)rng() % 16, (unsigned)rng() % 16};
        Mat2 h{(unsigned)rng() % 16, (unsigned)rng() % 16, (unsigned)rng() % 16, (unsigned)rng() % 16};
        if (!mat_det(*K, g) || !mat_det(*K, h)) continue;
        unsigned i = rng() % 4, j = rng() % 4;
        ProjPoint P = proj_point(*K, rng() % 17);
        ProjPoint lhs = pgammal_action(*K, g, i, pgammal_action(*K, h, j, P));
        ProjPoint rhs = pgammal_action(*K, mat_mul(*K, g, frobm(h, i)), (i + j) % 4, P);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("17T7")
{
    PermGroup G = build_17T7();
    CHECK(G.order() == 8160);
    CHECK(G.is_transitive());
    CHECK(G.stabilizer_order(0) == 480);
    PermGroup D = G.derived_subgroup();
    CHECK(D.order() == 4080);
    CHECK(D.is_normal_subgroup_of(G));
    CHECK(D.is_simple());
    PermGroup S = build_psl2_16();
    CHECK(S.order() == 4080);
    CHECK(S.elements() == D.elements());
    CHECK(!G.is_simple());
    auto ct = G.cycle_type_set();
    CHECK(ct.count({2, 2, 2, 2, 2, 2, 1, 1, 1, 1, 1}) == 1);
    CHECK(ct.count({17}) == 1);
    // the outer coset has no element of order 17
    for (auto const & x : G.elements())
        if (!S.contains(x)) CHECK(cycle_type(x) != std::vector<int>{17});
    size_t tot = 0;
    for (auto const & [k, n] : G.cycle_type_counts()) tot += n;
    CHECK(tot == 8160);
}

TEST_CASE("small permutation groups")
{
    PermGroup T(17, {});
    CHECK(T.order() == 1);
    CHECK(T.cycle_type_set() == std::set<std::vector<int>>{std::vector<int>(17, 1)});
    Perm c(17);
    for (int i = 0; i < 17; ++i) c[i] = (uint8_t)((i + 1) % 17);
    PermGroup C(17, {c});
    CHECK(C.order() == 17);
    CHECK(C.cycle_type_set().count({17}));
    CHECK(C.is_simple());
    CHECK_THROWS(PermGroup(3, {Perm{0, 0, 1}}));
}

TEST_CASE("GL2_A decomposition into diag(a,1) times SL2")
{
    std::mt19937 rng(4);
    for (auto K : {FiniteField::make(7, 1), FiniteField::f16()}) {
        for (int t = 0; t < 100; ++t) {
            Mat2 g{(unsigned)(rng() % K->q), (unsigned)(rng() % K->q), (unsigned)(rng() % K->q), (unsigned)(rng() % K->q)};
            unsigned a = mat_det(*K, g);
            if (!a) continue;
            Mat2 s = mat_mul(*K, {K->inv(a), 0, 0, 1}, g);
            CHECK(mat_det(*K, s) == 1);
            CHECK(mat_mul(*K, {a, 0, 0, 1}, s) == g);
        }
    }
}

TEST_CASE("large image criteria")
{
    auto K = FiniteField::f16();
    auto full = mat_closure(*K, sl2_generators(*K));
    CHECK(full.size() == 4080);
    auto r = large_image_check(K, sl2_generators(*K));
    CHECK(r.cond[0]);
    CHECK(r.cond[1]);
    CHECK(r.cond[2]);
    CHECK(r.cond[3]);
    CHECK(r.contains_sl2);
    auto r1 = large_image_check(K, {mat_identity()});
    CHECK(!r1.cond[0]);
    CHECK(!r1.cond[1]);
    CHECK(!r1.cond[2]);
    CHECK(!r1.cond[3]);
    // upper triangular: characteristic polynomials split
    auto r2 = large_image_check(K, {{K->gen(), 1, 0, 1}, {1, K->gen(), 0, 1}});
    CHECK(!r2.cond[1]);
    CHECK(!r2.contains_sl2);
    // SL2(F4) inside SL2(F16): u-values stay in F4
    std::vector<Mat2> sub;
    unsigned w = K->pow(K->gen(), 5);    // order 3, generates F4*
    sub.push_back({1, 1, 0, 1});
    sub.push_back({w, 0, 0, K->inv(w)});
    sub.push_back({0, 1, 1, 0});
    auto r3 = large_image_check(K, sub);
    CHECK(!r3.cond[3]);
    CHECK(!r3.contains_sl2);
    CHECK_THROWS(large_image_check(FiniteField::make(5, 1), {mat_identity()}));
}

TEST_CASE("trace lemma")
{
    std::set<unsigned> all;
    for (unsigned i = 0; i < 16; ++i) all.insert(i);
    CHECK(trace_lemma_check(all, 16));
    auto K = FiniteField::f16();
    std::set<unsigned> f4;
    for (unsigned a = 0; a < 16; ++a)
        if (K->frob(a, 2) == a) f4.insert(a);
    CHECK(f4.size() == 4);
    CHECK(!trace_lemma_check(f4, 16));
    CHECK_THROWS_AS(trace_lemma_check(all, 2), unsupported_field);
    CHECK_THROWS_AS(trace_lemma_check(all, 3), unsupported_field);
    CHECK_THROWS_AS(trace_lemma_check(all, 5), unsupported_field);
    CHECK(trace_lemma_bruteforce(4));
    auto c4 = sl2_subgroup_census(4);
    CHECK(c4.subgroups == 59);    // A5
    CHECK(c4.full_trace == 1);
    // q = 2: C3 has traces {0,1} = F2 yet is proper
    auto c2 = sl2_subgroup_census(2);
    CHECK(c2.subgroups == 6);     // S3
    CHECK(c2.full_trace >= 2);
    CHECK(!c2.only_whole_group);
    auto F2 = FiniteField::make(2, 1);
    auto C3 = mat_closure(*F2, {{0, 1, 1, 1}});
    CHECK(C3.size() == 3);
    std::set<unsigned> tr;
    for (auto const & m : C3) tr.insert(mat_trace(*F2, m));
    CHECK(tr.size() == 2);
}
