#include "doctest.h"
#include "g17/isogeny.hpp"

#include <cmath>
#include <random>

using namespace g17;

namespace {

std::vector<BigComplex> published_z(prec_t p)
{
    char const * s[4] = {
        "2.782906766939281866286997098793034902684847793476160747541940388977040015293085779903",
        "0.7541581715676831945358505929000519382740764490517232237587776084375822688125537085498",
        "1.427741289884804796261342526038346079673690287432208818191983875543595519551820976113",
        "5.044828437439746283467218454713589608799941187512688000112646894245916708603880833717"};
    std::vector<BigComplex> z;
    for (auto x : s) z.push_back(BigComplex(BigReal(0L, p), BigReal(std::string(x), p)));
    return z;
}

RMFamily hecke_family()
{
    auto K = NumberField::hecke_field();
    return RMFamily{K, K->from_coeffs({2, 3, 4, -2}), {1, 3, 2, 0}};
}

RMFamily rational_family()
{
    auto Q = NumberField::make({0, 1});
    return RMFamily{Q, Q->one(), {}};
}

// classical E4 = 1 + 240 sum sigma_3(n) q^n, q = exp(2 pi i tau)
BigComplex e4_qseries(BigComplex const & tau, prec_t p)
{
    BigComplex q = exp_pi_i(tau * 2L, p);
    BigComplex s(1L, p), qn(1L, p);
    for (long n = 1; n < 400; ++n) {
        qn = qn * q;
        long s3 = 0;
        for (long d = 1; d <= n; ++d)
            if (n % d == 0) s3 += d * d * d;
        s += qn * BigReal(240 * s3, p);
        if (qn.abs().exponent() < -(long)p - 20) break;
    }
    return s;
}

double rel(BigComplex const & a, BigComplex const & b)
{
    return ((a - b).abs() / b.abs()).to_double();
}

// multiset distance: greedy matching of roots
double root_distance(std::vector<BigComplex> a, std::vector<BigComplex> const & b)
{
    double worst = 0;
    for (auto const & x : b) {
        size_t best = 0;
        double bd = 1e300;
        for (size_t i = 0; i < a.size(); ++i) {
            double d = rel(a[i], x);
            if (d < bd) { bd = d; best = i; }
        }
        worst = std::max(worst, bd);
        a.erase(a.begin() + best);
    }
    return worst;
}

}

TEST_CASE("2-neighbors")
{
    auto F = hecke_family();
    prec_t p = 128;
    auto z = published_z(p);
    auto nb = neighbors_2(F, z, p);
    REQUIRE(nb.size() == 17);
    for (int k = 0; k < 4; ++k) CHECK(rel(nb[0].z[k], z[k] * BigComplex(BigReal(0.5, p))) < 1e-35);
    for (auto const & n : nb) {
        CHECK(lattice_index(n.gamma) == 16);
        for (auto const & w : n.z) CHECK(w.im.sign() > 0);
    }
    CHECK(nb[16].residue.empty());
    for (int k = 0; k < 4; ++k) CHECK(rel(nb[16].z[k], z[k] * 2L) < 1e-35);
    auto F3 = NumberField::real_quadratic(12);
    RMFamily bad{F3, F3->one(), {}};
    std::vector<BigComplex> z2 = {BigComplex(0, 1, p), BigComplex(0, 2, p)};
    CHECK_THROWS_AS(neighbors_2(bad, z2, p), std::domain_error);
    auto F5 = NumberField::real_quadratic(5);   // 2 inert
    RMFamily ok{F5, F5->from_coeffs({2, 1}), {}};
    CHECK(neighbors_2(ok, z2, p).size() == 5);
}

TEST_CASE("factor of automorphy")
{
    auto F = hecke_family();
    auto const & K = F.K;
    prec_t p = 128;
    auto z = published_z(p);
    Mat2K id{K->one(), K->zero(), K->zero(), K->one()};
    CHECK(rel(factor_of_automorphy(F, id, z, 4, p), BigComplex(1L, p)) < 1e-35);
    Mat2K g2{K->from_int(2), K->zero(), K->zero(), K->one()};
    CHECK(rel(factor_of_automorphy(F, g2, z, 4, p), BigComplex(65536L, p)) < 1e-35);
    NFElem lam = K->from_coeffs({1, 1});
    Mat2K sc{lam, K->zero(), K->zero(), lam};
    BigComplex expect(1L, p);
    for (int r = 0; r < 4; ++r) expect = expect * BigComplex(pow(lam.embed(r, p), 4));
    CHECK(rel(factor_of_automorphy(F, sc, z, 4, p), expect) < 1e-30);
}

TEST_CASE("genus one: roots against q-series E4")
{
    auto F = rational_family();
    prec_t p = 160;
    BigComplex tau(BigReal(0.21, p), BigReal(0.93, p));
    auto T = isogeny_polynomial(F, {tau}, p);
    REQUIRE(T.degree() == 3);
    BigComplex e = e4_qseries(tau, p);
    std::vector<BigComplex> expect = {
        e4_qseries(tau * BigComplex(BigReal(0.5, p)), p) / e,
        e4_qseries((tau + BigComplex(1L, p)) * BigComplex(BigReal(0.5, p)), p) / e,
        e4_qseries(tau * 2L, p) * BigReal(16L, p) / e};
    for (int i = 0; i < 3; ++i) CHECK(rel(T.roots[i], expect[i]) < 1e-40);
    // sum of roots = 2 sigma_3(2): the T_2 eigenvalue of E4
    CHECK(rel(T.coeffs[1], BigComplex(-18L, p)) < 1e-40);
    // c_2 E4^2 has weight 8, hence is a multiple of E4^2; the constant is e_2(1, 1, 16) from the cusp
    CHECK(rel(T.coeffs[2], BigComplex(33L, p)) < 1e-40);
}

TEST_CASE("isogeny polynomial at the selected neighbor")
{
    auto F = hecke_family();
    prec_t p = 256;
    auto z = published_z(p);
    auto sel = select_neighbor(F, z, p);
    CHECK(sel.index == 8);                     // beta = nu^3
    CHECK(sel.log10_values[8] < -56);
    auto nb = neighbors_2(F, z, p);
    auto T = isogeny_polynomial(F, nb[sel.index].z, p);
    REQUIRE(T.degree() == 17);
    CHECK(T.coeffs[0].re.to_double() == 1.0);
    CHECK(T.max_imag < 1e-60);
    CHECK(std::abs(T.coeffs[1].re.to_double() / -581020.41645 - 1) < 1e-10);
    CHECK(std::abs(T.coeffs[2].re.to_double() / -54729032212.54644 - 1) < 1e-15);
    CHECK(std::abs(T.coeffs[3].re.to_double() / -2958404450460894.75024 - 1) < 1e-15);
    auto q = recognize_rational(T.coeffs[1].re, mpz_class("1000000000000"));
    REQUIRE(q);
    mpz_class D = q->get_den();
    CHECK(D == 267075169);
    auto q2 = recognize_rational(T.coeffs[2].re, D * D, -180);
    REQUIRE(q2);
    CHECK(q2->get_den() == D * D);
    auto R = normalize_and_recognize(T, D);
    CHECK(R.a[0] == mpz_class("-155176125916688"));
    CHECK(R.a[1] == mpz_class("-3903775123456327337126372744"));
    for (double r : R.log10_residual) CHECK(r < -20);
}

TEST_CASE("isogeny polynomial is invariant under z -> nu^2 z and z -> z + 1")
{
    auto F = hecke_family();
    auto const & K = F.K;
    prec_t p = 128;
    auto z = published_z(p);
    auto zs = neighbors_2(F, z, p)[5].z;   // a generic nearby point
    auto T0 = isogeny_polynomial(F, zs, p);
    NFElem u = K->gen() * K->gen();
    std::vector<BigComplex> zu, zt;
    for (int k = 0; k < 4; ++k) {
        zu.push_back(zs[k] * u.embed(F.root_index(k), p));
        zt.push_back(zs[k] + BigComplex(1L, p));
    }
    CHECK(root_distance(isogeny_polynomial(F, zu, p).roots, T0.roots) < 1e-25);
    CHECK(root_distance(isogeny_polynomial(F, zt, p).roots, T0.roots) < 1e-25);
}

TEST_CASE("rational recognition")
{
    prec_t p = bits_for_digits(40);
    BigReal third(std::string("0.3333333333333333333333333333333333333333"), p);
    auto q = recognize_rational(third, 1000000);
    REQUIRE(q);
    CHECK(*q == mpq_class(1, 3));
    BigReal irr = sqrt(BigReal(2L, p)) + BigReal::pi(p);
    CHECK(!recognize_rational(irr, 1000000));
    BigReal neg(mpq_class(-22, 7), p);
    CHECK(*recognize_rational(neg, 100) == mpq_class(-22, 7));
    CHECK(*recognize_rational(BigReal(5L, p), 1) == 5);
}

TEST_CASE("normalize_and_recognize on exact input")
{
    prec_t p = 300;
    mpz_class D = 97;
    std::vector<BigComplex> roots;
    for (long k : {3L, -5L, 11L, 1000003L, -7L})
        roots.push_back(BigComplex(BigReal(mpq_class(k, 97), p)));
    IsogenyPolynomial T;
    T.prec = p;
    T.coeffs = poly_from_roots(roots, p);
    auto R = normalize_and_recognize(T, D, 4);
    for (double r : R.log10_residual) CHECK(r < -60);
    // e_1 of the integer roots, with sign
    CHECK(R.a[0] == -(3 - 5 + 11 + 1000003 - 7));
    auto v = scaled_coefficients(T, D);
    CHECK(v[5].round_to_mpz() == mpz_class(-3L * -5 * 11 * 1000003 * -7));
    IsogenyPolynomial T2 = T;
    T2.coeffs[1] += BigComplex(BigReal(0.3, p));
    CHECK_THROWS_AS(normalize_and_recognize(T2, D, 4), numeric_failure);
}

TEST_CASE("Newton refinement: genus one round trip")
{
    auto F = rational_family();
    prec_t p = 400;
    BigComplex zstar(BigReal(0.13, p), BigReal(1.07, p));
    auto T = isogeny_polynomial(F, {zstar}, p);
    BigComplex z0 = zstar + BigComplex(1e-5, -1e-5, p);
    // c_1, c_2 are constant in genus one, so solve for c_3
    NewtonOptions o;
    o.first_coeff = 3;
    auto R = newton_refine(F, {z0}, {T.coeffs[3]}, p, o);
    REQUIRE(R.converged);
    CHECK((R.z[0] - zstar).abs().exponent() < -(long)p / 2);
    // quadratic convergence: log residual roughly doubles over the last steps
    auto const & L = R.log2_residuals;
    REQUIRE(L.size() >= 4);
    for (size_t i = L.size() - 3; i + 1 < L.size(); ++i) CHECK(L[i + 1] < 1.6 * L[i]);
}

TEST_CASE("Newton refinement: quartic family round trip" * doctest::timeout(900))
{
    auto F = hecke_family();
    prec_t p = 128;
    auto zstar = neighbors_2(F, published_z(p), p)[8].z;
    auto T = isogeny_polynomial(F, zstar, p);
    std::vector<BigComplex> tg(T.coeffs.begin() + 1, T.coeffs.begin() + 5), z0;
    for (int k = 0; k < 4; ++k) z0.push_back(zstar[k] + BigComplex(0, 1e-5 * (k + 1), p));
    NewtonOptions o;
    o.max_iter = 6;
    auto R = newton_refine(F, z0, tg, p, o);
    CHECK(R.converged);
    for (int k = 0; k < 4; ++k) CHECK((R.z[k] - zstar[k]).abs().exponent() < -(long)p / 2 + 4);
}

TEST_CASE("Euler factor products")
{
    auto K = NumberField::hecke_field();
    auto E0 = euler_factor_product(K->zero(), 17);
    // (1 + 17 T^2)^4
    std::vector<mpz_class> binom = {1, 4, 6, 4, 1};
    for (int j = 0; j <= 4; ++j) {
        mpz_class v;
        mpz_pow_ui(v.get_mpz_t(), mpz_class(17).get_mpz_t(), j);
        CHECK(E0[2 * j] == binom[j] * v);
        if (j < 4) CHECK(E0[2 * j + 1] == 0);
    }
    std::mt19937 rng(3);
    for (int t = 0; t < 30; ++t) {
        std::vector<mpq_class> c;
        for (int i = 0; i < 4; ++i) c.push_back((long)(rng() % 11) - 5);
        NFElem a = K->from_coeffs(c);
        mpz_class N = 1 + rng() % 300;
        auto E = euler_factor_product(a, N);
        REQUIRE(E.size() == 9);
        CHECK(E[0] == 1);
        for (int i = 0; i <= 4; ++i) {
            mpz_class Ng;
            mpz_pow_ui(Ng.get_mpz_t(), N.get_mpz_t(), 4 - i);
            CHECK(E[8 - i] == Ng * E[i]);
        }
        // against the floating product over embeddings at T = 0.37
        double x = 0.37, prod = 1, ev = 0, xp = 1;
        for (auto const & r : a.embeddings(100)) prod *= 1 - r.to_double() * x + N.get_d() * x * x;
        for (auto const & e : E) { ev += e.get_d() * xp; xp *= x; }
        CHECK(std::abs(ev - prod) < 1e-9 * std::max(1.0, std::abs(prod)));
    }
    CHECK(euler_factor_product(K->from_int(3), 5)[1] == -12);
    CHECK_THROWS(euler_factor_product(K->from_coeffs({mpq_class(1, 2)}), 5));
}
