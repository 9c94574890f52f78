#include "doctest.h"
#include "g17/abvar.hpp"

#include <random>

using namespace g17;

namespace {

ZMatrix random_unimodular(int n, std::mt19937 & rng, int steps = 40)
{
    ZMatrix V = ZMatrix::identity(n);
    std::uniform_int_distribution<int> idx(0, n - 1), coef(-3, 3);
    for (int s = 0; s < steps; ++s) {
        int i = idx(rng), j = idx(rng);
        if (i == j) continue;
        int c = coef(rng);
        for (int r = 0; r < n; ++r) V(r, j) += c * V(r, i);    // column op
        if (rng() % 5 == 0)
            for (int r = 0; r < n; ++r) std::swap(V(r, i), V(r, j));
    }
    return V;
}

// the moduli point printed for the 578.1 form (z_{+-})
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

}

TEST_CASE("pairing Gram matrix")
{
    auto K = NumberField::hecke_field();
    NFElem d = K->from_coeffs({2, 3, 4, -2});
    ZMatrix M = pairing_gram(K, d.inv());
    CHECK(det(M) == 1);
    CHECK((M + M.transpose()).is_zero());
    CHECK(is_alternating(M));
    ZMatrix M1 = pairing_gram(K, K->one());
    CHECK(det(M1) == 725 * 725);
    CHECK_THROWS_AS(symplectic_basis(M1), std::domain_error);
    CHECK_THROWS_AS(pairing_gram(K, K->from_coeffs({mpq_class(1, 3)})), non_integral_pairing);
}

TEST_CASE("symplectic basis")
{
    ZMatrix J = standard_J(4);
    ZMatrix U0 = symplectic_basis(J);
    CHECK(U0.transpose() * J * U0 == J);
    std::mt19937 rng(41);
    for (int t = 0; t < 60; ++t) {
        int g = 1 + t % 4;
        ZMatrix V = random_unimodular(2 * g, rng);
        ZMatrix M = V.transpose() * standard_J(g) * V;
        ZMatrix U = symplectic_basis(M);
        CHECK(U.transpose() * M * U == standard_J(g));
        CHECK(abs(det(U)) == 1);
    }
    auto K = NumberField::hecke_field();
    ZMatrix M = pairing_gram(K, K->from_coeffs({2, 3, 4, -2}).inv());
    ZMatrix U = symplectic_basis(M);
    CHECK(U.transpose() * M * U == J);
    ZMatrix bad(3, 3);
    CHECK_THROWS(symplectic_basis(bad));
}

TEST_CASE("genus one toy period matrix")
{
    auto Q = NumberField::make({0, 1});
    prec_t p = 200;
    BigComplex tau(BigReal(0.3, p), BigReal(1.7, p));
    RMLattice L{Q, {tau}, {BigComplex(1L, p)}, {}, Q->one()};
    auto S = small_period_matrix(L, p);
    CHECK((S.Z(0, 0) - tau).abs().to_double() < 1e-55);
    CHECK(!S.flipped);
    RMLattice Lm{Q, {BigComplex(BigReal(0.3, p), BigReal(-1.7, p))}, {BigComplex(1L, p)}, {}, Q->one()};
    auto Sm = small_period_matrix(Lm, p);
    CHECK(Sm.flipped);
    CHECK(Sm.Z(0, 0).im.to_double() > 0);
}

TEST_CASE("real quadratic toy matches the closed form")
{
    auto F = NumberField::real_quadratic(5);
    NFElem d = F->from_coeffs({2, 1});    // sqrt5 * omega, totally positive
    auto cd = is_codifferent_generator(F, d);
    REQUIRE(cd.generator);
    REQUIRE(cd.totally_positive);
    prec_t p = 256;
    std::mt19937 rng(8);
    std::uniform_real_distribution<double> U(0.2, 2.0);
    for (int t = 0; t < 5; ++t) {
        std::vector<BigComplex> z = {BigComplex(BigReal(U(rng) - 1, p), BigReal(U(rng), p)),
                                     BigComplex(BigReal(U(rng) - 1, p), BigReal(U(rng), p))};
        auto S = small_period_matrix(rm_lattice(F, z, d, {}), p);
        CMatrix Z = rm_period_matrix(F, z, d, {}, p);
        CHECK((S.Z - Z).max_abs().to_double() < 1e-60);
        CHECK(S.symmetry_defect < 1e-60);
        CHECK(S.min_eig_im > 0);
    }
}

TEST_CASE("Hecke field lattice at the published moduli point")
{
    auto K = NumberField::hecke_field();
    NFElem d = K->from_coeffs({2, 3, 4, -2});
    prec_t p = 300;
    auto z = published_z(p);
    std::vector<int> order = {1, 3, 2, 0};
    auto S = small_period_matrix(rm_lattice(K, z, d, order), p);
    CMatrix Z = rm_period_matrix(K, z, d, order, p);
    CHECK((S.Z - Z).max_abs().to_double() < 1e-70);
    CHECK(S.min_eig_im > 0);
    CHECK(S.symmetry_defect < 1e-70);
}

TEST_CASE("period matrix reduction")
{
    prec_t p = 200;
    CMatrix Z(3, 3, p);
    Z(0, 0) = BigComplex(BigReal(0L, p), BigReal(1.0, p));
    Z(1, 1) = BigComplex(BigReal(0L, p), BigReal(1.2, p));
    Z(2, 2) = BigComplex(BigReal(0L, p), BigReal(1.5, p));
    auto R = reduce_period_matrix(Z);
    CHECK((R.Z - Z).max_abs().to_double() == 0.0);
    CHECK(R.T == ZMatrix::identity(3));
    CMatrix Z5 = Z;
    for (int i = 0; i < 3; ++i) Z5(i, i) += BigComplex(5L, p);
    auto R5 = reduce_period_matrix(Z5);
    CHECK((R5.Z - Z).max_abs().to_double() == 0.0);
    CHECK(R5.B(0, 0) == -5);
    // half-integers go to +1/2
    CMatrix Zh = Z;
    Zh(0, 1) = Zh(1, 0) = BigComplex(BigReal(-0.5, p), BigReal(0L, p));
    auto Rh = reduce_period_matrix(Zh);
    CHECK(Rh.Z(0, 1).re.to_double() == 0.5);
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> Ud(-1, 1);
    for (int t = 0; t < 20; ++t) {
        int g = 4;
        // ill conditioned: Y = A^T A with A = unimodular * small diagonal
        ZMatrix V = random_unimodular(g, rng, 30);
        std::vector<double> Y(g * g, 0);
        for (int i = 0; i < g; ++i)
            for (int j = 0; j < g; ++j) {
                double s = 0;
                for (int k = 0; k < g; ++k) s += V(k, i).get_d() * V(k, j).get_d() * (0.5 + 0.1 * k);
                Y[i * g + j] = s;
            }
        CMatrix W(g, g, p);
        for (int i = 0; i < g; ++i)
            for (int j = i; j < g; ++j) {
                W(i, j) = BigComplex(BigReal(Ud(rng) * 3, p), BigReal(Y[i * g + j], p));
                W(j, i) = W(i, j);
            }
        auto Rw = reduce_period_matrix(W);
        CHECK(min_eigenvalue_sym(Rw.Z.im_double(), g) >= min_eigenvalue_sym(Y, g) * (1 - 1e-12));
        CMatrix Tc = to_complex(Rw.T, p);
        CMatrix back = Tc.transpose() * W * Tc;
        for (int i = 0; i < g; ++i)
            for (int j = 0; j < g; ++j) {
                back(i, j) += BigComplex(BigReal(Rw.B(i, j), p));
                double re = Rw.Z(i, j).re.to_double();
                CHECK(re > -0.5);
                CHECK(re <= 0.5);
            }
        CHECK((back - Rw.Z).max_abs().to_double() < 1e-50);
        CHECK(abs(det(Rw.T)) == 1);
    }
}
