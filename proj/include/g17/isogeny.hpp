#pragma once

#include "g17/abvar.hpp"
#include "g17/theta.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace g17 {

struct numeric_failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// [[a, b], [c, d]] over Z_K
struct Mat2K {
    NFElem a, b, c, d;
    NFElem det() const { return a * this->d - b * c; }
};

struct Neighbor {
    Mat2K gamma;
    std::vector<BigComplex> z;   // gamma z, componentwise through the embeddings
    std::vector<int> residue;    // 0/1 power-basis coordinates of beta; empty for [[2,0],[0,1]]
};

// componentwise (a z + b) / (c z + d) at slot k -> embedding root_index(k)
std::vector<BigComplex> act(RMFamily const & F, Mat2K const & g, std::vector<BigComplex> const & z, prec_t prec);

// the Nm(2) + 1 = 2^g + 1 neighbors [[1, beta], [0, 2]] and [[2, 0], [0, 1]]; needs 2 inert in K
std::vector<Neighbor> neighbors_2(RMFamily const & F, std::vector<BigComplex> const & z, prec_t prec);

// |det| of the Z-linear map of Z_K^2 given by gamma (index of the image lattice)
mpz_class lattice_index(Mat2K const & g);

// prod_iota (det / (c z + d))^k; with this normalization the [[2,0],[0,1]] root is 2^16 G(2z)/G(z)
BigComplex factor_of_automorphy(RMFamily const & F, Mat2K const & g, std::vector<BigComplex> const & z, int k, prec_t prec);

// E4 of the reduced period matrix at z
BigComplex modular_G(RMFamily const & F, std::vector<BigComplex> const & z, prec_t prec);
// scale-free Schottky value at z (g = 4)
BigReal schottky_value(RMFamily const & F, std::vector<BigComplex> const & z, prec_t prec);

struct NeighborSelection {
    int index = -1;
    std::vector<double> log10_values;   // log10 of the Schottky value at each neighbor
    double runner_up = 0;               // second smallest log10 value
};
NeighborSelection select_neighbor(RMFamily const & F, std::vector<BigComplex> const & z, prec_t prec);

struct OrderSearch {
    std::vector<int> order;
    double best = 0, runner_up = 0;   // log10 Schottky minima: best ordering vs best other ordering class
    int neighbor = -1;
};
// tries every ordering of the embeddings; the printed orderings of a point are only determined up to this
OrderSearch find_embedding_order(FieldRef const & K, NFElem const & d, std::vector<BigComplex> const & z, prec_t prec);

struct IsogenyPolynomial {
    std::vector<BigComplex> coeffs;   // coeffs[i] multiplies x^(n - i); coeffs[0] = 1
    std::vector<BigComplex> roots;
    std::vector<BigComplex> z;
    prec_t prec = 0;
    double max_imag = 0;              // largest |Im c_i| / max(1, |c_i|)
    int degree() const { return (int)coeffs.size() - 1; }
};

std::vector<BigComplex> poly_from_roots(std::vector<BigComplex> const & roots, prec_t prec);

// monic T(x) = prod (x - j(gamma, z) G(gamma z) / G(z)) over neighbors_2
IsogenyPolynomial isogeny_polynomial(RMFamily const & F, std::vector<BigComplex> const & z, prec_t prec);

// first continued fraction convergent p/q with q <= den_bound and |x - p/q| < tol
// (tol <= 0 means 2^(-prec/3) max(1, |x|))
std::optional<mpq_class> recognize_rational(BigReal const & x, mpz_class const & den_bound, double tol_log2 = 0);

// D^i c_i, the coefficients of D^n T(x / D)
std::vector<BigReal> scaled_coefficients(IsogenyPolynomial const & T, mpz_class const & D);

struct RecognizedPrefix {
    std::vector<mpz_class> a;           // a_1 .. a_count
    std::vector<double> log10_residual; // log10 |D^i c_i - a_i|
};
// rounds the x^(n-1) .. x^(n-count) coefficients of T_D; throws numeric_failure above max_residual
RecognizedPrefix normalize_and_recognize(IsogenyPolynomial const & T, mpz_class const & D, int count = 4,
                                         double max_residual = 1e-4);

struct NewtonOptions {
    int max_iter = 40;
    prec_t jac_prec = 0;      // precision of the finite-difference Jacobian (0: same as prec)
    bool reuse_jacobian = false;
    long stop_bits = 0;       // stop when the relative residual is below 2^-stop_bits (0: prec / 2)
    int first_coeff = 1;      // targets are c_first, c_first+1, ...
    bool verbose = false;
};

struct NewtonResult {
    std::vector<BigComplex> z;
    std::vector<double> log2_residuals;   // per accepted iterate, starting with z0
    bool converged = false;
    int jacobians = 0;
    IsogenyPolynomial T;                  // at the final z
};

// solve c_i(z) = targets, i = first_coeff, first_coeff + 1, ..., for the x^(n-i) coefficients of isogeny_polynomial
NewtonResult newton_refine(RMFamily const & F, std::vector<BigComplex> const & z0,
                           std::vector<BigComplex> const & targets, prec_t prec, NewtonOptions const & opt = {});

// prod_j (1 - tau_j(a) T + N T^2) from the characteristic polynomial of a; index i is the T^i coefficient
std::vector<mpz_class> euler_factor_product(NFElem const & a, mpz_class const & N);

} // namespace g17
