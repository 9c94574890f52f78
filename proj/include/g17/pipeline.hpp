#pragma once

#include "g17/hmfdata.hpp"
#include "g17/isogeny.hpp"

#include <string>
#include <vector>

namespace g17 {

// a bundled moduli point with the reference data printed alongside it
struct ModuliPointFile {
    std::string form, sign;
    FieldRef K;
    NFElem d;                                   // codifferent generator
    std::vector<std::string> z_re, z_im;
    int digits = 0;
    std::vector<int> order;                     // optional embedding order
    std::vector<mpz_class> TD_leading;          // a_1, a_2
    int TD_constant_digits = 0;
    std::string TD_constant_prefix, TD_constant_suffix;
    std::vector<double> T_leading_approx;       // c_1, c_2, c_3

    std::vector<BigComplex> z(prec_t prec) const;
};
ModuliPointFile load_moduli_point_file(std::string const & path);
std::string default_moduli_point_path();

struct PipelineOptions {
    prec_t select_prec = 256;      // Schottky selection and the first T
    prec_t recognize_prec = 320;   // T used to recognize a_1 .. a_4
    prec_t final_prec = 900;       // Newton and the integral T_D
    prec_t jac_prec = 400;
    long stop_bits = 800;
    int max_iter = 40;
    bool refine = true;
    std::vector<int> order;        // empty: search all orderings
    mpz_class den_bound = mpz_class("1000000000000");
    bool verbose = false;
};

struct PipelineResult {
    std::vector<int> order;
    OrderSearch search;            // filled when the order was searched
    NeighborSelection selection;
    IsogenyPolynomial T;           // at select_prec
    mpz_class D;
    RecognizedPrefix prefix;       // a_1 .. a_4 from recognize_prec
    NewtonResult newton;
    std::vector<mpz_class> TD;     // x^17 .. x^0 of D^17 T(x / D)
    std::vector<double> TD_residual_log10;
    double max_residual_log10 = 0;
    size_t constant_digits = 0;
    double seconds[4] = {0, 0, 0, 0};   // select, recognize, newton, final
};

PipelineResult run_isogeny_pipeline(FieldRef const & K, NFElem const & d, std::vector<std::string> const & z_re,
                                    std::vector<std::string> const & z_im, PipelineOptions const & opt = {});

} // namespace g17
