#include "g17/pipeline.hpp"

#include "json.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>

namespace g17 {

using json = nlohmann::json;

std::string default_moduli_point_path()
{
    if (char const * e = std::getenv("G17_DATA_DIR")) return std::string(e) + "/moduli_point_578.json";
    return std::string(G17_DATA_DIR) + "/moduli_point_578.json";
}

std::vector<BigComplex> ModuliPointFile::z(prec_t prec) const
{
    std::vector<BigComplex> out;
    for (size_t k = 0; k < z_im.size(); ++k) out.push_back(BigComplex(BigReal(z_re[k], prec), BigReal(z_im[k], prec)));
    return out;
}

namespace {
ModuliPointFile parse_moduli_point(std::string const & path);
}

ModuliPointFile load_moduli_point_file(std::string const & path)
{
    try {
        return parse_moduli_point(path);
    } catch (json::exception const & e) {
        throw data_error(path + ": " + e.what());
    }
}

namespace {

ModuliPointFile parse_moduli_point(std::string const & path)
{
    std::ifstream in(path);
    if (!in) throw data_error("cannot open " + path);
    json j = json::parse(in);
    ModuliPointFile m;
    m.form = j.value("form", "");
    m.sign = j.value("sign", "");
    ZPoly f;
    for (auto const & c : j.at("hecke_field")) f.push_back(mpz_class(c.get<long>()));
    m.K = NumberField::make(f);
    std::vector<mpq_class> dc;
    for (auto const & c : j.at("codifferent_generator")) dc.push_back(mpq_class(c.get<long>()));
    m.d = m.K->from_coeffs(dc);
    m.z_re = j.at("z_real").get<std::vector<std::string>>();
    m.z_im = j.at("z_imag").get<std::vector<std::string>>();
    if (m.z_re.size() != m.z_im.size() || (int)m.z_im.size() != m.K->degree())
        throw data_error(path + ": z has the wrong length");
    m.digits = j.value("digits", 0);
    if (j.contains("embedding_order")) m.order = j["embedding_order"].get<std::vector<int>>();
    if (j.contains("T_D_leading"))
        for (auto const & s : j["T_D_leading"]) m.TD_leading.push_back(mpz_class(s.get<std::string>()));
    m.TD_constant_digits = j.value("T_D_constant_digits", 0);
    m.TD_constant_prefix = j.value("T_D_constant_prefix", "");
    m.TD_constant_suffix = j.value("T_D_constant_suffix", "");
    if (j.contains("T_leading_approx"))
        for (auto const & s : j["T_leading_approx"]) m.T_leading_approx.push_back(std::stod(s.get<std::string>()));
    return m;
}

double since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<BigComplex> parse_z(std::vector<std::string> const & re, std::vector<std::string> const & im, prec_t p)
{
    std::vector<BigComplex> z;
    for (size_t k = 0; k < im.size(); ++k) z.push_back(BigComplex(BigReal(re[k], p), BigReal(im[k], p)));
    return z;
}

}

PipelineResult run_isogeny_pipeline(FieldRef const & K, NFElem const & d, std::vector<std::string> const & z_re,
                                    std::vector<std::string> const & z_im, PipelineOptions const & opt)
{
    PipelineResult R;
    auto log = [&](std::string const & s) {
        if (opt.verbose) std::cerr << s << std::endl;
    };
    auto t0 = std::chrono::steady_clock::now();
    prec_t p = opt.select_prec;
    auto z = parse_z(z_re, z_im, p);
    if (opt.order.empty()) {
        R.search = find_embedding_order(K, d, z, p);
        R.order = R.search.order;
    } else {
        R.order = opt.order;
    }
    RMFamily F{K, d, R.order};
    R.selection = select_neighbor(F, z, p);
    log("neighbor " + std::to_string(R.selection.index) + " log10 " +
        std::to_string(R.selection.log10_values[R.selection.index]) + ", runner-up " + std::to_string(R.selection.runner_up));
    auto nb = neighbors_2(F, z, p);
    R.T = isogeny_polynomial(F, nb[R.selection.index].z, p);
    auto q = recognize_rational(R.T.coeffs[1].re, opt.den_bound);
    if (!q) throw numeric_failure("x^16 coefficient is not recognizable as a rational");
    R.D = q->get_den();
    log("D = " + R.D.get_str());
    R.seconds[0] = since(t0);

    t0 = std::chrono::steady_clock::now();
    prec_t pr = opt.recognize_prec;
    auto zr = parse_z(z_re, z_im, pr);
    auto nbr = neighbors_2(F, zr, pr);
    auto Tr = isogeny_polynomial(F, nbr[R.selection.index].z, pr);
    R.prefix = normalize_and_recognize(Tr, R.D, 4);
    R.seconds[1] = since(t0);
    if (!opt.refine) return R;

    t0 = std::chrono::steady_clock::now();
    prec_t pf = opt.final_prec;
    auto zf = parse_z(z_re, z_im, pf);
    auto z0 = neighbors_2(F, zf, pf)[R.selection.index].z;
    std::vector<BigComplex> targets;
    mpz_class Di = 1;
    for (int i = 0; i < 4; ++i) {
        Di *= R.D;
        targets.push_back(BigComplex(BigReal(mpq_class(R.prefix.a[i], Di), pf)));
    }
    NewtonOptions no;
    no.max_iter = opt.max_iter;
    no.jac_prec = opt.jac_prec;
    no.reuse_jacobian = true;
    no.stop_bits = opt.stop_bits;
    no.verbose = opt.verbose;
    R.newton = newton_refine(F, z0, targets, pf, no);
    R.seconds[2] = since(t0);
    if (!R.newton.converged) throw numeric_failure("Newton refinement did not converge");

    t0 = std::chrono::steady_clock::now();
    auto sc = scaled_coefficients(R.newton.T, R.D);
    R.max_residual_log10 = -1e300;
    for (auto const & c : sc) {
        mpz_class r = c.round_to_mpz();
        BigReal e = abs(c - BigReal(r, c.prec()));
        double l = (e.is_zero() ? -(double)pf : (double)e.exponent()) * std::log10(2.0);
        R.TD.push_back(r);
        R.TD_residual_log10.push_back(l);
        R.max_residual_log10 = std::max(R.max_residual_log10, l);
    }
    mpz_class c0 = abs(R.TD.back());
    R.constant_digits = c0 == 0 ? 1 : c0.get_str().size();
    R.seconds[3] = since(t0);
    return R;
}

} // namespace g17
