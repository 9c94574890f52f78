#pragma once

#include "g17/linalg.hpp"
#include "g17/numfield.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace g17 {

struct non_integral_pairing : std::domain_error {
    using std::domain_error::domain_error;
};

// E_c on Z_K + Z_K with basis (nu^i, 0), (0, nu^j): [[0, T], [-T^T, 0]], T_ij = Tr(c nu^i nu^j)
ZMatrix pairing_gram(FieldRef const & K, NFElem const & c);

// exact U in GL_2g(Z) with U^T M U = J = [[0, I], [-I, 0]]; M alternating with det 1.
// The block form [[0, T], [-T^T, 0]] is kept: U = diag(I, T^-1) in that case.
ZMatrix symplectic_basis(ZMatrix const & M);
ZMatrix standard_J(int g);
bool is_alternating(ZMatrix const & M);

struct RMLattice {
    FieldRef K;
    std::vector<BigComplex> Ps, Pp;   // period vectors indexed by embedding slot
    std::vector<int> order;           // slot k uses ascending real root order[k]; empty = identity
    NFElem c;                         // pairing element (c = 1/d for a codifferent generator d)
};

struct SmallPeriodMatrix {
    CMatrix Z;
    double symmetry_defect = 0;
    double min_eig_im = 0;
    ZMatrix U;                        // symplectic change of basis used
    bool flipped = false;             // s-vector negated to land in the upper half space
};

// g x 2g matrix whose columns are the lattice basis images
CMatrix big_period_matrix(RMLattice const & L, prec_t prec);
// Z = P2^-1 P1 for Pi = Pi0 U = (P1 | P2)
SmallPeriodMatrix small_period_matrix(CMatrix const & Pi0, ZMatrix const & M, prec_t prec);
SmallPeriodMatrix small_period_matrix(RMLattice const & L, prec_t prec);

// the lattice of a moduli point z: Ps = z, Pp = 1, c = 1/d
RMLattice rm_lattice(FieldRef const & K, std::vector<BigComplex> const & z, NFElem const & d, std::vector<int> const & order);
// closed form of the above: Z = V^T diag(z/d) V with V[k][i] = tau_{order[k]}(nu)^i
CMatrix rm_period_matrix(FieldRef const & K, std::vector<BigComplex> const & z, NFElem const & d,
                         std::vector<int> const & order, prec_t prec);

// a point of the g-fold upper half space; sign is the L-value sign pattern it came from
struct ModuliPoint {
    std::vector<BigComplex> z;
    std::string sign;
};

// the quartic (or general) RM family: field, codifferent generator, embedding order
struct RMFamily {
    FieldRef K;
    NFElem d;
    std::vector<int> order;   // empty = ascending roots
    CMatrix period_matrix(std::vector<BigComplex> const & z, prec_t prec) const
    {
        return rm_period_matrix(K, z, d, order, prec);
    }
    int root_index(int k) const { return order.empty() ? k : order[k]; }
};

struct ReducedPeriodMatrix {
    CMatrix Z;
    ZMatrix T;   // Z' = T^T Z T + B
    ZMatrix B;
};
ReducedPeriodMatrix reduce_period_matrix(CMatrix const & Z);

} // namespace g17
