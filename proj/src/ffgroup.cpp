#include "g17/ffgroup.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace g17 {

namespace {

using UPoly = std::vector<unsigned>;   // over F_l, low to high

void trim(UPoly & a)
{
    while (!a.empty() && a.back() == 0) a.pop_back();
}

UPoly pmulmod(UPoly const & a, UPoly const & b, UPoly const & m, unsigned l)
{
    if (a.empty() || b.empty()) return {};
    UPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % l;
    size_t n = m.size() - 1;   // m monic
    for (size_t k = r.size(); k-- > n;) {
        unsigned c = r[k];
        if (!c) continue;
        for (size_t i = 0; i <= n; ++i) r[k - n + i] = (r[k - n + i] + (l - c) * m[i]) % l;
    }
    r.resize(std::min(r.size(), n));
    trim(r);
    return r;
}

UPoly pgcd(UPoly a, UPoly b, unsigned l)
{
    trim(a);
    trim(b);
    auto inv = [l](unsigned x) {
        for (unsigned y = 1; y < l; ++y)
            if (x * y % l == 1) return y;
        return 0u;
    };
    while (!b.empty()) {
        unsigned ib = inv(b.back());
        while (a.size() >= b.size()) {
            unsigned c = a.back() * ib % l;
            size_t sh = a.size() - b.size();
            for (size_t i = 0; i < b.size(); ++i) a[sh + i] = (a[sh + i] + (l - c) * b[i]) % l;
            trim(a);
            if (a.empty()) break;
        }
        std::swap(a, b);
    }
    return a;
}

// x^(l^k) mod m
UPoly xpow_frob(UPoly const & m, unsigned l, unsigned k)
{
    UPoly x = {0, 1};
    for (unsigned t = 0; t < k; ++t) {
        UPoly r = {1}, b = x;
        for (unsigned e = l; e; e >>= 1) {
            if (e & 1) r = pmulmod(r, b, m, l);
            b = pmulmod(b, b, m, l);
        }
        x = r;
    }
    return x;
}

bool is_prime_small(unsigned n)
{
    if (n < 2) return false;
    for (unsigned d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Rabin irreducibility test
bool irreducible(UPoly const & m, unsigned l)
{
    unsigned e = m.size() - 1;
    UPoly xm = pmulmod({0, 1}, {1}, m, l);    // x reduced mod m
    auto minus_x = [&](UPoly y) {
        y.resize(std::max(y.size(), xm.size()), 0);
        for (size_t i = 0; i < xm.size(); ++i) y[i] = (y[i] + l - xm[i]) % l;
        trim(y);
        return y;
    };
    if (!minus_x(xpow_frob(m, l, e)).empty()) return false;
    for (unsigned r = 2; r <= e; ++r) {
        if (e % r || !is_prime_small(r)) continue;
        UPoly g = pgcd(m, minus_x(xpow_frob(m, l, e / r)), l);
        if (g.size() != 1) return false;
    }
    return true;
}

} // namespace

FiniteField::FiniteField(unsigned l_, std::vector<unsigned> dp) : l(l_), defpoly(std::move(dp))
{
    if (!is_prime_small(l)) throw std::invalid_argument("characteristic must be prime");
    if (defpoly.size() < 2 || defpoly.back() != 1) throw std::invalid_argument("defining polynomial must be monic of degree >= 1");
    for (auto & c : defpoly) c %= l;
    e = defpoly.size() - 1;
    uint64_t qq = ipow(l, e);
    if (qq > 65536) throw std::invalid_argument("field too large");
    q = (unsigned)qq;
    if (!irreducible(defpoly, l)) throw std::invalid_argument("defining polynomial is reducible");
    exp_.assign(q, 0);
    log_.assign(q, -1);
    for (unsigned c = 1; c < q && !gen_; ++c) {
        std::fill(log_.begin(), log_.end(), -1);
        unsigned x = 1, n = 0;
        for (; n < q - 1 && log_[x] == -1; ++n) {
            log_[x] = (int)n;
            exp_[n] = x;
            x = mul_slow(x, c);
        }
        if (n == q - 1 && x == 1) gen_ = c;
    }
    if (!gen_) throw std::logic_error("no primitive element found");
}

std::shared_ptr<const FiniteField> FiniteField::make(unsigned l, unsigned e)
{
    uint64_t q = ipow(l, e);
    // enumerate monic polynomials of degree e; prefer x primitive
    for (uint64_t code = 0; code < q; ++code) {
        std::vector<unsigned> dp(e + 1);
        uint64_t t = code;
        for (unsigned i = 0; i < e; ++i) { dp[i] = t % l; t /= l; }
        dp[e] = 1;
        if (e > 1 && dp[0] == 0) continue;
        if (!irreducible(dp, l)) continue;
        auto K = std::make_shared<const FiniteField>(l, dp);
        if (e == 1 || K->order(l) == K->q - 1) return K;
    }
    throw std::logic_error("no defining polynomial");
}

std::shared_ptr<const FiniteField> FiniteField::f16()
{
    static auto K = std::make_shared<const FiniteField>(2u, std::vector<unsigned>{1, 1, 0, 0, 1});
    return K;
}

unsigned FiniteField::add(unsigned a, unsigned b) const
{
    if (l == 2) return a ^ b;
    unsigned r = 0, m = 1;
    while (a || b) {
        r += ((a % l + b % l) % l) * m;
        a /= l;
        b /= l;
        m *= l;
    }
    return r;
}

unsigned FiniteField::neg(unsigned a) const
{
    if (l == 2) return a;
    unsigned r = 0, m = 1;
    while (a) {
        r += ((l - a % l) % l) * m;
        a /= l;
        m *= l;
    }
    return r;
}

unsigned FiniteField::mul_slow(unsigned a, unsigned b) const
{
    UPoly pa, pb;
    for (unsigned i = 0; i < e; ++i) { pa.push_back(a % l); a /= l; pb.push_back(b % l); b /= l; }
    trim(pa);
    trim(pb);
    UPoly r = pmulmod(pa, pb, defpoly, l);
    unsigned v = 0;
    for (size_t i = r.size(); i-- > 0;) v = v * l + r[i];
    return v;
}

unsigned FiniteField::mul(unsigned a, unsigned b) const
{
    if (!a || !b) return 0;
    unsigned s = (unsigned)(log_[a] + log_[b]);
    if (s >= q - 1) s -= q - 1;
    return exp_[s];
}

unsigned FiniteField::inv(unsigned a) const
{
    if (!a) throw std::domain_error("inverse of zero in finite field");
    return exp_[(q - 1 - (unsigned)log_[a]) % (q - 1)];
}

unsigned FiniteField::pow(unsigned a, uint64_t n) const
{
    if (n == 0) return 1;
    if (!a) return 0;
    return exp_[(uint64_t)log_[a] * (n % (q - 1)) % (q - 1)];
}

unsigned FiniteField::from_int(long n) const
{
    long r = n % (long)l;
    if (r < 0) r += l;
    return (unsigned)r;
}

unsigned FiniteField::order(unsigned a) const
{
    if (!a) throw std::domain_error("order of zero");
    unsigned n = q - 1;
    unsigned lg = (unsigned)log_[a];
    return n / std::gcd(n, lg);
}

unsigned FiniteField::eval_prime_poly(std::vector<long> const & c, unsigned a) const
{
    unsigned r = 0;
    for (size_t i = c.size(); i-- > 0;) r = add(mul(r, a), from_int(c[i]));
    return r;
}

// ---- 2x2 matrices

Mat2 mat_mul(FiniteField const & K, Mat2 const & x, Mat2 const & y)
{
    return {K.add(K.mul(x.a, y.a), K.mul(x.b, y.c)), K.add(K.mul(x.a, y.b), K.mul(x.b, y.d)),
            K.add(K.mul(x.c, y.a), K.mul(x.d, y.c)), K.add(K.mul(x.c, y.b), K.mul(x.d, y.d))};
}

unsigned mat_det(FiniteField const & K, Mat2 const & x) { return K.sub(K.mul(x.a, x.d), K.mul(x.b, x.c)); }
unsigned mat_trace(FiniteField const & K, Mat2 const & x) { return K.add(x.a, x.d); }
Mat2 mat_identity() { return {1, 0, 0, 1}; }

Mat2 mat_scale(FiniteField const & K, unsigned s, Mat2 const & x)
{
    return {K.mul(s, x.a), K.mul(s, x.b), K.mul(s, x.c), K.mul(s, x.d)};
}

Mat2 mat_inv(FiniteField const & K, Mat2 const & x)
{
    unsigned dt = mat_det(K, x);
    if (!dt) throw std::domain_error("singular matrix");
    unsigned i = K.inv(dt);
    return {K.mul(i, x.d), K.mul(i, K.neg(x.b)), K.mul(i, K.neg(x.c)), K.mul(i, x.a)};
}

unsigned u_invariant(FiniteField const & K, Mat2 const & g)
{
    unsigned dt = mat_det(K, g);
    if (!dt) throw std::domain_error("u-invariant of a singular matrix");
    unsigned t = mat_trace(K, g);
    return K.div(K.mul(t, t), dt);
}

unsigned projective_order(FiniteField const & K, Mat2 const & g)
{
    Mat2 x = g;
    for (unsigned n = 1; n <= 2 * K.q * K.q; ++n) {
        if (x.b == 0 && x.c == 0 && x.a == x.d) return n;
        x = mat_mul(K, x, g);
    }
    throw std::logic_error("projective order not found");
}

// ---- projective line

ProjPoint proj_normalize(FiniteField const & K, unsigned x, unsigned y)
{
    if (y) return {K.div(x, y), 1};
    if (!x) throw std::domain_error("(0:0) is not a projective point");
    return {1, 0};
}

unsigned proj_index(FiniteField const & K, ProjPoint const & P) { return P.y ? P.x : K.q; }

ProjPoint proj_point(FiniteField const & K, unsigned idx)
{
    if (idx > K.q) throw std::out_of_range("projective point index");
    return idx == K.q ? ProjPoint{1, 0} : ProjPoint{idx, 1};
}

ProjPoint pgammal_action(FiniteField const & K, Mat2 const & g, unsigned frob_power, ProjPoint const & P)
{
    if (frob_power >= K.e) throw std::invalid_argument("frobenius power out of range");
    if (!mat_det(K, g)) throw std::domain_error("singular matrix");
    unsigned sx = K.frob(P.x, frob_power), sy = K.frob(P.y, frob_power);
    return proj_normalize(K, K.add(K.mul(g.a, sx), K.mul(g.b, sy)), K.add(K.mul(g.c, sx), K.mul(g.d, sy)));
}

// ---- permutations

Perm perm_compose(Perm const & p, Perm const & q)
{
    Perm r(q.size());
    for (size_t i = 0; i < q.size(); ++i) r[i] = p[q[i]];
    return r;
}

Perm perm_inverse(Perm const & p)
{
    Perm r(p.size());
    for (size_t i = 0; i < p.size(); ++i) r[p[i]] = (uint8_t)i;
    return r;
}

std::vector<int> cycle_type(Perm const & p)
{
    std::vector<int> c;
    std::vector<bool> seen(p.size(), false);
    for (size_t i = 0; i < p.size(); ++i) {
        if (seen[i]) continue;
        int len = 0;
        for (size_t j = i; !seen[j]; j = p[j]) { seen[j] = true; ++len; }
        c.push_back(len);
    }
    std::sort(c.rbegin(), c.rend());
    return c;
}

namespace {

Perm identity_perm(unsigned n)
{
    Perm e(n);
    std::iota(e.begin(), e.end(), 0);
    return e;
}

std::set<Perm> perm_closure(unsigned n, std::vector<Perm> const & gens, size_t cap)
{
    std::set<Perm> s;
    std::deque<Perm> todo;
    Perm e = identity_perm(n);
    s.insert(e);
    todo.push_back(e);
    while (!todo.empty()) {
        Perm x = todo.front();
        todo.pop_front();
        for (auto const & g : gens) {
            Perm y = perm_compose(g, x);
            if (s.insert(y).second) {
                if (s.size() > cap) throw std::length_error("permutation group exceeds the enumeration cap");
                todo.push_back(std::move(y));
            }
        }
    }
    return s;
}

} // namespace

PermGroup::PermGroup(unsigned degree, std::vector<Perm> gens, size_t cap) : n_(degree), gens_(std::move(gens))
{
    if (degree > 255) throw std::invalid_argument("degree too large");
    for (auto const & g : gens_) {
        if (g.size() != degree) throw std::invalid_argument("generator of wrong degree");
        Perm s = g;
        std::sort(s.begin(), s.end());
        if (s != identity_perm(degree)) throw std::invalid_argument("generator is not a permutation");
    }
    elems_ = perm_closure(degree, gens_, cap);
}

PermGroup PermGroup::from_elements(unsigned degree, std::set<Perm> elems)
{
    std::vector<Perm> g(elems.begin(), elems.end());
    PermGroup G(degree, {});
    G.gens_ = std::move(g);
    G.elems_ = std::move(elems);
    return G;
}

bool PermGroup::is_transitive() const
{
    std::vector<bool> seen(n_, false);
    std::vector<unsigned> st = {0};
    seen[0] = true;
    size_t cnt = 1;
    while (!st.empty()) {
        unsigned x = st.back();
        st.pop_back();
        for (auto const & g : gens_)
            if (!seen[g[x]]) { seen[g[x]] = true; ++cnt; st.push_back(g[x]); }
    }
    return cnt == n_;
}

size_t PermGroup::stabilizer_order(unsigned pt) const
{
    size_t c = 0;
    for (auto const & x : elems_)
        if (x[pt] == pt) ++c;
    return c;
}

bool PermGroup::is_normal_subgroup_of(PermGroup const & G) const
{
    for (auto const & h : elems_)
        if (!G.contains(h)) return false;
    for (auto const & g : G.gens_) {
        Perm gi = perm_inverse(g);
        for (auto const & h : gens_)
            if (!contains(perm_compose(g, perm_compose(h, gi)))) return false;
    }
    return true;
}

PermGroup PermGroup::normal_closure(std::vector<Perm> const & xs) const
{
    std::vector<Perm> gens = xs;
    for (;;) {
        PermGroup H(n_, gens);
        bool grew = false;
        for (auto const & g : gens_) {
            Perm gi = perm_inverse(g);
            for (auto const & h : std::vector<Perm>(H.gens_)) {
                Perm c = perm_compose(g, perm_compose(h, gi));
                if (!H.contains(c)) { gens.push_back(c); grew = true; break; }
            }
            if (grew) break;
        }
        if (!grew) return H;
    }
}

PermGroup PermGroup::derived_subgroup() const
{
    std::vector<Perm> comms;
    for (auto const & a : gens_)
        for (auto const & b : gens_) {
            Perm c = perm_compose(perm_compose(perm_inverse(a), perm_inverse(b)), perm_compose(a, b));
            if (c != identity_perm(n_)) comms.push_back(c);
        }
    if (comms.empty()) return PermGroup(n_, {});
    return normal_closure(comms);
}

bool PermGroup::is_simple() const
{
    if (order() == 1) return false;
    // conjugacy class representatives via orbits under conjugation by generators
    std::set<Perm> left = elems_;
    left.erase(identity_perm(n_));
    while (!left.empty()) {
        Perm x = *left.begin();
        std::vector<Perm> st = {x};
        left.erase(x);
        while (!st.empty()) {
            Perm y = st.back();
            st.pop_back();
            for (auto const & g : gens_) {
                Perm z = perm_compose(g, perm_compose(y, perm_inverse(g)));
                if (left.erase(z)) st.push_back(z);
            }
        }
        if (normal_closure({x}).order() != order()) return false;
    }
    return true;
}

std::map<std::vector<int>, size_t> PermGroup::cycle_type_counts() const
{
    std::map<std::vector<int>, size_t> m;
    for (auto const & x : elems_) ++m[cycle_type(x)];
    return m;
}

std::set<std::vector<int>> PermGroup::cycle_type_set() const
{
    std::set<std::vector<int>> s;
    for (auto const & x : elems_) s.insert(cycle_type(x));
    return s;
}

// ---- 17T7

std::vector<Mat2> sl2_generators(FiniteField const & K)
{
    unsigned g = K.gen();
    return {{1, 1, 0, 1}, {g, 0, 0, K.inv(g)}, {0, K.neg(1), 1, 0}};
}

namespace {

Perm perm_of(FiniteField const & K, Mat2 const & g, unsigned fp)
{
    Perm p(K.q + 1);
    for (unsigned i = 0; i <= K.q; ++i) p[i] = (uint8_t)proj_index(K, pgammal_action(K, g, fp, proj_point(K, i)));
    return p;
}

} // namespace

PermGroup build_psl2_16()
{
    auto K = FiniteField::f16();
    std::vector<Perm> gens;
    for (auto const & m : sl2_generators(*K)) gens.push_back(perm_of(*K, m, 0));
    return PermGroup(K->q + 1, gens);
}

PermGroup build_17T7()
{
    auto K = FiniteField::f16();
    std::vector<Perm> gens;
    for (auto const & m : sl2_generators(*K)) gens.push_back(perm_of(*K, m, 0));
    gens.push_back(perm_of(*K, mat_identity(), 2));
    return PermGroup(K->q + 1, gens);
}

// ---- matrix groups and criteria

std::set<Mat2> mat_closure(FiniteField const & K, std::vector<Mat2> const & gens, size_t cap)
{
    std::set<Mat2> s;
    std::deque<Mat2> todo;
    s.insert(mat_identity());
    todo.push_back(mat_identity());
    while (!todo.empty()) {
        Mat2 x = todo.front();
        todo.pop_front();
        for (auto const & g : gens) {
            Mat2 y = mat_mul(K, g, x);
            if (s.insert(y).second) {
                if (s.size() > cap) throw std::length_error("matrix group exceeds the enumeration cap");
                todo.push_back(y);
            }
        }
    }
    return s;
}

namespace {

// number of distinct roots in k of x^2 - t x + d (0, 1 = repeated, 2)
int char_roots(FiniteField const & K, unsigned t, unsigned d)
{
    int n = 0;
    unsigned first = 0;
    bool have = false;
    for (unsigned x = 0; x < K.q; ++x)
        if (K.add(K.sub(K.mul(x, x), K.mul(t, x)), d) == 0) {
            if (!have) { first = x; have = true; ++n; }
            else if (x != first) ++n;
        }
    return n;
}

// smallest subfield degree containing a
unsigned subfield_degree(FiniteField const & K, unsigned a)
{
    for (unsigned d = 1; d <= K.e; ++d)
        if (K.e % d == 0 && K.frob(a, d) == a) return d;
    return K.e;
}

} // namespace

LargeImageReport large_image_check(FieldPtr Kp, std::vector<Mat2> const & elems)
{
    FiniteField const & K = *Kp;
    if (K.q < 7) throw std::invalid_argument("large_image_check needs #k >= 7");
    for (auto const & g : elems)
        if (!mat_det(K, g)) throw std::domain_error("singular matrix in generating set");
    LargeImageReport rep;
    std::set<Mat2> G = mat_closure(K, elems);
    for (auto const & g : G) {
        unsigned t = mat_trace(K, g), d = mat_det(K, g);
        int nr = char_roots(K, t, d);
        if (!rep.cond[0] && nr == 2) { rep.cond[0] = true; rep.witness[0] = g; }
        if (!rep.cond[1] && nr == 0) { rep.cond[1] = true; rep.witness[1] = g; }
        if (!rep.cond[2] && projective_order(K, g) > 5) { rep.cond[2] = true; rep.witness[2] = g; }
        if (!rep.cond[3] && subfield_degree(K, u_invariant(K, g)) == K.e) { rep.cond[3] = true; rep.witness[3] = g; }
    }
    rep.contains_sl2 = rep.cond[0] && rep.cond[1] && rep.cond[2] && rep.cond[3];
    return rep;
}

bool trace_lemma_check(std::set<unsigned> const & traces, unsigned q)
{
    if (q == 2 || q == 3 || q == 5)
        throw unsupported_field("trace lemma unsupported for #k = " + std::to_string(q) +
                                ": counterexamples C3 < SL2(F2), Q8 < SL2(F3), SL2(F3) < SL2(F5)");
    if (q < 4) throw unsupported_field("trace lemma needs #k >= 4");
    for (unsigned t : traces)
        if (t >= q) throw std::invalid_argument("trace value outside the field");
    return traces.size() == q;
}

namespace {

unsigned prime_power_base(unsigned q, unsigned & e)
{
    for (unsigned l = 2; l <= q; ++l)
        if (q % l == 0) {
            unsigned t = q;
            e = 0;
            while (t % l == 0) { t /= l; ++e; }
            if (t != 1) throw std::invalid_argument("q is not a prime power");
            return l;
        }
    throw std::invalid_argument("q is not a prime power");
}

} // namespace

SubgroupCensus sl2_subgroup_census(unsigned q)
{
    unsigned e = 0;
    unsigned l = prime_power_base(q, e);
    auto K = FiniteField::make(l, e);
    std::set<Mat2> S = mat_closure(*K, sl2_generators(*K));
    // elements indexed for bitset-like element sets
    std::vector<Mat2> el(S.begin(), S.end());
    std::map<Mat2, size_t> idx;
    for (size_t i = 0; i < el.size(); ++i) idx[el[i]] = i;
    using ESet = std::vector<bool>;
    auto close = [&](std::vector<Mat2> const & gens) {
        std::set<Mat2> c = mat_closure(*K, gens);
        ESet b(el.size(), false);
        for (auto const & m : c) b[idx.at(m)] = true;
        return b;
    };
    std::set<ESet> subs;
    std::vector<ESet> cyc;
    for (auto const & g : el) {
        ESet b = close({g});
        if (subs.insert(b).second) cyc.push_back(b);
    }
    // join closure: repeatedly join every known subgroup with every cyclic one
    std::vector<ESet> frontier(subs.begin(), subs.end());
    while (!frontier.empty()) {
        std::vector<ESet> next;
        for (auto const & H : frontier)
            for (auto const & C : cyc) {
                bool inside = true;
                for (size_t i = 0; i < el.size(); ++i)
                    if (C[i] && !H[i]) { inside = false; break; }
                if (inside) continue;
                std::vector<Mat2> gens;
                for (size_t i = 0; i < el.size(); ++i)
                    if (H[i] || C[i]) gens.push_back(el[i]);
                ESet J = close(gens);
                if (subs.insert(J).second) next.push_back(J);
            }
        frontier = std::move(next);
    }
    SubgroupCensus out;
    out.subgroups = subs.size();
    size_t whole_full = 0;
    for (auto const & H : subs) {
        std::set<unsigned> tr;
        size_t n = 0;
        for (size_t i = 0; i < el.size(); ++i)
            if (H[i]) { tr.insert(mat_trace(*K, el[i])); ++n; }
        if (tr.size() == q) {
            ++out.full_trace;
            if (n == el.size()) ++whole_full;
        }
    }
    out.only_whole_group = (out.full_trace == 1 && whole_full == 1);
    return out;
}

bool trace_lemma_bruteforce(unsigned q)
{
    if (q != 4) throw std::invalid_argument("brute force is provided for q = 4");
    SubgroupCensus c = sl2_subgroup_census(4);
    return c.only_whole_group;
}

} // namespace g17
