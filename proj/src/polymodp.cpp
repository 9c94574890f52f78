#include "g17/polymodp.hpp"

#include <algorithm>
#include <stdexcept>

namespace g17 {

bool is_prime_u64(uint64_t n)
{
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

uint64_t ModP::inv(uint64_t a) const
{
    int64_t t = 0, nt = 1, r = (int64_t)p, nr = (int64_t)(a % p);
    if (!nr) throw std::domain_error("inverse of zero mod p");
    while (nr) {
        int64_t q = r / nr;
        int64_t x = t - q * nt; t = nt; nt = x;
        x = r - q * nr; r = nr; nr = x;
    }
    if (r != 1) throw std::domain_error("not invertible mod p");
    return (uint64_t)(t < 0 ? t + (int64_t)p : t);
}

void ModP::trim(PolyP & a) const
{
    while (!a.empty() && a.back() == 0) a.pop_back();
}

PolyP ModP::reduce(std::vector<mpz_class> const & f) const
{
    PolyP r(f.size());
    mpz_class pp((unsigned long)p);
    for (size_t i = 0; i < f.size(); ++i) {
        mpz_class t;
        mpz_fdiv_r(t.get_mpz_t(), f[i].get_mpz_t(), pp.get_mpz_t());
        r[i] = t.get_ui();
    }
    trim(r);
    return r;
}

PolyP ModP::mul(PolyP const & a, PolyP const & b) const
{
    if (a.empty() || b.empty()) return {};
    PolyP r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
    trim(r);
    return r;
}

PolyP ModP::sub(PolyP const & a, PolyP const & b) const
{
    PolyP r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) {
        uint64_t x = i < a.size() ? a[i] : 0, y = i < b.size() ? b[i] : 0;
        r[i] = (x + p - y) % p;
    }
    trim(r);
    return r;
}

PolyP ModP::rem(PolyP a, PolyP const & m) const
{
    trim(a);
    if (m.empty()) throw std::domain_error("division by zero polynomial");
    uint64_t il = inv(m.back());
    size_t n = m.size() - 1;
    while (a.size() > n) {
        uint64_t c = a.back() * il % p;
        size_t sh = a.size() - 1 - n;
        for (size_t i = 0; i <= n; ++i) a[sh + i] = (a[sh + i] + (p - c) * m[i]) % p;
        trim(a);
    }
    return a;
}

PolyP ModP::powmod(PolyP const & a, mpz_class n, PolyP const & m) const
{
    PolyP r = rem({1}, m), b = rem(a, m);
    size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
    for (size_t i = bits; i-- > 0;) {
        r = mulmod(r, r, m);
        if (mpz_tstbit(n.get_mpz_t(), i)) r = mulmod(r, b, m);
    }
    return r;
}

PolyP ModP::gcd(PolyP a, PolyP b) const
{
    trim(a);
    trim(b);
    while (!b.empty()) {
        a = rem(a, b);
        std::swap(a, b);
    }
    return monic(a);
}

PolyP ModP::monic(PolyP a) const
{
    trim(a);
    if (a.empty()) return a;
    uint64_t il = inv(a.back());
    for (auto & c : a) c = c * il % p;
    return a;
}

PolyP ModP::derivative(PolyP const & a) const
{
    PolyP r;
    for (size_t i = 1; i < a.size(); ++i) r.push_back(a[i] * (i % p) % p);
    trim(r);
    return r;
}

PolyP ModP::divexact(PolyP a, PolyP const & b) const
{
    trim(a);
    if (b.empty()) throw std::domain_error("division by zero polynomial");
    if (a.size() < b.size()) return {};
    uint64_t il = inv(b.back());
    size_t n = b.size() - 1;
    PolyP q(a.size() - n, 0);
    while (a.size() > n) {
        uint64_t c = a.back() * il % p;
        size_t sh = a.size() - 1 - n;
        q[sh] = c;
        for (size_t i = 0; i <= n; ++i) a[sh + i] = (a[sh + i] + (p - c) * b[i]) % p;
        trim(a);
    }
    trim(q);
    return q;
}

bool ModP::squarefree(PolyP const & f) const
{
    PolyP d = derivative(f);
    if (d.empty()) return false;
    return gcd(f, d).size() == 1;
}

std::vector<int> ModP::ddf_degrees(PolyP f) const
{
    f = monic(f);
    if (f.size() < 2) throw std::invalid_argument("ddf of a constant");
    std::vector<int> out;
    PolyP x = {0, 1};
    PolyP h = rem(x, f);
    for (int i = 1; 2 * i <= (int)f.size() - 1; ++i) {
        h = powmod(h, mpz_class((unsigned long)p), f);
        PolyP g = gcd(f, sub(h, x));
        int deg = (int)g.size() - 1;
        if (deg > 0) {
            for (int k = 0; k < deg / i; ++k) out.push_back(i);
            f = divexact(f, g);
            h = rem(h, f);
        }
    }
    if (f.size() > 1) out.push_back((int)f.size() - 1);
    std::sort(out.rbegin(), out.rend());
    return out;
}

} // namespace g17
