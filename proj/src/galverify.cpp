#include "g17/galverify.hpp"
#include "g17/polymodp.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace g17 {

std::optional<Partition> degree_pattern_mod_p(ZPoly const & f, long p)
{
    if (p < 2 || !is_prime_u64((uint64_t)p)) throw std::invalid_argument("degree_pattern_mod_p: p must be prime");
    if (f.size() < 2) throw std::invalid_argument("degree_pattern_mod_p: constant polynomial");
    ModP m((uint64_t)p);
    if (f.back() % p == 0) return std::nullopt;
    PolyP fp = m.reduce(f);
    if (!m.squarefree(fp)) return std::nullopt;
    return m.ddf_degrees(fp);
}

CycleCensus cycle_census(ZPoly const & f, int nprimes, long start)
{
    CycleCensus c;
    c.poly = f;
    for (long p = std::max(2L, start); (int)c.patterns.size() < nprimes; ++p) {
        if (!is_prime_u64((uint64_t)p)) continue;
        auto pat = degree_pattern_mod_p(f, p);
        if (pat)
            c.patterns.push_back({p, *pat});
        else
            c.excluded.push_back(p);
    }
    return c;
}

CensusReport census_consistent(CycleCensus const & c, PermGroup const & G, int min_primes, double coverage_floor)
{
    if ((int)c.patterns.size() < min_primes) throw std::invalid_argument("census_consistent: too few primes");
    CensusReport r;
    auto counts = G.cycle_type_counts();
    std::map<Partition, size_t> seen;
    for (auto const & [p, pat] : c.patterns) {
        if (!counts.count(pat)) {
            r.membership = false;
            r.violations.push_back({p, pat});
        }
        ++seen[pat];
    }
    size_t hit = 0;
    double n = (double)c.patterns.size();
    for (auto const & [pat, cnt] : counts) {
        double expect = (double)cnt / (double)G.order();
        double obs = seen.count(pat) ? seen[pat] / n : 0.0;
        if (seen.count(pat)) ++hit;
        r.frequencies[pat] = {obs, expect};
        r.max_frequency_deviation = std::max(r.max_frequency_deviation, std::fabs(obs - expect));
    }
    for (auto const & [pat, cnt] : seen)
        if (!counts.count(pat)) {
            r.frequencies[pat] = {cnt / n, 0.0};
            r.max_frequency_deviation = std::max(r.max_frequency_deviation, cnt / n);
        }
    r.coverage = (double)hit / (double)counts.size();
    r.consistent = r.membership && r.coverage >= coverage_floor;
    return r;
}

FieldComparison fields_likely_equal(ZPoly const & f1, ZPoly const & f2, int nprimes)
{
    if (f1.size() != f2.size()) throw std::invalid_argument("fields_likely_equal: degree mismatch");
    FieldComparison r;
    int tried = 0;
    for (long p = 2; tried < nprimes; ++p) {
        if (!is_prime_u64((uint64_t)p)) continue;
        ++tried;
        auto a = degree_pattern_mod_p(f1, p), b = degree_pattern_mod_p(f2, p);
        if (!a || !b) continue;
        ++r.compared;
        if (*a != *b) {
            r.equal_patterns = false;
            r.first_difference = p;
            break;
        }
    }
    return r;
}

namespace {

std::optional<std::pair<int, int>> twins(int n, std::vector<std::set<int>> const & nbhd)
{
    std::map<std::set<int>, int> first;
    for (int v = 0; v < n; ++v) {
        auto [it, fresh] = first.emplace(nbhd[v], v);
        if (!fresh) return std::make_pair(it->second, v);
    }
    return std::nullopt;
}

} // namespace

ProjectionVerdict bipartite_projection_injective(BipartiteGraph const & G)
{
    std::vector<std::set<int>> L(G.left), R(G.right);
    for (auto [a, b] : G.edges) {
        if (a < 0 || a >= G.left || b < 0 || b >= G.right)
            throw std::out_of_range("bipartite_projection_injective: edge out of range");
        L[a].insert(b);
        R[b].insert(a);
    }
    ProjectionVerdict v;
    // an automorphism fixing the left side can only swap right vertices with equal neighborhoods
    v.right_twins = twins(G.right, R);
    v.left_twins = twins(G.left, L);
    v.left_injective = !v.right_twins;
    v.right_injective = !v.left_twins;
    return v;
}

ZPoly fx17_polynomial()
{
    // low to high
    return {-490, -1013, -496, -1376, 80, 2146, -604, 2024, -886, 705, -500, 200, -160, 60, -28, 12, -2, 1};
}

} // namespace g17
