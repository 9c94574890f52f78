#pragma once

#include "g17/ffgroup.hpp"
#include "g17/numfield.hpp"

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace g17 {

using Partition = std::vector<int>;   // descending

// factor degrees of f mod p; nullopt when p divides the leading coefficient or f mod p is not squarefree
std::optional<Partition> degree_pattern_mod_p(ZPoly const & f, long p);

struct CycleCensus {
    ZPoly poly;
    std::vector<std::pair<long, Partition>> patterns;
    std::vector<long> excluded;
};
// patterns at the first nprimes admissible primes >= start
CycleCensus cycle_census(ZPoly const & f, int nprimes, long start = 2);

struct CensusReport {
    bool membership = true;                    // every observed pattern is a cycle type of G
    std::vector<std::pair<long, Partition>> violations;
    double coverage = 0;                       // observed cycle types / cycle types of G
    double max_frequency_deviation = 0;        // max |observed - |class|/|G|| over cycle types
    std::map<Partition, std::pair<double, double>> frequencies;   // (observed, expected)
    bool consistent = false;
};
CensusReport census_consistent(CycleCensus const & c, PermGroup const & G, int min_primes, double coverage_floor = 0.9);

struct FieldComparison {
    bool equal_patterns = true;
    int compared = 0;
    long first_difference = 0;   // 0 when none
};
// identical factorization patterns at every admissible prime among the first nprimes primes
FieldComparison fields_likely_equal(ZPoly const & f1, ZPoly const & f2, int nprimes);

struct BipartiteGraph {
    int left = 0, right = 0;
    std::vector<std::pair<int, int>> edges;   // (left vertex, right vertex)
};

struct ProjectionVerdict {
    bool left_injective = false;    // Aut -> Sym(left) injective
    bool right_injective = false;   // Aut -> Sym(right) injective
    std::optional<std::pair<int, int>> right_twins;   // witness against left_injective
    std::optional<std::pair<int, int>> left_twins;    // witness against right_injective
};
ProjectionVerdict bipartite_projection_injective(BipartiteGraph const & G);

ZPoly fx17_polynomial();

} // namespace g17
