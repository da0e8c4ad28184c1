#pragma once

#include <string>
#include <vector>

#include "hilbchow/constructions.hpp"

namespace hilbchow {

// Betti numbers b_0..b_{2s} of a surface (s = 2): only even entries may be
// nonzero for the inputs supported here.
using BettiVector = std::vector<long>;

// Coefficient of q^n in prod_{m>=1} prod_{i=0..4} (1 - z^{2m-2+i} q^m)^{-(-1)^i b_i},
// reindexed from cohomological degree 2k to Chow degree k. Exact integers.
RankTable goettsche_betti(const BettiVector& b, int n);

// Ranks of the S_n-invariants of A*(X)^{(x)n}; the Chow ranks of Sym^n X.
RankTable sym_ranks(const VarietyData& x, int n);

// Built-in varieties: pt, P1, P2, P3, P1xP1. All pass validate_variety.
VarietyData builtin(const std::string& name);
std::vector<std::string> builtin_names();

// Torus fixed points of Hilb^n(P2): triples of partitions with total size n.
long hilb_p2_fixed_points(int n);

// Torus fixed points of the nested Hilbert scheme Hilb^{[m,m+1]}(P2):
// chartwise nested partition pairs.
long nested_hilb_p2_fixed_points(int m);

long partition_count(int n);

}  // namespace hilbchow
