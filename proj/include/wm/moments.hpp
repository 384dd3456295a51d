#pragma once

#include <utility>
#include <vector>

#include "wm/combinat.hpp"
#include "wm/maps.hpp"
#include "wm/polynomial.hpp"
#include "wm/word.hpp"

namespace wm {

inline constexpr int kOracleCap = 6;

// Cycle count of hat-gamma_f hat-alpha on the 2p points (a,B),(a,C).
int L_exponent_4partite(const std::vector<Letter>& f, const Permutation& alpha);
int alt(const std::vector<Letter>& f, const Permutation& alpha);

// Exponent of N_J, from the unfolded map.
int L_exponent(const MarginalWord& word, const Permutation& alpha);
int tilde_L(const MarginalWord& word, const Permutation& alpha);
// Exponent vector over the n colors contributed by alpha; N_J goes to the
// representative moving color.
std::vector<int> moment_exponents(const MarginalWord& word, const Permutation& alpha);

MomentPolynomial exact_moment(const MarginalWord& word);
// Validates dims (uniform on moving colors) and evaluates.
BigInt exact_moment_value(const MarginalWord& word, const DimensionProfile& dims);

// Closed form in N_A, N_{B,C}, N_D.
MomentPolynomial exact_moment_4partite(const std::vector<Letter>& f);
// Sum over S_p of N^{#(gamma alpha)} M^{#alpha}.
MomentPolynomial exact_moment_bipartite(int p);

// Normalized moments N^{-(4p+2)} E Tr P^p and N^{-(2p+1)} E Tr Q^p.
std::pair<LaurentPolynomial, LaurentPolynomial> exact_moment_P_and_Q(int p);

// Brute-force Wick expansion: for each alpha, wire the 2p tensor boxes and
// count loops with a union-find. Loops through several colors are charged to
// the smallest color that ever shares a loop with another color.
MomentPolynomial wick_oracle_moment(const MarginalWord& word);
// Same wiring, evaluated at concrete dims; every loop must see one dimension.
BigInt wick_oracle_value(const MarginalWord& word, const DimensionProfile& dims);

}  // namespace wm
