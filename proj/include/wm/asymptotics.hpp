#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "wm/combinat.hpp"
#include "wm/maps.hpp"
#include "wm/word.hpp"

namespace wm {

// Exact polynomial in c and 1/m: sum of coeff * c^a * m^{-b}.
class LimitMoment {
public:
    using Key = std::pair<int, int>;  // (c_power, m_negpower)

    void add(int c_power, int m_negpower, const Rational& coeff);
    LimitMoment& operator+=(const LimitMoment& o);
    const std::map<Key, Rational>& terms() const { return terms_; }

    double evaluate(double c, double m = 1.0) const;
    Rational evaluate(const Rational& c, const Rational& m) const;
    // Keep only the m^0 terms (m -> infinity).
    LimitMoment drop_m() const;
    // Coefficients at m = 1, grouped by c power.
    LimitMoment at_m1() const;

    // "c^4 + 2c^3 + c^2 + 4c^3/m^2 + ..." (grouped by m power, then c power descending)
    std::string to_string() const;
    nlohmann::json to_json() const;
    static LimitMoment from_json(const nlohmann::json& j);

    bool operator==(const LimitMoment&) const = default;

private:
    std::map<Key, Rational> terms_;
};

LimitMoment mp_moment(int p);                 // sum over NC(p) of c^{#blocks}
double mp_moment(int p, double c);
double mp_atom(double c);                     // max(1-c, 0)
double mp_density(double x, double c);        // continuous part
double mp_squared_density(double x, double c);
// int x^p dMP_c (continuous part plus atom), by Gauss-Chebyshev quadrature
double mp_quadrature_moment(int p, double c, int nodes = 2000);
double mp_squared_quadrature_moment(int p, double c, int nodes = 2000);

// Balanced 4-partite regime: sum over NC(p) below ker f of c^{#alpha}.
LimitMoment limit_moment_balanced4(const std::vector<Letter>& f);
// Same count over planar maps of M_p with Delta_f = 0.
LimitMoment limit_moment_balanced4_maps(const std::vector<Letter>& f);
SetPartition ker_f(const std::vector<Letter>& f);

// Word W_AB^{r_q} W_AC^{s_q} ... W_AB^{r_1} W_AC^{s_1}, position 0 rightmost.
std::vector<Letter> word_from_powers(const std::vector<int>& r, const std::vector<int>& s);
BigInt limit_moment_prop35(const std::vector<int>& r, const std::vector<int>& s);
// Same quantity from the two recursions on labelled trees (peel one letter off
// the last block), memoized.
BigInt tree_count_recursive(const std::vector<int>& u, const std::vector<int>& d);
// Number of pairs sigma <= pi in NC(q).
BigInt nc_two_chains(int q);

// Unbalanced 4-partite regime.
LimitMoment limit_moment_unbalanced4(const std::vector<Letter>& f);
// kappa(f) = c m^{-alt(f, gamma)}
LimitMoment free_cumulant_unbalanced4(const std::vector<Letter>& f);
// Moment-cumulant expansion of free_cumulant_unbalanced4 over NC(p).
LimitMoment moments_from_cumulants4(const std::vector<Letter>& f);

// Balanced permuted-marginal regime with N_i = c_i N: sum over NC(p) below
// ker f ^ ker pi of prod_i c_i^{exponent_i}.
Rational limit_moment_balanced_general(const PermutedMarginalWord& word, const std::vector<Rational>& c);
// Same, as the count over S_p of maps with tilde L = 0.
Rational limit_moment_balanced_general_maps(const PermutedMarginalWord& word, const std::vector<Rational>& c);

struct MuResult {
    int mu;
    std::vector<Permutation> minimizers;
    int slope;  // 2k + 2l - n
};
// mu = min over S_p of 2 l g + tilde L + (2k+2l-n)(V-2)
MuResult regime_exponent_mu(const MarginalWord& word);

// Unbalanced general regime (#traced == l). Normalized by N^{l(p+1)} m^{k(p+1)}
// when V_black == k; otherwise only N^{l(p+1)} is divided out.
LimitMoment limit_moment_unbalanced_general(const MarginalWord& word);

// Completion of sigma_a to a permutation of the moving colors.
Permutation phi_completion(const MarginalWord& word, int a);
int phi_inversions(const MarginalWord& word, int a);
// Transposition length |Phi(sigma_a)|; the two counts differ on (B D).
int phi_length(const MarginalWord& word, int a);
// Sum of phi_length over the positions.
int phi_sum(const MarginalWord& word);

}  // namespace wm
