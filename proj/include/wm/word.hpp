#pragma once

#include <string>
#include <vector>

#include "wm/combinat.hpp"

namespace wm {

// Dimension N_i of each color (colors are 0-based).
using DimensionProfile = std::vector<long>;

// Letters of the 4-partite alphabet; colors A,B,C,D are 0,1,2,3.
enum class Letter { AB, AC };

std::vector<Letter> parse_letters(const std::string& s);  // "AB,AC,AB"
std::string letters_to_string(const std::vector<Letter>& f);

// A product of p marginals. Position a carries the (sorted) color subset I_a
// and a permutation sigma_a of {0..|I_a|-1} sending the b-th color of I_a to
// the sigma_a(b)-th color of I_{a+1}. Position 0 is the rightmost factor.
class MarginalWord {
public:
    MarginalWord(int n, std::vector<std::vector<int>> subsets, std::vector<Permutation> sigmas);

    static MarginalWord four_partite(const std::vector<Letter>& f);
    // W = X X^* with X of shape N x M: colors {N, M}, only N kept.
    static MarginalWord bipartite(int p);

    // Narrow the common-fixed / always-traced sets to the given subsets of
    // the natural ones; the remaining colors become moving.
    MarginalWord with_roles(std::vector<int> fixed, std::vector<int> traced) const;

    int n() const { return n_; }
    int p() const { return static_cast<int>(subsets_.size()); }
    int width() const { return width_; }
    int l() const { return static_cast<int>(fixed_.size()); }
    int k() const { return width_ - l(); }

    const std::vector<int>& subset(int a) const { return subsets_[static_cast<size_t>(a)]; }
    const Permutation& sigma(int a) const { return sigmas_[static_cast<size_t>(a)]; }
    const std::vector<std::vector<int>>& subsets() const { return subsets_; }
    const std::vector<Permutation>& sigmas() const { return sigmas_; }

    // Image in I_{a+1} of color c in I_a.
    int map_color(int a, int c) const;
    bool contains(int a, int c) const;

    const std::vector<int>& fixed_colors() const { return fixed_; }
    const std::vector<int>& moving_colors() const { return moving_; }
    const std::vector<int>& traced_colors() const { return traced_; }
    bool is_fixed(int c) const;
    bool is_moving(int c) const;
    bool is_traced(int c) const;
    // J_a: moving colors of I_a, sorted.
    std::vector<int> moving_part(int a) const;
    // Color carrying the N_J exponent: the smallest moving color, or -1.
    int representative_moving() const { return moving_.empty() ? -1 : moving_.front(); }

    // Throws DomainError unless dims has n positive entries, uniform on the
    // moving colors.
    void check_dims(const DimensionProfile& dims) const;

    // Sub-word on the given increasing positions; sigmas between kept
    // positions are composed.
    MarginalWord restrict_to(const std::vector<int>& positions) const;

    std::string to_string() const;

private:
    void classify();

    int n_ = 0;
    int width_ = 0;
    std::vector<std::vector<int>> subsets_;
    std::vector<Permutation> sigmas_;
    std::vector<int> fixed_, moving_, traced_;
};

// Word of permuted marginals W_{I_a, pi_a}; all |I_a| = n/2.
class PermutedMarginalWord {
public:
    PermutedMarginalWord(int n, std::vector<std::vector<int>> subsets, std::vector<Permutation> pis);

    int n() const { return n_; }
    int p() const { return static_cast<int>(subsets_.size()); }
    const std::vector<std::vector<int>>& subsets() const { return subsets_; }
    const std::vector<Permutation>& pis() const { return pis_; }

    // sigma_a = pi_{a+1}^{-1} pi_a
    MarginalWord to_marginal_word() const;
    SetPartition ker_f() const;
    SetPartition ker_pi() const;

private:
    int n_;
    std::vector<std::vector<int>> subsets_;
    std::vector<Permutation> pis_;
};

}  // namespace wm
