#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "wm/errors.hpp"

namespace wm {

using BigInt = mpz_class;
using Rational = mpq_class;

inline constexpr int kPermutationCap = 8;
inline constexpr int kPartitionCap = 12;

// One-line permutation of {0..p-1}; images()[i] is where i goes.
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::vector<int> images);

    static Permutation identity(int p);
    // gamma: i -> i+1 mod p
    static Permutation full_cycle(int p);
    static Permutation from_cycles(int p, const std::vector<std::vector<int>>& cycles);

    int size() const { return static_cast<int>(img_.size()); }
    int operator()(int i) const { return img_[static_cast<size_t>(i)]; }
    const std::vector<int>& images() const { return img_; }

    Permutation inverse() const;
    // (a * b)(i) = a(b(i))
    Permutation operator*(const Permutation& other) const;
    Permutation pow(int k) const;

    std::vector<std::vector<int>> cycles() const;
    bool is_identity() const;
    std::string to_string() const;  // cycle notation, fixed points omitted

    bool operator==(const Permutation&) const = default;
    auto operator<=>(const Permutation&) const = default;

private:
    std::vector<int> img_;
};

int cycle_count(const Permutation& p);
int length(const Permutation& p);
// |alpha| + |alpha^-1 gamma^-1| == p-1, i.e. (gamma, alpha) is a planar map.
bool is_geodesic(const Permutation& alpha);
bool is_geodesic(const Permutation& alpha, int p);

// Lexicographic enumeration of S_p; p <= kPermutationCap.
std::vector<Permutation> all_permutations(int p);
void for_each_permutation(int p, const std::function<void(const Permutation&)>& f);
std::uint64_t factorial(int n);

class SetPartition {
public:
    SetPartition() = default;
    SetPartition(int p, std::vector<std::vector<int>> blocks);
    // Partition of positions by equal label.
    template <class T>
    static SetPartition kernel_of(const std::vector<T>& labels) {
        std::vector<int> lab(labels.size());
        for (size_t i = 0; i < labels.size(); ++i) {
            lab[i] = static_cast<int>(i);
            for (size_t j = 0; j < i; ++j)
                if (labels[j] == labels[i]) { lab[i] = lab[j]; break; }
        }
        return from_labels(lab);
    }
    static SetPartition from_labels(const std::vector<int>& labels);
    static SetPartition discrete(int p);
    static SetPartition full(int p);

    int size() const { return static_cast<int>(label_.size()); }
    int block_count() const { return static_cast<int>(blocks_.size()); }
    const std::vector<std::vector<int>>& blocks() const { return blocks_; }
    // block index of element i; blocks are ordered by their minimum
    int block_of(int i) const { return label_[static_cast<size_t>(i)]; }
    const std::vector<int>& labels() const { return label_; }

    bool is_noncrossing() const;
    SetPartition meet(const SetPartition& other) const;
    std::string to_string() const;

    bool operator==(const SetPartition&) const = default;
    auto operator<=>(const SetPartition&) const = default;

private:
    std::vector<int> label_;
    std::vector<std::vector<int>> blocks_;
};

bool leq_partition(const SetPartition& a, const SetPartition& b);
SetPartition induced_partition(const Permutation& alpha);
std::vector<SetPartition> set_partitions(int p);
// Non-crossing test on a label sequence (linear order).
bool labels_noncrossing(const std::vector<int>& labels);

class NCPartition {
public:
    NCPartition() = default;
    explicit NCPartition(SetPartition part);
    static NCPartition from_geodesic(const Permutation& alpha);

    const SetPartition& partition() const { return part_; }
    int size() const { return part_.size(); }
    int block_count() const { return part_.block_count(); }
    const std::vector<std::vector<int>>& blocks() const { return part_.blocks(); }
    // Geodesic permutation: each block is a cycle in the cyclic order of gamma^-1.
    Permutation to_permutation() const;

    bool operator==(const NCPartition&) const = default;
    auto operator<=>(const NCPartition&) const = default;

private:
    SetPartition part_;
};

inline bool leq_partition(const NCPartition& a, const NCPartition& b) {
    return leq_partition(a.partition(), b.partition());
}

std::vector<NCPartition> nc_partitions(int p);
NCPartition kreweras(const NCPartition& pi);
BigInt mobius_nc(const NCPartition& sigma, const NCPartition& pi);

BigInt binomial(unsigned n, unsigned k);
BigInt catalan(int n);
BigInt fuss_catalan_2(int q);

}  // namespace wm
