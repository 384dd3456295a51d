#include "wm/combinat.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace wm {

Permutation::Permutation(std::vector<int> images) : img_(std::move(images)) {
    std::vector<char> seen(img_.size(), 0);
    for (int v : img_) {
        if (v < 0 || v >= size() || seen[static_cast<size_t>(v)])
            throw DomainError("not a permutation");
        seen[static_cast<size_t>(v)] = 1;
    }
}

Permutation Permutation::identity(int p) {
    std::vector<int> v(static_cast<size_t>(p));
    std::iota(v.begin(), v.end(), 0);
    return Permutation(std::move(v));
}

Permutation Permutation::full_cycle(int p) {
    std::vector<int> v(static_cast<size_t>(p));
    for (int i = 0; i < p; ++i) v[static_cast<size_t>(i)] = (i + 1) % p;
    return Permutation(std::move(v));
}

Permutation Permutation::from_cycles(int p, const std::vector<std::vector<int>>& cycles) {
    std::vector<int> v(static_cast<size_t>(p));
    std::iota(v.begin(), v.end(), 0);
    std::vector<char> used(static_cast<size_t>(p), 0);
    for (const auto& c : cycles) {
        for (size_t j = 0; j < c.size(); ++j) {
            int a = c[j];
            if (a < 0 || a >= p || used[static_cast<size_t>(a)]) throw DomainError("bad cycle notation");
            used[static_cast<size_t>(a)] = 1;
            v[static_cast<size_t>(a)] = c[(j + 1) % c.size()];
        }
    }
    return Permutation(std::move(v));
}

Permutation Permutation::inverse() const {
    std::vector<int> v(img_.size());
    for (size_t i = 0; i < img_.size(); ++i) v[static_cast<size_t>(img_[i])] = static_cast<int>(i);
    Permutation r;
    r.img_ = std::move(v);
    return r;
}

Permutation Permutation::operator*(const Permutation& other) const {
    if (other.size() != size()) throw DomainError("permutation size mismatch");
    Permutation r;
    r.img_.resize(img_.size());
    for (size_t i = 0; i < img_.size(); ++i) r.img_[i] = img_[static_cast<size_t>(other.img_[i])];
    return r;
}

Permutation Permutation::pow(int k) const {
    Permutation r = identity(size());
    Permutation b = k >= 0 ? *this : inverse();
    for (int e = k >= 0 ? k : -k; e > 0; e >>= 1) {
        if (e & 1) r = r * b;
        b = b * b;
    }
    return r;
}

std::vector<std::vector<int>> Permutation::cycles() const {
    std::vector<std::vector<int>> out;
    std::vector<char> seen(img_.size(), 0);
    for (int s = 0; s < size(); ++s) {
        if (seen[static_cast<size_t>(s)]) continue;
        std::vector<int> c;
        for (int x = s; !seen[static_cast<size_t>(x)]; x = img_[static_cast<size_t>(x)]) {
            seen[static_cast<size_t>(x)] = 1;
            c.push_back(x);
        }
        out.push_back(std::move(c));
    }
    return out;
}

bool Permutation::is_identity() const {
    for (int i = 0; i < size(); ++i)
        if (img_[static_cast<size_t>(i)] != i) return false;
    return true;
}

std::string Permutation::to_string() const {
    std::ostringstream os;
    bool any = false;
    for (const auto& c : cycles()) {
        if (c.size() < 2) continue;
        any = true;
        os << '(';
        for (size_t j = 0; j < c.size(); ++j) os << (j ? " " : "") << c[j];
        os << ')';
    }
    if (!any) os << "id";
    return os.str();
}

int cycle_count(const Permutation& p) {
    std::vector<char> seen(static_cast<size_t>(p.size()), 0);
    int n = 0;
    for (int s = 0; s < p.size(); ++s) {
        if (seen[static_cast<size_t>(s)]) continue;
        ++n;
        for (int x = s; !seen[static_cast<size_t>(x)]; x = p(x)) seen[static_cast<size_t>(x)] = 1;
    }
    return n;
}

int length(const Permutation& p) { return p.size() - cycle_count(p); }

bool is_geodesic(const Permutation& alpha) { return is_geodesic(alpha, alpha.size()); }

bool is_geodesic(const Permutation& alpha, int p) {
    if (alpha.size() != p) throw DomainError("is_geodesic: size mismatch");
    if (p == 0) return true;
    Permutation gi = Permutation::full_cycle(p).inverse();
    return length(alpha) + length(alpha.inverse() * gi) == p - 1;
}

std::uint64_t factorial(int n) {
    std::uint64_t r = 1;
    for (int i = 2; i <= n; ++i) r *= static_cast<std::uint64_t>(i);
    return r;
}

void for_each_permutation(int p, const std::function<void(const Permutation&)>& f) {
    if (p < 0 || p > kPermutationCap) throw CapExceeded("S_p enumeration limited to p <= 8");
    std::vector<int> v(static_cast<size_t>(p));
    std::iota(v.begin(), v.end(), 0);
    do {
        f(Permutation(v));
    } while (std::next_permutation(v.begin(), v.end()));
}

std::vector<Permutation> all_permutations(int p) {
    std::vector<Permutation> out;
    out.reserve(factorial(std::max(p, 0)));
    for_each_permutation(p, [&](const Permutation& a) { out.push_back(a); });
    return out;
}

// ---------------------------------------------------------------- partitions

SetPartition SetPartition::from_labels(const std::vector<int>& labels) {
    SetPartition s;
    s.label_.resize(labels.size());
    std::vector<std::pair<int, int>> remap;  // raw label -> canonical
    for (size_t i = 0; i < labels.size(); ++i) {
        int id = -1;
        for (auto& [raw, canon] : remap)
            if (raw == labels[i]) { id = canon; break; }
        if (id < 0) {
            id = static_cast<int>(remap.size());
            remap.emplace_back(labels[i], id);
            s.blocks_.emplace_back();
        }
        s.label_[i] = id;
        s.blocks_[static_cast<size_t>(id)].push_back(static_cast<int>(i));
    }
    return s;
}

SetPartition::SetPartition(int p, std::vector<std::vector<int>> blocks) {
    std::vector<int> lab(static_cast<size_t>(p), -1);
    for (size_t b = 0; b < blocks.size(); ++b) {
        if (blocks[b].empty()) throw DomainError("empty block");
        for (int x : blocks[b]) {
            if (x < 0 || x >= p || lab[static_cast<size_t>(x)] >= 0) throw DomainError("blocks must partition the ground set");
            lab[static_cast<size_t>(x)] = static_cast<int>(b);
        }
    }
    for (int v : lab)
        if (v < 0) throw DomainError("blocks must cover the ground set");
    *this = from_labels(lab);
}

SetPartition SetPartition::discrete(int p) {
    std::vector<int> lab(static_cast<size_t>(p));
    std::iota(lab.begin(), lab.end(), 0);
    return from_labels(lab);
}

SetPartition SetPartition::full(int p) { return from_labels(std::vector<int>(static_cast<size_t>(p), 0)); }

bool labels_noncrossing(const std::vector<int>& labels) {
    // A block seen again must be the innermost open block.
    std::vector<int> last;
    for (size_t i = 0; i < labels.size(); ++i) {
        int b = labels[i];
        if (b >= static_cast<int>(last.size())) last.resize(static_cast<size_t>(b) + 1, -1);
        last[static_cast<size_t>(b)] = static_cast<int>(i);
    }
    std::vector<int> stack;
    std::vector<char> opened(last.size(), 0);
    for (size_t i = 0; i < labels.size(); ++i) {
        int b = labels[i];
        if (!opened[static_cast<size_t>(b)]) {
            opened[static_cast<size_t>(b)] = 1;
            if (last[static_cast<size_t>(b)] != static_cast<int>(i)) stack.push_back(b);
        } else {
            if (stack.empty() || stack.back() != b) return false;
            if (last[static_cast<size_t>(b)] == static_cast<int>(i)) stack.pop_back();
        }
    }
    return true;
}

bool SetPartition::is_noncrossing() const { return labels_noncrossing(label_); }

SetPartition SetPartition::meet(const SetPartition& other) const {
    if (other.size() != size()) throw DomainError("partition size mismatch");
    std::vector<int> lab(label_.size());
    for (size_t i = 0; i < label_.size(); ++i) lab[i] = label_[i] * (other.size() + 1) + other.label_[i];
    return from_labels(lab);
}

std::string SetPartition::to_string() const {
    std::ostringstream os;
    os << '{';
    for (size_t b = 0; b < blocks_.size(); ++b) {
        os << (b ? "," : "") << '{';
        for (size_t j = 0; j < blocks_[b].size(); ++j) os << (j ? "," : "") << blocks_[b][j];
        os << '}';
    }
    os << '}';
    return os.str();
}

bool leq_partition(const SetPartition& a, const SetPartition& b) {
    if (a.size() != b.size()) throw DomainError("partition size mismatch");
    for (const auto& blk : a.blocks())
        for (int x : blk)
            if (b.block_of(x) != b.block_of(blk.front())) return false;
    return true;
}

SetPartition induced_partition(const Permutation& alpha) {
    return SetPartition(alpha.size(), alpha.cycles());
}

std::vector<SetPartition> set_partitions(int p) {
    if (p < 0 || p > kPartitionCap) throw CapExceeded("set partition enumeration limited to p <= 12");
    std::vector<SetPartition> out;
    if (p == 0) {
        out.emplace_back();
        return out;
    }
    // restricted growth strings
    std::vector<int> a(static_cast<size_t>(p), 0), mx(static_cast<size_t>(p), 0);
    while (true) {
        out.push_back(SetPartition::from_labels(a));
        int i = p - 1;
        while (i > 0 && a[static_cast<size_t>(i)] == mx[static_cast<size_t>(i - 1)] + 1) --i;
        if (i == 0) break;
        ++a[static_cast<size_t>(i)];
        mx[static_cast<size_t>(i)] = std::max(mx[static_cast<size_t>(i - 1)], a[static_cast<size_t>(i)]);
        for (int j = i + 1; j < p; ++j) {
            a[static_cast<size_t>(j)] = 0;
            mx[static_cast<size_t>(j)] = mx[static_cast<size_t>(i)];
        }
    }
    return out;
}

NCPartition::NCPartition(SetPartition part) : part_(std::move(part)) {
    if (!part_.is_noncrossing()) throw DomainError("partition is crossing");
}

NCPartition NCPartition::from_geodesic(const Permutation& alpha) {
    if (!is_geodesic(alpha)) throw DomainError("permutation is not geodesic");
    return NCPartition(induced_partition(alpha));
}

Permutation NCPartition::to_permutation() const {
    std::vector<int> v(static_cast<size_t>(size()));
    for (const auto& blk : blocks()) {
        // blocks are sorted ascending; cycle goes b_j -> b_{j-1}
        for (size_t j = 0; j < blk.size(); ++j)
            v[static_cast<size_t>(blk[j])] = blk[(j + blk.size() - 1) % blk.size()];
    }
    return Permutation(std::move(v));
}

namespace {

void nc_interval(const std::vector<int>& elems, size_t lo, size_t hi, std::vector<int>& lab, int& next,
                 const std::function<void()>& emit);

}  // namespace

std::vector<NCPartition> nc_partitions(int p) {
    if (p < 0 || p > kPartitionCap) throw CapExceeded("NC enumeration limited to p <= 12");
    std::vector<NCPartition> out;
    std::vector<int> elems(static_cast<size_t>(p));
    std::iota(elems.begin(), elems.end(), 0);
    std::vector<int> lab(static_cast<size_t>(p), -1);
    int next = 0;
    nc_interval(elems, 0, elems.size(), lab, next, [&] { out.emplace_back(SetPartition::from_labels(lab)); });
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

// Enumerate NC partitions of the contiguous run elems[lo, hi): the block of
// elems[lo] is {lo = i_0 < i_1 < ... < i_k}; the gaps between consecutive
// members and the tail after i_k are independent sub-intervals.
void nc_interval(const std::vector<int>& elems, size_t lo, size_t hi, std::vector<int>& lab, int& next,
                 const std::function<void()>& emit) {
    if (lo >= hi) {
        emit();
        return;
    }
    const int label = next++;
    lab[static_cast<size_t>(elems[lo])] = label;
    // recursive over the choice of the next member after `cur`
    std::function<void(size_t)> extend = [&](size_t cur) {
        // option 1: block ends at cur; tail (cur+1, hi) is independent
        nc_interval(elems, cur + 1, hi, lab, next, emit);
        // option 2: next member j > cur; gap (cur+1, j) filled independently
        for (size_t j = cur + 1; j < hi; ++j) {
            lab[static_cast<size_t>(elems[j])] = label;
            const int saved = next;
            nc_interval(elems, cur + 1, j, lab, next, [&] { extend(j); });
            next = saved;
            lab[static_cast<size_t>(elems[j])] = -1;
        }
    };
    const int saved = next;
    extend(lo);
    next = saved;
    --next;
    lab[static_cast<size_t>(elems[lo])] = -1;
}

}  // namespace

NCPartition kreweras(const NCPartition& pi) {
    const int p = pi.size();
    // Interleave 0, 0bar, 1, 1bar, ...: element i at 2i, ibar at 2i+1.
    // Start from singletons on the barred points and merge greedily while the
    // union with pi stays non-crossing; the result is the largest such.
    std::vector<int> bar(static_cast<size_t>(p));
    std::iota(bar.begin(), bar.end(), 0);
    auto union_nc = [&](const std::vector<int>& b) {
        std::vector<int> lab(static_cast<size_t>(2 * p));
        for (int i = 0; i < p; ++i) {
            lab[static_cast<size_t>(2 * i)] = pi.partition().block_of(i);
            lab[static_cast<size_t>(2 * i + 1)] = p + b[static_cast<size_t>(i)];
        }
        return labels_noncrossing(lab);
    };
    bool merged = true;
    while (merged) {
        merged = false;
        for (int i = 0; i < p && !merged; ++i)
            for (int j = i + 1; j < p && !merged; ++j) {
                if (bar[static_cast<size_t>(i)] == bar[static_cast<size_t>(j)]) continue;
                std::vector<int> trial = bar;
                const int from = bar[static_cast<size_t>(j)], to = bar[static_cast<size_t>(i)];
                for (int& v : trial)
                    if (v == from) v = to;
                if (union_nc(trial)) {
                    bar = std::move(trial);
                    merged = true;
                }
            }
    }
    return NCPartition(SetPartition::from_labels(bar));
}

BigInt mobius_nc(const NCPartition& sigma, const NCPartition& pi) {
    if (sigma.size() != pi.size() || !leq_partition(sigma, pi)) throw DomainError("mobius_nc: sigma is not below pi");
    Permutation rel = sigma.to_permutation().inverse() * pi.to_permutation();
    BigInt r = 1;
    for (const auto& c : rel.cycles()) {
        const int b = static_cast<int>(c.size());
        BigInt t = catalan(b - 1);
        if ((b - 1) % 2) t = -t;
        r *= t;
    }
    return r;
}

BigInt binomial(unsigned n, unsigned k) {
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

BigInt catalan(int n) {
    if (n < 0) throw DomainError("catalan: negative index");
    BigInt r = binomial(2u * static_cast<unsigned>(n), static_cast<unsigned>(n));
    return r / (n + 1);
}

BigInt fuss_catalan_2(int q) {
    if (q < 0) throw DomainError("fuss_catalan_2: negative index");
    BigInt r = binomial(3u * static_cast<unsigned>(q), static_cast<unsigned>(q));
    return r / (2 * q + 1);
}

}  // namespace wm
