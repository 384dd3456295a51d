#include "wm/word.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace wm {

std::vector<Letter> parse_letters(const std::string& s) {
    std::vector<Letter> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok.erase(std::remove_if(tok.begin(), tok.end(), [](unsigned char ch) { return std::isspace(ch); }), tok.end());
        if (tok == "AB") out.push_back(Letter::AB);
        else if (tok == "AC") out.push_back(Letter::AC);
        else throw DomainError("bad letter '" + tok + "' (expected AB or AC)");
    }
    if (out.empty()) throw DomainError("empty word");
    return out;
}

std::string letters_to_string(const std::vector<Letter>& f) {
    std::string s;
    for (size_t i = 0; i < f.size(); ++i) s += (i ? "," : "") + std::string(f[i] == Letter::AB ? "AB" : "AC");
    return s;
}

MarginalWord::MarginalWord(int n, std::vector<std::vector<int>> subsets, std::vector<Permutation> sigmas)
    : n_(n), subsets_(std::move(subsets)), sigmas_(std::move(sigmas)) {
    if (n_ < 1) throw DomainError("word needs at least one color");
    if (subsets_.empty()) throw DomainError("word must have positive length");
    if (sigmas_.size() != subsets_.size()) throw DomainError("one sigma per position is required");
    width_ = static_cast<int>(subsets_.front().size());
    for (auto& s : subsets_) {
        std::sort(s.begin(), s.end());
        if (static_cast<int>(s.size()) != width_) throw DomainError("all color subsets must have equal size");
        if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw DomainError("repeated color in subset");
        for (int c : s)
            if (c < 0 || c >= n_) throw DomainError("color out of range");
    }
    for (const auto& sg : sigmas_)
        if (sg.size() != width_) throw DomainError("sigma size must equal subset size");
    classify();
}

void MarginalWord::classify() {
    fixed_.clear();
    moving_.clear();
    traced_.clear();
    for (int c = 0; c < n_; ++c) {
        bool in_all = true, in_any = false, fixed = true;
        for (int a = 0; a < p(); ++a) {
            if (contains(a, c)) {
                in_any = true;
                if (map_color(a, c) != c) fixed = false;
            } else {
                in_all = false;
            }
        }
        if (in_all && fixed) fixed_.push_back(c);
        else if (!in_any) traced_.push_back(c);
        else moving_.push_back(c);
    }
}

MarginalWord MarginalWord::with_roles(std::vector<int> fixed, std::vector<int> traced) const {
    std::sort(fixed.begin(), fixed.end());
    std::sort(traced.begin(), traced.end());
    for (int c : fixed)
        if (!is_fixed(c)) throw DomainError("color " + std::to_string(c) + " is not a common fixed color");
    for (int c : traced)
        if (!is_traced(c)) throw DomainError("color " + std::to_string(c) + " is not always traced");
    MarginalWord w = *this;
    w.fixed_ = fixed;
    w.traced_ = traced;
    w.moving_.clear();
    for (int c = 0; c < n_; ++c)
        if (!std::binary_search(fixed.begin(), fixed.end(), c) && !std::binary_search(traced.begin(), traced.end(), c))
            w.moving_.push_back(c);
    return w;
}

MarginalWord MarginalWord::four_partite(const std::vector<Letter>& f) {
    if (f.empty()) throw DomainError("empty word");
    std::vector<std::vector<int>> subsets;
    for (Letter x : f) subsets.push_back(x == Letter::AB ? std::vector<int>{0, 1} : std::vector<int>{0, 2});
    std::vector<Permutation> sig(f.size(), Permutation::identity(2));
    return MarginalWord(4, std::move(subsets), std::move(sig));
}

MarginalWord MarginalWord::bipartite(int p) {
    if (p < 1) throw DomainError("word must have positive length");
    return MarginalWord(2, std::vector<std::vector<int>>(static_cast<size_t>(p), {0}),
                        std::vector<Permutation>(static_cast<size_t>(p), Permutation::identity(1)));
}

bool MarginalWord::contains(int a, int c) const {
    const auto& s = subset(a);
    return std::binary_search(s.begin(), s.end(), c);
}

int MarginalWord::map_color(int a, int c) const {
    const auto& s = subset(a);
    auto it = std::lower_bound(s.begin(), s.end(), c);
    if (it == s.end() || *it != c) throw DomainError("color not in subset");
    const int b = static_cast<int>(it - s.begin());
    return subset((a + 1) % p())[static_cast<size_t>(sigma(a)(b))];
}

bool MarginalWord::is_fixed(int c) const { return std::binary_search(fixed_.begin(), fixed_.end(), c); }
bool MarginalWord::is_moving(int c) const { return std::binary_search(moving_.begin(), moving_.end(), c); }
bool MarginalWord::is_traced(int c) const { return std::binary_search(traced_.begin(), traced_.end(), c); }

std::vector<int> MarginalWord::moving_part(int a) const {
    std::vector<int> out;
    for (int c : subset(a))
        if (is_moving(c)) out.push_back(c);
    return out;
}

void MarginalWord::check_dims(const DimensionProfile& dims) const {
    if (static_cast<int>(dims.size()) != n_) throw DomainError("dimension profile must have one entry per color");
    for (long d : dims)
        if (d < 1) throw DomainError("dimensions must be positive");
    for (int c : moving_)
        if (dims[static_cast<size_t>(c)] != dims[static_cast<size_t>(moving_.front())])
            throw DomainError("moving colors must share a common dimension");
}

MarginalWord MarginalWord::restrict_to(const std::vector<int>& positions) const {
    if (positions.empty()) throw DomainError("empty restriction");
    for (size_t j = 0; j < positions.size(); ++j) {
        if (positions[j] < 0 || positions[j] >= p()) throw DomainError("position out of range");
        if (j && positions[j] <= positions[j - 1]) throw DomainError("positions must be increasing");
    }
    std::vector<std::vector<int>> subs;
    std::vector<Permutation> sig;
    for (size_t j = 0; j < positions.size(); ++j) {
        const int a = positions[j];
        const int b = positions[(j + 1) % positions.size()];
        subs.push_back(subset(a));
        Permutation s = sigma(a);
        for (int x = (a + 1) % p(); x != b; x = (x + 1) % p()) s = sigma(x) * s;
        sig.push_back(s);
    }
    MarginalWord w(n_, std::move(subs), std::move(sig));
    // keep the same role assignment where it is still valid
    std::vector<int> fx, tr;
    for (int c : fixed_)
        if (w.is_fixed(c)) fx.push_back(c);
    for (int c : traced_)
        if (w.is_traced(c)) tr.push_back(c);
    return w.with_roles(fx, tr);
}

std::string MarginalWord::to_string() const {
    std::ostringstream os;
    for (int a = 0; a < p(); ++a) {
        os << (a ? " " : "") << '{';
        for (size_t j = 0; j < subset(a).size(); ++j) os << (j ? "," : "") << subset(a)[j] + 1;
        os << "}" << sigma(a).to_string();
    }
    return os.str();
}

PermutedMarginalWord::PermutedMarginalWord(int n, std::vector<std::vector<int>> subsets, std::vector<Permutation> pis)
    : n_(n), subsets_(std::move(subsets)), pis_(std::move(pis)) {
    if (n_ % 2) throw DomainError("permuted marginals need an even number of colors");
    if (subsets_.empty() || subsets_.size() != pis_.size()) throw DomainError("one pi per position is required");
    for (auto& s : subsets_) {
        std::sort(s.begin(), s.end());
        if (static_cast<int>(s.size()) != n_ / 2) throw DomainError("permuted marginals act on n/2 colors");
    }
    for (const auto& pi : pis_)
        if (pi.size() != n_ / 2) throw DomainError("pi must act on n/2 points");
}

MarginalWord PermutedMarginalWord::to_marginal_word() const {
    std::vector<Permutation> sig;
    for (int a = 0; a < p(); ++a) sig.push_back(pis_[static_cast<size_t>((a + 1) % p())].inverse() * pis_[static_cast<size_t>(a)]);
    return MarginalWord(n_, subsets_, std::move(sig));
}

SetPartition PermutedMarginalWord::ker_f() const { return SetPartition::kernel_of(subsets_); }
SetPartition PermutedMarginalWord::ker_pi() const { return SetPartition::kernel_of(pis_); }

}  // namespace wm
