#include "wm/moments.hpp"

#include <algorithm>
#include <numeric>

#include "wm/parallel.hpp"

namespace wm {

int L_exponent_4partite(const std::vector<Letter>& f, const Permutation& alpha) {
    const int p = static_cast<int>(f.size());
    if (alpha.size() != p) throw DomainError("alpha must act on the word positions");
    // point (a,B) -> 2a, (a,C) -> 2a+1
    std::vector<int> g(static_cast<size_t>(2 * p));
    for (int a = 0; a < p; ++a) {
        const int b = (a + 1) % p;
        const bool ab = f[static_cast<size_t>(a)] == Letter::AB;
        const bool next_ab = f[static_cast<size_t>(b)] == Letter::AB;
        g[static_cast<size_t>(2 * a)] = ab ? (next_ab ? 2 * b : 2 * b + 1) : 2 * a;
        g[static_cast<size_t>(2 * a + 1)] = ab ? 2 * a + 1 : (next_ab ? 2 * b : 2 * b + 1);
    }
    std::vector<int> ah(static_cast<size_t>(2 * p));
    for (int a = 0; a < p; ++a) {
        ah[static_cast<size_t>(2 * a)] = 2 * alpha(a);
        ah[static_cast<size_t>(2 * a + 1)] = 2 * alpha(a) + 1;
    }
    return cycle_count(Permutation(std::move(g)) * Permutation(std::move(ah)));
}

int alt(const std::vector<Letter>& f, const Permutation& alpha) {
    if (alpha.size() != static_cast<int>(f.size())) throw DomainError("alpha must act on the word positions");
    int n = 0;
    for (int a = 0; a < alpha.size(); ++a) n += f[static_cast<size_t>(a)] != f[static_cast<size_t>(alpha(a))];
    return n;
}

int L_exponent(const MarginalWord& word, const Permutation& alpha) {
    const UnfoldedMap u = unfold(alpha, word);
    const int moving = static_cast<int>(word.moving_colors().size());
    return u.faces() + moving * cycle_count(alpha) - u.white_vertices();
}

int tilde_L(const MarginalWord& word, const Permutation& alpha) {
    const UnfoldedMap u = unfold(alpha, word);
    const DeltaSigma d = delta_sigma_quantities(u, alpha);
    return 2 * (d.genus_u + d.delta + d.sigma);
}

std::vector<int> moment_exponents(const MarginalWord& word, const Permutation& alpha) {
    std::vector<int> e(static_cast<size_t>(word.n()), 0);
    const int faces = cycle_count(Permutation::full_cycle(word.p()) * alpha);
    const int whites = cycle_count(alpha);
    for (int c : word.fixed_colors()) e[static_cast<size_t>(c)] = faces;
    for (int c : word.traced_colors()) e[static_cast<size_t>(c)] = whites;
    if (word.representative_moving() >= 0) e[static_cast<size_t>(word.representative_moving())] = L_exponent(word, alpha);
    return e;
}

MomentPolynomial exact_moment(const MarginalWord& word) {
    const auto perms = all_permutations(word.p());
    std::vector<std::vector<int>> exps(perms.size());
    parallel_for(perms.size(), [&](size_t i) { exps[i] = moment_exponents(word, perms[i]); });
    MomentPolynomial out(MomentPolynomial::default_vars(word.n()));
    for (const auto& e : exps) out.add_term(e, 1);
    return out;
}

BigInt exact_moment_value(const MarginalWord& word, const DimensionProfile& dims) {
    word.check_dims(dims);
    return exact_moment(word).evaluate(dims);
}

MomentPolynomial exact_moment_4partite(const std::vector<Letter>& f) {
    const int p = static_cast<int>(f.size());
    const Permutation g = Permutation::full_cycle(p);
    MomentPolynomial out({"N_A", "N_{B,C}", "N_D"});
    for_each_permutation(p, [&](const Permutation& a) {
        out.add_term({cycle_count(g * a), L_exponent_4partite(f, a), cycle_count(a)}, 1);
    });
    return out;
}

MomentPolynomial exact_moment_bipartite(int p) {
    const Permutation g = Permutation::full_cycle(p);
    MomentPolynomial out({"N", "M"});
    for_each_permutation(p, [&](const Permutation& a) { out.add_term({cycle_count(g * a), cycle_count(a)}, 1); });
    return out;
}

std::pair<LaurentPolynomial, LaurentPolynomial> exact_moment_P_and_Q(int p) {
    if (p < 1 || p > 4) throw CapExceeded("P/Q moments limited to 1 <= p <= 4");
    std::vector<Letter> f0;
    for (int i = 0; i < p; ++i) {
        f0.push_back(Letter::AB);
        f0.push_back(Letter::AC);
    }
    LaurentPolynomial P;
    const MomentPolynomial mp = exact_moment_4partite(f0);
    for (const auto& [e, c] : mp.terms())
        P.add(e[0] + e[1] + e[2] - (4 * p + 2), Rational(c));
    const Permutation g = Permutation::full_cycle(p);
    const auto perms = all_permutations(p);
    std::vector<BigInt> counts(static_cast<size_t>(3 * p + 2), 0);
    for (const auto& a1 : perms) {
        const int c1 = cycle_count(a1);
        const Permutation ga1 = g * a1;
        for (const auto& a2 : perms) counts[static_cast<size_t>(cycle_count(ga1 * a2) + c1 + cycle_count(a2))] += 1;
    }
    LaurentPolynomial Q;
    for (size_t e = 0; e < counts.size(); ++e)
        if (counts[e] != 0) Q.add(static_cast<int>(e) - (2 * p + 1), Rational(counts[e]));
    return {P, Q};
}

// ---------------------------------------------------------------- oracle

namespace {

struct Dsu {
    std::vector<int> parent;
    explicit Dsu(int n) : parent(static_cast<size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[static_cast<size_t>(x)] != x) x = parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
        return x;
    }
    void unite(int a, int b) { parent[static_cast<size_t>(find(a))] = find(b); }
};

// Leg (box a, conjugate?, color c).
int leg(int n, int a, bool bar, int c) { return (2 * a + (bar ? 1 : 0)) * n + c; }

// Loops of the tensor network for one Wick pairing; returns, per loop, the
// set of colors it visits.
std::vector<std::vector<int>> wick_loops(const MarginalWord& w, const Permutation& alpha) {
    const int n = w.n(), p = w.p();
    Dsu d(2 * p * n);
    for (int a = 0; a < p; ++a) {
        const auto& I = w.subset(a);
        const auto& J = w.subset((a + 1) % p);
        std::vector<char> in(static_cast<size_t>(n), 0);
        for (int c : I) in[static_cast<size_t>(c)] = 1;
        // partial trace inside W_{I_a}
        for (int c = 0; c < n; ++c)
            if (!in[static_cast<size_t>(c)]) d.unite(leg(n, a, false, c), leg(n, a, true, c));
        // twisted contraction between W_{I_a} and W_{I_{a+1}}
        for (size_t b = 0; b < I.size(); ++b)
            d.unite(leg(n, a, false, I[b]), leg(n, (a + 1) % p, true, J[static_cast<size_t>(w.sigma(a)(static_cast<int>(b)))]));
        // Wick pairing
        for (int c = 0; c < n; ++c) d.unite(leg(n, a, true, c), leg(n, alpha(a), false, c));
    }
    std::vector<std::vector<int>> loops;
    std::vector<int> id(static_cast<size_t>(2 * p * n), -1);
    for (int x = 0; x < 2 * p * n; ++x) {
        const int r = d.find(x);
        if (id[static_cast<size_t>(r)] < 0) {
            id[static_cast<size_t>(r)] = static_cast<int>(loops.size());
            loops.emplace_back();
        }
        auto& cs = loops[static_cast<size_t>(id[static_cast<size_t>(r)])];
        const int c = x % n;
        if (std::find(cs.begin(), cs.end(), c) == cs.end()) cs.push_back(c);
    }
    return loops;
}

}  // namespace

MomentPolynomial wick_oracle_moment(const MarginalWord& word) {
    if (word.p() > kOracleCap) throw CapExceeded("Wick oracle limited to p <= 6");
    const auto perms = all_permutations(word.p());
    std::vector<std::vector<std::vector<int>>> loops(perms.size());
    parallel_for(perms.size(), [&](size_t i) { loops[i] = wick_loops(word, perms[i]); });
    // colors that ever share a loop with another color form one dimension class
    int shared = -1;
    for (const auto& ls : loops)
        for (const auto& cs : ls)
            if (cs.size() > 1)
                for (int c : cs)
                    if (shared < 0 || c < shared) shared = c;
    std::vector<char> in_shared(static_cast<size_t>(word.n()), 0);
    for (const auto& ls : loops)
        for (const auto& cs : ls)
            if (cs.size() > 1)
                for (int c : cs) in_shared[static_cast<size_t>(c)] = 1;
    MomentPolynomial out(MomentPolynomial::default_vars(word.n()));
    for (const auto& ls : loops) {
        std::vector<int> e(static_cast<size_t>(word.n()), 0);
        for (const auto& cs : ls) {
            const int c = cs.front();
            ++e[static_cast<size_t>(in_shared[static_cast<size_t>(c)] ? shared : c)];
        }
        out.add_term(e, 1);
    }
    return out;
}

BigInt wick_oracle_value(const MarginalWord& word, const DimensionProfile& dims) {
    if (word.p() > kOracleCap) throw CapExceeded("Wick oracle limited to p <= 6");
    if (static_cast<int>(dims.size()) != word.n()) throw DomainError("dimension profile must have one entry per color");
    BigInt total = 0;
    for_each_permutation(word.p(), [&](const Permutation& a) {
        BigInt t = 1;
        for (const auto& cs : wick_loops(word, a)) {
            const long d = dims[static_cast<size_t>(cs.front())];
            for (int c : cs)
                if (dims[static_cast<size_t>(c)] != d) throw DomainError("a loop joins colors of different dimensions");
            t *= d;
        }
        total += t;
    });
    return total;
}

}  // namespace wm
