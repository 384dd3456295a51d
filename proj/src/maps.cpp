#include "wm/maps.hpp"

#include <algorithm>
#include <numeric>

namespace wm {

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(static_cast<size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[static_cast<size_t>(x)] != x) {
            parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
            x = parent[static_cast<size_t>(x)];
        }
        return x;
    }
    void unite(int a, int b) { parent[static_cast<size_t>(find(a))] = find(b); }
    int count() {
        int c = 0;
        for (int i = 0; i < static_cast<int>(parent.size()); ++i) c += find(i) == i;
        return c;
    }
};

int orbit_count(const Permutation& a, const Permutation& b) {
    UnionFind uf(a.size());
    for (int i = 0; i < a.size(); ++i) {
        uf.unite(i, a(i));
        uf.unite(i, b(i));
    }
    return uf.count();
}

}  // namespace

BicoloredMap::BicoloredMap(Permutation black, Permutation white) : black_(std::move(black)), white_(std::move(white)) {
    if (black_.size() != white_.size()) throw DomainError("map permutations must act on the same edges");
    if (black_.size() == 0) throw DomainError("map needs at least one edge");
    if (orbit_count(black_, white_) != 1) throw DomainError("map is not connected");
}

int BicoloredMap::genus() const {
    const int chi = vertices() + faces() - edge_count();
    return (2 - chi) / 2;
}

int genus(const BicoloredMap& m) { return m.genus(); }

OneBlackVertexMap::OneBlackVertexMap(const Permutation& alpha)
    : BicoloredMap(Permutation::full_cycle(alpha.size()), alpha) {}

std::vector<OneBlackVertexMap> enumerate_maps(int p, std::optional<int> genus_filter) {
    if (p < 1 || p > kPermutationCap) throw CapExceeded("map enumeration limited to 1 <= p <= 8");
    std::vector<OneBlackVertexMap> out;
    for_each_permutation(p, [&](const Permutation& a) {
        OneBlackVertexMap m(a);
        if (!genus_filter || m.genus() == *genus_filter) out.push_back(m);
    });
    return out;
}

NCPartition nc_of(const OneBlackVertexMap& m) {
    if (m.genus() != 0) throw DomainError("nc_of needs a planar map");
    return NCPartition::from_geodesic(m.alpha());
}

OneBlackVertexMap map_of(const NCPartition& pi) { return OneBlackVertexMap(pi.to_permutation()); }

OneBlackVertexMap gluing_convolution(const OneBlackVertexMap& m1, const OneBlackVertexMap& m2) {
    const int p = m1.edge_count();
    if (m2.edge_count() != p) throw DomainError("gluing needs maps with equal edge counts");
    std::vector<int> w(static_cast<size_t>(2 * p));
    for (int i = 0; i < p; ++i) {
        w[static_cast<size_t>(2 * i)] = 2 * m1.alpha()(i);
        w[static_cast<size_t>(2 * i + 1)] = 2 * m2.alpha()(i) + 1;
    }
    return OneBlackVertexMap(Permutation(std::move(w)));
}

OneBlackVertexMap tutte_dual(const OneBlackVertexMap& m) {
    const Permutation g = Permutation::full_cycle(m.edge_count());
    return OneBlackVertexMap((m.alpha() * g).inverse());
}

OneBlackVertexMap submap(const OneBlackVertexMap& m, const std::vector<int>& edges) {
    std::vector<int> e = edges;
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end()), e.end());
    if (e.empty()) throw DomainError("empty submap");
    const int p = m.edge_count();
    std::vector<int> idx(static_cast<size_t>(p), -1);
    for (size_t j = 0; j < e.size(); ++j) {
        if (e[j] < 0 || e[j] >= p) throw DomainError("edge out of range");
        idx[static_cast<size_t>(e[j])] = static_cast<int>(j);
    }
    std::vector<int> w(e.size());
    for (size_t j = 0; j < e.size(); ++j) {
        int x = m.alpha()(e[j]);
        while (idx[static_cast<size_t>(x)] < 0) x = m.alpha()(x);
        w[j] = idx[static_cast<size_t>(x)];
    }
    return OneBlackVertexMap(Permutation(std::move(w)));
}

nlohmann::json map_to_json(const BicoloredMap& m) {
    return {{"p", m.edge_count()}, {"sigma_white", m.white().images()}, {"sigma_black", m.black().images()}};
}

BicoloredMap map_from_json(const nlohmann::json& j) {
    try {
        const int p = j.at("p").get<int>();
        Permutation w(j.at("sigma_white").get<std::vector<int>>());
        Permutation b(j.at("sigma_black").get<std::vector<int>>());
        if (w.size() != p || b.size() != p) throw DomainError("map JSON: size mismatch");
        return BicoloredMap(b, w);
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("map JSON: ") + e.what());
    }
}

// ---------------------------------------------------------------- unfolding

UnfoldedMap::UnfoldedMap(std::vector<ColoredEdge> edges, Permutation gamma, Permutation alpha_f, int k)
    : edges_(std::move(edges)), gamma_(std::move(gamma)), alpha_f_(std::move(alpha_f)), k_(k) {}

int UnfoldedMap::index_of(int position, int color) const {
    for (size_t i = 0; i < edges_.size(); ++i)
        if (edges_[i].position == position && edges_[i].color == color) return static_cast<int>(i);
    return -1;
}

int UnfoldedMap::components() const { return edge_count() ? orbit_count(gamma_, alpha_f_) : 0; }

int UnfoldedMap::genus() const { return (2 * components() - faces() + edge_count() - vertices()) / 2; }

UnfoldedMap unfold(const Permutation& alpha, const MarginalWord& word) {
    const int p = word.p();
    if (alpha.size() != p) throw DomainError("alpha must act on the word positions");
    std::vector<ColoredEdge> edges;
    std::vector<std::vector<int>> index(static_cast<size_t>(p), std::vector<int>(static_cast<size_t>(word.n()), -1));
    for (int a = 0; a < p; ++a)
        for (int c : word.moving_part(a)) {
            index[static_cast<size_t>(a)][static_cast<size_t>(c)] = static_cast<int>(edges.size());
            edges.push_back({a, c});
        }
    const size_t E = edges.size();
    std::vector<int> g(E), af(E);
    for (size_t e = 0; e < E; ++e) {
        const auto [a, c] = edges[e];
        const int b = (a + 1) % p;
        g[e] = index[static_cast<size_t>(b)][static_cast<size_t>(word.map_color(a, c))];
        int x = alpha(a);
        while (index[static_cast<size_t>(x)][static_cast<size_t>(c)] < 0) x = alpha(x);
        af[e] = index[static_cast<size_t>(x)][static_cast<size_t>(c)];
    }
    return UnfoldedMap(std::move(edges), Permutation(std::move(g)), Permutation(std::move(af)), word.k());
}

DeltaSigma delta_sigma_quantities(const UnfoldedMap& u, const Permutation& alpha) {
    DeltaSigma d{};
    d.vblack = u.black_vertices();
    d.delta = u.white_vertices() - u.k() * cycle_count(alpha);
    d.sigma = d.vblack - u.components();
    d.genus_u = u.genus();
    return d;
}

}  // namespace wm
