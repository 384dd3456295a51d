#pragma once

#include <optional>
#include <vector>

#include <json.hpp>

#include "wm/combinat.hpp"
#include "wm/word.hpp"

namespace wm {

// Connected labeled bicolored map: sigma_black and sigma_white act on edges,
// vertices are their cycles, faces are the cycles of sigma_black*sigma_white.
class BicoloredMap {
public:
    BicoloredMap(Permutation black, Permutation white);

    int edge_count() const { return black_.size(); }
    const Permutation& black() const { return black_; }
    const Permutation& white() const { return white_; }
    int vertices() const { return cycle_count(black_) + cycle_count(white_); }
    int faces() const { return cycle_count(black_ * white_); }
    int genus() const;

    bool operator==(const BicoloredMap&) const = default;

private:
    Permutation black_, white_;
};

int genus(const BicoloredMap& m);

// Element of M_p: black vertex is gamma, white vertices are the cycles of alpha.
class OneBlackVertexMap : public BicoloredMap {
public:
    explicit OneBlackVertexMap(const Permutation& alpha);
    const Permutation& alpha() const { return white(); }
};

std::vector<OneBlackVertexMap> enumerate_maps(int p, std::optional<int> genus_filter = std::nullopt);

// Planar maps <-> NC partitions through the white vertices.
NCPartition nc_of(const OneBlackVertexMap& m);
OneBlackVertexMap map_of(const NCPartition& pi);

// Edge i of m1 becomes 2i, edge i of m2 becomes 2i+1.
OneBlackVertexMap gluing_convolution(const OneBlackVertexMap& m1, const OneBlackVertexMap& m2);
// New white vertex in each face; edge a of the dual sits in the corner
// between edges a and a+1.
OneBlackVertexMap tutte_dual(const OneBlackVertexMap& m);
// Submap on a subset of edges (relabeled 0.. in increasing order).
OneBlackVertexMap submap(const OneBlackVertexMap& m, const std::vector<int>& edges);

nlohmann::json map_to_json(const BicoloredMap& m);
BicoloredMap map_from_json(const nlohmann::json& j);

struct ColoredEdge {
    int position;
    int color;
    bool operator==(const ColoredEdge&) const = default;
};

// Unfolded map on the colored edges (a,i), i in J_a. May be disconnected.
class UnfoldedMap {
public:
    UnfoldedMap(std::vector<ColoredEdge> edges, Permutation gamma, Permutation alpha_f, int k);

    const std::vector<ColoredEdge>& edges() const { return edges_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    int index_of(int position, int color) const;
    const Permutation& gamma() const { return gamma_; }
    const Permutation& alpha_f() const { return alpha_f_; }
    int k() const { return k_; }

    int black_vertices() const { return cycle_count(gamma_); }
    int white_vertices() const { return cycle_count(alpha_f_); }
    int vertices() const { return black_vertices() + white_vertices(); }
    int faces() const { return cycle_count(gamma_ * alpha_f_); }
    int components() const;
    // 2K - 2g = F - E + V
    int genus() const;

private:
    std::vector<ColoredEdge> edges_;
    Permutation gamma_, alpha_f_;
    int k_;
};

UnfoldedMap unfold(const Permutation& alpha, const MarginalWord& word);

struct DeltaSigma {
    int delta;
    int sigma;
    int vblack;
    int genus_u;
};

DeltaSigma delta_sigma_quantities(const UnfoldedMap& u, const Permutation& alpha);

}  // namespace wm
