#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "wm/maps.hpp"
#include "wm/moments.hpp"

using namespace wm;

namespace {

int map_genus(const Permutation& a) { return OneBlackVertexMap(a).genus(); }

}  // namespace

TEST_CASE("genus of small maps") {
    CHECK(map_genus(Permutation::identity(2)) == 0);
    CHECK(OneBlackVertexMap(Permutation::identity(2)).vertices() == 3);
    CHECK(OneBlackVertexMap(Permutation::identity(2)).faces() == 1);
    const Permutation t = Permutation::from_cycles(2, {{0, 1}});
    CHECK(map_genus(t) == 0);
    CHECK(OneBlackVertexMap(t).vertices() == 2);
    CHECK(OneBlackVertexMap(t).faces() == 2);
    // sigma_white = (0 2 1) on 3 edges: V = 2, F = #(gamma alpha)
    const Permutation w = Permutation::from_cycles(3, {{0, 2, 1}});
    CHECK(map_genus(w) == oracle::traced_genus(Permutation::full_cycle(3).images(), w.images()));
    CHECK(map_genus(Permutation::full_cycle(3)) == 1);
    CHECK_THROWS_AS(BicoloredMap(Permutation::identity(2), Permutation::identity(2)), DomainError);
}

TEST_CASE("genus agrees with face tracing") {
    for (int p = 1; p <= 6; ++p)
        for_each_permutation(p, [&](const Permutation& a) {
            const OneBlackVertexMap m(a);
            CHECK(m.faces() == oracle::traced_faces(m.black().images(), a.images()));
            CHECK(m.genus() == oracle::traced_genus(m.black().images(), a.images()));
            CHECK(m.genus() >= 0);
        });
    // two-vertex-colour maps with general black permutation
    for_each_permutation(4, [&](const Permutation& b) {
        for_each_permutation(4, [&](const Permutation& w) {
            if (oracle::orbit_count(b.images()) == 0) return;
            try {
                const BicoloredMap m(b, w);
                CHECK(m.genus() == oracle::traced_genus(b.images(), w.images()));
            } catch (const DomainError&) {
            }
        });
    });
}

TEST_CASE("enumerate_maps") {
    CHECK(enumerate_maps(2).size() == 2);
    CHECK(enumerate_maps(2, 0).size() == 2);
    CHECK(enumerate_maps(3, 0).size() == 5);
    CHECK(enumerate_maps(4).size() == 24);
    const auto cat = oracle::catalan_table(8);
    for (int p = 1; p <= 7; ++p) CHECK(static_cast<long long>(enumerate_maps(p, 0).size()) == cat[static_cast<size_t>(p)]);
    CHECK_THROWS_AS(enumerate_maps(9), CapExceeded);
    // genus distribution for p = 4: 14 planar + 10 of genus 1
    CHECK(enumerate_maps(4, 1).size() == 10);
}

TEST_CASE("planar maps and NC partitions") {
    for (int p = 1; p <= 6; ++p)
        for (const auto& m : enumerate_maps(p, 0)) {
            const NCPartition pi = nc_of(m);
            CHECK(map_of(pi).alpha() == m.alpha());
        }
    CHECK_THROWS_AS(nc_of(OneBlackVertexMap(Permutation::full_cycle(3))), DomainError);
}

TEST_CASE("Tutte dual") {
    for (int p = 1; p <= 5; ++p)
        for (const auto& m : enumerate_maps(p)) {
            const OneBlackVertexMap d = tutte_dual(m);
            CHECK(d.genus() == m.genus());
            if (m.genus() == 0) CHECK(nc_of(d) == kreweras(nc_of(m)));
        }
    // star with one white vertex -> p white vertices
    const NCPartition one(SetPartition::full(4));
    CHECK(cycle_count(tutte_dual(map_of(one)).alpha()) == 4);
}

TEST_CASE("submap monotonicity") {
    for (int p = 2; p <= 5; ++p)
        for (const auto& m : enumerate_maps(p)) {
            for (const auto& cyc : m.alpha().cycles()) {
                std::vector<int> e = cyc;
                std::sort(e.begin(), e.end());
                const OneBlackVertexMap s = submap(m, e);
                CHECK(s.edge_count() == static_cast<int>(e.size()));
                if (s.genus() > 0) CHECK(m.genus() > 0);
                CHECK(s.genus() <= m.genus());
            }
        }
}

TEST_CASE("gluing convolution") {
    const OneBlackVertexMap e1(Permutation::identity(1));
    const OneBlackVertexMap g = gluing_convolution(e1, e1);
    CHECK(g.edge_count() == 2);
    CHECK(cycle_count(g.alpha()) == 2);
    CHECK(g.genus() == 0);
    const OneBlackVertexMap i2(Permutation::identity(2));
    CHECK(gluing_convolution(i2, i2).genus() == 0);
    CHECK_THROWS_AS(gluing_convolution(e1, i2), DomainError);
    // planarity of the glued map <=> nc(m2) <= Kr(nc(m1))
    for (int p = 1; p <= 5; ++p) {
        const auto planar = enumerate_maps(p, 0);
        for (const auto& m1 : planar)
            for (const auto& m2 : planar) {
                const bool flat = gluing_convolution(m1, m2).genus() == 0;
                CHECK(flat == leq_partition(nc_of(m2), kreweras(nc_of(m1))));
            }
    }
}

TEST_CASE("Fuss-Catalan count of glued planar pairs") {
    for (int p = 1; p <= 6; ++p) {
        BigInt n = 0;
        const auto nc = nc_partitions(p);
        for (const auto& m1 : enumerate_maps(p, 0)) {
            const NCPartition k = kreweras(nc_of(m1));
            for (const auto& x : nc) n += leq_partition(x, k);
        }
        CHECK(n == fuss_catalan_2(p));
    }
}

TEST_CASE("map JSON round trip") {
    for (const auto& m : enumerate_maps(4)) {
        const auto j = map_to_json(m);
        CHECK(j.at("p") == 4);
        CHECK(map_from_json(j) == static_cast<const BicoloredMap&>(m));
    }
    CHECK_THROWS_AS(map_from_json(nlohmann::json{{"p", 2}}), DomainError);
}

TEST_CASE("unfolded map of 4-partite words") {
    const auto f = parse_letters("AB,AC");
    const MarginalWord w = MarginalWord::four_partite(f);
    {
        const Permutation id = Permutation::identity(2);
        const UnfoldedMap u = unfold(id, w);
        const DeltaSigma d = delta_sigma_quantities(u, id);
        CHECK(u.white_vertices() == 2);
        CHECK(u.black_vertices() == 1);
        CHECK(d.delta == 0);
        CHECK(d.genus_u == 0);
    }
    {
        const Permutation t = Permutation::from_cycles(2, {{0, 1}});
        const DeltaSigma d = delta_sigma_quantities(unfold(t, w), t);
        CHECK(d.delta == 1);
    }
    {
        const MarginalWord mono = MarginalWord::four_partite(parse_letters("AB,AB"));
        const Permutation t = Permutation::from_cycles(2, {{0, 1}});
        const DeltaSigma d = delta_sigma_quantities(unfold(t, mono), t);
        CHECK(d.delta == 0);
        CHECK(d.sigma == 0);
    }
    // identity: disjoint stars
    for (int p = 1; p <= 5; ++p) {
        const Permutation id = Permutation::identity(p);
        std::vector<Letter> g;
        for (int i = 0; i < p; ++i) g.push_back(i % 3 == 1 ? Letter::AC : Letter::AB);
        const DeltaSigma d = delta_sigma_quantities(unfold(id, MarginalWord::four_partite(g)), id);
        CHECK(d.delta == 0);
        CHECK(d.genus_u == 0);
    }
}

TEST_CASE("face bound of the unfolded map when Delta = 0") {
    auto check_word = [](const MarginalWord& w) {
        for_each_permutation(w.p(), [&](const Permutation& a) {
            const UnfoldedMap u = unfold(a, w);
            if (delta_sigma_quantities(u, a).delta != 0) return;
            CHECK(u.faces() <= w.k() * OneBlackVertexMap(a).faces());
        });
    };
    for (int p = 1; p <= 5; ++p)
        for (int mask = 0; mask < (1 << p); ++mask) {
            std::vector<Letter> f;
            for (int i = 0; i < p; ++i) f.push_back(mask >> i & 1 ? Letter::AC : Letter::AB);
            check_word(MarginalWord::four_partite(f));
        }
    // n = 5 family: A fixed, E traced, two of B,C,D per position
    const std::vector<std::vector<int>> pairs{{0, 1, 2}, {0, 1, 3}, {0, 2, 3}};
    for (int p = 1; p <= 4; ++p) {
        int total = 1;
        for (int i = 0; i < p; ++i) total *= 6;
        for (int code = 0; code < total; ++code) {
            std::vector<std::vector<int>> subs;
            std::vector<Permutation> sg;
            int c = code;
            for (int i = 0; i < p; ++i) {
                subs.push_back(pairs[static_cast<size_t>(c % 3)]);
                sg.push_back(c / 3 % 2 ? Permutation({0, 2, 1}) : Permutation::identity(3));
                c /= 6;
            }
            check_word(MarginalWord(5, subs, sg).with_roles({0}, {4}));
        }
    }
}
