#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "wm/combinat.hpp"

using namespace wm;

TEST_CASE("permutation basics") {
    const Permutation g = Permutation::full_cycle(4);
    CHECK(g.images() == std::vector<int>{1, 2, 3, 0});
    CHECK((g * g.inverse()).is_identity());
    CHECK(g.pow(4).is_identity());
    CHECK(Permutation::from_cycles(4, {{0, 1}, {2, 3}}).images() == std::vector<int>{1, 0, 3, 2});
    CHECK_THROWS_AS(Permutation({0, 0, 1}), DomainError);
    CHECK(Permutation::from_cycles(3, {{0, 2}}).to_string() == "(0 2)");
    CHECK(Permutation::identity(3).to_string() == "id");
    // (a*b)(i) = a(b(i))
    const Permutation a({1, 0, 2}), b({0, 2, 1});
    CHECK((a * b)(1) == a(b(1)));
}

TEST_CASE("cycle_count and length") {
    CHECK(cycle_count(Permutation::identity(4)) == 4);
    CHECK(cycle_count(Permutation::full_cycle(4)) == 1);
    CHECK(cycle_count(Permutation::from_cycles(4, {{0, 1}, {2, 3}})) == 2);
    CHECK(length(Permutation::identity(5)) == 0);
    CHECK(length(Permutation::from_cycles(5, {{1, 3}})) == 1);
    CHECK(length(Permutation::full_cycle(5)) == 4);
}

TEST_CASE("length equals BFS transposition distance") {
    for (int p = 1; p <= 5; ++p)
        for_each_permutation(p, [&](const Permutation& a) {
            CHECK(length(a) == oracle::transposition_distance(a.images()));
            CHECK(cycle_count(a) + length(a) == p);
        });
    // p = 6 on a sample
    int k = 0;
    for_each_permutation(6, [&](const Permutation& a) {
        if (k++ % 37 == 0) CHECK(length(a) == oracle::transposition_distance(a.images()));
    });
}

TEST_CASE("triangle inequality in S_4") {
    const auto all = all_permutations(4);
    auto d = [](const Permutation& x, const Permutation& y) { return length(x.inverse() * y); };
    for (const auto& a : all)
        for (const auto& b : all)
            for (const auto& c : all) CHECK(d(a, c) <= d(a, b) + d(b, c));
}

TEST_CASE("geodesic permutations") {
    CHECK(is_geodesic(Permutation::identity(5)));
    const auto cat = oracle::catalan_table(8);
    for (int p = 1; p <= 7; ++p) {
        int n = 0;
        for_each_permutation(p, [&](const Permutation& a) { n += is_geodesic(a); });
        CHECK(n == cat[static_cast<size_t>(p)]);
    }
    // Cycles of a geodesic permutation follow gamma^-1.
    CHECK(is_geodesic(Permutation::full_cycle(4).inverse()));
    int count4 = 0;
    for_each_permutation(4, [&](const Permutation& a) { count4 += is_geodesic(a, 4); });
    CHECK(count4 == 14);
}

TEST_CASE("set partitions and order") {
    CHECK(set_partitions(1).size() == 1);
    CHECK(set_partitions(3).size() == 5);
    CHECK(set_partitions(4).size() == 15);
    for (int p = 1; p <= 7; ++p) CHECK(static_cast<long long>(set_partitions(p).size()) == oracle::bell(p));
    CHECK_THROWS_AS(set_partitions(13), CapExceeded);

    const SetPartition a(3, {{0, 2}, {1}}), b(3, {{0, 1}, {2}});
    CHECK_FALSE(leq_partition(a, b));
    for (const auto& x : set_partitions(4)) {
        CHECK(leq_partition(SetPartition::discrete(4), x));
        CHECK(leq_partition(x, SetPartition::full(4)));
    }
    CHECK(SetPartition::kernel_of(std::vector<int>{5, 7, 5}) == a);
    CHECK(a.meet(b) == SetPartition::discrete(3));
    CHECK_THROWS_AS(SetPartition(3, {{0, 1}, {1, 2}}), DomainError);
}

TEST_CASE("non-crossing partitions") {
    CHECK(nc_partitions(1).size() == 1);
    CHECK(nc_partitions(3).size() == 5);
    CHECK(nc_partitions(6).size() == 132);
    const auto cat = oracle::catalan_table(10);
    for (int p = 1; p <= 9; ++p) {
        const auto nc = nc_partitions(p);
        CHECK(static_cast<long long>(nc.size()) == cat[static_cast<size_t>(p)]);
        // brute force: every NC set partition appears
        long long brute = 0;
        for (const auto& s : set_partitions(p)) brute += oracle::crossing_free(s.labels());
        if (p <= 8) CHECK(brute == cat[static_cast<size_t>(p)]);
        for (const auto& x : nc) CHECK(oracle::crossing_free(x.partition().labels()));
    }
    CHECK_THROWS_AS(nc_partitions(13), CapExceeded);
}

TEST_CASE("NC partition <-> geodesic permutation") {
    for (int p = 1; p <= 7; ++p) {
        std::set<Permutation> seen;
        for (const auto& x : nc_partitions(p)) {
            const Permutation a = x.to_permutation();
            CHECK(is_geodesic(a));
            CHECK(NCPartition::from_geodesic(a) == x);
            CHECK(induced_partition(a) == x.partition());
            seen.insert(a);
        }
        CHECK(seen.size() == nc_partitions(p).size());
    }
    CHECK_THROWS_AS(NCPartition(SetPartition(4, {{0, 2}, {1, 3}})), DomainError);
}

TEST_CASE("Kreweras complement") {
    for (int p = 1; p <= 6; ++p) {
        CHECK(kreweras(NCPartition(SetPartition::full(p))).partition() == SetPartition::discrete(p));
        CHECK(kreweras(NCPartition(SetPartition::discrete(p))).partition() == SetPartition::full(p));
        for (const auto& x : nc_partitions(p)) {
            const NCPartition k = kreweras(x);
            CHECK(x.block_count() + k.block_count() == p + 1);
            CHECK(k.partition().labels() == oracle::kreweras_bruteforce(x.partition().labels()));
        }
    }
    const NCPartition pi(SetPartition(4, {{0, 1}, {2, 3}}));
    CHECK(kreweras(pi).partition() == SetPartition(4, {{0}, {1, 3}, {2}}));
}

TEST_CASE("Moebius function on NC(p)") {
    const auto one = [](int p) { return NCPartition(SetPartition::full(p)); };
    const auto zero = [](int p) { return NCPartition(SetPartition::discrete(p)); };
    CHECK(mobius_nc(one(3), one(3)) == 1);
    CHECK(mobius_nc(zero(2), one(2)) == -1);
    CHECK(mobius_nc(zero(3), one(3)) == 2);
    CHECK(mobius_nc(zero(4), one(4)) == -5);
    CHECK_THROWS_AS(mobius_nc(one(3), zero(3)), DomainError);
    // defining property: sum over sigma <= tau <= pi of mu(tau, pi) = [sigma == pi]
    for (int p = 1; p <= 5; ++p) {
        const auto nc = nc_partitions(p);
        for (const auto& s : nc)
            for (const auto& pi : nc) {
                if (!leq_partition(s, pi)) continue;
                BigInt sum = 0;
                for (const auto& t : nc)
                    if (leq_partition(s, t) && leq_partition(t, pi)) sum += mobius_nc(t, pi);
                CHECK(sum == (s == pi ? 1 : 0));
            }
    }
}

TEST_CASE("Catalan and Fuss-Catalan numbers") {
    CHECK(catalan(0) == 1);
    CHECK(catalan(4) == 14);
    CHECK(fuss_catalan_2(0) == 1);
    CHECK(fuss_catalan_2(2) == 3);
    CHECK(fuss_catalan_2(3) == 12);
    const auto cat = oracle::catalan_table(20);
    for (int i = 0; i <= 20; ++i) CHECK(catalan(i) == static_cast<long>(cat[static_cast<size_t>(i)]));
    // FC_2 recursion: sum over i+j+k = q-1 of products
    for (int q = 1; q <= 10; ++q) {
        BigInt s = 0;
        for (int i = 0; i < q; ++i)
            for (int j = 0; i + j < q; ++j) s += fuss_catalan_2(i) * fuss_catalan_2(j) * fuss_catalan_2(q - 1 - i - j);
        CHECK(s == fuss_catalan_2(q));
    }
}
