#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

#include <json.hpp>

#include "cli.hpp"
#include "wm/asymptotics.hpp"
#include "wm/maps.hpp"
#include "wm/moments.hpp"
#include "wm/montecarlo.hpp"
#include "wm/parallel.hpp"

using namespace wm;
using nlohmann::json;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
    void fail(const std::string& why) {
        if (pass) detail = why;
        pass = false;
    }
    void expect(bool ok, const std::string& why) {
        if (!ok) fail(why);
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

json cli(const std::vector<std::string>& args, int* code = nullptr) {
    std::ostringstream out, err;
    const int c = run_cli(args, out, err);
    if (code) *code = c;
    if (out.str().empty()) return json();
    return json::parse(out.str());
}

std::vector<Letter> word_of_mask(int p, int mask) {
    std::vector<Letter> f;
    for (int i = 0; i < p; ++i) f.push_back(mask >> i & 1 ? Letter::AC : Letter::AB);
    return f;
}

MomentPolynomial merged(const MomentPolynomial& poly, const MarginalWord& w) {
    std::vector<std::vector<int>> groups;
    std::vector<std::string> names;
    for (int c = 0; c < w.n(); ++c)
        if (!w.is_moving(c)) {
            groups.push_back({c});
            names.push_back("N" + std::to_string(c));
        }
    if (!w.moving_colors().empty()) {
        groups.push_back(w.moving_colors());
        names.push_back("NJ");
    }
    return poly.merge_variables(groups, names);
}

Outcome exact_formulas() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    o.expect(cli({"exact", "--bipartite", "-p", "2", "--symbolic"})["polynomial"]["text"] == "N M^2 + N^2 M", "bipartite p=2");
    o.expect(cli({"exact", "--word", "AB,AC", "--symbolic"})["polynomial"]["text"] == "N_A N_{B,C}^3 N_D^2 + N_A^2 N_{B,C} N_D",
             "f=(AB,AC)");
    const std::vector<std::pair<std::string, std::string>> pq{
        {"P", "1 + N^{-2}"},
        {"Q", "1"},
        {"P", "3 + 8N^{-2} + 8N^{-4} + 5N^{-6}"},
        {"Q", "3 + N^{-2}"},
        {"P", "12 + 54N^{-2} + 135N^{-4} + 278N^{-6} + 170N^{-8} + 71N^{-10}"},
        {"Q", "12 + 21N^{-2} + 3N^{-4}"}};
    for (size_t i = 0; i < pq.size(); ++i) {
        const std::string p = std::to_string(i / 2 + 1);
        o.expect(cli({"exact", "--family", pq[i].first, "-p", p})["text"] == pq[i].second, pq[i].first + p);
    }
    const double t = seconds_since(t0);
    o.expect(t < 10, "took " + std::to_string(t) + " s");
    return o;
}

Outcome oracle_equivalence() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    long checked = 0;
    for (int p = 1; p <= 4; ++p)
        for (int mask = 0; mask < (1 << p); ++mask) {
            const MarginalWord w = MarginalWord::four_partite(word_of_mask(p, mask));
            o.expect(merged(exact_moment(w), w) == merged(wick_oracle_moment(w), w), "4-partite polynomial " + w.to_string());
            for (long a = 1; a <= 3; ++a)
                for (long b = 1; b <= 3; ++b)
                    for (long c = 1; c <= 3; ++c)
                        for (long d = 1; d <= 3; ++d) {
                            // mixed words need N_B = N_C
                            if (b != c && mask != 0 && mask != (1 << p) - 1) continue;
                            o.expect(exact_moment_value(w, {a, b, c, d}) == wick_oracle_value(w, {a, b, c, d}),
                                     "4-partite value " + w.to_string());
                            ++checked;
                        }
        }
    for (int p = 1; p <= 5; ++p) {
        const MarginalWord w = MarginalWord::bipartite(p);
        o.expect(exact_moment(w) == wick_oracle_moment(w), "bipartite p=" + std::to_string(p));
    }
    std::mt19937 rng(20240611);
    auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    for (int t = 0; t < 20; ++t) {
        const int n = uni(2, 6), width = uni(1, std::min(3, n)), p = uni(1, 3);
        std::vector<std::vector<int>> subs;
        std::vector<Permutation> sg;
        for (int a = 0; a < p; ++a) {
            std::vector<int> colors(static_cast<size_t>(n));
            std::iota(colors.begin(), colors.end(), 0);
            std::shuffle(colors.begin(), colors.end(), rng);
            colors.resize(static_cast<size_t>(width));
            std::sort(colors.begin(), colors.end());
            subs.push_back(colors);
            std::vector<int> s(static_cast<size_t>(width));
            std::iota(s.begin(), s.end(), 0);
            std::shuffle(s.begin(), s.end(), rng);
            sg.emplace_back(s);
        }
        const MarginalWord w(n, subs, sg);
        o.expect(merged(exact_moment(w), w) == merged(wick_oracle_moment(w), w), "random word " + w.to_string());
    }
    const double t = seconds_since(t0);
    o.expect(t < 120, "took " + std::to_string(t) + " s");
    if (o.pass) o.detail = std::to_string(checked) + " 4-partite evaluations";
    return o;
}

Outcome limit_table() {
    Outcome o;
    const std::vector<std::pair<std::string, std::string>> rows{
        {"AB,AC", "c^2 + c/m^2"},
        {"AB,AB,AC", "c^3 + c^2 + 2c^2/m^2 + c/m^2"},
        {"AB,AB,AC,AC", "c^4 + 2c^3 + c^2 + 4c^3/m^2 + 4c^2/m^2 + c/m^2 + c^2/m^4"},
        {"AB,AC,AB,AC", "c^4 + 2c^3 + 4c^3/m^2 + 4c^2/m^2 + 2c^2/m^4 + c/m^4"}};
    for (const auto& [w, want] : rows) {
        const std::string got = limit_moment_unbalanced4(parse_letters(w)).to_string();
        o.expect(got == want, w + " gave " + got);
    }
    return o;
}

Outcome combinatorial_counts() {
    Outcome o;
    for (int p = 1; p <= 7; ++p) {
        const BigInt c = catalan(p);
        o.expect(BigInt(static_cast<unsigned long>(nc_partitions(p).size())) == c, "NC(" + std::to_string(p) + ")");
        o.expect(BigInt(static_cast<unsigned long>(enumerate_maps(p, 0).size())) == c, "planar maps p=" + std::to_string(p));
    }
    for (int q = 1; q <= 6; ++q) {
        const BigInt fc = binomial(3 * static_cast<unsigned>(q), static_cast<unsigned>(q)) / (2 * q + 1);
        o.expect(fuss_catalan_2(q) == fc, "FC_2");
        o.expect(nc_two_chains(q) == fc, "2-chains q=" + std::to_string(q));
        const std::vector<int> ones(static_cast<size_t>(q), 1);
        o.expect(limit_moment_prop35(ones, ones) == fc, "1^q q=" + std::to_string(q));
    }
    // every (u, d) with 1 <= sum <= 8 and at most five blocks
    long cases = 0;
    for (int q = 1; q <= 5; ++q) {
        std::vector<int> v(static_cast<size_t>(2 * q), 0);
        std::function<void(int, int)> rec = [&](int i, int left) {
            if (i == 2 * q) {
                if (left == 8) return;
                const std::vector<int> u(v.begin(), v.begin() + q), d(v.begin() + q, v.end());
                o.expect(tree_count_recursive(u, d) == limit_moment_prop35(u, d), "tree recursion");
                ++cases;
                return;
            }
            for (int x = 0; x <= left; ++x) {
                v[static_cast<size_t>(i)] = x;
                rec(i + 1, left - x);
            }
        };
        rec(0, 8);
    }
    if (o.pass) o.detail = std::to_string(cases) + " tree cases";
    return o;
}

Outcome inequality_suite() {
    Outcome o;
    long violations = 0, pairs = 0;
    for (int p = 1; p <= 6; ++p)
        for (int mask = 0; mask < (1 << p); ++mask) {
            const auto f = word_of_mask(p, mask);
            const MarginalWord w = MarginalWord::four_partite(f).with_roles({0}, {3});
            const SetPartition ker = SetPartition::kernel_of(f);
            for_each_permutation(p, [&](const Permutation& a) {
                ++pairs;
                const int L = L_exponent_4partite(f, a);
                const bool geo = is_geodesic(a);
                violations += L > p + 1;
                violations += (L == p + 1) != (geo && leq_partition(induced_partition(a), ker));
                if (geo) violations += L != p + 1 - alt(f, a);
                violations += 2 * p - L < p - 1;
                const DeltaSigma d = delta_sigma_quantities(unfold(a, w), a);
                violations += L != w.k() * p + d.vblack + (2 - 2 * w.k()) * (cycle_count(a)) - tilde_L(w, a);
            });
        }
    o.expect(violations == 0, std::to_string(violations) + " violations");
    if (o.pass) o.detail = std::to_string(pairs) + " (word, alpha) pairs";
    return o;
}

Outcome regime_classification() {
    Outcome o;
    const Permutation swap({0, 2, 1});
    const Permutation id = Permutation::identity(2), tr = Permutation::from_cycles(2, {{0, 1}});
    const std::vector<std::vector<Permutation>> expected{{tr}, {id, tr}, {id}, {id}};
    for (int n = 3; n <= 6; ++n) {
        auto mins = regime_exponent_mu(MarginalWord(n, {{0, 1, 2}, {0, 1, 2}}, {swap, swap})).minimizers;
        auto want = expected[static_cast<size_t>(n - 3)];
        std::sort(mins.begin(), mins.end());
        std::sort(want.begin(), want.end());
        o.expect(mins == want, "minimizers at n=" + std::to_string(n));
    }
    const std::vector<std::vector<int>> pairs{{0, 1, 2}, {0, 1, 3}, {0, 2, 3}};
    long instances = 0;
    for (int p = 1; p <= 5; ++p) {
        int total = 1;
        for (int i = 0; i < p; ++i) total *= 6;
        const Permutation one_white = Permutation::full_cycle(p).inverse();
        for (int code = 0; code < total; ++code) {
            std::vector<std::vector<int>> subs;
            std::vector<Permutation> sg;
            for (int i = 0, x = code; i < p; ++i, x /= 6) {
                subs.push_back(pairs[static_cast<size_t>(x % 3)]);
                sg.push_back(x / 3 % 2 ? swap : Permutation::identity(3));
            }
            const MarginalWord w = MarginalWord(5, subs, sg).with_roles({0}, {4});
            if (delta_sigma_quantities(unfold(one_white, w), one_white).vblack != 2) continue;
            ++instances;
            o.expect(tilde_L(w, one_white) == phi_sum(w), "tilde L vs Phi on " + w.to_string());
        }
    }
    if (o.pass) o.detail = std::to_string(instances) + " two-vertex instances";
    return o;
}

Outcome monte_carlo() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<std::vector<std::string>> runs{
        {"--threads", "1", "compare", "--bipartite", "-p", "1", "--dims", "8,8", "--samples", "10000", "--seed", "1"},
        {"--threads", "1", "compare", "--word", "AB,AC", "--dims", "8,4,4,8", "--samples", "10000", "--seed", "2"},
        {"--threads", "1", "compare", "--entrywise", "--N", "6", "--M", "4", "--indices", "0,2,1", "--samples", "10000", "--seed", "3"}};
    std::string zs;
    for (const auto& r : runs) {
        int code = 0;
        const json j = cli(r, &code);
        o.expect(code == kExitOk && j.value("pass", false), "compare " + r[3] + " exit " + std::to_string(code));
        if (j.contains("rows")) zs += " z=" + j["rows"][0]["z"].dump();
    }
    const double t = seconds_since(t0);
    o.expect(t < 180, "took " + std::to_string(t) + " s");
    // exact/limit ratio error shrinks from N=4 to N=16
    for (const char* s : {"AB,AC", "AB,AB,AC", "AB,AB,AC,AC", "AB,AC,AB,AC", "AB,AC,AC,AB,AC"}) {
        const auto f = parse_letters(s);
        const int p = static_cast<int>(f.size());
        const double lim = limit_moment_balanced4(f).evaluate(1.0);
        std::vector<double> err;
        for (long n : {4, 8, 16}) {
            BigInt scale = 1;
            for (int i = 0; i < 2 * (p + 1); ++i) scale *= n;
            err.push_back(std::abs(Rational(exact_moment_value(MarginalWord::four_partite(f), {n, n, n, n}), scale).get_d() / lim - 1));
        }
        o.expect(err[2] < err[1] && err[1] < err[0], std::string("convergence for ") + s);
    }
    if (o.pass) o.detail = zs.substr(1);
    return o;
}

Outcome densities() {
    Outcome o;
    for (double c : {0.5, 1.0, 2.0, 5.0})
        for (int p = 1; p <= 5; ++p)
            o.expect(std::abs(mp_quadrature_moment(p, c) - mp_moment(p, c)) <= 1e-6 * std::max(1.0, mp_moment(p, c)),
                     "quadrature c=" + std::to_string(c));
    HistSpec spec;
    spec.N = 64;
    spec.M = 64;
    spec.samples = 50;
    spec.seed = 1;
    const Histogram h = eigen_hist(spec);
    o.expect(std::abs(h.moments[0] - 1) <= 0.03, "first moment " + std::to_string(h.moments[0]));
    o.expect(std::abs(h.moments[1] - 2) <= 0.06, "second moment " + std::to_string(h.moments[1]));
    if (o.pass) o.detail = "moments " + std::to_string(h.moments[0]) + ", " + std::to_string(h.moments[1]);
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"exact-formula fidelity", exact_formulas},
        {"oracle equivalence", oracle_equivalence},
        {"limit-table fidelity", limit_table},
        {"combinatorial counts", combinatorial_counts},
        {"inequality/equality suite", inequality_suite},
        {"regime classification", regime_classification},
        {"Monte-Carlo agreement", monte_carlo},
        {"density checks", densities}};
    int failed = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        failed += !o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << " " << i + 1 << " " << criteria[i].first;
        if (!o.detail.empty()) std::cout << " (" << o.detail << ")";
        std::cout << std::endl;
    }
    return failed == 0 ? 0 : 1;
}
