#include "wm/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "wm/moments.hpp"

namespace wm {

void LimitMoment::add(int c_power, int m_negpower, const Rational& coeff) {
    const Key key{c_power, m_negpower};
    Rational& t = terms_[key];
    t += coeff;
    if (t == 0) terms_.erase(key);
}

LimitMoment& LimitMoment::operator+=(const LimitMoment& o) {
    for (const auto& [k, v] : o.terms_) add(k.first, k.second, v);
    return *this;
}

double LimitMoment::evaluate(double c, double m) const {
    double s = 0;
    for (const auto& [k, v] : terms_) s += v.get_d() * std::pow(c, k.first) * std::pow(m, -k.second);
    return s;
}

Rational LimitMoment::evaluate(const Rational& c, const Rational& m) const {
    auto pw = [](const Rational& x, int e) {
        Rational r = 1;
        for (int i = 0; i < std::abs(e); ++i) r *= x;
        return e < 0 ? Rational(1 / r) : r;
    };
    Rational s = 0;
    for (const auto& [k, v] : terms_) s += v * pw(c, k.first) * pw(m, -k.second);
    return s;
}

LimitMoment LimitMoment::drop_m() const {
    LimitMoment out;
    for (const auto& [k, v] : terms_)
        if (k.second == 0) out.add(k.first, 0, v);
    return out;
}

LimitMoment LimitMoment::at_m1() const {
    LimitMoment out;
    for (const auto& [k, v] : terms_) out.add(k.first, 0, v);
    return out;
}

std::string LimitMoment::to_string() const {
    if (terms_.empty()) return "0";
    std::vector<std::pair<Key, Rational>> order(terms_.begin(), terms_.end());
    std::stable_sort(order.begin(), order.end(), [](const auto& x, const auto& y) {
        if (x.first.second != y.first.second) return x.first.second < y.first.second;
        return x.first.first > y.first.first;
    });
    std::ostringstream os;
    bool first = true;
    for (auto [key, c] : order) {
        const auto [cp, mp] = key;
        if (!first) os << (c < 0 ? " + -" : " + ");
        else if (c < 0) os << "-";
        first = false;
        if (c < 0) c = -c;
        std::string cs;
        if (cp == 1) cs = "c";
        else if (cp != 0) cs = "c^" + std::to_string(cp);
        if (mp < 0) cs += std::string(cs.empty() ? "" : " ") + (mp == -1 ? "m" : "m^" + std::to_string(-mp));
        const std::string coeff = c.get_den() == 1 ? c.get_num().get_str() : "(" + rational_to_string(c) + ")";
        if (cs.empty()) os << coeff;
        else if (c == 1) os << cs;
        else os << coeff << cs;
        if (mp > 0) {
            os << "/m";
            if (mp != 1) os << "^" << mp;
        }
    }
    return os.str();
}

nlohmann::json LimitMoment::to_json() const {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [k, v] : terms_)
        terms.push_back({{"c_power", k.first}, {"m_negpower", k.second}, {"coeff", rational_to_string(v)}});
    return {{"terms", terms}, {"text", to_string()}};
}

LimitMoment LimitMoment::from_json(const nlohmann::json& j) {
    try {
        LimitMoment out;
        for (const auto& t : j.at("terms"))
            out.add(t.at("c_power").get<int>(), t.at("m_negpower").get<int>(), Rational(t.at("coeff").get<std::string>()));
        return out;
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("limit moment JSON: ") + e.what());
    } catch (const std::invalid_argument&) {
        throw DomainError("limit moment JSON: bad coefficient");
    }
}

// ---------------------------------------------------------------- MP law

LimitMoment mp_moment(int p) {
    if (p < 1) throw DomainError("moment order must be positive");
    LimitMoment out;
    for (const auto& pi : nc_partitions(p)) out.add(pi.block_count(), 0, 1);
    return out;
}

double mp_moment(int p, double c) { return mp_moment(p).evaluate(c); }

double mp_atom(double c) { return std::max(1.0 - c, 0.0); }

double mp_density(double x, double c) {
    const double a = std::pow(1 - std::sqrt(c), 2), b = std::pow(1 + std::sqrt(c), 2);
    if (x <= a || x >= b || x <= 0) return 0.0;
    return std::sqrt((b - x) * (x - a)) / (2 * std::numbers::pi * x);
}

double mp_squared_density(double x, double c) {
    if (x <= 0) return 0.0;
    const double y = std::sqrt(x);
    return mp_density(y, c) / (2 * y);
}

namespace {

// Midpoint rule on x = (a+b)/2 + (b-a)/2 cos(theta); the weight
// sin(theta) makes the integrand smooth and periodic.
template <class F>
double chebyshev_integral(double a, double b, int nodes, F&& g) {
    const double h = std::numbers::pi / nodes;
    double s = 0;
    for (int i = 0; i < nodes; ++i) {
        const double t = (i + 0.5) * h;
        const double x = 0.5 * (a + b) + 0.5 * (b - a) * std::cos(t);
        s += g(x) * 0.5 * (b - a) * std::sin(t);
    }
    return s * h;
}

}  // namespace

double mp_quadrature_moment(int p, double c, int nodes) {
    const double a = std::pow(1 - std::sqrt(c), 2), b = std::pow(1 + std::sqrt(c), 2);
    // density * dx written out to avoid evaluating at the edges
    const double cont = chebyshev_integral(a, b, nodes, [&](double x) {
        const double r = std::sqrt(std::max((b - x) * (x - a), 0.0));
        return std::pow(x, p - 1) * r / (2 * std::numbers::pi);
    });
    return cont + (p == 0 ? mp_atom(c) : 0.0);
}

double mp_squared_quadrature_moment(int p, double c, int nodes) {
    const double a = std::pow(1 - std::sqrt(c), 2), b = std::pow(1 + std::sqrt(c), 2);
    // x = y^2, dx = 2y dy
    const double cont = chebyshev_integral(a, b, nodes, [&](double y) {
        return std::pow(y * y, p) * mp_squared_density(y * y, c) * 2 * y;
    });
    return cont + (p == 0 ? mp_atom(c) : 0.0);
}

// ---------------------------------------------------------------- 4-partite

SetPartition ker_f(const std::vector<Letter>& f) { return SetPartition::kernel_of(f); }

LimitMoment limit_moment_balanced4(const std::vector<Letter>& f) {
    const int p = static_cast<int>(f.size());
    const SetPartition k = ker_f(f);
    LimitMoment out;
    for (const auto& pi : nc_partitions(p))
        if (leq_partition(pi.partition(), k)) out.add(pi.block_count(), 0, 1);
    const LimitMoment maps = limit_moment_balanced4_maps(f);
    if (!(maps == out)) throw std::logic_error("NC and map forms of the balanced limit disagree");
    return out;
}

LimitMoment limit_moment_balanced4_maps(const std::vector<Letter>& f) {
    const int p = static_cast<int>(f.size());
    const MarginalWord w = MarginalWord::four_partite(f);
    LimitMoment out;
    for_each_permutation(p, [&](const Permutation& a) {
        if (!is_geodesic(a)) return;
        if (delta_sigma_quantities(unfold(a, w), a).delta == 0) out.add(cycle_count(a), 0, 1);
    });
    return out;
}

std::vector<Letter> word_from_powers(const std::vector<int>& r, const std::vector<int>& s) {
    if (r.size() != s.size() || r.empty()) throw DomainError("r and s must have the same positive length");
    std::vector<Letter> f;
    for (size_t i = 0; i < r.size(); ++i) {
        if (r[i] < 0 || s[i] < 0) throw DomainError("powers must be nonnegative");
        f.insert(f.end(), static_cast<size_t>(s[i]), Letter::AC);
        f.insert(f.end(), static_cast<size_t>(r[i]), Letter::AB);
    }
    return f;
}

namespace {

BigInt cat_product(const NCPartition& part, const std::vector<int>& v) {
    BigInt out = 1;
    for (const auto& b : part.blocks()) {
        int s = 0;
        for (int i : b) s += v[static_cast<size_t>(i)];
        out *= catalan(s);
    }
    return out;
}

}  // namespace

BigInt limit_moment_prop35(const std::vector<int>& r, const std::vector<int>& s) {
    if (r.size() != s.size() || r.empty()) throw DomainError("r and s must have the same positive length");
    const int q = static_cast<int>(r.size());
    if (q > kPermutationCap) throw CapExceeded("q limited to 8");
    // the trace reads W_AB^{r_q} W_AC^{s_q} ... W_AB^{r_1} W_AC^{s_1} from the left
    const std::vector<int> rr(r.rbegin(), r.rend()), ss(s.rbegin(), s.rend());
    const auto nc = nc_partitions(q);
    BigInt total = 0;
    for (const auto& pi : nc) {
        const BigInt kr = cat_product(kreweras(pi), ss);
        for (const auto& sigma : nc)
            if (leq_partition(sigma, pi)) total += cat_product(sigma, rr) * kr * mobius_nc(sigma, pi);
    }
    return total;
}

BigInt nc_two_chains(int q) {
    const auto nc = nc_partitions(q);
    BigInt n = 0;
    for (const auto& pi : nc)
        for (const auto& sigma : nc)
            if (leq_partition(sigma, pi)) n += 1;
    return n;
}

namespace {

// W^{d_1..d_q}_{u_1..u_q} = lim tr(x^{u_1} y^{d_1} ... x^{u_q} y^{d_q}), x = AB, y = AC,
// by the two tree recursions: peel one y (resp. x) from the last block. The
// trailing Catalan sums run over s = 0..d_q (resp. u_q) of the reduced block.
struct TreeRecursion {
    using Key = std::pair<std::vector<int>, std::vector<int>>;
    std::map<Key, BigInt> memo;

    BigInt w(std::vector<int> u, std::vector<int> d) {
        while (!u.empty() && u.back() == 0 && d.back() == 0) {
            u.pop_back();
            d.pop_back();
        }
        if (u.empty()) return 1;
        Key key{u, d};
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        const size_t q = u.size();
        BigInt total = 0;
        if (d.back() > 0) {
            const int dq = d.back() - 1;
            for (size_t k = 1; k < q; ++k)
                for (int s = 0; s < d[k - 1]; ++s) {
                    std::vector<int> u1(u.begin(), u.begin() + static_cast<long>(k)), d1(d.begin(), d.begin() + static_cast<long>(k - 1));
                    d1.push_back(s);
                    std::vector<int> u2(u.begin() + static_cast<long>(k), u.end()), d2(d.begin() + static_cast<long>(k), d.end() - 1);
                    d2.push_back(dq + d[k - 1] - s);
                    total += w(u1, d1) * w(u2, d2);
                }
            for (int s = 0; s <= dq; ++s) {
                std::vector<int> d1 = d;
                d1.back() = s;
                total += w(u, d1) * catalan(dq - s);
            }
        } else {
            const int uq = u.back() - 1;
            for (size_t k = 1; k < q; ++k)
                for (int s = 0; s < u[k - 1]; ++s) {
                    std::vector<int> u1(u.begin(), u.begin() + static_cast<long>(k - 1)), d1(d.begin(), d.begin() + static_cast<long>(k - 1));
                    u1.push_back(s);
                    d1.push_back(d.back());
                    std::vector<int> u2{uq + u[k - 1] - s}, d2(d.begin() + static_cast<long>(k - 1), d.end() - 1);
                    u2.insert(u2.end(), u.begin() + static_cast<long>(k), u.end() - 1);
                    total += w(u1, d1) * w(u2, d2);
                }
            for (int s = 0; s <= uq; ++s) {
                std::vector<int> u1 = u;
                u1.back() = s;
                total += w(u1, d) * catalan(uq - s);
            }
        }
        memo.emplace(std::move(key), total);
        return total;
    }
};

}  // namespace

BigInt tree_count_recursive(const std::vector<int>& u, const std::vector<int>& d) {
    if (u.size() != d.size() || u.empty()) throw DomainError("u and d must have the same positive length");
    int total = 0;
    for (size_t i = 0; i < u.size(); ++i) {
        if (u[i] < 0 || d[i] < 0) throw DomainError("powers must be nonnegative");
        total += u[i] + d[i];
    }
    if (total > 16) throw CapExceeded("tree recursion limited to total length 16");
    // same labelling as limit_moment_prop35: the trace reads the blocks from q down to 1
    TreeRecursion tr;
    return tr.w(std::vector<int>(u.rbegin(), u.rend()), std::vector<int>(d.rbegin(), d.rend()));
}

LimitMoment limit_moment_unbalanced4(const std::vector<Letter>& f) {
    const int p = static_cast<int>(f.size());
    LimitMoment out;
    for (const auto& pi : nc_partitions(p)) {
        const Permutation a = pi.to_permutation();
        out.add(pi.block_count(), alt(f, a), 1);
    }
    return out;
}

LimitMoment free_cumulant_unbalanced4(const std::vector<Letter>& f) {
    LimitMoment out;
    out.add(1, alt(f, Permutation::full_cycle(static_cast<int>(f.size()))), 1);
    return out;
}

LimitMoment moments_from_cumulants4(const std::vector<Letter>& f) {
    const int p = static_cast<int>(f.size());
    LimitMoment out;
    for (const auto& pi : nc_partitions(p)) {
        int changes = 0;
        for (const auto& b : pi.blocks()) {
            std::vector<Letter> sub;
            for (int i : b) sub.push_back(f[static_cast<size_t>(i)]);
            for (size_t j = 0; j < sub.size(); ++j) changes += sub[j] != sub[(j + 1) % sub.size()];
        }
        out.add(pi.block_count(), changes, 1);
    }
    return out;
}

// ---------------------------------------------------------------- general words

namespace {

Rational weight(const std::vector<int>& e, const std::vector<Rational>& c) {
    Rational w = 1;
    for (size_t i = 0; i < e.size(); ++i)
        for (int j = 0; j < e[i]; ++j) w *= c[i];
    return w;
}

void check_constants(const MarginalWord& w, const std::vector<Rational>& c) {
    if (static_cast<int>(c.size()) != w.n()) throw DomainError("one constant per color is required");
    for (const auto& x : c)
        if (x <= 0) throw DomainError("constants must be positive");
    for (int col : w.moving_colors())
        if (c[static_cast<size_t>(col)] != c[static_cast<size_t>(w.moving_colors().front())])
            throw DomainError("moving colors must share one constant");
}

}  // namespace

Rational limit_moment_balanced_general(const PermutedMarginalWord& word, const std::vector<Rational>& c) {
    const MarginalWord w = word.to_marginal_word();
    check_constants(w, c);
    const SetPartition k = word.ker_f().meet(word.ker_pi());
    Rational total = 0;
    for (const auto& pi : nc_partitions(word.p()))
        if (leq_partition(pi.partition(), k)) total += weight(moment_exponents(w, pi.to_permutation()), c);
    return total;
}

Rational limit_moment_balanced_general_maps(const PermutedMarginalWord& word, const std::vector<Rational>& c) {
    const MarginalWord w = word.to_marginal_word();
    check_constants(w, c);
    Rational total = 0;
    for_each_permutation(word.p(), [&](const Permutation& a) {
        // with no moving colors tilde L vanishes identically; planarity is separate
        if (is_geodesic(a) && tilde_L(w, a) == 0) total += weight(moment_exponents(w, a), c);
    });
    return total;
}

MuResult regime_exponent_mu(const MarginalWord& word) {
    if (word.p() > kOracleCap) throw CapExceeded("mu search limited to p <= 6");
    const int slope = 2 * word.k() + 2 * word.l() - word.n();
    if (slope < 0) throw DomainError("regime requires 2k + 2l >= n");
    const int p = word.p();
    const Permutation g = Permutation::full_cycle(p);
    MuResult res{0, {}, slope};
    bool first = true;
    for_each_permutation(p, [&](const Permutation& a) {
        const int v = cycle_count(a) + 1;
        const int genus = (p + 1 - cycle_count(a) - cycle_count(g * a)) / 2;
        const int val = 2 * word.l() * genus + tilde_L(word, a) + slope * (v - 2);
        if (first || val < res.mu) {
            res.mu = val;
            res.minimizers.clear();
            first = false;
        }
        if (val == res.mu) res.minimizers.push_back(a);
    });
    return res;
}

LimitMoment limit_moment_unbalanced_general(const MarginalWord& word) {
    if (word.p() > kOracleCap) throw CapExceeded("unbalanced limit limited to p <= 6");
    if (static_cast<int>(word.traced_colors().size()) != word.l())
        throw DomainError("unbalanced regime requires as many traced colors as fixed colors");
    const int p = word.p(), k = word.k(), moving = static_cast<int>(word.moving_colors().size());
    LimitMoment out;
    for (const auto& pi : nc_partitions(p)) {
        const Permutation a = pi.to_permutation();
        const UnfoldedMap u = unfold(a, word);
        const DeltaSigma d = delta_sigma_quantities(u, a);
        const int v = cycle_count(a) + 1;
        int e = k * p + d.vblack + (moving - 2 * k) * (v - 1) - 2 * (d.genus_u + d.delta + d.sigma);
        if (d.vblack == k) e -= k * (p + 1);
        out.add(v - 1, -e, 1);
    }
    return out;
}

Permutation phi_completion(const MarginalWord& word, int a) {
    const auto& mv = word.moving_colors();
    const int q = static_cast<int>(mv.size());
    auto idx = [&](int c) { return static_cast<int>(std::find(mv.begin(), mv.end(), c) - mv.begin()); };
    std::vector<int> img(static_cast<size_t>(q), -1);
    std::vector<char> hit(static_cast<size_t>(q), 0);
    for (int c : word.moving_part(a)) {
        const int t = idx(word.map_color(a, c));
        img[static_cast<size_t>(idx(c))] = t;
        hit[static_cast<size_t>(t)] = 1;
    }
    std::vector<int> free_dom, free_cod;
    for (int i = 0; i < q; ++i) {
        if (img[static_cast<size_t>(i)] < 0) free_dom.push_back(i);
        if (!hit[static_cast<size_t>(i)]) free_cod.push_back(i);
    }
    for (size_t i = 0; i < free_dom.size(); ++i) img[static_cast<size_t>(free_dom[i])] = free_cod[i];
    return Permutation(std::move(img));
}

int phi_inversions(const MarginalWord& word, int a) {
    const Permutation s = phi_completion(word, a);
    int inv = 0;
    for (int i = 0; i < s.size(); ++i)
        for (int j = i + 1; j < s.size(); ++j) inv += s(i) > s(j);
    return inv;
}

int phi_length(const MarginalWord& word, int a) { return length(phi_completion(word, a)); }

int phi_sum(const MarginalWord& word) {
    int s = 0;
    for (int a = 0; a < word.p(); ++a) s += phi_length(word, a);
    return s;
}

}  // namespace wm
