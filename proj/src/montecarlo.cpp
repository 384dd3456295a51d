#include "wm/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <sstream>

#include "wm/parallel.hpp"

namespace wm {

CMatrix multiply(const CMatrix& x, const CMatrix& y) {
    if (x.cols != y.rows) throw DomainError("matrix shapes do not match");
    CMatrix z(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            const Complex v = x(i, k);
            if (v == Complex(0)) continue;
            for (int j = 0; j < y.cols; ++j) z(i, j) += v * y(k, j);
        }
    return z;
}

CMatrix adjoint(const CMatrix& x) {
    CMatrix z(x.cols, x.rows);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j) z(j, i) = std::conj(x(i, j));
    return z;
}

Complex trace(const CMatrix& x) {
    Complex s = 0;
    for (int i = 0; i < std::min(x.rows, x.cols); ++i) s += x(i, i);
    return s;
}

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

long product(const std::vector<long>& d) {
    long s = 1;
    for (long x : d) s *= x;
    return s;
}

// Flat index of a multi-index, leg 0 slowest.
long flatten(const std::vector<long>& idx, const std::vector<long>& dims) {
    long f = 0;
    for (size_t i = 0; i < dims.size(); ++i) f = f * dims[i] + idx[i];
    return f;
}

void unflatten(long f, const std::vector<long>& dims, std::vector<long>& idx) {
    idx.resize(dims.size());
    for (size_t i = dims.size(); i-- > 0;) {
        idx[i] = f % dims[i];
        f /= dims[i];
    }
}

// Flat index over `to` legs with to_idx[s(b)] = from_idx[b].
std::vector<long> leg_transport(const std::vector<long>& from, const std::vector<long>& to, const Permutation& s) {
    if (from.size() != to.size() || s.size() != static_cast<int>(from.size()))
        throw DomainError("leg permutation does not match the factor");
    for (int b = 0; b < s.size(); ++b)
        if (from[static_cast<size_t>(b)] != to[static_cast<size_t>(s(b))])
            throw DomainError("twisted legs have different dimensions");
    const long n = product(from);
    std::vector<long> out(static_cast<size_t>(n)), i, j(to.size());
    for (long f = 0; f < n; ++f) {
        unflatten(f, from, i);
        for (int b = 0; b < s.size(); ++b) j[static_cast<size_t>(s(b))] = i[static_cast<size_t>(b)];
        out[static_cast<size_t>(f)] = flatten(j, to);
    }
    return out;
}

double pairwise_sum(const double* x, size_t n) {
    if (n <= 8) {
        double s = 0;
        for (size_t i = 0; i < n; ++i) s += x[i];
        return s;
    }
    const size_t h = n / 2;
    return pairwise_sum(x, h) + pairwise_sum(x + h, n - h);
}

}  // namespace

GaussianTensor sample_tensor(const DimensionProfile& dims, std::uint64_t seed, std::uint64_t index) {
    if (dims.empty()) throw DomainError("empty dimension profile");
    std::size_t total = 1;
    for (long d : dims) {
        if (d < 1) throw DomainError("dimensions must be positive");
        total *= static_cast<std::size_t>(d);
        if (total > kTensorCap) throw CapExceeded("tensor exceeds 2^24 entries");
    }
    std::mt19937_64 rng(splitmix64(seed ^ splitmix64(index)));
    std::normal_distribution<double> g(0.0, std::sqrt(0.5));
    GaussianTensor x{dims, std::vector<Complex>(total)};
    for (auto& e : x.entries) {
        const double re = g(rng);
        e = Complex(re, g(rng));
    }
    return x;
}

MarginalMatrix marginal(const GaussianTensor& x, const std::vector<int>& subset, const std::optional<Permutation>& pi) {
    const int n = static_cast<int>(x.dims.size());
    std::vector<int> I = subset;
    std::sort(I.begin(), I.end());
    if (I.empty() || std::adjacent_find(I.begin(), I.end()) != I.end() || I.front() < 0 || I.back() >= n)
        throw DomainError("bad marginal subset");
    std::vector<char> in(static_cast<size_t>(n), 0);
    for (int c : I) in[static_cast<size_t>(c)] = 1;
    std::vector<long> kd, rd;
    for (int c = 0; c < n; ++c) (in[static_cast<size_t>(c)] ? kd : rd).push_back(x.dims[static_cast<size_t>(c)]);
    const long rows = product(kd), cols = product(rd);
    if (rows > kMatrixSideCap * 8L) throw CapExceeded("marginal too large");
    CMatrix y(static_cast<int>(rows), static_cast<int>(cols));
    std::vector<long> idx, ki(kd.size()), ri(rd.size());
    for (long f = 0; f < static_cast<long>(x.entries.size()); ++f) {
        unflatten(f, x.dims, idx);
        size_t u = 0, v = 0;
        for (int c = 0; c < n; ++c) (in[static_cast<size_t>(c)] ? ki[u++] : ri[v++]) = idx[static_cast<size_t>(c)];
        y(static_cast<int>(flatten(ki, kd)), static_cast<int>(flatten(ri, rd))) = x.entries[static_cast<size_t>(f)];
    }
    MarginalMatrix out{I, kd, multiply(y, adjoint(y))};
    if (pi) {
        // (j o pi)_b = j_{pi(b)}, i.e. transport along pi^-1
        const std::vector<long> t = leg_transport(kd, kd, pi->inverse());
        CMatrix w(out.m.rows, out.m.cols);
        for (int i = 0; i < w.rows; ++i)
            for (int j = 0; j < w.cols; ++j) w(i, j) = out.m(static_cast<int>(t[static_cast<size_t>(i)]), static_cast<int>(t[static_cast<size_t>(j)]));
        out.m = std::move(w);
    }
    return out;
}

Complex twisted_trace_product(const std::vector<MarginalMatrix>& ms, const std::vector<Permutation>& sigmas) {
    const size_t p = ms.size();
    if (p == 0 || sigmas.size() != p) throw DomainError("one sigma per factor is required");
    CMatrix r = ms[0].m;
    for (size_t a = 0; a + 1 < p; ++a) {
        const auto t = leg_transport(ms[a].leg_dims, ms[a + 1].leg_dims, sigmas[a]);
        const CMatrix& w = ms[a + 1].m;
        CMatrix pw(w.rows, r.rows);
        for (int x = 0; x < w.rows; ++x)
            for (int i = 0; i < r.rows; ++i) pw(x, i) = w(x, static_cast<int>(t[static_cast<size_t>(i)]));
        r = multiply(pw, r);
    }
    const auto t = leg_transport(ms[p - 1].leg_dims, ms[0].leg_dims, sigmas[p - 1]);
    Complex s = 0;
    for (int i = 0; i < r.rows; ++i) s += r(i, static_cast<int>(t[static_cast<size_t>(i)]));
    return s;
}

nlohmann::json MCEstimate::to_json() const {
    return {{"mean", mean}, {"stderr", std_error}, {"samples", samples}, {"seed", seed}};
}

MCEstimate MCEstimate::from_json(const nlohmann::json& j) {
    try {
        return {j.at("mean").get<double>(), j.at("stderr").get<double>(), j.at("samples").get<std::uint64_t>(),
                j.at("seed").get<std::uint64_t>()};
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("estimate JSON: ") + e.what());
    }
}

MCEstimate summarize(const std::vector<double>& values, std::uint64_t seed) {
    const size_t n = values.size();
    if (n < 2) throw DomainError("at least two samples are required");
    const double mean = pairwise_sum(values.data(), n) / static_cast<double>(n);
    std::vector<double> sq(n);
    for (size_t i = 0; i < n; ++i) sq[i] = (values[i] - mean) * (values[i] - mean);
    const double var = pairwise_sum(sq.data(), n) / static_cast<double>(n - 1);
    return {mean, std::sqrt(var / static_cast<double>(n)), n, seed};
}

MCEstimate mc_moment(const MarginalWord& word, const DimensionProfile& dims, std::uint64_t samples, std::uint64_t seed) {
    word.check_dims(dims);
    std::vector<double> v(samples);
    parallel_for(samples, [&](size_t s) {
        const GaussianTensor x = sample_tensor(dims, seed, s);
        std::map<std::vector<int>, MarginalMatrix> cache;
        std::vector<MarginalMatrix> ms;
        for (int a = 0; a < word.p(); ++a) {
            const auto& I = word.subset(a);
            auto it = cache.find(I);
            if (it == cache.end()) it = cache.emplace(I, marginal(x, I)).first;
            ms.push_back(it->second);
        }
        v[s] = twisted_trace_product(ms, word.sigmas()).real();
    });
    return summarize(v, seed);
}

MCEstimate mc_entrywise(long N, long M, const std::vector<int>& indices, std::uint64_t samples, std::uint64_t seed) {
    if (indices.empty()) throw DomainError("at least one index is required");
    for (int i : indices)
        if (i < 0 || i >= N) throw DomainError("index out of range");
    std::vector<double> v(samples);
    parallel_for(samples, [&](size_t s) {
        const GaussianTensor x = sample_tensor({N, M}, seed, s);
        auto w = [&](int i, int j) {
            Complex t = 0;
            for (long k = 0; k < M; ++k)
                t += x.entries[static_cast<size_t>(i * M + k)] * std::conj(x.entries[static_cast<size_t>(j * M + k)]);
            return t;
        };
        // W_{i1 ip} W_{ip i(p-1)} ... W_{i2 i1}
        const size_t p = indices.size();
        Complex prod = 1;
        for (size_t a = 0; a < p; ++a) prod *= w(indices[(p - a) % p], indices[p - 1 - a]);
        v[s] = prod.real();
    });
    return summarize(v, seed);
}

EigenResult hermitian_eigen(const CMatrix& in, double tol, int max_sweeps) {
    if (in.rows != in.cols) throw DomainError("matrix must be square");
    const int n = in.rows;
    if (n > kMatrixSideCap) throw CapExceeded("matrix side limited to 512");
    CMatrix a = in;
    CMatrix v(n, n);
    for (int i = 0; i < n; ++i) v(i, i) = 1;
    double frob = 0;
    for (const auto& z : a.a) frob += std::norm(z);
    frob = std::sqrt(frob);
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off += std::norm(a(i, j));
        if (std::sqrt(off) <= tol * std::max(frob, 1e-300)) break;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                const Complex apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag <= 1e-300) continue;
                const Complex ph = apq / mag;  // e^{i phi}
                const double app = a(p, p).real(), aqq = a(q, q).real();
                const double theta = (aqq - app) / (2 * mag);
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
                const double c = 1 / std::sqrt(t * t + 1), s = t * c;
                const Complex upp = c, upq = s, uqp = -s * std::conj(ph), uqq = c * std::conj(ph);
                for (int k = 0; k < n; ++k) {
                    const Complex x = a(k, p), y = a(k, q);
                    a(k, p) = x * upp + y * uqp;
                    a(k, q) = x * upq + y * uqq;
                }
                for (int k = 0; k < n; ++k) {
                    const Complex x = a(p, k), y = a(q, k);
                    a(p, k) = std::conj(upp) * x + std::conj(uqp) * y;
                    a(q, k) = std::conj(upq) * x + std::conj(uqq) * y;
                }
                a(p, q) = a(q, p) = 0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
                for (int k = 0; k < n; ++k) {
                    const Complex x = v(k, p), y = v(k, q);
                    v(k, p) = x * upp + y * uqp;
                    v(k, q) = x * upq + y * uqq;
                }
            }
    }
    EigenResult r{std::vector<double>(static_cast<size_t>(n)), std::move(v)};
    for (int i = 0; i < n; ++i) r.values[static_cast<size_t>(i)] = a(i, i).real();
    return r;
}

std::vector<double> sample_spectrum(const HistSpec& spec) {
    if (spec.samples == 0) throw DomainError("at least one sample is required");
    std::vector<std::vector<double>> per(spec.samples);
    if (spec.mode == HistSpec::Mode::Bipartite) {
        if (spec.N < 1 || spec.M < 1) throw DomainError("dimensions must be positive");
        if (spec.N > kMatrixSideCap) throw CapExceeded("matrix side limited to 512");
        parallel_for(spec.samples, [&](size_t s) {
            const GaussianTensor x = sample_tensor({spec.N, spec.M}, spec.seed, s);
            auto ev = hermitian_eigen(marginal(x, {0}).m).values;
            for (auto& e : ev) e /= static_cast<double>(spec.N);
            per[s] = std::move(ev);
        });
    } else {
        if (spec.NA < 1 || spec.m < 1 || spec.ND < 1) throw DomainError("dimensions must be positive");
        if (spec.NA * spec.m > kMatrixSideCap) throw CapExceeded("matrix side limited to 512");
        const double scale = static_cast<double>(spec.NA * spec.m) * static_cast<double>(spec.NA * spec.m);
        parallel_for(spec.samples, [&](size_t s) {
            const GaussianTensor x = sample_tensor({spec.NA, spec.m, spec.m, spec.ND}, spec.seed, s);
            const CMatrix wab = marginal(x, {0, 1}).m, wac = marginal(x, {0, 2}).m;
            // P = W_AB^{1/2} W_AC W_AB^{1/2} has the spectrum of W_AB W_AC
            EigenResult e = hermitian_eigen(wab);
            CMatrix vs = e.vectors;
            for (int j = 0; j < vs.cols; ++j) {
                const double r = std::sqrt(std::max(e.values[static_cast<size_t>(j)], 0.0));
                for (int i = 0; i < vs.rows; ++i) vs(i, j) *= r;
            }
            const CMatrix sq = multiply(vs, adjoint(e.vectors));
            auto ev = hermitian_eigen(multiply(multiply(sq, wac), sq)).values;
            for (auto& v : ev) v /= scale;
            per[s] = std::move(ev);
        });
    }
    std::vector<double> all;
    for (auto& v : per) all.insert(all.end(), v.begin(), v.end());
    return all;
}

Histogram eigen_hist(const HistSpec& spec) {
    if (spec.bins < 1) throw DomainError("bins must be positive");
    const std::vector<double> ev = sample_spectrum(spec);
    Histogram h;
    h.eigenvalue_count = ev.size();
    const double total = static_cast<double>(ev.size());
    std::vector<double> nz;
    for (double x : ev)
        if (std::abs(x) > 1e-8) nz.push_back(x);
    h.atom = static_cast<double>(ev.size() - nz.size()) / total;
    for (int p = 1; p <= 4; ++p) {
        std::vector<double> pw(ev.size());
        for (size_t i = 0; i < ev.size(); ++i) pw[i] = std::pow(ev[i], p);
        h.moments.push_back(pairwise_sum(pw.data(), pw.size()) / total);
    }
    const double hi = nz.empty() ? 1.0 : *std::max_element(nz.begin(), nz.end()) * (1 + 1e-9);
    const double width = hi / spec.bins;
    for (int b = 0; b <= spec.bins; ++b) h.edges.push_back(b * width);
    std::vector<double> count(static_cast<size_t>(spec.bins), 0.0);
    for (double x : nz) {
        const int b = std::clamp(static_cast<int>(x / width), 0, spec.bins - 1);
        count[static_cast<size_t>(b)] += 1;
    }
    for (double c : count) h.density.push_back(c / (total * width));
    return h;
}

double Histogram::histogram_moment(int p) const {
    double s = 0;
    for (size_t b = 0; b < density.size(); ++b) {
        const double w = edges[b + 1] - edges[b], mid = 0.5 * (edges[b] + edges[b + 1]);
        s += std::pow(mid, p) * density[b] * w;
    }
    return s;
}

std::string Histogram::to_csv() const {
    std::ostringstream os;
    os.precision(10);
    os << "# atom=" << atom << "\n";
    os << "# eigenvalues=" << eigenvalue_count << "\n";
    for (size_t p = 0; p < moments.size(); ++p) os << "# moment" << p + 1 << "=" << moments[p] << "\n";
    os << "bin_left,bin_right,density\n";
    for (size_t b = 0; b < density.size(); ++b) os << edges[b] << "," << edges[b + 1] << "," << density[b] << "\n";
    return os.str();
}

}  // namespace wm
