#include "betamaps/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <thread>

namespace betamaps {

namespace {

// small dense polynomial in u with long long coefficients, used only inside
// the tuple sweep where all values stay tiny
using LLPoly = std::vector<long long>;

void llpoly_mul_linear(LLPoly& p, long long c0, long long c1) {
    // p *= (c0 + c1 u)
    LLPoly out(p.size() + 1, 0);
    for (size_t i = 0; i < p.size(); ++i) {
        out[i] += p[i] * c0;
        out[i + 1] += p[i] * c1;
    }
    p = std::move(out);
}

struct DirectSweep {
    int N;
    std::vector<std::vector<int>> cycles;  // index positions are irrelevant,
                                           // only cycle lengths matter
    std::vector<int> g;                    // diagonal exponent per index 1..N
    std::vector<int> h;                    // crossing count per gap 1..N-1
    std::vector<BigInt> acc;

    void leaf() {
        long long dbl = 1;
        int g_total = 0;
        for (int i = 1; i <= N; ++i) {
            if (g[i] % 2) return;
            g_total += g[i];
            for (int j = g[i] - 1; j > 1; j -= 2) dbl *= j;
        }
        LLPoly poly{dbl};
        for (int v = 1; v < N; ++v) {
            int m = h[v] / 2;
            for (int j = 0; j < m; ++j) llpoly_mul_linear(poly, N - v, j);
        }
        int shift = g_total / 2;
        if (acc.size() < poly.size() + shift) acc.resize(poly.size() + shift);
        for (size_t i = 0; i < poly.size(); ++i)
            acc[i + shift] += poly[i];
    }

    void step_apply(int from, int to, int delta) {
        if (from == to)
            g[from] += delta;
        else
            h[std::min(from, to)] += delta;
    }

    void walk(size_t ci, int pos, int first, int cur) {
        const int len = static_cast<int>(cycles[ci].size());
        if (pos == len) {
            if (std::abs(cur - first) > 1) return;
            step_apply(cur, first, 1);
            next_cycle(ci + 1);
            step_apply(cur, first, -1);
            return;
        }
        for (int nxt = std::max(1, cur - 1); nxt <= std::min(N, cur + 1); ++nxt) {
            step_apply(cur, nxt, 1);
            walk(ci, pos + 1, first, nxt);
            step_apply(cur, nxt, -1);
        }
    }

    void next_cycle(size_t ci) {
        if (ci == cycles.size()) {
            leaf();
            return;
        }
        for (int start = 1; start <= N; ++start) walk(ci, 1, start, start);
    }
};

}  // namespace

UniPoly moment_by_direct_expectation(const Profile& p, int N, bool unsafe_large) {
    if (N < 1) throw std::domain_error("moment_by_direct_expectation: N must be >= 1");
    const int k = p.total();
    if (!unsafe_large && (N > 6 || k > 8)) {
        double cost = std::pow(static_cast<double>(N), k);
        throw std::domain_error(
            "moment_by_direct_expectation: refusing N=" + std::to_string(N) +
            ", total=" + std::to_string(k) + " (about " + std::to_string(cost) +
            " index tuples); pass unsafe_large to override");
    }
    DirectSweep sweep;
    sweep.N = N;
    for (int part : p.parts) sweep.cycles.push_back(std::vector<int>(part));
    sweep.g.assign(N + 1, 0);
    sweep.h.assign(N + 1, 0);
    sweep.next_cycle(0);
    UniPoly out(sweep.acc.size());
    for (size_t i = 0; i < sweep.acc.size(); ++i) out[i] = Rational(sweep.acc[i]);
    unipoly_trim(out);
    return out;
}

std::vector<SuitablyLabelledMap> enumerate_suitably_labelled(
    const Perm& theta, const std::function<bool(const SuitablyLabelledMap&)>& pred,
    bool unsafe_large) {
    const int n = theta.size();
    if (!unsafe_large && n > 8)
        throw std::domain_error("enumerate_suitably_labelled: n > 8 without unsafe_large");
    std::vector<SuitablyLabelledMap> out;
    if (n % 2) return out;
    const Perm theta_inv = theta.inverse();
    enumerate_matchings(theta.universe(), [&](const Perm& alpha) {
        Perm theta_m = alpha * theta_inv;
        if (!is_transitive({theta_m, alpha})) return;
        auto vcycles = theta_m.cycles();
        const int nv = static_cast<int>(vcycles.size());
        // vertex index per half-edge, adjacency between vertices via alpha
        std::vector<int> vert_of(n, 0);
        for (int v = 0; v < nv; ++v)
            for (const auto& x : vcycles[v]) vert_of[theta.pos(x)] = v;
        std::vector<std::vector<int>> adj(nv);
        for (const auto& x : theta.universe())
            adj[vert_of[theta.pos(x)]].push_back(vert_of[theta.pos(alpha.apply(x))]);
        // BFS order so each vertex after the first has an assigned neighbor
        std::vector<int> order, parent_label_src(nv, -1);
        std::vector<char> seen(nv, 0);
        order.push_back(0);
        seen[0] = 1;
        for (size_t q = 0; q < order.size(); ++q)
            for (int w : adj[order[q]])
                if (!seen[w]) {
                    seen[w] = 1;
                    order.push_back(w);
                }
        std::vector<int> lab(nv, -1);
        auto emit = [&]() {
            if (*std::min_element(lab.begin(), lab.end()) != 0) return;
            SuitablyLabelledMap m{HalfEdgeMap{theta_m, alpha}, std::vector<int>(n)};
            for (const auto& x : theta.universe())
                m.labels[x.index - 1] = lab[vert_of[theta.pos(x)]];
            if (!pred || pred(m)) out.push_back(std::move(m));
        };
        std::function<void(int)> assign = [&](int depth) {
            if (depth == nv) {
                emit();
                return;
            }
            int v = order[depth];
            for (int c = 0; c < nv; ++c) {
                bool ok = true;
                for (int w : adj[v])
                    if (lab[w] >= 0 && std::abs(lab[w] - c) > 1) {
                        ok = false;
                        break;
                    }
                if (!ok) continue;
                lab[v] = c;
                assign(depth + 1);
                lab[v] = -1;
            }
        };
        assign(0);
    });
    return out;
}

std::vector<FlaggedMap> enumerate_flagged_rp2(const Perm& theta, bool unsafe_large) {
    const int n = theta.size();
    if (!unsafe_large && n > 6)
        throw std::domain_error("enumerate_flagged_rp2: n > 6 without unsafe_large");
    std::vector<FlaggedMap> out;
    if (n % 2) return out;
    const LabelSet flags = barred_range_set(n);
    Perm phi;
    {
        auto cyc = theta.cycles();
        auto barred = bar_conjugate(theta).cycles();
        cyc.insert(cyc.end(), barred.begin(), barred.end());
        phi = Perm::from_cycles(cyc, flags);
    }
    // rho is pinned to the side matching i <-> i-bar; with the faces fixed
    // this determines mu, so only tau is enumerated
    Perm rho;
    {
        std::vector<std::vector<Label>> pairs;
        for (const auto& x : flags)
            if (!x.barred) pairs.push_back({x, x.bar()});
        rho = Perm::from_cycles(pairs, flags);
    }
    {
        Perm mu = rho * phi;
        if (!mu.is_matching()) return out;
        // tau: fixed-point-free involutions commuting with rho, built in
        // Klein quadruples {x, rho x, y, rho y}
        std::vector<Label> images(flags.size());
        std::vector<char> taken(flags.size(), 0);
        std::function<void()> build = [&]() {
            size_t xi = 0;
            while (xi < flags.size() && taken[xi]) ++xi;
            if (xi == flags.size()) {
                Perm tau = Perm::from_images(flags, images);
                FlaggedMap fm{tau, rho, mu};
                if (!flagged_valid(fm)) return;
                if (!flagged_connected(fm)) return;
                if (flagged_euler(fm) != 1) return;
                if (is_orientable(fm)) return;
                out.push_back(std::move(fm));
                return;
            }
            const Label x = flags[xi];
            const Label rx = rho.apply(x);
            const size_t rxi = static_cast<size_t>(rho.pos(rx));
            for (size_t yi = 0; yi < flags.size(); ++yi) {
                if (taken[yi] || yi == xi || yi == rxi) continue;
                const Label y = flags[yi];
                const Label ry = rho.apply(y);
                const size_t ryi = static_cast<size_t>(rho.pos(ry));
                if (taken[ryi]) continue;
                taken[xi] = taken[rxi] = taken[yi] = taken[ryi] = 1;
                images[xi] = y;
                images[yi] = x;
                images[rxi] = ry;
                images[ryi] = rx;
                build();
                taken[xi] = taken[rxi] = taken[yi] = taken[ryi] = 0;
            }
        };
        build();
    }
    return out;
}

BigInt projective_count(const Perm& theta) {
    const int n = theta.size();
    if (n <= 6) return BigInt(enumerate_flagged_rp2(theta).size());
    const int l = theta.num_cycles();
    BigInt s2 = 0;
    enumerate_suitably_labelled(theta, [&](const SuitablyLabelledMap& m) {
        if (static_cast<int>(m.local_min_vertices().size()) == 2 &&
            euler_genus(m.map) == 0)
            ++s2;
        return false;
    });
    BigInt lhs = (BigInt(1) << (l - 1)) * s2;
    const BigInt denom = 1 + n / 2 - l;
    if (lhs % denom != 0)
        throw std::domain_error("projective_count: counting identity divisibility failed");
    return lhs / denom;
}

std::vector<BigInt> hermite_coeffs(int N) {
    if (N < 0) throw std::domain_error("hermite_coeffs: N must be >= 0");
    std::vector<BigInt> prev{1};  // He_0
    if (N == 0) return prev;
    std::vector<BigInt> cur{0, 1};  // He_1 = x
    for (int m = 1; m < N; ++m) {
        std::vector<BigInt> nxt(m + 2, 0);
        for (size_t i = 0; i < cur.size(); ++i) nxt[i + 1] = cur[i];
        for (size_t i = 0; i < prev.size(); ++i) nxt[i] -= m * prev[i];
        prev = std::move(cur);
        cur = std::move(nxt);
    }
    return cur;
}

BigInt hermite_power_sums(int N, int n) {
    if (N < 1) throw std::domain_error("hermite_power_sums: N must be >= 1");
    if (n < 0) throw std::domain_error("hermite_power_sums: n must be >= 0");
    if (n == 0) return N;
    auto c = hermite_coeffs(N);  // monic, c[N] = 1
    // e_i = (-1)^i * coefficient of x^{N-i}
    std::vector<BigInt> e(N + 1, 0);
    for (int i = 0; i <= N; ++i) {
        e[i] = c[N - i];
        if (i % 2) e[i] = -e[i];
    }
    std::vector<BigInt> ps(n + 1, 0);
    for (int k = 1; k <= n; ++k) {
        BigInt v = 0;
        for (int i = 1; i <= std::min(k, N); ++i) {
            BigInt t = e[i] * (i == k ? BigInt(k) : ps[k - i]);
            v += (i % 2) ? t : -t;
        }
        ps[k] = v;
    }
    return ps[n];
}

UniPoly beta_infinity_cumulant(int n) {
    if (n < 1) throw std::domain_error("beta_infinity_cumulant: n must be >= 1");
    if (n % 2) return {};
    BivariatePoly kappa = cumulant_exact(Profile{{n}});
    UniPoly out;
    for (int v = 0; v <= kappa.degree_N(); ++v) {
        Rational c = kappa.coeff(v, 0);
        if (c != 0) {
            if (out.size() <= static_cast<size_t>(v)) out.resize(v + 1);
            out[v] = c;
        }
    }
    unipoly_trim(out);
    return out;
}

BigInt catalan(int m) {
    BigInt num = 1;
    for (int i = 0; i < m; ++i) num = num * (2 * m - i);
    BigInt den = 1;
    for (int i = 1; i <= m; ++i) den *= i;
    return num / den / (m + 1);
}

namespace {

// trace of T^k for the tridiagonal matrix with diagonal a, off-diagonal b
std::vector<double> trace_powers(const std::vector<double>& a,
                                 const std::vector<double>& b, int kmax) {
    const int N = static_cast<int>(a.size());
    std::vector<double> M(static_cast<size_t>(N) * N, 0.0), C(M.size());
    for (int i = 0; i < N; ++i) {
        M[i * N + i] = a[i];
        if (i + 1 < N) M[i * N + i + 1] = M[(i + 1) * N + i] = b[i];
    }
    std::vector<double> traces(kmax + 1, 0.0);
    traces[0] = N;
    auto trace = [&](const std::vector<double>& X) {
        double t = 0;
        for (int i = 0; i < N; ++i) t += X[i * N + i];
        return t;
    };
    traces[1] = trace(M);
    std::vector<double> P = M;
    for (int k = 2; k <= kmax; ++k) {
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) {
                double s = P[i * N + j] * a[j];
                if (j > 0) s += P[i * N + j - 1] * b[j - 1];
                if (j + 1 < N) s += P[i * N + j + 1] * b[j];
                C[i * N + j] = s;
            }
        P.swap(C);
        traces[k] = trace(P);
    }
    return traces;
}

}  // namespace

McEstimate mc_sample(const Profile& p, int N, double beta, long long n_samples,
                     std::uint64_t seed, int threads) {
    if (beta <= 0) throw std::domain_error("mc_sample: beta must be positive");
    if (N < 1) throw std::domain_error("mc_sample: N must be >= 1");
    if (n_samples < 2) throw std::domain_error("mc_sample: need at least 2 samples");
    const int kmax = *std::max_element(p.parts.begin(), p.parts.end());
    constexpr long long kChunk = 4096;
    const long long n_chunks = (n_samples + kChunk - 1) / kChunk;
    std::vector<double> chunk_sum(n_chunks, 0.0), chunk_sq(n_chunks, 0.0);

    auto run_chunk = [&](long long c) {
        std::seed_seq sq{static_cast<std::uint32_t>(seed),
                         static_cast<std::uint32_t>(seed >> 32),
                         static_cast<std::uint32_t>(c),
                         static_cast<std::uint32_t>(c >> 32)};
        std::mt19937_64 eng(sq);
        std::normal_distribution<double> normal(0.0, 1.0);
        const long long lo = c * kChunk;
        const long long hi = std::min(n_samples, lo + kChunk);
        std::vector<double> a(N), b(std::max(N - 1, 0));
        double s = 0, s2 = 0;
        for (long long t = lo; t < hi; ++t) {
            for (int i = 0; i < N; ++i) a[i] = normal(eng);
            for (int i = 1; i < N; ++i) {
                std::gamma_distribution<double> gamma((N - i) * beta / 2.0, 1.0);
                b[i - 1] = std::sqrt(gamma(eng));
            }
            auto tr = trace_powers(a, b, kmax);
            double x = 1.0;
            for (int part : p.parts) x *= tr[part];
            s += x;
            s2 += x * x;
        }
        chunk_sum[c] = s;
        chunk_sq[c] = s2;
    };

    if (threads <= 1) {
        for (long long c = 0; c < n_chunks; ++c) run_chunk(c);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t)
            pool.emplace_back([&, t]() {
                for (long long c = t; c < n_chunks; c += threads) run_chunk(c);
            });
        for (auto& th : pool) th.join();
    }
    double sum = 0, sq = 0;
    for (long long c = 0; c < n_chunks; ++c) {
        sum += chunk_sum[c];
        sq += chunk_sq[c];
    }
    const double n = static_cast<double>(n_samples);
    const double mean = sum / n;
    const double var = std::max(0.0, (sq - n * mean * mean) / (n - 1));
    return McEstimate{mean, std::sqrt(var / n), n_samples};
}

}  // namespace betamaps
