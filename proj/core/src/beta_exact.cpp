#include "betamaps/beta_exact.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace betamaps {

int Profile::total() const { return std::accumulate(parts.begin(), parts.end(), 0); }

std::vector<int> Profile::sorted() const {
    std::vector<int> s = parts;
    std::sort(s.begin(), s.end());
    return s;
}

Perm theta_of_profile(const Profile& p) {
    for (int k : p.parts)
        if (k < 1) throw std::domain_error("profile parts must be positive");
    std::vector<std::vector<Label>> cycles;
    int next = 1;
    for (int k : p.parts) {
        std::vector<Label> c;
        for (int i = 0; i < k; ++i) c.push_back(L(next++));
        cycles.push_back(std::move(c));
    }
    return Perm::from_cycles(cycles, range_set(p.total()));
}

Rational binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    BigInt num = 1, den = 1;
    for (int i = 0; i < k; ++i) {
        num *= (n - i);
        den *= (i + 1);
    }
    return Rational(num, den);
}

Rational bernoulli(int r) {
    static std::vector<Rational> cache{1};
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    while (static_cast<int>(cache.size()) <= r) {
        int n = static_cast<int>(cache.size());
        // sum_{k=0}^{n} C(n+1,k) (-1)^k B_k = 0 for n >= 1
        Rational acc = 0;
        for (int k = 0; k < n; ++k) {
            Rational sign = (k % 2 == 0) ? 1 : -1;
            acc += binomial(n + 1, k) * sign * cache[k];
        }
        Rational sign_n = (n % 2 == 0) ? 1 : -1;
        cache.push_back(-acc / (binomial(n + 1, n) * sign_n));
    }
    return cache[r];
}

BivariatePoly faulhaber_sum(int u_exp) {
    BivariatePoly out;
    for (int r = 0; r <= u_exp; ++r) {
        int s = u_exp - r;
        Rational c = binomial(u_exp, r) * bernoulli(r) / (s + 1);
        out += BivariatePoly::term(s + 1, 0, c);
    }
    return out;
}

BigInt gaussian_moment(int k) {
    if (k % 2 != 0) return 0;
    return double_factorial(k - 1);
}

UniPoly unipoly_mul(const UniPoly& a, const UniPoly& b) {
    if (a.empty() || b.empty()) return {};
    UniPoly out(a.size() + b.size() - 1, Rational(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    unipoly_trim(out);
    return out;
}

UniPoly unipoly_add(const UniPoly& a, const UniPoly& b) {
    UniPoly out(std::max(a.size(), b.size()), Rational(0));
    for (size_t i = 0; i < a.size(); ++i) out[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) out[i] += b[i];
    unipoly_trim(out);
    return out;
}

void unipoly_trim(UniPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

Rational unipoly_eval(const UniPoly& p, const Rational& x) {
    Rational acc = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
    return acc;
}

UniPoly chi_even_moment(int n) {
    UniPoly out{1};
    for (int i = 1; i <= n; ++i) out = unipoly_mul(out, UniPoly{Rational(i - 1), 1});
    return out;
}

UniPoly chi_even_moment_stirling(int n) {
    UniPoly out(n + 1, Rational(0));
    for (int i = 0; i <= n - 1; ++i) {
        // #{sigma in S_n : |sigma| = i} sigma has n - i cycles
        out[n - i] += Rational(count_by_length(n, i));
    }
    unipoly_trim(out);
    return out;
}

void for_each_config(
    const Perm& theta,
    const std::function<void(const MotzkinBridge&, const Perm&)>& visit) {
    enumerate_bridges(theta, [&](const MotzkinBridge& b) {
        compatible_perms(b, [&](const Perm& sigma) {
            if (is_transitive({theta, sigma})) visit(b, sigma);
        });
    });
}

namespace {

// heights gamma(pi) of the cycles of sigma restricted to Delta_-
std::vector<int> sigma_minus_cycle_heights(const MotzkinBridge& b, const Perm& sigma) {
    StepClasses sc = step_sets(b);
    std::vector<int> heights;
    if (sc.minus.empty()) return heights;
    Perm sm = restriction(sigma, sc.minus);
    for (const auto& cyc : sm.cycles()) heights.push_back(b.height(cyc.front()));
    return heights;
}

std::vector<BigInt> elementary_symmetric(const std::vector<int>& xs) {
    std::vector<BigInt> e(xs.size() + 1, 0);
    e[0] = 1;
    size_t deg = 0;
    for (int x : xs) {
        ++deg;
        for (size_t q = deg; q >= 1; --q) e[q] += BigInt(x) * e[q - 1];
    }
    return e;
}

BivariatePoly config_contribution(const MotzkinBridge& b, const Perm& sigma) {
    int p = sigma.length();
    std::vector<int> hs = sigma_minus_cycle_heights(b, sigma);
    auto e = elementary_symmetric(hs);
    int m = static_cast<int>(hs.size());
    BivariatePoly acc;
    for (int q = 0; q <= m; ++q) {
        if (e[q] == 0) continue;
        Rational sign = (q % 2 == 0) ? 1 : -1;
        BivariatePoly t = faulhaber_sum(m - q);
        t *= sign * Rational(e[q]);
        acc += t;
    }
    return acc * BivariatePoly::term(0, p, 1);
}

struct ConfigList {
    std::vector<std::pair<MotzkinBridge, Perm>> configs;
};

ConfigList collect_configs(const Perm& theta) {
    ConfigList out;
    for_each_config(theta, [&](const MotzkinBridge& b, const Perm& s) {
        out.configs.push_back({b, s});
    });
    return out;
}

BivariatePoly parallel_sum(
    const std::vector<std::pair<MotzkinBridge, Perm>>& configs, int threads,
    const std::function<BivariatePoly(const MotzkinBridge&, const Perm&)>& f) {
    if (threads < 1) threads = 1;
    threads = std::min<int>(threads, std::max<size_t>(configs.size(), 1));
    if (threads == 1) {
        BivariatePoly acc;
        for (const auto& [b, s] : configs) acc += f(b, s);
        return acc;
    }
    std::vector<BivariatePoly> partial(threads);
    std::vector<std::thread> workers;
    for (int t = 0; t < threads; ++t) {
        workers.emplace_back([&, t] {
            BivariatePoly acc;
            for (size_t i = t; i < configs.size(); i += threads)
                acc += f(configs[i].first, configs[i].second);
            partial[t] = std::move(acc);
        });
    }
    for (auto& w : workers) w.join();
    BivariatePoly acc;
    for (auto& p : partial) acc += p;  // exact addition: order-independent
    return acc;
}

}  // namespace

BivariatePoly cumulant_exact(const Profile& p, int threads) {
    int n = p.total();
    if (n % 2 != 0) return {};
    Perm theta = theta_of_profile(p);
    auto configs = collect_configs(theta);
    return parallel_sum(configs.configs, threads, config_contribution);
}

BivariatePoly moment_exact(const Profile& p, int threads) {
    int l = p.l();
    std::map<std::vector<int>, BivariatePoly> cache;
    auto kappa = [&](const std::vector<int>& parts) -> const BivariatePoly& {
        std::vector<int> key = parts;
        std::sort(key.begin(), key.end());
        auto it = cache.find(key);
        if (it == cache.end())
            it = cache.emplace(key, cumulant_exact(Profile{key}, threads)).first;
        return it->second;
    };
    BivariatePoly acc;
    for_each_set_partition(l, [&](const std::vector<std::vector<int>>& blocks) {
        BivariatePoly prod{Rational(1)};
        for (const auto& blk : blocks) {
            std::vector<int> sub;
            for (int i : blk) sub.push_back(p.parts[i]);
            prod = prod * kappa(sub);
        }
        acc += prod;
    });
    return acc;
}

BigInt bracket(const Perm& theta, int p, int q) {
    int n = theta.size();
    if (n % 2 != 0) throw std::domain_error("bracket: theta must act on an even set");
    if (q > n / 2 - p) return 0;
    BigInt acc = 0;
    for_each_config(theta, [&](const MotzkinBridge& b, const Perm& sigma) {
        if (sigma.length() != p) return;
        std::vector<int> hs = sigma_minus_cycle_heights(b, sigma);
        acc += elementary_symmetric(hs)[q];
    });
    return acc;
}

std::vector<std::pair<int, BivariatePoly>> cumulant_expansion(const Profile& p) {
    int n = p.total();
    int l = p.l();
    std::vector<std::pair<int, BivariatePoly>> out;
    if (n % 2 != 0) return out;
    BivariatePoly kappa = cumulant_exact(p);
    // kappa / (u^{l-1} N^{n/2 - l + 2}) = sum_v N^{-v} c_v(u)
    BivariatePoly reduced = kappa.shift_down_u(l - 1);
    int top = n / 2 - l + 2;
    for (int v = 0; v <= top + reduced.degree_N(); ++v) {
        int n_exp = top - v;
        BivariatePoly c;
        for (const auto& [key, coeff] : reduced.terms())
            if (key.first == n_exp) c += BivariatePoly::term(0, key.second, coeff);
        if (!c.is_zero()) out.push_back({v, c});
    }
    return out;
}

std::map<std::array<int, 4>, BivariatePoly> cumulant_expansion_terms(const Profile& prof) {
    std::map<std::array<int, 4>, BivariatePoly> out;
    int n = prof.total();
    if (n % 2 != 0) return out;
    Perm theta = theta_of_profile(prof);
    for_each_config(theta, [&](const MotzkinBridge& b, const Perm& sigma) {
        int p = sigma.length();
        std::vector<int> hs = sigma_minus_cycle_heights(b, sigma);
        auto e = elementary_symmetric(hs);
        int m = static_cast<int>(hs.size());
        for (int q = 0; q <= m; ++q) {
            if (e[q] == 0) continue;
            int u_exp = m - q;
            for (int r = 0; r <= u_exp; ++r) {
                int s = u_exp - r;
                Rational c = binomial(u_exp, r) * bernoulli(r) / (s + 1);
                if (c == 0) continue;
                Rational sign = (q % 2 == 0) ? 1 : -1;
                out[{p, q, r, s}] +=
                    BivariatePoly::term(s + 1, p, sign * Rational(e[q]) * c);
            }
        }
    });
    std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
    return out;
}

void for_each_set_partition(
    int n, const std::function<void(const std::vector<std::vector<int>>&)>& visit) {
    std::vector<std::vector<int>> blocks;
    std::function<void(int)> rec = [&](int i) {
        if (i == n) {
            visit(blocks);
            return;
        }
        // index loop: recursion grows the vector and would invalidate iterators
        const size_t existing = blocks.size();
        for (size_t b = 0; b < existing; ++b) {
            blocks[b].push_back(i);
            rec(i + 1);
            blocks[b].pop_back();
        }
        blocks.push_back({i});
        rec(i + 1);
        blocks.pop_back();
    };
    if (n == 0) {
        visit(blocks);
        return;
    }
    rec(0);
}

namespace {

std::vector<int> sorted_key(const std::vector<int>& v) {
    std::vector<int> k = v;
    std::sort(k.begin(), k.end());
    return k;
}

}  // namespace

PolyTable cumulants_from_moments(const PolyTable& moments) {
    PolyTable kappa;
    // process profiles by increasing length so sub-profiles are ready
    std::vector<std::vector<int>> keys;
    for (const auto& [k, v] : moments) keys.push_back(k);
    std::sort(keys.begin(), keys.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    for (const auto& key : keys) {
        int l = static_cast<int>(key.size());
        BivariatePoly acc = moments.at(key);
        for_each_set_partition(l, [&](const std::vector<std::vector<int>>& blocks) {
            if (blocks.size() == 1) return;
            BivariatePoly prod{Rational(1)};
            for (const auto& blk : blocks) {
                std::vector<int> sub;
                for (int i : blk) sub.push_back(key[i]);
                auto it = kappa.find(sorted_key(sub));
                if (it == kappa.end())
                    throw std::domain_error("cumulants_from_moments: missing sub-profile");
                prod = prod * it->second;
            }
            acc -= prod;
        });
        kappa[key] = acc;
    }
    return kappa;
}

PolyTable moments_from_cumulants(const PolyTable& cumulants) {
    PolyTable moments;
    for (const auto& [key, unused] : cumulants) {
        int l = static_cast<int>(key.size());
        BivariatePoly acc;
        for_each_set_partition(l, [&](const std::vector<std::vector<int>>& blocks) {
            BivariatePoly prod{Rational(1)};
            for (const auto& blk : blocks) {
                std::vector<int> sub;
                for (int i : blk) sub.push_back(key[i]);
                auto it = cumulants.find(sorted_key(sub));
                if (it == cumulants.end())
                    throw std::domain_error("moments_from_cumulants: missing sub-profile");
                prod = prod * it->second;
            }
            acc += prod;
        });
        moments[key] = acc;
    }
    return moments;
}

}  // namespace betamaps
