// Batch command-line front end: exact cumulants and their expansions,
// distance brackets, enumeration of configurations / labelled maps /
// hypermaps / projective-plane maps, verification suites, Hermite data,
// and the Monte Carlo sampler. Output is text, JSON lines, or CSV.

#include <cstdlib>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "betamaps/beta_exact.hpp"
#include "betamaps/bfg.hpp"
#include "betamaps/map_model.hpp"
#include "betamaps/oracle.hpp"
#include "betamaps/rp2.hpp"

using namespace betamaps;
using nlohmann::json;

namespace {

constexpr int kExactCap = 8;       // largest profile total without --unsafe-large
constexpr int kExhaustiveCap = 6;  // largest enumeration size without --unsafe-large

struct Common {
    std::string format = "text";
    int threads = 0;
    bool unsafe_large = false;

    int resolved_threads() const {
        if (threads > 0) return threads;
        if (const char* env = std::getenv("BETAMAPS_THREADS")) {
            int t = std::atoi(env);
            if (t > 0) return t;
        }
        return 1;
    }
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--format", c.format, "Output format")
        ->check(CLI::IsMember({"json", "csv", "text"}))
        ->capture_default_str();
    cmd->add_option("--threads", c.threads,
                    "Worker threads (default: BETAMAPS_THREADS or 1)");
    cmd->add_flag("--unsafe-large", c.unsafe_large,
                  "Lift the size caps (n <= 8 exact, n <= 6 exhaustive)");
}

Profile parse_profile(const std::string& text) {
    Profile p;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != item.size() || v < 1)
            throw CLI::ValidationError("profile", "parts must be positive integers");
        p.parts.push_back(v);
    }
    if (p.parts.empty())
        throw CLI::ValidationError("profile", "empty profile");
    return p;
}

void check_cap(int n, int cap, bool unsafe_large) {
    if (n > cap && !unsafe_large)
        throw CLI::ValidationError(
            "size", "n = " + std::to_string(n) + " exceeds the cap of " +
                        std::to_string(cap) + "; pass --unsafe-large to override");
}

void print_poly(const BivariatePoly& p, const std::string& format) {
    if (format == "json") {
        std::cout << p.to_json() << "\n";
    } else if (format == "csv") {
        std::cout << "N_exp,u_exp,coeff\n";
        for (int i = p.degree_N(); i >= 0; --i)
            for (int j = p.degree_u(); j >= 0; --j)
                if (p.coeff(i, j) != 0)
                    std::cout << i << "," << j << ","
                              << rational_to_string(p.coeff(i, j)) << "\n";
    } else {
        std::cout << p.to_pretty_string() << "\n";
    }
}

json hypermap_json(const WellLabelledHypermap& h) {
    json labels = json::object();
    for (const auto& [rep, l] : h.white_labels)
        labels[to_string(rep)] = l;
    json frustrated = json::array();
    for (const auto& f : h.frustrated) frustrated.push_back(to_string(f));
    return json{{"theta", h.hypermap.theta.to_cycle_string()},
                {"sigma", h.hypermap.sigma.to_cycle_string()},
                {"ambient_theta", h.ambient_theta.to_cycle_string()},
                {"white_labels", labels},
                {"frustrated", frustrated}};
}

bool in_s2(const SuitablyLabelledMap& m) {
    return m.local_min_vertices().size() == 2 && euler_genus(m.map) == 0;
}

int run_cumulant(const std::string& profile_text, const Common& c) {
    Profile p = parse_profile(profile_text);
    check_cap(p.total(), kExactCap, c.unsafe_large);
    BivariatePoly k = cumulant_exact(p, c.resolved_threads());
    print_poly(k, c.format);
    if (k.is_zero()) return 0;
    for (const auto& [v, cv] : cumulant_expansion(p)) {
        if (c.format == "json") {
            std::cout << json{{"order", v},
                              {"coefficient", json::parse(cv.to_json())}}
                             .dump()
                      << "\n";
        } else if (c.format == "csv") {
            std::cout << "order," << v << "," << cv.to_pretty_string() << "\n";
        } else {
            std::cout << "1/N^" << v << ": " << cv.to_pretty_string() << "\n";
        }
    }
    return 0;
}

int run_expand(const std::string& profile_text, const Common& c) {
    Profile p = parse_profile(profile_text);
    check_cap(p.total(), kExactCap, c.unsafe_large);
    for (const auto& [pqrs, poly] : cumulant_expansion_terms(p)) {
        if (c.format == "json") {
            std::cout << json{{"p", pqrs[0]},
                              {"q", pqrs[1]},
                              {"r", pqrs[2]},
                              {"s", pqrs[3]},
                              {"term", json::parse(poly.to_json())}}
                             .dump()
                      << "\n";
        } else if (c.format == "csv") {
            std::cout << pqrs[0] << "," << pqrs[1] << "," << pqrs[2] << ","
                      << pqrs[3] << "," << poly.to_pretty_string() << "\n";
        } else {
            std::cout << "(" << pqrs[0] << "," << pqrs[1] << "," << pqrs[2]
                      << "," << pqrs[3] << "): " << poly.to_pretty_string()
                      << "\n";
        }
    }
    return 0;
}

int run_bracket(const std::string& theta_text, int p, int q, const Common& c) {
    Perm theta = parse_perm(theta_text);
    check_cap(theta.size(), kExactCap, c.unsafe_large);
    BigInt v = bracket(theta, p, q);
    if (c.format == "json")
        std::cout << json{{"theta", theta.to_cycle_string()},
                          {"p", p},
                          {"q", q},
                          {"value", v.str()}}
                         .dump()
                  << "\n";
    else if (c.format == "csv")
        std::cout << p << "," << q << "," << v << "\n";
    else
        std::cout << v << "\n";
    return 0;
}

int run_enumerate(const std::string& cls, const std::string& theta_text,
                  const Common& c) {
    Perm theta = parse_perm(theta_text);
    check_cap(theta.size(), kExhaustiveCap, c.unsafe_large);
    long long count = 0;
    auto emit = [&](const json& j, const std::string& text) {
        ++count;
        if (c.format == "json")
            std::cout << j.dump() << "\n";
        else
            std::cout << text << "\n";
    };
    if (cls == "C") {
        for_each_config(theta, [&](const MotzkinBridge& g, const Perm& s) {
            emit(json{{"gamma", g.heights_string()},
                      {"sigma", s.to_cycle_string()}},
                 g.heights_string() + "  sigma=" + s.to_cycle_string());
        });
    } else if (cls == "S" || cls == "S2") {
        auto maps = enumerate_suitably_labelled(
            theta, cls == "S2" ? in_s2
                               : std::function<bool(const SuitablyLabelledMap&)>{},
            c.unsafe_large);
        for (const auto& m : maps)
            emit(json::parse(m.to_json()),
                 m.map.theta_m.to_cycle_string() +
                     "  alpha=" + m.map.alpha.to_cycle_string());
    } else if (cls == "H") {
        for_each_config(theta, [&](const MotzkinBridge& g, const Perm& s) {
            WellLabelledHypermap h = hypermap_from_config(g, s);
            emit(hypermap_json(h), h.hypermap.theta.to_cycle_string() +
                                       "  sigma=" +
                                       h.hypermap.sigma.to_cycle_string());
        });
    } else if (cls == "RP2") {
        for (const auto& fm : enumerate_flagged_rp2(theta, c.unsafe_large))
            emit(json::parse(flagged_to_json(fm)), fm.tau.to_cycle_string());
    } else {
        throw CLI::ValidationError("class", "unknown class " + cls);
    }
    if (c.format == "json")
        std::cout << json{{"count", count}}.dump() << "\n";
    else
        std::cout << "count: " << count << "\n";
    return 0;
}

struct Report {
    bool all_ok = true;

    void check(const std::string& name, bool ok, const json& extra = {}) {
        json j{{"check", name}, {"ok", ok}};
        if (!extra.is_null() && !extra.empty()) j["detail"] = extra;
        std::cout << j.dump() << "\n";
        all_ok = all_ok && ok;
    }
};

void verify_faulhaber(Report& r, int max_N) {
    bool ok = bernoulli(1) == Rational(1, 2);
    for (int u = 0; u <= 10 && ok; ++u) {
        BivariatePoly f = faulhaber_sum(u);
        for (int N = 0; N <= max_N && ok; ++N) {
            Rational direct = 0;
            for (int h = 1; h <= N; ++h) {
                Rational hp = 1;
                for (int e = 0; e < u; ++e) hp *= h;
                direct += hp;
            }
            ok = f.evaluate(N, 0) == direct;
        }
    }
    r.check("faulhaber", ok, json{{"max_N", max_N}});
}

void verify_hermite(Report& r, int max_N) {
    bool ok = true;
    for (int n = 1; n <= max_N && ok; ++n) {
        UniPoly p = beta_infinity_cumulant(n);
        for (int N = 1; N <= max_N && ok; ++N)
            ok = unipoly_eval(p, N) == Rational(hermite_power_sums(N, n));
    }
    r.check("hermite", ok, json{{"max_N", max_N}});
}

void verify_bfg(Report& r, int n_cap) {
    for (int n = 1; n <= n_cap; ++n) {
        std::function<void(std::vector<int>&, int, int)> rec =
            [&](std::vector<int>& cur, int rem, int mx) {
                if (rem == 0) {
                    Perm theta = theta_of_profile({cur});
                    std::set<SuitablyLabelledMap> image;
                    long long configs = 0;
                    bool ok = true;
                    for_each_config(theta, [&](const MotzkinBridge& g,
                                               const Perm& s) {
                        ++configs;
                        SuitablyLabelledMap m = psi(g, s);
                        auto [g2, s2] = psi_inverse(m);
                        if (g2 != g || s2 != s) ok = false;
                        distances(m);
                        image.insert(m);
                    });
                    auto indep = enumerate_suitably_labelled(theta);
                    ok = ok && static_cast<long long>(image.size()) == configs &&
                         image == std::set<SuitablyLabelledMap>(indep.begin(),
                                                                indep.end());
                    r.check("bfg " + theta.to_cycle_string(), ok,
                            json{{"configs", configs}});
                    return;
                }
                for (int k = std::min(rem, mx); k >= 1; --k) {
                    cur.push_back(k);
                    rec(cur, rem - k, k);
                    cur.pop_back();
                }
            };
        std::vector<int> cur;
        rec(cur, n, n);
    }
}

void verify_rp2(Report& r, int n_cap) {
    for (const char* ts : {"(1,2)", "(1,2,3,4)", "(1,2)(3,4)"}) {
        Perm theta = parse_perm(ts);
        const int n = theta.size(), l = theta.num_cycles();
        if (n > n_cap) continue;
        auto s2v = enumerate_suitably_labelled(theta, in_s2);
        std::set<SuitablyLabelledMap> s2(s2v.begin(), s2v.end());
        auto flagged = enumerate_flagged_rp2(theta);
        bool ok = BigInt(1 + n / 2 - l) * BigInt(flagged.size()) ==
                  (BigInt(1) << (l - 1)) * BigInt(s2.size());
        std::map<SuitablyLabelledMap, int> fibers;
        for (const auto& fm : flagged)
            for (const auto& rep : base_vertex_reps(fm))
                fibers[from_projective(normalize_point({fm, rep}))]++;
        ok = ok && fibers.size() == s2.size();
        for (const auto& [m, cnt] : fibers)
            ok = ok && cnt == (1 << (l - 1)) && s2.count(m) == 1;
        for (const auto& m : s2)
            ok = ok && from_projective(to_projective(m)) == m;
        r.check(std::string("rp2 ") + ts, ok,
                json{{"s2", s2.size()}, {"flagged", flagged.size()}});
    }
}

void verify_oracle(Report& r, int n_cap, int threads) {
    for (int n = 1; n <= std::min(n_cap, 4); ++n) {
        std::function<void(std::vector<int>&, int, int)> rec =
            [&](std::vector<int>& cur, int rem, int mx) {
                if (rem == 0) {
                    BivariatePoly exact = moment_exact({cur}, threads);
                    bool ok = true;
                    for (int N = 1; N <= 4 && ok; ++N) {
                        UniPoly direct = moment_by_direct_expectation({cur}, N);
                        Rational probe = unipoly_eval(direct, Rational(3, 2));
                        ok = probe == exact.evaluate(N, Rational(3, 2));
                    }
                    std::string name = "oracle (";
                    for (size_t i = 0; i < cur.size(); ++i)
                        name += (i ? "," : "") + std::to_string(cur[i]);
                    r.check(name + ")", ok);
                    return;
                }
                for (int k = std::min(rem, mx); k >= 1; --k) {
                    cur.push_back(k);
                    rec(cur, rem - k, k);
                    cur.pop_back();
                }
            };
        std::vector<int> cur;
        rec(cur, n, n);
    }
}

int run_verify(const std::string& suite, int n_cap, int max_N, const Common& c) {
    Report r;
    if (suite == "faulhaber" || suite == "all") verify_faulhaber(r, max_N);
    if (suite == "hermite" || suite == "all") verify_hermite(r, max_N);
    if (suite == "bfg" || suite == "all") verify_bfg(r, n_cap);
    if (suite == "rp2" || suite == "all") verify_rp2(r, n_cap);
    if (suite == "oracle" || suite == "all")
        verify_oracle(r, n_cap, c.resolved_threads());
    return r.all_ok ? 0 : 1;
}

int run_hermite(int N, const Common& c) {
    auto coeffs = hermite_coeffs(N);
    if (c.format == "json") {
        json jc = json::array();
        for (const auto& x : coeffs) jc.push_back(x.str());
        json ps = json::array();
        for (int n = 1; n <= N; ++n)
            ps.push_back(hermite_power_sums(N, n).str());
        std::cout << json{{"N", N}, {"coeffs", jc}, {"power_sums", ps}}.dump()
                  << "\n";
    } else if (c.format == "csv") {
        std::cout << "power,coeff\n";
        for (size_t i = 0; i < coeffs.size(); ++i)
            std::cout << i << "," << coeffs[i] << "\n";
    } else {
        std::cout << "He_" << N << " coefficients (ascending):";
        for (const auto& x : coeffs) std::cout << " " << x;
        std::cout << "\npower sums p_1..p_" << N << ":";
        for (int n = 1; n <= N; ++n) std::cout << " " << hermite_power_sums(N, n);
        std::cout << "\n";
    }
    return 0;
}

int run_mc(const std::string& profile_text, int N, double beta,
           long long samples, std::uint64_t seed, const Common& c) {
    Profile p = parse_profile(profile_text);
    McEstimate est = mc_sample(p, N, beta, samples, seed, c.resolved_threads());
    if (c.format == "json")
        std::cout << json{{"mean", est.mean},
                          {"std_error", est.std_error},
                          {"samples", est.samples}}
                         .dump()
                  << "\n";
    else if (c.format == "csv")
        std::cout << est.mean << "," << est.std_error << "," << est.samples
                  << "\n";
    else
        std::cout << "mean " << est.mean << " +/- " << est.std_error << " ("
                  << est.samples << " samples)\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact beta-ensemble cumulants and labelled map combinatorics"};
    app.require_subcommand(1);

    Common c_cum, c_exp, c_br, c_enum, c_ver, c_her, c_mc;
    std::string profile, exp_profile, br_theta, en_theta, mc_profile;
    std::string en_class = "S", suite = "all";
    int br_p = 0, br_q = 0, ver_n = 4, ver_max_N = 8, her_N = 1, mc_N = 20;
    double mc_beta = 2.0;
    long long mc_samples = 100000;
    std::uint64_t mc_seed = 1;

    auto* cum = app.add_subcommand("cumulant", "Exact joint cumulant of a profile");
    cum->add_option("--profile", profile, "Comma-separated parts, e.g. 2,4")
        ->required();
    add_common(cum, c_cum);

    auto* exp = app.add_subcommand("expand", "Per-(p,q,r,s) expansion terms");
    exp->add_option("--profile", exp_profile, "Comma-separated parts")->required();
    add_common(exp, c_exp);

    auto* br = app.add_subcommand("bracket", "Distance bracket <e_q> at |sigma| = p");
    br->add_option("--theta", br_theta, "Permutation in cycle notation")->required();
    br->add_option("--p", br_p, "Permutation length |sigma|")->capture_default_str();
    br->add_option("--q", br_q, "Elementary symmetric index")->capture_default_str();
    add_common(br, c_br);

    auto* en = app.add_subcommand("enumerate", "Enumerate combinatorial objects");
    en->add_option("--class", en_class, "C | S | H | S2 | RP2")
        ->check(CLI::IsMember({"C", "S", "H", "S2", "RP2"}))
        ->capture_default_str();
    en->add_option("--theta", en_theta, "Permutation in cycle notation")->required();
    add_common(en, c_enum);

    auto* ver = app.add_subcommand("verify", "Run verification suites");
    ver->add_option("--suite", suite, "bfg | rp2 | faulhaber | hermite | oracle | all")
        ->check(CLI::IsMember({"bfg", "rp2", "faulhaber", "hermite", "oracle", "all"}))
        ->capture_default_str();
    ver->add_option("--n", ver_n, "Exhaustive size cap")->capture_default_str();
    ver->add_option("--max-N", ver_max_N, "Matrix size cap")->capture_default_str();
    add_common(ver, c_ver);

    auto* her = app.add_subcommand("hermite", "Hermite coefficients and power sums");
    her->add_option("--N", her_N, "Polynomial degree")->required();
    add_common(her, c_her);

    auto* mc = app.add_subcommand("mc", "Monte Carlo moment estimate");
    mc->add_option("--profile", mc_profile, "Comma-separated parts")->required();
    mc->add_option("--N", mc_N, "Matrix size")->capture_default_str();
    mc->add_option("--beta", mc_beta, "Dyson index")->capture_default_str();
    mc->add_option("--samples", mc_samples, "Sample count")->capture_default_str();
    mc->add_option("--seed", mc_seed, "RNG seed")->capture_default_str();
    add_common(mc, c_mc);

    try {
        app.parse(argc, argv);
        if (cum->parsed()) return run_cumulant(profile, c_cum);
        if (exp->parsed()) return run_expand(exp_profile, c_exp);
        if (br->parsed()) return run_bracket(br_theta, br_p, br_q, c_br);
        if (en->parsed()) return run_enumerate(en_class, en_theta, c_enum);
        if (ver->parsed()) return run_verify(suite, ver_n, ver_max_N, c_ver);
        if (her->parsed()) return run_hermite(her_N, c_her);
        if (mc->parsed())
            return run_mc(mc_profile, mc_N, mc_beta, mc_samples, mc_seed, c_mc);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
