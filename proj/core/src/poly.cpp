#include "betamaps/poly.hpp"

#include <algorithm>
#include <stdexcept>

#include <json.hpp>

namespace betamaps {

std::string rational_to_string(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

Rational rational_from_string(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(boost::multiprecision::cpp_int(s));
    boost::multiprecision::cpp_int p(s.substr(0, slash)), q(s.substr(slash + 1));
    return Rational(p, q);
}

BivariatePoly::BivariatePoly(const Rational& c) {
    if (c != 0) terms_[{0, 0}] = c;
}

BivariatePoly BivariatePoly::term(int n_exp, int u_exp, const Rational& coeff) {
    BivariatePoly p;
    if (coeff != 0) p.terms_[{n_exp, u_exp}] = coeff;
    return p;
}

Rational BivariatePoly::coeff(int n_exp, int u_exp) const {
    auto it = terms_.find({n_exp, u_exp});
    return it == terms_.end() ? Rational(0) : it->second;
}

void BivariatePoly::prune(const Key& k) {
    auto it = terms_.find(k);
    if (it != terms_.end() && it->second == 0) terms_.erase(it);
}

BivariatePoly& BivariatePoly::operator+=(const BivariatePoly& o) {
    for (const auto& [k, c] : o.terms_) {
        terms_[k] += c;
        prune(k);
    }
    return *this;
}

BivariatePoly& BivariatePoly::operator-=(const BivariatePoly& o) {
    for (const auto& [k, c] : o.terms_) {
        terms_[k] -= c;
        prune(k);
    }
    return *this;
}

BivariatePoly operator*(const BivariatePoly& a, const BivariatePoly& b) {
    BivariatePoly out;
    for (const auto& [ka, ca] : a.terms_)
        for (const auto& [kb, cb] : b.terms_) {
            BivariatePoly::Key k{ka.first + kb.first, ka.second + kb.second};
            out.terms_[k] += ca * cb;
            out.prune(k);
        }
    return out;
}

BivariatePoly& BivariatePoly::operator*=(const Rational& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [k, v] : terms_) v *= c;
    return *this;
}

Rational BivariatePoly::evaluate(const Rational& N, const Rational& u) const {
    Rational acc = 0;
    for (const auto& [k, c] : terms_) {
        Rational t = c;
        for (int i = 0; i < k.first; ++i) t *= N;
        for (int i = 0; i < k.second; ++i) t *= u;
        acc += t;
    }
    return acc;
}

BivariatePoly BivariatePoly::coeff_of_N(int k) const {
    BivariatePoly out;
    for (const auto& [key, c] : terms_)
        if (key.first == k) out.terms_[{0, key.second}] = c;
    return out;
}

int BivariatePoly::degree_N() const {
    int d = -1;
    for (const auto& [k, c] : terms_) d = std::max(d, k.first);
    return d;
}

int BivariatePoly::degree_u() const {
    int d = -1;
    for (const auto& [k, c] : terms_) d = std::max(d, k.second);
    return d;
}

BivariatePoly BivariatePoly::shift_down_u(int k) const {
    BivariatePoly out;
    for (const auto& [key, c] : terms_) {
        if (key.second < k) throw std::domain_error("polynomial not divisible by u^k");
        out.terms_[{key.first, key.second - k}] = c;
    }
    return out;
}

std::string BivariatePoly::to_json() const {
    nlohmann::json j;
    j["vars"] = {"N", "u"};
    j["terms"] = nlohmann::json::array();
    std::vector<std::pair<Key, Rational>> sorted(terms_.begin(), terms_.end());
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
        if (a.first.first != b.first.first) return a.first.first > b.first.first;
        return a.first.second > b.first.second;
    });
    for (const auto& [k, c] : sorted) {
        nlohmann::json t;
        t["N"] = k.first;
        t["u"] = k.second;
        t["coeff"] = rational_to_string(c);
        j["terms"].push_back(t);
    }
    return j.dump();
}

BivariatePoly BivariatePoly::from_json(const std::string& json_text) {
    nlohmann::json j = nlohmann::json::parse(json_text);
    BivariatePoly out;
    for (const auto& t : j.at("terms")) {
        Key k{t.at("N").get<int>(), t.at("u").get<int>()};
        Rational c = rational_from_string(t.at("coeff").get<std::string>());
        if (c != 0) out.terms_[k] += c;
        out.prune(k);
    }
    return out;
}

std::string BivariatePoly::to_pretty_string() const {
    if (terms_.empty()) return "0";
    std::vector<std::pair<Key, Rational>> sorted(terms_.begin(), terms_.end());
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
        if (a.first.first != b.first.first) return a.first.first > b.first.first;
        return a.first.second > b.first.second;
    });
    std::string s;
    bool first = true;
    for (const auto& [k, c] : sorted) {
        Rational abs_c = c < 0 ? Rational(-c) : c;
        if (first) {
            if (c < 0) s += "-";
            first = false;
        } else {
            s += c < 0 ? " - " : " + ";
        }
        std::string mono;
        if (k.first > 0) mono += k.first == 1 ? "N" : "N^" + std::to_string(k.first);
        if (k.second > 0) {
            if (!mono.empty()) mono += "*";
            mono += k.second == 1 ? "u" : "u^" + std::to_string(k.second);
        }
        if (mono.empty())
            s += rational_to_string(abs_c);
        else if (abs_c == 1)
            s += mono;
        else
            s += rational_to_string(abs_c) + "*" + mono;
    }
    return s;
}

}  // namespace betamaps
