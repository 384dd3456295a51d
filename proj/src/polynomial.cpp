#include "wm/polynomial.hpp"

#include <sstream>

namespace wm {

std::string rational_to_string(const Rational& q) {
    Rational r = q;
    r.canonicalize();
    return r.get_str();
}

void LaurentPolynomial::add(int exponent, const Rational& c) {
    Rational& t = terms_[exponent];
    t += c;
    if (t == 0) terms_.erase(exponent);
}

std::string LaurentPolynomial::to_string(const std::string& var) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        Rational c = it->second;
        const int e = it->first;
        if (!first) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << "-";
        if (c < 0) c = -c;
        first = false;
        if (e == 0) {
            os << rational_to_string(c);
            continue;
        }
        if (c != 1) os << rational_to_string(c);
        os << var;
        if (e != 1) os << "^{" << e << "}";
    }
    return os.str();
}

Rational LaurentPolynomial::evaluate(const Rational& x) const {
    Rational s = 0;
    for (const auto& [e, c] : terms_) {
        Rational pw = 1;
        for (int i = 0; i < (e < 0 ? -e : e); ++i) pw *= x;
        s += e < 0 ? Rational(c / pw) : Rational(c * pw);
    }
    return s;
}

MomentPolynomial::MomentPolynomial(std::vector<std::string> vars) : vars_(std::move(vars)) {}

std::vector<std::string> MomentPolynomial::default_vars(int n) {
    std::vector<std::string> v;
    for (int i = 1; i <= n; ++i) v.push_back("N_" + std::to_string(i));
    return v;
}

void MomentPolynomial::add_term(const std::vector<int>& exponents, const BigInt& coeff) {
    if (static_cast<int>(exponents.size()) != nvars()) throw DomainError("exponent vector has wrong length");
    BigInt& t = terms_[exponents];
    t += coeff;
    if (t == 0) terms_.erase(exponents);
}

MomentPolynomial& MomentPolynomial::operator+=(const MomentPolynomial& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

BigInt MomentPolynomial::evaluate(const std::vector<long>& values) const {
    if (static_cast<int>(values.size()) != nvars()) throw DomainError("wrong number of values");
    BigInt s = 0;
    for (const auto& [e, c] : terms_) {
        BigInt t = c;
        for (size_t i = 0; i < e.size(); ++i) {
            BigInt pw;
            mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(values[i]), static_cast<unsigned long>(e[i]));
            t *= pw;
        }
        s += t;
    }
    return s;
}

LaurentPolynomial MomentPolynomial::substitute(const std::vector<Rational>& c) const {
    if (static_cast<int>(c.size()) != nvars()) throw DomainError("wrong number of constants");
    LaurentPolynomial out;
    for (const auto& [e, k] : terms_) {
        Rational t = k;
        int deg = 0;
        for (size_t i = 0; i < e.size(); ++i) {
            for (int j = 0; j < e[i]; ++j) t *= c[i];
            deg += e[i];
        }
        out.add(deg, t);
    }
    return out;
}

MomentPolynomial MomentPolynomial::merge_variables(const std::vector<std::vector<int>>& groups,
                                                   std::vector<std::string> names) const {
    if (groups.size() != names.size()) throw DomainError("one name per group is required");
    MomentPolynomial out(std::move(names));
    for (const auto& [e, c] : terms_) {
        std::vector<int> ne(groups.size(), 0);
        for (size_t g = 0; g < groups.size(); ++g)
            for (int v : groups[g]) ne[g] += e[static_cast<size_t>(v)];
        out.add_term(ne, c);
    }
    return out;
}

MomentPolynomial MomentPolynomial::renamed(std::vector<std::string> names) const {
    if (static_cast<int>(names.size()) != nvars()) throw DomainError("wrong number of names");
    MomentPolynomial out = *this;
    out.vars_ = std::move(names);
    return out;
}

std::string MomentPolynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c0] : terms_) {
        BigInt c = c0;
        if (!first) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << "-";
        if (c < 0) c = -c;
        first = false;
        bool any = false;
        std::ostringstream mono;
        for (size_t i = 0; i < e.size(); ++i) {
            if (!e[i]) continue;
            mono << (any ? " " : "") << vars_[i];
            if (e[i] != 1) mono << "^" << e[i];
            any = true;
        }
        if (!any) os << c.get_str();
        else if (c == 1) os << mono.str();
        else os << c.get_str() << " " << mono.str();
    }
    return os.str();
}

nlohmann::json MomentPolynomial::to_json() const {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [e, c] : terms_) terms.push_back({{"exponents", e}, {"coeff", c.get_str()}});
    return {{"variables", vars_}, {"terms", terms}, {"text", to_string()}};
}

MomentPolynomial MomentPolynomial::from_json(const nlohmann::json& j) {
    try {
        MomentPolynomial p(j.at("variables").get<std::vector<std::string>>());
        for (const auto& t : j.at("terms")) p.add_term(t.at("exponents").get<std::vector<int>>(), BigInt(t.at("coeff").get<std::string>()));
        return p;
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("polynomial JSON: ") + e.what());
    } catch (const std::invalid_argument&) {
        throw DomainError("polynomial JSON: bad coefficient");
    }
}

}  // namespace wm
