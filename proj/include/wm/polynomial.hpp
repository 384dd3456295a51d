#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "wm/combinat.hpp"

namespace wm {

// Univariate Laurent polynomial with rational coefficients.
class LaurentPolynomial {
public:
    void add(int exponent, const Rational& c);
    const std::map<int, Rational>& terms() const { return terms_; }
    // Terms by decreasing exponent: "3 + 8N^{-2} + 5N^{-6}"
    std::string to_string(const std::string& var = "N") const;
    Rational evaluate(const Rational& x) const;
    bool operator==(const LaurentPolynomial&) const = default;

private:
    std::map<int, Rational> terms_;
};

// Multivariate polynomial in named variables with big-integer coefficients.
// Terms are kept in ascending lexicographic order of exponent vectors.
class MomentPolynomial {
public:
    MomentPolynomial() = default;
    explicit MomentPolynomial(std::vector<std::string> vars);
    static std::vector<std::string> default_vars(int n);  // N_1..N_n

    int nvars() const { return static_cast<int>(vars_.size()); }
    const std::vector<std::string>& vars() const { return vars_; }
    const std::map<std::vector<int>, BigInt>& terms() const { return terms_; }

    void add_term(const std::vector<int>& exponents, const BigInt& coeff);
    MomentPolynomial& operator+=(const MomentPolynomial& o);

    BigInt evaluate(const std::vector<long>& values) const;
    // N_i = c_i * N
    LaurentPolynomial substitute(const std::vector<Rational>& c) const;
    // Sum the exponents of variables in each group into one variable.
    MomentPolynomial merge_variables(const std::vector<std::vector<int>>& groups, std::vector<std::string> names) const;
    MomentPolynomial renamed(std::vector<std::string> names) const;

    std::string to_string() const;
    nlohmann::json to_json() const;
    static MomentPolynomial from_json(const nlohmann::json& j);

    // Equality of the term maps (variable names ignored).
    bool operator==(const MomentPolynomial& o) const { return terms_ == o.terms_; }

private:
    std::vector<std::string> vars_;
    std::map<std::vector<int>, BigInt> terms_;
};

std::string rational_to_string(const Rational& q);

}  // namespace wm
