#pragma once

// Exact operator algebra for the integrator-chain observer.
//
// For x_1' = x_2, ..., x_n' = u, y = x_1 each x_k (k >= 2) is written as
//
//     x_k = wy[k-1] + sum_i cu[i](mu) wu[i] + sum_{j>k} cx[j](mu) x_j
//
// with mu = 1/lambda, wy[i] = (pF)^i[y], wu[i] = F^i[u]. Coefficients are
// polynomials in mu with rational coefficients.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace aslo::chain {

class Rational {
public:
    Rational() = default;
    Rational(std::int64_t num, std::int64_t den = 1);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }
    double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }
    bool is_zero() const { return num_ == 0; }

    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator-() const { return {-num_, den_}; }
    bool operator==(const Rational& o) const = default;

    std::string str() const;

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

/// Polynomial in mu = 1/lambda: power -> coefficient. Zero terms are never stored.
class MuPoly {
public:
    MuPoly() = default;
    static MuPoly constant(Rational c);
    static MuPoly monomial(int power, Rational c);

    const std::map<int, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Rational coeff(int power) const;

    MuPoly operator+(const MuPoly& o) const;
    MuPoly operator-(const MuPoly& o) const;
    MuPoly operator*(const MuPoly& o) const;
    bool operator==(const MuPoly& o) const = default;

    double eval(double lambda) const;
    std::string str() const;

private:
    void add(int power, Rational c);
    std::map<int, Rational> terms_;
};

/// Linear combination over the signal basis {wy_i, wu_i, x_j}.
struct LinearForm {
    std::map<int, MuPoly> wy;  // i -> coefficient of (pF)^i[y]
    std::map<int, MuPoly> wu;  // i -> coefficient of F^i[u]
    std::map<int, MuPoly> x;   // j -> coefficient of x_j

    LinearForm operator+(const LinearForm& o) const;
    LinearForm operator-(const LinearForm& o) const;
    LinearForm scaled(const MuPoly& p) const;
    bool operator==(const LinearForm& o) const = default;

    std::string str() const;
};

struct CoefficientTable {
    int n = 0;
    /// rows[k] expresses x_k for k = 2..n; rows[0] and rows[1] are unused.
    std::vector<LinearForm> rows;

    const LinearForm& row(int k) const { return rows.at(static_cast<std::size_t>(k)); }
};

/// Back-substitution form: x_k in terms of wy, wu and x_{k+1..n}.
CoefficientTable derive_chain_coefficients(int n);

/// Same table with every x_j eliminated, so each row uses only wy and wu.
CoefficientTable eliminate_states(const CoefficientTable& table);

}  // namespace aslo::chain
