#include "aslo/chain_coefficients.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace aslo::chain {

Rational::Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    num_ = g ? num / g : 0;
    den_ = g ? den / g : 1;
}

Rational Rational::operator+(const Rational& o) const { return {num_ * o.den_ + o.num_ * den_, den_ * o.den_}; }
Rational Rational::operator-(const Rational& o) const { return *this + (-o); }
Rational Rational::operator*(const Rational& o) const { return {num_ * o.num_, den_ * o.den_}; }

std::string Rational::str() const {
    return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
}

MuPoly MuPoly::constant(Rational c) { return monomial(0, c); }

MuPoly MuPoly::monomial(int power, Rational c) {
    MuPoly p;
    p.add(power, c);
    return p;
}

void MuPoly::add(int power, Rational c) {
    if (c.is_zero()) return;
    auto it = terms_.find(power);
    if (it == terms_.end()) {
        terms_.emplace(power, c);
        return;
    }
    it->second = it->second + c;
    if (it->second.is_zero()) terms_.erase(it);
}

Rational MuPoly::coeff(int power) const {
    auto it = terms_.find(power);
    return it == terms_.end() ? Rational{} : it->second;
}

MuPoly MuPoly::operator+(const MuPoly& o) const {
    MuPoly r = *this;
    for (const auto& [k, c] : o.terms_) r.add(k, c);
    return r;
}

MuPoly MuPoly::operator-(const MuPoly& o) const {
    MuPoly r = *this;
    for (const auto& [k, c] : o.terms_) r.add(k, -c);
    return r;
}

MuPoly MuPoly::operator*(const MuPoly& o) const {
    MuPoly r;
    for (const auto& [ka, ca] : terms_)
        for (const auto& [kb, cb] : o.terms_) r.add(ka + kb, ca * cb);
    return r;
}

double MuPoly::eval(double lambda) const {
    const double mu = 1.0 / lambda;
    double acc = 0.0;
    for (const auto& [k, c] : terms_) acc += c.value() * std::pow(mu, k);
    return acc;
}

std::string MuPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << c.str();
        if (k == 1) os << "*mu";
        else if (k > 1) os << "*mu^" << k;
    }
    return os.str();
}

namespace {

using Terms = std::map<int, MuPoly>;

Terms combine(const Terms& a, const Terms& b, bool subtract) {
    Terms r = a;
    for (const auto& [k, p] : b) {
        MuPoly& slot = r[k];
        slot = subtract ? slot - p : slot + p;
        if (slot.is_zero()) r.erase(k);
    }
    return r;
}

Terms scale(const Terms& a, const MuPoly& s) {
    Terms r;
    for (const auto& [k, p] : a) {
        MuPoly q = p * s;
        if (!q.is_zero()) r.emplace(k, q);
    }
    return r;
}

void append(std::ostringstream& os, bool& first, const Terms& terms, const char* name) {
    for (const auto& [k, p] : terms) {
        if (!first) os << " + ";
        first = false;
        os << "(" << p.str() << ")*" << name << k;
    }
}

}  // namespace

LinearForm LinearForm::operator+(const LinearForm& o) const {
    return {combine(wy, o.wy, false), combine(wu, o.wu, false), combine(x, o.x, false)};
}

LinearForm LinearForm::operator-(const LinearForm& o) const {
    return {combine(wy, o.wy, true), combine(wu, o.wu, true), combine(x, o.x, true)};
}

LinearForm LinearForm::scaled(const MuPoly& p) const { return {scale(wy, p), scale(wu, p), scale(x, p)}; }

std::string LinearForm::str() const {
    std::ostringstream os;
    bool first = true;
    append(os, first, wy, "wy");
    append(os, first, wu, "wu");
    append(os, first, x, "x");
    if (first) os << "0";
    return os.str();
}

CoefficientTable derive_chain_coefficients(int n) {
    if (n < 2) throw std::invalid_argument("derive_chain_coefficients: n must be at least 2");
    const MuPoly one = MuPoly::constant(1);
    const MuPoly mu = MuPoly::monomial(1, 1);

    // T[j][i] = F^j[x_i] for j = 0..n-1, i = 1..n+1, built from
    //   F^{j-1}[x_i] = F^j[x_i] + mu F^j[x_{i+1}],  x_{n+1} = u.
    std::vector<std::vector<LinearForm>> T(static_cast<std::size_t>(n), std::vector<LinearForm>(static_cast<std::size_t>(n + 2)));
    for (int i = 1; i <= n; ++i) T[0][static_cast<std::size_t>(i)].x[i] = one;
    for (int j = 1; j < n; ++j) {
        T[static_cast<std::size_t>(j)][static_cast<std::size_t>(n + 1)].wu[j] = one;
        for (int i = n; i >= 1; --i) {
            const auto& prev = T[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(i)];
            const auto& right = T[static_cast<std::size_t>(j)][static_cast<std::size_t>(i + 1)];
            T[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = prev - right.scaled(mu);
        }
    }

    // x_k = (pF)^{k-1}[y] + mu * sum_{j=1}^{k-1} F^j[x_{k+1}]
    CoefficientTable table;
    table.n = n;
    table.rows.resize(static_cast<std::size_t>(n + 1));
    for (int k = 2; k <= n; ++k) {
        LinearForm row;
        row.wy[k - 1] = one;
        LinearForm sum;
        for (int j = 1; j <= k - 1; ++j) sum = sum + T[static_cast<std::size_t>(j)][static_cast<std::size_t>(k + 1)];
        table.rows[static_cast<std::size_t>(k)] = row + sum.scaled(mu);
    }
    return table;
}

CoefficientTable eliminate_states(const CoefficientTable& table) {
    CoefficientTable out = table;
    for (int k = table.n; k >= 2; --k) {
        LinearForm row = out.rows[static_cast<std::size_t>(k)];
        LinearForm reduced{row.wy, row.wu, {}};
        for (const auto& [j, p] : row.x) reduced = reduced + out.rows[static_cast<std::size_t>(j)].scaled(p);
        out.rows[static_cast<std::size_t>(k)] = reduced;
    }
    return out;
}

}  // namespace aslo::chain
