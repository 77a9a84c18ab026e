#include "aslo/observers_linear.hpp"

#include <algorithm>
#include <stdexcept>

#include "aslo/lti.hpp"

namespace aslo::obs {

namespace {

void require_positive(double v, const char* what) {
    if (!(v > 0.0)) throw std::invalid_argument(std::string(what) + " must be positive");
}

}  // namespace

// --- ASLO -------------------------------------------------------------------

DiAslo::DiAslo(double lambda, bool seed_filters) : lambda_(lambda), seed_(seed_filters) {
    require_positive(lambda, "DiAslo: lambda");
}

void DiAslo::init_state(std::span<double> s, const Signals& sig) const {
    s[0] = seed_ ? sig.y[0] : 0.0;
    s[1] = seed_ ? sig.u[0] : 0.0;
}

void DiAslo::derivative(std::span<const double> s, const Signals& sig, std::span<double> ds) const {
    ds[0] = lti::FilterBlock{lambda_, s[0]}.derivative(sig.y[0]);
    ds[1] = lti::FilterBlock{lambda_, s[1]}.derivative(sig.u[0]);
}

double DiAslo::value(std::span<const double> s, const Signals& sig) const {
    return lti::FilterBlock{lambda_, s[0]}.p_filter(sig.y[0]) + s[1] / lambda_;
}

bool DiAslo::raw_estimate(std::span<const double> s, const Signals& sig, std::span<double> out) const {
    out[0] = value(s, sig);
    return true;
}

// --- A-ASLO -----------------------------------------------------------------

DiAaslo::DiAaslo(double lambda, double gamma, double xhat0, bool seed_filters)
    : inner_(lambda, seed_filters), gamma_(gamma), xhat0_(xhat0) {
    if (gamma < 0.0) throw std::invalid_argument("DiAaslo: gamma must be non-negative");
}

void DiAaslo::init_state(std::span<double> s, const Signals& sig) const {
    inner_.init_state(s.first(2), sig);
    s[2] = xhat0_;
}

void DiAaslo::derivative(std::span<const double> s, const Signals& sig, std::span<double> ds) const {
    inner_.derivative(s.first(2), sig, ds.first(2));
    ds[2] = sig.u[0] - gamma_ * (s[2] - inner_.value(s.first(2), sig));
}

bool DiAaslo::raw_estimate(std::span<const double> s, const Signals&, std::span<double> out) const {
    out[0] = s[2];
    return true;
}

// --- Luenberger -------------------------------------------------------------

DiLuenberger::DiLuenberger(double gamma_l, double xc0) : gamma_l_(gamma_l), xc0_(xc0) {
    require_positive(gamma_l, "DiLuenberger: gamma_L");
}

void DiLuenberger::init_state(std::span<double> s, const Signals&) const { s[0] = xc0_; }

void DiLuenberger::derivative(std::span<const double> s, const Signals& sig, std::span<double> ds) const {
    ds[0] = -gamma_l_ * s[0] + sig.u[0] - gamma_l_ * gamma_l_ * sig.y[0];
}

bool DiLuenberger::raw_estimate(std::span<const double> s, const Signals& sig, std::span<double> out) const {
    out[0] = s[0] + gamma_l_ * sig.y[0];
    return true;
}

// --- state-space realizations ----------------------------------------------

StateSpaceObserver::StateSpaceObserver(std::string kind, std::size_t order, std::vector<double> A,
                                       std::vector<double> B, std::vector<double> C, std::vector<double> D)
    : kind_(std::move(kind)), order_(order), A_(std::move(A)), B_(std::move(B)), C_(std::move(C)), D_(std::move(D)) {
    if (A_.size() != order_ * order_ || B_.size() != order_ * 2 || C_.size() != order_ || D_.size() != 2)
        throw std::invalid_argument("StateSpaceObserver: matrix sizes do not match the order");
}

void StateSpaceObserver::derivative(std::span<const double> s, const Signals& sig, std::span<double> ds) const {
    const double in[2] = {lti::require_finite(sig.u[0], "u"), lti::require_finite(sig.y[0], "y")};
    for (std::size_t r = 0; r < order_; ++r) {
        double acc = B_[r * 2] * in[0] + B_[r * 2 + 1] * in[1];
        for (std::size_t c = 0; c < order_; ++c) acc += A_[r * order_ + c] * s[c];
        ds[r] = acc;
    }
}

bool StateSpaceObserver::raw_estimate(std::span<const double> s, const Signals& sig, std::span<double> out) const {
    double acc = D_[0] * sig.u[0] + D_[1] * sig.y[0];
    for (std::size_t c = 0; c < order_; ++c) acc += C_[c] * s[c];
    out[0] = acc;
    return true;
}

StateSpaceObserver di_aslo_realization(double lambda) {
    require_positive(lambda, "di_aslo_realization: lambda");
    const double l = lambda;
    return StateSpaceObserver("di_aslo_ss", 2,
                              {-l, 0.0,  //
                               0.0, -l},
                              {l, 0.0,  //
                               0.0, -l * l},
                              {1.0 / l, 1.0}, {0.0, l});
}

StateSpaceObserver di_aaslo_realization(double lambda, double gamma) {
    require_positive(lambda, "di_aaslo_realization: lambda");
    const double l = lambda, g = gamma;
    return StateSpaceObserver("di_aaslo_ss", 3,
                              {-l, 0.0, 0.0,  //
                               0.0, -l, 0.0,  //
                               g / l, g, -g},
                              {l, 0.0,        //
                               0.0, -l * l,   //
                               1.0, g * l},
                              {0.0, 0.0, 1.0}, {0.0, 0.0});
}

// --- integrator chain -------------------------------------------------------

ChainAslo::ChainAslo(int n, double lambda, bool seed_filters)
    : n_(n), lambda_(lambda), seed_(seed_filters), table_(chain::derive_chain_coefficients(n)) {
    require_positive(lambda, "ChainAslo: lambda");
    rows_.resize(static_cast<std::size_t>(n + 1));
    for (int k = 2; k <= n; ++k) {
        const auto& form = table_.row(k);
        Row row;
        row.wy.assign(static_cast<std::size_t>(n), 0.0);
        row.wu.assign(static_cast<std::size_t>(n), 0.0);
        row.x.assign(static_cast<std::size_t>(n + 1), 0.0);
        for (const auto& [i, p] : form.wy) row.wy[static_cast<std::size_t>(i)] = p.eval(lambda);
        for (const auto& [i, p] : form.wu) row.wu[static_cast<std::size_t>(i)] = p.eval(lambda);
        for (const auto& [j, p] : form.x) row.x[static_cast<std::size_t>(j)] = p.eval(lambda);
        rows_[static_cast<std::size_t>(k)] = std::move(row);
    }
}

std::vector<std::string> ChainAslo::channels() const {
    std::vector<std::string> names;
    for (int k = 2; k <= n_; ++k) names.push_back("x" + std::to_string(k));
    return names;
}

void ChainAslo::init_state(std::span<double> s, const Signals& sig) const {
    std::fill(s.begin(), s.end(), 0.0);
    if (!seed_) return;
    const std::size_t m = static_cast<std::size_t>(n_ - 1);
    for (std::size_t i = 0; i < m; ++i) s[i] = sig.u[0];
    s[m] = sig.y[0];
}

void ChainAslo::derivative(std::span<const double> s, const Signals& sig, std::span<double> ds) const {
    const std::size_t m = static_cast<std::size_t>(n_ - 1);
    lti::FilterChain(lambda_, s.first(m)).derivatives(sig.u[0], ds.first(m));
    lti::DerivativeChain(lambda_, s.subspan(m, m)).derivatives(sig.y[0], ds.subspan(m, m));
}

void ChainAslo::basis(std::span<const double> s, const Signals& sig, std::span<double> wy,
                      std::span<double> wu) const {
    const std::size_t m = static_cast<std::size_t>(n_ - 1);
    std::copy_n(s.begin(), m, wu.begin());
    lti::DerivativeChain(lambda_, s.subspan(m, m)).outputs(sig.y[0], wy);
}

bool ChainAslo::raw_estimate(std::span<const double> s, const Signals& sig, std::span<double> out) const {
    const std::size_t m = static_cast<std::size_t>(n_ - 1);
    std::vector<double> wy(m), wu(m), x(static_cast<std::size_t>(n_ + 1), 0.0);
    basis(s, sig, wy, wu);
    for (int k = n_; k >= 2; --k) {
        const Row& row = rows_[static_cast<std::size_t>(k)];
        double acc = 0.0;
        for (std::size_t i = 1; i <= m; ++i) acc += row.wy[i] * wy[i - 1] + row.wu[i] * wu[i - 1];
        for (int j = k + 1; j <= n_; ++j) acc += row.x[static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(j)];
        x[static_cast<std::size_t>(k)] = acc;
    }
    for (int k = 2; k <= n_; ++k) out[static_cast<std::size_t>(k - 2)] = x[static_cast<std::size_t>(k)];
    return true;
}

}  // namespace aslo::obs
