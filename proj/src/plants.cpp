#include "aslo/plants.hpp"

#include <cmath>
#include <stdexcept>

#include "aslo/errors.hpp"

namespace aslo::plants {

void DoubleIntegrator::dynamics(std::span<const double> x, std::span<const double> u, std::span<double> dx,
                                double) const {
    dx[0] = x[1];
    dx[1] = u[0];
}

void DoubleIntegrator::output(std::span<const double> x, std::span<double> y) const { y[0] = x[0]; }

IntegratorChain::IntegratorChain(std::size_t order) : order_(order) {
    if (order < 2) throw std::invalid_argument("IntegratorChain: order must be at least 2");
}

std::vector<std::string> IntegratorChain::state_names() const {
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= order_; ++i) names.push_back("x" + std::to_string(i));
    return names;
}

void IntegratorChain::dynamics(std::span<const double> x, std::span<const double> u, std::span<double> dx,
                               double) const {
    for (std::size_t i = 0; i + 1 < order_; ++i) dx[i] = x[i + 1];
    dx[order_ - 1] = u[0];
}

void IntegratorChain::output(std::span<const double> x, std::span<double> y) const { y[0] = x[0]; }

// --- PMSM -------------------------------------------------------------------

void PmsmParams::validate() const {
    if (!(R > 0 && L > 0 && J > 0 && lambda_m > 0)) throw std::invalid_argument("PMSM: R, L, J, lambda_m must be positive");
    if (Rm < 0) throw std::invalid_argument("PMSM: friction must be non-negative");
    if (np < 1) throw std::invalid_argument("PMSM: pole pairs must be >= 1");
}

PmsmParams bmp0701f() {
    PmsmParams p;
    p.L = 40.03e-3;
    p.R = 8.875;
    p.J = 60e-6;
    p.np = 5;
    p.lambda_m = 0.2086;
    p.i_max = 2.3;
    return p;
}

PmsmModel::PmsmModel(PmsmParams params) : p_(params) { p_.validate(); }

std::array<double, 2> PmsmModel::magnet_flux(double theta) const {
    const double a = p_.np * theta;
    return {p_.lambda_m * std::cos(a), p_.lambda_m * std::sin(a)};
}

void PmsmModel::output(std::span<const double> x, std::span<double> y) const {
    const auto c = magnet_flux(x[2]);
    y[0] = (x[0] - c[0]) / p_.L;
    y[1] = (x[1] - c[1]) / p_.L;
}

void PmsmModel::dynamics(std::span<const double> x, std::span<const double> u, std::span<double> dx,
                         double load_torque) const {
    double y[2];
    output(x, y);
    dx[0] = -p_.R * y[0] + u[0];
    dx[1] = -p_.R * y[1] + u[1];
    dx[2] = x[3];
    dx[3] = (-p_.Rm * x[3] + p_.np * (y[1] * x[0] - y[0] * x[1]) - load_torque) / p_.J;
}

// --- WRIM -------------------------------------------------------------------

void WrimParams::validate() const {
    if (!(Rs > 0 && Rr > 0 && Ls > 0 && Lr > 0 && Lsr > 0 && J > 0))
        throw std::invalid_argument("WRIM: resistances, inductances and inertia must be positive");
    if (!(Ls * Lr > Lsr * Lsr)) throw SingularConfiguration("WRIM: inductance matrix is not positive definite");
}

WrimModel::WrimModel(WrimParams params) : p_(params) { p_.validate(); }

std::array<double, 4> WrimModel::currents(std::span<const double> x) const {
    const double c = std::cos(x[4]);
    const double s = std::sin(x[4]);
    const double sigma = p_.Ls * p_.Lr - p_.Lsr * p_.Lsr;
    // e^{J theta} phi_r and e^{-J theta} phi_s
    const double rot_r1 = c * x[2] - s * x[3];
    const double rot_r2 = s * x[2] + c * x[3];
    const double rot_s1 = c * x[0] + s * x[1];
    const double rot_s2 = -s * x[0] + c * x[1];
    return {(p_.Lr * x[0] - p_.Lsr * rot_r1) / sigma, (p_.Lr * x[1] - p_.Lsr * rot_r2) / sigma,
            (p_.Ls * x[2] - p_.Lsr * rot_s1) / sigma, (p_.Ls * x[3] - p_.Lsr * rot_s2) / sigma};
}

void WrimModel::output(std::span<const double> x, std::span<double> y) const {
    const auto i = currents(x);
    for (std::size_t k = 0; k < 4; ++k) y[k] = i[k];
}

void WrimModel::dynamics(std::span<const double> x, std::span<const double> u, std::span<double> dx,
                         double load_torque) const {
    const auto i = currents(x);
    dx[0] = -p_.Rs * i[0] + u[0];
    dx[1] = -p_.Rs * i[1] + u[1];
    dx[2] = -p_.Rr * i[2];
    dx[3] = -p_.Rr * i[3];
    dx[4] = x[5];
    // i_s^T Jrot phi_s with Jrot = [0 -1; 1 0]
    const double torque = i[0] * (-x[1]) + i[1] * x[0];
    dx[5] = (-p_.Rm * x[5] + torque - load_torque) / p_.J;
}

// --- robotic leg ------------------------------------------------------------

RoboticLegModel::RoboticLegModel(RoboticLegParams params) : p_(params) {
    if (!(p_.m1 > 0 && p_.m2 > 0)) throw std::invalid_argument("RoboticLeg: masses must be positive");
}

void RoboticLegModel::dynamics(std::span<const double> x, std::span<const double> u, std::span<double> dx,
                               double) const {
    const double q1 = x[0];
    if (std::abs(q1) < p_.q1_min)
        throw SingularConfiguration("RoboticLeg: |q1| = " + std::to_string(std::abs(q1)) + " below q1_min");
    const double qd1 = x[3], qd2 = x[4];
    dx[0] = x[3];
    dx[1] = x[4];
    dx[2] = x[5];
    dx[3] = q1 * qd2 * qd2 + u[0] / p_.m1;
    dx[4] = (-2.0 * p_.m1 * q1 * qd1 * qd2 + u[1]) / (p_.m1 * q1 * q1);
    dx[5] = -u[1] / p_.m2;
}

void RoboticLegModel::output(std::span<const double> x, std::span<double> y) const {
    y[0] = x[0];
    y[1] = x[1];
    y[2] = x[2];
}

double RoboticLegModel::energy(std::span<const double> x) const {
    return 0.5 * (p_.m1 * x[3] * x[3] + p_.m1 * x[0] * x[0] * x[4] * x[4] + p_.m2 * x[5] * x[5]);
}

// --- ball and beam ----------------------------------------------------------

BallBeamModel::BallBeamModel(BallBeamParams params) : p_(params) {
    if (!(p_.ell > 0)) throw std::invalid_argument("BallBeam: ell must be positive");
}

void BallBeamModel::dynamics(std::span<const double> x, std::span<const double> u, std::span<double> dx,
                             double) const {
    const double q1 = x[0], q2 = x[1], qd1 = x[2], qd2 = x[3];
    dx[0] = qd1;
    dx[1] = qd2;
    dx[2] = q1 * qd2 * qd2 - p_.g * std::sin(q2);
    dx[3] = (-2.0 * q1 * qd1 * qd2 - p_.g * q1 * std::cos(q2) + u[0]) / (p_.ell * p_.ell + q1 * q1);
}

void BallBeamModel::output(std::span<const double> x, std::span<double> y) const {
    y[0] = x[0];
    y[1] = x[1];
}

double BallBeamModel::energy(std::span<const double> x) const {
    const double q1 = x[0];
    return 0.5 * (x[2] * x[2] + (p_.ell * p_.ell + q1 * q1) * x[3] * x[3]) + p_.g * q1 * std::sin(x[1]);
}

// --- generic Euler-Lagrange -------------------------------------------------

GenericElPlant::GenericElPlant(GenericElSpec spec) : spec_(std::move(spec)) {
    if (spec_.s == 0 || spec_.m == 0) throw std::invalid_argument("GenericEl: partition sizes must be positive");
    if (spec_.m1.size() != spec_.s) throw std::invalid_argument("GenericEl: m1 needs s entries");
    if (!spec_.m3 || !spec_.dm3 || !spec_.V || !spec_.gradV || !spec_.G)
        throw std::invalid_argument("GenericEl: m3, dm3, V, gradV and G are required");
    if (spec_.R1.empty()) spec_.R1.assign(spec_.s, 0.0);
    if (spec_.R2.empty()) spec_.R2.assign(spec_.m, 0.0);
    if (spec_.R1.size() != spec_.s || spec_.R2.size() != spec_.m)
        throw std::invalid_argument("GenericEl: friction sizes do not match the partition");
    for (double r : spec_.R1)
        if (r < 0) throw std::invalid_argument("GenericEl: friction must be non-negative");
    for (double r : spec_.R2)
        if (r < 0) throw std::invalid_argument("GenericEl: friction must be non-negative");
    for (double m : spec_.m1)
        if (!(m > 0)) throw std::invalid_argument("GenericEl: m1 must be positive");
}

std::vector<std::string> GenericElPlant::state_names() const {
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= dof(); ++i) names.push_back("q" + std::to_string(i));
    for (std::size_t i = 1; i <= dof(); ++i) names.push_back("qd" + std::to_string(i));
    return names;
}

std::vector<std::string> GenericElPlant::input_names() const {
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= spec_.inputs; ++i) names.push_back("u" + std::to_string(i));
    return names;
}

std::vector<std::string> GenericElPlant::output_names() const {
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= dof(); ++i) names.push_back("q" + std::to_string(i));
    return names;
}

void GenericElPlant::output(std::span<const double> x, std::span<double> y) const {
    for (std::size_t i = 0; i < dof(); ++i) y[i] = x[i];
}

void GenericElPlant::dynamics(std::span<const double> x, std::span<const double> u, std::span<double> dx,
                              double) const {
    const std::size_t s = spec_.s, m = spec_.m, n = dof(), k = spec_.inputs;
    const auto q = x.first(n);
    const auto qd = x.subspan(n, n);
    const auto q1 = q.first(s);
    const auto qd1 = qd.first(s);
    const auto qd2 = qd.subspan(s, m);

    std::vector<double> m3(m), jac(m * s), grad(n), G(n * k);
    spec_.m3(q1, m3);
    spec_.dm3(q1, jac);
    spec_.gradV(q, grad);
    spec_.G(q, G);

    auto Gu = [&](std::size_t row) {
        double acc = 0.0;
        for (std::size_t c = 0; c < k; ++c) acc += G[row * k + c] * u[c];
        return acc;
    };

    for (std::size_t i = 0; i < n; ++i) dx[i] = qd[i];

    // m1 qdd1 - 1/2 (d/dq1 [m3 qd2])^T qd2 + R1 qd1 + grad_{q1} V = g1 u
    for (std::size_t i = 0; i < s; ++i) {
        double coriolis = 0.0;
        for (std::size_t j = 0; j < m; ++j) coriolis += jac[j * s + i] * qd2[j] * qd2[j];
        dx[n + i] = (Gu(i) + 0.5 * coriolis - spec_.R1[i] * qd1[i] - grad[i]) / spec_.m1[i];
    }
    // m3 qdd2 + (d/dq1 [m3 qd2]) qd1 + R2 qd2 + grad_{q2} V = g2 u
    for (std::size_t j = 0; j < m; ++j) {
        if (!(m3[j] > 0))
            throw SingularConfiguration("GenericEl: m3 entry " + std::to_string(j) + " is not positive");
        double rate = 0.0;
        for (std::size_t i = 0; i < s; ++i) rate += jac[j * s + i] * qd1[i];
        dx[n + s + j] = (Gu(s + j) - rate * qd2[j] - spec_.R2[j] * qd2[j] - grad[s + j]) / m3[j];
    }
}

double GenericElPlant::energy(std::span<const double> x) const {
    const std::size_t s = spec_.s, m = spec_.m, n = dof();
    const auto q = x.first(n);
    const auto qd = x.subspan(n, n);
    std::vector<double> m3(m);
    spec_.m3(q.first(s), m3);
    double kinetic = 0.0;
    for (std::size_t i = 0; i < s; ++i) kinetic += spec_.m1[i] * qd[i] * qd[i];
    for (std::size_t j = 0; j < m; ++j) kinetic += m3[j] * qd[s + j] * qd[s + j];
    return 0.5 * kinetic + spec_.V(q);
}

double GenericElPlant::power(std::span<const double> x, std::span<const double> u) const {
    const std::size_t s = spec_.s, n = dof(), k = spec_.inputs;
    const auto q = x.first(n);
    const auto qd = x.subspan(n, n);
    std::vector<double> G(n * k);
    spec_.G(q, G);
    double p = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
        double gu = 0.0;
        for (std::size_t c = 0; c < k; ++c) gu += G[r * k + c] * u[c];
        const double friction = r < s ? spec_.R1[r] : spec_.R2[r - s];
        p += qd[r] * gu - friction * qd[r] * qd[r];
    }
    return p;
}

double GenericElPlant::integrating_factor_rate(std::span<const double> x, std::size_t j) const {
    const std::size_t s = spec_.s, m = spec_.m, n = dof();
    const auto q1 = x.first(s);
    const auto qd1 = x.subspan(n, s);
    std::vector<double> m3(m), jac(m * s);
    spec_.m3(q1, m3);
    spec_.dm3(q1, jac);
    double rate = 0.0;
    for (std::size_t i = 0; i < s; ++i) rate += jac[j * s + i] * qd1[i];
    return (rate + spec_.R2[j]) / m3[j];
}

double GenericElPlant::forcing(std::span<const double> x, std::span<const double> u, std::size_t j) const {
    const std::size_t s = spec_.s, m = spec_.m, n = dof(), k = spec_.inputs;
    const auto q = x.first(n);
    std::vector<double> m3(m), grad(n), G(n * k);
    spec_.m3(q.first(s), m3);
    spec_.gradV(q, grad);
    spec_.G(q, G);
    double gu = 0.0;
    for (std::size_t c = 0; c < k; ++c) gu += G[(s + j) * k + c] * u[c];
    return (gu - grad[s + j]) / m3[j];
}

double integrating_factor_residual(const GenericElPlant& plant, std::size_t j,
                                   const std::function<double(std::span<const double>)>& z,
                                   std::span<const double> x, double h) {
    const std::size_t s = plant.spec().s, n = plant.dof();
    std::vector<double> fwd(s), bwd(s);
    for (std::size_t i = 0; i < s; ++i) {
        fwd[i] = x[i] + h * x[n + i];
        bwd[i] = x[i] - h * x[n + i];
    }
    const double dz = (z(fwd) - z(bwd)) / (2.0 * h);
    return std::abs(dz - plant.integrating_factor_rate(x, j));
}

GenericElPlant generic_robotic_leg(const RoboticLegParams& p) {
    GenericElSpec spec;
    spec.s = 1;
    spec.m = 2;
    spec.inputs = 2;
    spec.m1 = {p.m1};
    spec.m3 = [p](std::span<const double> q1, std::span<double> m3) {
        m3[0] = p.m1 * q1[0] * q1[0];
        m3[1] = p.m2;
    };
    spec.dm3 = [p](std::span<const double> q1, std::span<double> jac) {
        jac[0] = 2.0 * p.m1 * q1[0];
        jac[1] = 0.0;
    };
    spec.V = [](std::span<const double>) { return 0.0; };
    spec.gradV = [](std::span<const double>, std::span<double> g) {
        for (auto& v : g) v = 0.0;
    };
    spec.G = [](std::span<const double>, std::span<double> G) {
        // rows q1, q2, q3; columns u1, u2
        G[0] = 1.0; G[1] = 0.0;
        G[2] = 0.0; G[3] = 1.0;
        G[4] = 0.0; G[5] = -1.0;
    };
    return GenericElPlant(std::move(spec));
}

GenericElPlant generic_ball_beam(const BallBeamParams& p) {
    GenericElSpec spec;
    spec.s = 1;
    spec.m = 1;
    spec.inputs = 1;
    spec.m1 = {1.0};
    spec.m3 = [p](std::span<const double> q1, std::span<double> m3) { m3[0] = p.ell * p.ell + q1[0] * q1[0]; };
    spec.dm3 = [](std::span<const double> q1, std::span<double> jac) { jac[0] = 2.0 * q1[0]; };
    spec.V = [p](std::span<const double> q) { return p.g * q[0] * std::sin(q[1]); };
    spec.gradV = [p](std::span<const double> q, std::span<double> g) {
        g[0] = p.g * std::sin(q[1]);
        g[1] = p.g * q[0] * std::cos(q[1]);
    };
    spec.G = [](std::span<const double>, std::span<double> G) {
        G[0] = 0.0;
        G[1] = 1.0;
    };
    return GenericElPlant(std::move(spec));
}

}  // namespace aslo::plants
