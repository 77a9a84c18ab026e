#include "aslo/presets.hpp"

namespace aslo::presets {

namespace {

const char* kDoubleIntegrator = R"cfg(plant.kind = "double_integrator"
plant.x0 = "0, 0.1"
excitation.u = "cos(0.02*t)"
integration.dt = 1e-4
)cfg";

std::string di(const std::string& name, const std::string& body, double t_end) {
    return "scenario.name = \"" + name + "\"\n" + kDoubleIntegrator + "integration.t_end = " + std::to_string(t_end) +
           "\n" + body;
}

const char* kTrio = R"cfg(observer.aslo.kind = "di_aslo"
observer.aslo.lambda = 3
observer.aaslo.kind = "di_aaslo"
observer.aaslo.lambda = 3
observer.aaslo.gamma = 2
observer.luen.kind = "di_luenberger"
observer.luen.gamma_l = 3
)cfg";

std::vector<Preset> build() {
    std::vector<Preset> p;
    p.push_back({"fig1a", "double integrator, ASLO with lambda in {1, 3, 5}",
                 di("fig1a", R"cfg(observer.l1.kind = "di_aslo"
observer.l1.lambda = 1
observer.l3.kind = "di_aslo"
observer.l3.lambda = 3
observer.l5.kind = "di_aslo"
observer.l5.lambda = 5
)cfg",
                    20)});
    p.push_back({"fig1b", "double integrator, A-ASLO with gamma = 2 and lambda in {1, 3, 5}",
                 di("fig1b", R"cfg(observer.l1.kind = "di_aaslo"
observer.l1.lambda = 1
observer.l1.gamma = 2
observer.l3.kind = "di_aaslo"
observer.l3.lambda = 3
observer.l3.gamma = 2
observer.l5.kind = "di_aaslo"
observer.l5.lambda = 5
observer.l5.gamma = 2
)cfg",
                    20)});
    p.push_back({"fig1c", "double integrator, A-ASLO with lambda = 2.5 and gamma in {1, 2, 5}",
                 di("fig1c", R"cfg(observer.g1.kind = "di_aaslo"
observer.g1.lambda = 2.5
observer.g1.gamma = 1
observer.g2.kind = "di_aaslo"
observer.g2.lambda = 2.5
observer.g2.gamma = 2
observer.g5.kind = "di_aaslo"
observer.g5.lambda = 2.5
observer.g5.gamma = 5
)cfg",
                    20)});
    p.push_back({"fig1d", "double integrator, Luenberger observer with gamma_l in {1, 3, 5}",
                 di("fig1d", R"cfg(observer.g1.kind = "di_luenberger"
observer.g1.gamma_l = 1
observer.g3.kind = "di_luenberger"
observer.g3.gamma_l = 3
observer.g5.kind = "di_luenberger"
observer.g5.gamma_l = 5
)cfg",
                    20)});
    p.push_back({"fig-noise", "double integrator, white noise (sigma 0.01) on the measured input",
                 di("fig-noise", std::string(kTrio) + R"cfg(disturbance.kind = "input_noise"
disturbance.sigma = 0.01
disturbance.seed = 1
)cfg",
                    40)});
    p.push_back({"fig-tau", "double integrator, parasitic input lag tau = 0.5 (sweep disturbance.tau)",
                 di("fig-tau", std::string(kTrio) + R"cfg(disturbance.kind = "parasitic"
disturbance.tau = 0.5
)cfg",
                    40)});
    p.push_back({"pmsm-fluxcompare", "PMSM BMP0701F under PI speed control, ASLO vs A-ASLO, FO1, FO2, FO3",
                 R"cfg(scenario.name = "pmsm-fluxcompare"
plant.kind = "pmsm"
plant.x0 = "0.2086, 0, 0, 0"
excitation.kind = "pmsm_pi"
excitation.omega_ref = "2 + 0.5*sin(t)"
load.torque = "3 + 0.5*sin(0.1*t)"
observer.aslo.kind = "pmsm_aslo"
observer.aslo.lambda = 5
observer.aaslo.kind = "pmsm_aaslo"
observer.aaslo.lambda = 5
observer.aaslo.gamma = 5
observer.fo1.kind = "fo1"
observer.fo1.lambda = 5
observer.fo1.gamma = 5
observer.fo2.kind = "fo2"
observer.fo2.gamma = 1000
observer.fo3.kind = "fo3"
observer.fo3.lambda = 5
observer.fo3.gamma = 5
integration.dt = 1e-4
integration.t_end = 10
)cfg"});
    p.push_back({"wrim-flux", "wound-rotor induction motor, sinusoidal stator voltage, ASLO and A-ASLO",
                 R"cfg(scenario.name = "wrim-flux"
plant.kind = "wrim"
plant.x0 = "0.1, -0.05, 0.08, 0.02, 0, 0"
excitation.u1 = "20*cos(50*t)"
excitation.u2 = "20*sin(50*t)"
load.torque = "2 + 0.5*sin(0.5*t)"
observer.aslo.kind = "wrim_aslo"
observer.aslo.lambda = 5
observer.aaslo.kind = "wrim_aaslo"
observer.aaslo.lambda = 5
observer.aaslo.gamma_s = 5
observer.aaslo.gamma_r = 5
integration.dt = 1e-4
integration.t_end = 10
)cfg"});
    p.push_back({"leg-vel", "robotic leg with radial regulation, velocity ASLO, A-ASLO and generic instantiation",
                 R"cfg(scenario.name = "leg-vel"
plant.kind = "robotic_leg"
plant.x0 = "1, 0, 0, 0.2, 0.3, -0.1"
excitation.u1 = "0.2*sin(t) - 2*(q1 - 1) - 2*qd1"
excitation.u2 = "0.1*cos(0.5*t)"
observer.aslo.kind = "leg_aslo"
observer.aslo.lambda = 5
observer.aslo.seed_filters = 1
observer.aaslo.kind = "leg_aaslo"
observer.aaslo.lambda = 5
observer.aaslo.seed_filters = 1
observer.aaslo.gamma = 5
observer.generic.kind = "leg_generic"
observer.generic.lambda = 5
observer.generic.seed_filters = 1
integration.dt = 1e-3
integration.t_end = 10
output.decimation = 10
)cfg"});
    p.push_back({"bb-vel", "ball and beam under a stabilizing loop, velocity ASLO, A-ASLO and generic instantiation",
                 R"cfg(scenario.name = "bb-vel"
plant.kind = "ball_beam"
plant.x0 = "0.2, 0, 0.1, 0.05"
excitation.u = "0.5*sin(t) + (1 + q1^2)*(-100*(q2 - (q1 + 2*qd1)/9.81) - 20*qd2) + 9.81*q1*cos(q2) + 2*q1*qd1*qd2"
observer.aslo.kind = "bb_aslo"
observer.aslo.lambda = 5
observer.aslo.seed_filters = 1
observer.aaslo.kind = "bb_aaslo"
observer.aaslo.lambda = 5
observer.aaslo.seed_filters = 1
observer.aaslo.gamma = 5
observer.generic.kind = "bb_generic"
observer.generic.lambda = 5
observer.generic.seed_filters = 1
integration.dt = 1e-3
integration.t_end = 10
output.decimation = 10
)cfg"});
    p.push_back({"chain-n4", "fourth-order integrator chain, ASLO for x2, x3, x4 with lambda = 1",
                 R"cfg(scenario.name = "chain-n4"
plant.kind = "integrator_chain"
plant.order = 4
plant.x0 = "0, 0.1, -0.05, 0.02"
excitation.u = "cos(0.5*t)"
observer.aslo.kind = "chain_aslo"
observer.aslo.lambda = 1
integration.dt = 1e-3
integration.t_end = 40
)cfg"});
    p.push_back({"robust-outdist", "double integrator, constant output disturbance 0.5",
                 di("robust-outdist", std::string(kTrio) + R"cfg(disturbance.kind = "output_const"
disturbance.delta = 0.5
)cfg",
                    20)});
    p.push_back({"robust-indist", "double integrator, constant input disturbance 0.5",
                 di("robust-indist", std::string(kTrio) + R"cfg(disturbance.kind = "input_const"
disturbance.delta = 0.5
)cfg",
                    20)});
    return p;
}

}  // namespace

const std::vector<Preset>& all() {
    static const std::vector<Preset> presets = build();
    return presets;
}

const Preset* find(const std::string& name) {
    const std::string key = name == "fig2" ? "pmsm-fluxcompare" : name;
    for (const auto& p : all())
        if (p.name == key) return &p;
    return nullptr;
}

}  // namespace aslo::presets
