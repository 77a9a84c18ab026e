#include "aslo/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "aslo/errors.hpp"
#include "aslo/observers_em.hpp"
#include "aslo/observers_linear.hpp"
#include "aslo/observers_mech.hpp"

namespace aslo::config {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string strip_comment(const std::string& line) {
    bool quoted = false;
    for (std::size_t k = 0; k < line.size(); ++k) {
        if (line[k] == '"') quoted = !quoted;
        if (line[k] == '#' && !quoted) return line.substr(0, k);
    }
    return line;
}

bool valid_key(const std::string& key) {
    if (key.empty() || key.front() == '.' || key.back() == '.') return false;
    return std::all_of(key.begin(), key.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) ||
               c == '_' || c == '.' || c == '-';
    });
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string quote(const std::string& s) { return "\"" + s + "\""; }

using Params = std::map<std::string, double>;

const std::map<std::string, Params>& plant_defaults() {
    static const std::map<std::string, Params> table = [] {
        const plants::PmsmParams pm = plants::bmp0701f();
        const plants::WrimParams wr;
        const plants::RoboticLegParams lg;
        const plants::BallBeamParams bb;
        return std::map<std::string, Params>{
            {"double_integrator", {}},
            {"integrator_chain", {{"order", 4}}},
            {"pmsm", {{"R", pm.R}, {"L", pm.L}, {"J", pm.J}, {"Rm", pm.Rm}, {"np", pm.np}, {"lambda_m", pm.lambda_m}}},
            {"wrim",
             {{"Rs", wr.Rs}, {"Rr", wr.Rr}, {"Ls", wr.Ls}, {"Lr", wr.Lr}, {"Lsr", wr.Lsr}, {"J", wr.J}, {"Rm", wr.Rm}}},
            {"robotic_leg", {{"m1", lg.m1}, {"m2", lg.m2}, {"q1_min", lg.q1_min}}},
            {"ball_beam", {{"ell", bb.ell}, {"g", bb.g}}},
        };
    }();
    return table;
}

struct ObserverKind {
    std::string plant;
    Params defaults;
};

const std::map<std::string, ObserverKind>& observer_table() {
    static const std::map<std::string, ObserverKind> table = {
        {"di_aslo", {"double_integrator", {{"lambda", 1}, {"seed_filters", 0}}}},
        {"di_aaslo", {"double_integrator", {{"lambda", 1}, {"gamma", 1}, {"xhat0", 0}, {"seed_filters", 0}}}},
        {"di_luenberger", {"double_integrator", {{"gamma_l", 1}, {"xc0", 0}}}},
        {"di_aslo_ss", {"double_integrator", {{"lambda", 1}}}},
        {"di_aaslo_ss", {"double_integrator", {{"lambda", 1}, {"gamma", 1}}}},
        {"chain_aslo", {"integrator_chain", {{"lambda", 1}, {"seed_filters", 0}}}},
        {"pmsm_aslo", {"pmsm", {{"lambda", 5}, {"delta_eps", 1e-6}}}},
        {"pmsm_aaslo", {"pmsm", {{"lambda", 5}, {"gamma", 5}, {"delta_eps", 1e-6}}}},
        {"fo1", {"pmsm", {{"lambda", 5}, {"gamma", 5}}}},
        {"fo2", {"pmsm", {{"gamma", 1000}}}},
        {"fo3", {"pmsm", {{"lambda", 5}, {"gamma", 5}}}},
        {"wrim_aslo", {"wrim", {{"lambda", 5}, {"delta_eps", 1e-6}}}},
        {"wrim_aaslo", {"wrim", {{"lambda", 5}, {"gamma_s", 5}, {"gamma_r", 5}, {"delta_eps", 1e-6}}}},
        {"leg_aslo", {"robotic_leg", {{"lambda", 5}, {"seed_filters", 0}, {"literal_denominator", 0}}}},
        {"leg_aaslo", {"robotic_leg", {{"lambda", 5}, {"gamma", 5}, {"seed_filters", 0}}}},
        {"leg_generic", {"robotic_leg", {{"lambda", 5}, {"seed_filters", 0}}}},
        {"bb_aslo", {"ball_beam", {{"lambda", 5}, {"seed_filters", 0}}}},
        {"bb_aaslo", {"ball_beam", {{"lambda", 5}, {"gamma", 5}, {"seed_filters", 0}}}},
        {"bb_generic", {"ball_beam", {{"lambda", 5}, {"seed_filters", 0}}}},
    };
    return table;
}

const Params& controller_defaults() {
    static const Params p = [] {
        const sim::PiGains g;
        return Params{{"current_bandwidth", g.current_bandwidth}, {"speed_bandwidth", g.speed_bandwidth}, {"vmax", g.vmax}};
    }();
    return p;
}

class Reader {
public:
    explicit Reader(const ConfigFile& cfg) : cfg_(cfg) {}

    const Entry* take(const std::string& key) {
        const Entry* e = cfg_.find(key);
        if (e) used_.insert(key);
        return e;
    }

    [[noreturn]] void fail(const Entry& e, const std::string& what) const {
        throw ConfigError(cfg_.origin() + ":" + std::to_string(e.line) + ": " + e.key + ": " + what);
    }

    [[noreturn]] void missing(const std::string& key) const {
        throw ConfigError(cfg_.origin() + ": missing required key '" + key + "'");
    }

    std::string string(const std::string& key, const std::string& fallback, bool required = false) {
        const Entry* e = take(key);
        if (!e) {
            if (required) missing(key);
            return fallback;
        }
        return e->value;
    }

    double number(const std::string& key, double fallback) {
        const Entry* e = take(key);
        return e ? parse_number(*e, e->value) : fallback;
    }

    double parse_number(const Entry& e, const std::string& text) const {
        const std::string t = trim(text);
        char* end = nullptr;
        const double v = std::strtod(t.c_str(), &end);
        if (t.empty() || end != t.c_str() + t.size() || !std::isfinite(v)) fail(e, "expected a finite number, got '" + text + "'");
        return v;
    }

    std::vector<double> vector(const std::string& key) {
        const Entry* e = take(key);
        std::vector<double> out;
        if (!e) return out;
        std::stringstream ss(e->value);
        std::string item;
        while (std::getline(ss, item, ',')) out.push_back(parse_number(*e, item));
        return out;
    }

    std::uint64_t unsigned_int(const std::string& key, std::uint64_t fallback) {
        const Entry* e = take(key);
        if (!e) return fallback;
        const std::string t = trim(e->value);
        if (t.empty() || !std::all_of(t.begin(), t.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
            fail(*e, "expected a non-negative integer");
        try {
            return std::stoull(t);
        } catch (const std::exception&) {
            fail(*e, "integer out of range");
        }
    }

    void reject_unused() const {
        for (const auto& e : cfg_.entries())
            if (!used_.count(e.key)) fail(e, "unknown key");
    }

    const ConfigFile& file() const { return cfg_; }

private:
    const ConfigFile& cfg_;
    std::set<std::string> used_;
};

std::shared_ptr<const plants::Plant> make_plant(const std::string& kind, const Params& p) {
    if (kind == "double_integrator") return std::make_shared<plants::DoubleIntegrator>();
    if (kind == "integrator_chain") {
        const double order = p.at("order");
        if (order != std::floor(order) || order < 2 || order > 12)
            throw ConfigError("plant.order must be an integer in [2, 12]");
        return std::make_shared<plants::IntegratorChain>(static_cast<std::size_t>(order));
    }
    if (kind == "pmsm") {
        plants::PmsmParams m;
        m.R = p.at("R");
        m.L = p.at("L");
        m.J = p.at("J");
        m.Rm = p.at("Rm");
        m.np = static_cast<int>(p.at("np"));
        m.lambda_m = p.at("lambda_m");
        if (p.at("np") != m.np) throw ConfigError("plant.np must be an integer");
        return std::make_shared<plants::PmsmModel>(m);
    }
    if (kind == "wrim") {
        plants::WrimParams m;
        m.Rs = p.at("Rs");
        m.Rr = p.at("Rr");
        m.Ls = p.at("Ls");
        m.Lr = p.at("Lr");
        m.Lsr = p.at("Lsr");
        m.J = p.at("J");
        m.Rm = p.at("Rm");
        return std::make_shared<plants::WrimModel>(m);
    }
    if (kind == "robotic_leg") return std::make_shared<plants::RoboticLegModel>(plants::RoboticLegParams{p.at("m1"), p.at("m2"), p.at("q1_min")});
    if (kind == "ball_beam") return std::make_shared<plants::BallBeamModel>(plants::BallBeamParams{p.at("ell"), p.at("g")});
    throw ConfigError("plant.kind: unknown plant '" + kind + "'");
}

double max_rate(const Params& p) {
    double r = 0.0;
    for (const char* k : {"lambda", "gamma", "gamma_l", "gamma_s", "gamma_r"}) {
        auto it = p.find(k);
        if (it != p.end()) r = std::max(r, it->second);
    }
    return r;
}

std::unique_ptr<obs::Observer> make_observer(const ObserverSpec& o, const plants::Plant& plant) {
    const Params& p = o.params;
    const auto flag = [&](const char* k) { return p.at(k) != 0.0; };
    const std::string& k = o.kind;
    if (k == "di_aslo") return std::make_unique<obs::DiAslo>(p.at("lambda"), flag("seed_filters"));
    if (k == "di_aaslo")
        return std::make_unique<obs::DiAaslo>(p.at("lambda"), p.at("gamma"), p.at("xhat0"), flag("seed_filters"));
    if (k == "di_luenberger") return std::make_unique<obs::DiLuenberger>(p.at("gamma_l"), p.at("xc0"));
    if (k == "di_aslo_ss") return std::make_unique<obs::StateSpaceObserver>(obs::di_aslo_realization(p.at("lambda")));
    if (k == "di_aaslo_ss")
        return std::make_unique<obs::StateSpaceObserver>(obs::di_aaslo_realization(p.at("lambda"), p.at("gamma")));
    if (k == "chain_aslo") {
        const auto& chain = dynamic_cast<const plants::IntegratorChain&>(plant);
        return std::make_unique<obs::ChainAslo>(static_cast<int>(chain.order()), p.at("lambda"), flag("seed_filters"));
    }
    if (k == "pmsm_aslo" || k == "pmsm_aaslo" || k == "fo1" || k == "fo2" || k == "fo3") {
        const auto& m = dynamic_cast<const plants::PmsmModel&>(plant).params();
        if (k == "pmsm_aslo") return std::make_unique<obs::PmsmAslo>(m, p.at("lambda"), p.at("delta_eps"));
        if (k == "pmsm_aaslo") return std::make_unique<obs::PmsmAaslo>(m, p.at("lambda"), p.at("gamma"), p.at("delta_eps"));
        if (k == "fo1") return std::make_unique<obs::Fo1Observer>(m, p.at("lambda"), p.at("gamma"));
        if (k == "fo2") return std::make_unique<obs::Fo2Observer>(m, p.at("gamma"));
        return std::make_unique<obs::Fo3Observer>(m, p.at("lambda"), p.at("gamma"));
    }
    if (k == "wrim_aslo" || k == "wrim_aaslo") {
        const auto& m = dynamic_cast<const plants::WrimModel&>(plant).params();
        if (k == "wrim_aslo") return std::make_unique<obs::WrimAslo>(m, p.at("lambda"), p.at("delta_eps"));
        return std::make_unique<obs::WrimAaslo>(m, p.at("lambda"), p.at("gamma_s"), p.at("gamma_r"), p.at("delta_eps"));
    }
    if (k == "leg_aslo" || k == "leg_aaslo" || k == "leg_generic") {
        const auto& m = dynamic_cast<const plants::RoboticLegModel&>(plant).params();
        if (k == "leg_aslo")
            return std::make_unique<obs::RoboticLegAslo>(m, p.at("lambda"), flag("seed_filters"),
                                                         flag("literal_denominator")
                                                             ? obs::RoboticLegAslo::Denominator::literal
                                                             : obs::RoboticLegAslo::Denominator::factor_filter);
        if (k == "leg_aaslo")
            return std::make_unique<obs::MechAaslo>(
                std::make_unique<obs::RoboticLegAslo>(m, p.at("lambda"), flag("seed_filters")),
                obs::robotic_leg_acceleration(m), p.at("gamma"), "leg_aaslo");
        auto generic = std::make_shared<const plants::GenericElPlant>(plants::generic_robotic_leg(m));
        const double m1 = m.m1, m2 = m.m2;
        std::vector<obs::GenericAsloJoint> joints{
            {[m1](double, std::span<const double> q1) { return std::log(m1 * q1[0] * q1[0]); }, false},
            {[m2](double, std::span<const double>) { return std::log(m2); }, true},
        };
        return std::make_unique<obs::GenericElAslo>(generic, std::move(joints), p.at("lambda"), flag("seed_filters"));
    }
    if (k == "bb_aslo" || k == "bb_aaslo" || k == "bb_generic") {
        const auto& m = dynamic_cast<const plants::BallBeamModel&>(plant).params();
        if (k == "bb_aslo") return std::make_unique<obs::BallBeamAslo>(m, p.at("lambda"), flag("seed_filters"));
        if (k == "bb_aaslo")
            return std::make_unique<obs::MechAaslo>(std::make_unique<obs::BallBeamAslo>(m, p.at("lambda"), flag("seed_filters")),
                                                    obs::ball_beam_acceleration(m), p.at("gamma"), "bb_aaslo");
        auto generic = std::make_shared<const plants::GenericElPlant>(plants::generic_ball_beam(m));
        const double ell2 = m.ell * m.ell;
        std::vector<obs::GenericAsloJoint> joints{
            {[ell2](double, std::span<const double> q1) { return std::log(ell2 + q1[0] * q1[0]); }, false},
        };
        return std::make_unique<obs::GenericElAslo>(generic, std::move(joints), p.at("lambda"), flag("seed_filters"));
    }
    throw ConfigError("observer '" + o.label + "': unknown kind '" + k + "'");
}

}  // namespace

ConfigFile ConfigFile::parse(const std::string& text, const std::string& origin) {
    ConfigFile cfg;
    cfg.origin_ = origin;
    std::stringstream ss(text);
    std::string raw;
    int line = 0;
    std::set<std::string> seen;
    while (std::getline(ss, raw)) {
        ++line;
        const std::string body = trim(strip_comment(raw));
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(line) + ": expected 'section.key = value'");
        const std::string key = trim(body.substr(0, eq));
        std::string value = trim(body.substr(eq + 1));
        if (!valid_key(key) || key.find('.') == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(line) + ": malformed key '" + key + "'");
        if (!value.empty() && value.front() == '"') {
            if (value.size() < 2 || value.back() != '"')
                throw ConfigError(origin + ":" + std::to_string(line) + ": " + key + ": unterminated string");
            value = value.substr(1, value.size() - 2);
        } else if (value.empty()) {
            throw ConfigError(origin + ":" + std::to_string(line) + ": " + key + ": empty value");
        }
        if (!seen.insert(key).second)
            throw ConfigError(origin + ":" + std::to_string(line) + ": duplicate key '" + key + "'");
        cfg.entries_.push_back({key, value, line});
    }
    return cfg;
}

ConfigFile ConfigFile::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), path);
}

const Entry* ConfigFile::find(const std::string& key) const {
    for (auto it = entries_.rbegin(); it != entries_.rend(); ++it)
        if (it->key == key) return &*it;
    return nullptr;
}

void ConfigFile::set(const std::string& key, const std::string& value) {
    for (auto& e : entries_)
        if (e.key == key) {
            e.value = value;
            return;
        }
    entries_.push_back({key, value, 0});
}

ScenarioSpec spec_from_config(const ConfigFile& cfg) {
    Reader r(cfg);
    ScenarioSpec s;
    s.name = r.string("scenario.name", s.name);

    s.plant_kind = r.string("plant.kind", "", true);
    auto pd = plant_defaults().find(s.plant_kind);
    if (pd == plant_defaults().end()) r.fail(*cfg.find("plant.kind"), "unknown plant '" + s.plant_kind + "'");
    for (const auto& [k, v] : pd->second) s.plant_params[k] = r.number("plant." + k, v);
    const auto plant = make_plant(s.plant_kind, s.plant_params);
    s.x0 = r.vector("plant.x0");
    if (s.x0.empty()) s.x0.assign(plant->state_size(), 0.0);
    if (s.x0.size() != plant->state_size())
        r.fail(*cfg.find("plant.x0"), "expected " + std::to_string(plant->state_size()) + " values");

    s.excitation_kind = r.string("excitation.kind", s.excitation_kind);
    if (s.excitation_kind == "expression") {
        for (const auto& in : plant->input_names()) s.excitation_exprs[in] = r.string("excitation." + in, "0");
    } else if (s.excitation_kind == "pmsm_pi") {
        if (s.plant_kind != "pmsm") r.fail(*cfg.find("excitation.kind"), "pmsm_pi needs plant.kind = pmsm");
        s.excitation_exprs["omega_ref"] = r.string("excitation.omega_ref", "", true);
        for (const auto& [k, v] : controller_defaults()) s.controller[k] = r.number("controller." + k, v);
    } else {
        r.fail(*cfg.find("excitation.kind"), "unknown excitation '" + s.excitation_kind + "'");
    }
    s.load_torque = r.string("load.torque", s.load_torque);

    // observers, in order of first appearance
    std::vector<std::string> labels;
    for (const auto& e : cfg.entries()) {
        if (e.key.rfind("observer.", 0) != 0) continue;
        const auto rest = e.key.substr(9);
        const auto dot = rest.find('.');
        if (dot == std::string::npos) r.fail(e, "expected observer.<label>.<key>");
        const auto label = rest.substr(0, dot);
        if (std::find(labels.begin(), labels.end(), label) == labels.end()) labels.push_back(label);
    }
    for (const auto& label : labels) {
        ObserverSpec o;
        o.label = label;
        o.kind = r.string("observer." + label + ".kind", "", true);
        auto ok = observer_table().find(o.kind);
        if (ok == observer_table().end())
            r.fail(*cfg.find("observer." + label + ".kind"), "unknown observer kind '" + o.kind + "'");
        if (ok->second.plant != s.plant_kind)
            r.fail(*cfg.find("observer." + label + ".kind"),
                   "'" + o.kind + "' needs plant.kind = " + ok->second.plant);
        for (const auto& [k, v] : ok->second.defaults) o.params[k] = r.number("observer." + label + "." + k, v);
        s.observers.push_back(std::move(o));
    }

    s.disturbance_kind = r.string("disturbance.kind", s.disturbance_kind);
    s.delta = r.number("disturbance.delta", s.delta);
    s.sigma = r.number("disturbance.sigma", s.sigma);
    s.seed = r.unsigned_int("disturbance.seed", s.seed);
    s.tau = r.number("disturbance.tau", s.tau);
    static const std::set<std::string> kinds{"none", "output_const", "input_const", "input_noise", "parasitic"};
    if (!kinds.count(s.disturbance_kind))
        r.fail(*cfg.find("disturbance.kind"), "unknown disturbance '" + s.disturbance_kind + "'");

    s.dt = r.number("integration.dt", s.dt);
    s.t_end = r.number("integration.t_end", s.t_end);
    s.decimation = static_cast<std::size_t>(r.unsigned_int("output.decimation", s.decimation));

    r.reject_unused();
    return s;
}

std::string to_text(const ScenarioSpec& s) {
    std::ostringstream os;
    os << "scenario.name = " << quote(s.name) << "\n";
    os << "plant.kind = " << quote(s.plant_kind) << "\n";
    for (const auto& [k, v] : s.plant_params) os << "plant." << k << " = " << fmt(v) << "\n";
    std::string x0;
    for (std::size_t i = 0; i < s.x0.size(); ++i) x0 += (i ? ", " : "") + fmt(s.x0[i]);
    os << "plant.x0 = " << quote(x0) << "\n";
    os << "excitation.kind = " << quote(s.excitation_kind) << "\n";
    for (const auto& [k, v] : s.excitation_exprs) os << "excitation." << k << " = " << quote(v) << "\n";
    for (const auto& [k, v] : s.controller) os << "controller." << k << " = " << fmt(v) << "\n";
    os << "load.torque = " << quote(s.load_torque) << "\n";
    for (const auto& o : s.observers) {
        os << "observer." << o.label << ".kind = " << quote(o.kind) << "\n";
        for (const auto& [k, v] : o.params) os << "observer." << o.label << "." << k << " = " << fmt(v) << "\n";
    }
    os << "disturbance.kind = " << quote(s.disturbance_kind) << "\n";
    os << "disturbance.delta = " << fmt(s.delta) << "\n";
    os << "disturbance.sigma = " << fmt(s.sigma) << "\n";
    os << "disturbance.seed = " << s.seed << "\n";
    os << "disturbance.tau = " << fmt(s.tau) << "\n";
    os << "integration.dt = " << fmt(s.dt) << "\n";
    os << "integration.t_end = " << fmt(s.t_end) << "\n";
    os << "output.decimation = " << s.decimation << "\n";
    return os.str();
}

sim::Scenario build_scenario(const ScenarioSpec& s) {
    sim::Scenario sc;
    sc.name = s.name;
    sc.plant = make_plant(s.plant_kind, s.plant_params);
    sc.x0 = s.x0;

    std::vector<std::string> t_only{"t"};
    if (s.excitation_kind == "expression") {
        std::vector<std::string> inputs;
        for (const auto& in : sc.plant->input_names()) inputs.push_back(s.excitation_exprs.at(in));
        sc.excitation = std::make_shared<sim::ExpressionExcitation>(*sc.plant, inputs);
    } else {
        const auto& m = dynamic_cast<const plants::PmsmModel&>(*sc.plant).params();
        sim::PiGains g{s.controller.at("current_bandwidth"), s.controller.at("speed_bandwidth"), s.controller.at("vmax")};
        sc.excitation = std::make_shared<sim::PmsmPiController>(
            m, g, expr::Expression::compile(s.excitation_exprs.at("omega_ref"), t_only),
            expr::Expression::compile(s.load_torque, t_only));
    }
    sc.load_torque = expr::Expression::compile(s.load_torque, t_only);

    for (const auto& o : s.observers) {
        sim::ObserverSlot slot;
        slot.label = o.label;
        slot.observer = make_observer(o, *sc.plant);
        slot.max_rate = max_rate(o.params);
        sc.observers.push_back(std::move(slot));
    }

    sim::Disturbance d;
    if (s.disturbance_kind == "none") d.kind = sim::DisturbanceKind::none;
    else if (s.disturbance_kind == "output_const") d.kind = sim::DisturbanceKind::output_const;
    else if (s.disturbance_kind == "input_const") d.kind = sim::DisturbanceKind::input_const;
    else if (s.disturbance_kind == "input_noise") d.kind = sim::DisturbanceKind::input_noise;
    else if (s.disturbance_kind == "parasitic") d.kind = sim::DisturbanceKind::parasitic;
    else throw ConfigError("disturbance.kind: unknown disturbance '" + s.disturbance_kind + "'");
    d.delta = s.delta;
    d.sigma = s.sigma;
    d.seed = s.seed;
    d.tau = s.tau;
    sc.disturbance = d;

    sc.dt = s.dt;
    sc.t_end = s.t_end;
    sc.decimation = s.decimation;
    sc.validate();
    return sc;
}

std::vector<std::pair<std::string, std::string>> observer_kinds() {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& [k, v] : observer_table()) out.emplace_back(k, v.plant);
    return out;
}

}  // namespace aslo::config
