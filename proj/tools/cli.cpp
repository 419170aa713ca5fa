#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>

#include "bfmix/elliptic.hpp"
#include "bfmix/errors.hpp"
#include "bfmix/heun.hpp"
#include "bfmix/lame.hpp"
#include "bfmix/melnikov.hpp"
#include "bfmix/model.hpp"
#include "bfmix/report.hpp"
#include "bfmix/variational.hpp"
#include "bfmix/verdict.hpp"

namespace bfmix::cli {

namespace {

constexpr double kResidualTol = 1e-9;
constexpr double kTransformTol = 1e-6;
constexpr double kFitTol = 1e-8;
constexpr double kRadiusTol = 1e-6;

const std::vector<std::string> kScalarKeys = {"omega0", "omega", "gbf", "csum", "c0sq", "h", "omega1", "c1sq"};
const std::vector<std::string> kListKeys = {"omegaj", "cjsq", "hj", "gbf-list"};

std::vector<std::string> split(const std::string& s)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(item);
    return out;
}

bool looks_decimal(const std::string& s)
{
    return s.find_first_of(".eE") != std::string::npos;
}

Rational& scalar_field(RunConfig& c, const std::string& key)
{
    if (key == "omega0") return c.omega0;
    if (key == "omega") return c.omega;
    if (key == "gbf") return c.gbf;
    if (key == "csum") return c.csum;
    if (key == "c0sq") return c.c0sq;
    if (key == "h") return c.h;
    if (key == "omega1") return c.omega1;
    return c.c1sq;
}

std::vector<Rational>& list_field(RunConfig& c, const std::string& key)
{
    if (key == "omegaj") return c.omegaj;
    if (key == "cjsq") return c.cjsq;
    if (key == "hj") return c.hj;
    return c.gbf_list;
}

void write_atomic(const std::string& path, const std::string& content)
{
    const std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary);
        if (!f)
            throw Error(ErrorKind::usage, "cannot write " + path);
        f << content;
    }
    std::filesystem::rename(tmp, path);
}

Json params_given(const RunConfig& c)
{
    Json j = Json::object();
    for (const auto& [k, v] : c.given)
        j[k] = v;
    return j;
}

std::string command_name(const RunConfig& c)
{
    return c.selector.empty() ? c.command : c.command + " " + c.selector;
}

// Parameters shared by the case-2 style commands.
ModelParams case2_params(const RunConfig& c)
{
    ModelParams p;
    p.omega0 = c.omega0;
    p.omegas = c.omegaj;
    p.c0_sq = c.c0sq;
    p.cj_sq.assign(p.omegas.size(), Rational(0));
    p.g_bf = c.gbf;
    p.validate();
    return p;
}

void check_order(int order)
{
    if (order < 4 || order > 400)
        throw Error(ErrorKind::invalid_parameter, "--order must lie in [4, 400]");
}

Json lame_json(const std::optional<LameData>& l)
{
    if (!l)
        return nullptr;
    Json j;
    j["n"] = to_json(l->n);
    Json off = Json::array();
    for (const auto& b : l->offsets)
        off.push_back(to_json(b));
    j["offsets"] = off;
    return j;
}

Json theorem5_json(const Theorem5Verdict& t, size_t mode)
{
    Json j;
    j["mode"] = mode;
    j["passed_case"] = to_string(t.passed_case);
    j["m"] = t.m ? Json(*t.m) : Json(nullptr);
    j["conjecture_conditional"] = t.conjecture_conditional;
    j["ambiguous_clause"] = t.ambiguous_clause;
    Json f = Json::array();
    for (const auto& c : t.failed_conditions)
        f.push_back(Json{{"id", c.id}, {"value", to_json(c.value)}});
    j["failed_conditions"] = f;
    Json d = Json::array();
    for (const auto& c : t.derived_constraints)
        d.push_back(Json{{"name", c.name}, {"value", to_json(c.value)}});
    j["derived_constraints"] = d;
    return j;
}

struct Outcome3 {
    std::optional<IntegrabilityVerdict> verdict;
    Json details = Json::object();
    std::string csv;
    bool verified = true;
    std::string failure;
};

Outcome3 run_case1(const RunConfig& c)
{
    if (c.nf < 1)
        throw Error(ErrorKind::invalid_parameter, "--nf must be at least 1");
    if (sgn(c.omega) <= 0)
        throw Error(ErrorKind::invalid_parameter, "--omega must be positive");
    ModelParams p;
    p.omega0 = c.omega0;
    p.omegas.assign(c.nf, Rational(c.omega * c.omega / 2));
    p.cj_sq.assign(c.nf, Rational((c.csum / c.nf) * (c.csum / c.nf)));
    p.c_sum = c.csum;
    p.g_bf = c.gbf;
    Outcome3 o;
    o.verdict = galois_verdict_case1(p);
    const HeunReduction r = reduce(p);
    auto num = [](double v, const std::optional<Rational>& e) { return e ? to_json(*e) : Json(v); };
    o.details["A1"] = to_json(r.a1);
    o.details["B1"] = num(r.b1, r.b1_exact);
    o.details["A"] = num(r.a, r.a_exact);
    o.details["B"] = num(r.b, r.b_exact);
    o.details["omega"] = num(r.omega, r.omega_exact);
    std::vector<double> grid;
    for (int k = 0; k < 10; ++k)
        grid.push_back(0.1 + 0.1 * k);
    const double defect = transform_consistency(p, grid);
    o.details["transform_defect"] = defect;
    if (!(defect < kTransformTol)) {
        o.verified = false;
        o.failure = "Mathieu to Heun transform defect " + std::to_string(defect);
    }
    return o;
}

Outcome3 run_case2(const RunConfig& c)
{
    check_order(c.order);
    const ModelParams p = case2_params(c);
    const EllipticData e = invariants_from_energy(p.omega0, p.c0_sq, c.h);
    const auto t_start = std::chrono::steady_clock::now();
    const Case2Analysis a = analyze_case2(p, e, c.order);
    Outcome3 o;
    o.verdict = a.verdict;
    o.details["order"] = c.order;
    o.details["invariants"] = Json{{"g2", to_json(e.g2)}, {"g3", to_json(e.g3)}, {"discriminant", to_json(e.discriminant)}};
    o.details["lame"] = lame_json(a.lame);
    Json t5 = Json::array();
    for (size_t j = 0; j < a.theorem5.size(); ++j)
        t5.push_back(theorem5_json(a.theorem5[j], j + 1));
    o.details["theorem5"] = t5;
    o.details["reference_choice"] = a.reference ? choice_to_json(*a.reference) : Json(nullptr);
    Json rr = Json::array();
    for (const auto& r : a.reference_residues)
        rr.push_back(Json{{"order", r.order}, {"component", r.component}, {"row", to_string(r.row)},
                          {"residue", to_json(r.value)}});
    o.details["reference_residues"] = rr;
    o.details["choices_tried"] = a.choices_tried;
    o.details["analysis_ms"] =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t_start).count();
    return o;
}

Outcome3 run_case3(const RunConfig& c)
{
    ModelParams p;
    p.omega0 = c.omega0;
    p.omegas = {c.omega1};
    p.c0_sq = c.c0sq;
    p.cj_sq = {c.c1sq};
    p.g_bf = c.gbf;
    p.validate();
    const double action = c.action > 0 ? c.action : 2 * action_lower_bound(c.omega1, c.c1sq);
    const Case3Analysis a = analyze_case3(p, action, c.t0_min, c.t0_max, c.t0_samples);
    Outcome3 o;
    o.verdict = a.verdict;
    const MelnikovSetup& s = a.setup;
    o.details["action"] = action;
    o.details["h_star"] = s.separatrix.h_star;
    o.details["a"] = s.separatrix.a;
    o.details["amplitude"] = s.amplitude;
    o.details["contour_radius"] = s.contour_radius;
    o.details["contour_points"] = s.contour_points;
    if (sgn(p.g_bf) == 0)
        return o;
    o.details["fit_amplitude"] = to_json(a.fit.amplitude);
    o.details["fit_residual"] = a.fit.residual;
    o.details["radius_defect"] = a.radius_defect;
    o.details["closed_form_prefactor"] = to_json(closed_form_prefactor(s));
    o.details["derived_prefactor"] = to_json(derived_prefactor(s));
    Json z = Json::array();
    for (const auto& e : a.scan.zeros)
        z.push_back(Json{{"t0", e.t0}, {"derivative", e.derivative}});
    o.details["zeros"] = z;
    o.details["degenerate"] = a.scan.degenerate;
    const DeltaCheck dc = delta_quadrature_check(s, {0.5, 1.0, 1.5, 2.0});
    o.details["delta_check"] = Json{{"max_defect", dc.max_defect},
                                    {"status", dc.inconsistent ? "closed form inconsistent" : "consistent"}};
    const double t0_max = c.t0_max > c.t0_min ? c.t0_max : c.t0_min + 2 * std::numbers::pi / s.theta;
    std::ostringstream csv;
    write_sweep_csv(csv, sweep_t0(s, c.t0_min, t0_max, c.t0_samples));
    o.csv = csv.str();
    if (!(a.fit.residual < kFitTol) || !(a.radius_defect < kRadiusTol)) {
        o.verified = false;
        o.failure = "Melnikov sine fit or radius independence check failed";
    }
    return o;
}

std::vector<Complex> sample_times(Complex base, Complex step, int n)
{
    std::vector<Complex> t;
    for (int k = 0; k < n; ++k)
        t.push_back(base + static_cast<double>(k) * step);
    return t;
}

Outcome3 run_verify(const RunConfig& c)
{
    Outcome3 o;
    std::ostringstream csv;
    csv.precision(17);
    csv << "t_re,t_im,residual\n";
    double worst = 0;
    auto record = [&](Complex t, double r) {
        csv << t.real() << ',' << t.imag() << ',' << r << '\n';
        worst = std::max(worst, r);
    };
    if (c.selector == "prop1") {
        ModelParams p;
        p.omega0 = c.omega0;
        p.omegas = c.omegaj.empty() ? std::vector<Rational>{1} : c.omegaj;
        p.cj_sq = c.cjsq.empty() ? std::vector<Rational>(p.omegas.size(), Rational(1)) : c.cjsq;
        p.g_bf = c.gbf;
        p.validate();
        std::vector<Rational> h = c.hj.empty() ? std::vector<Rational>(p.omegas.size(), Rational(0)) : c.hj;
        if (h.size() != p.omegas.size())
            throw Error(ErrorKind::invalid_parameter, "--hj needs one value per mode");
        for (Complex t : sample_times({0.13, 0.02}, {0.11, 0.01}, 10)) {
            const ClosedFormSample s = solution_case1(p, h, Complex(c.t0, 0), t);
            record(t, eom_residual(p, s));
        }
    } else if (c.selector == "prop2") {
        RunConfig d = c;
        if (d.omegaj.empty())
            d.omegaj = {1};
        const ModelParams p = case2_params(d);
        const EllipticData e = invariants_from_energy(p.omega0, p.c0_sq, c.h);
        for (Complex t : sample_times({0.07, 0.03}, {0.06, 0.015}, 10))
            record(t, eom_residual(p, solution_case2(p, e, t)));
    } else {
        const SeparatrixData sd = separatrix_parameters(c.omega0, c.c0sq);
        for (Complex t : sample_times({0.15, 0.05}, {0.17, 0.02}, 10))
            record(t, separatrix_residual(c.omega0, c.c0sq, separatrix_case3(c.omega0, c.c0sq, sd, t)));
        o.details["h_star"] = sd.h_star;
        o.details["a"] = sd.a;
        o.details["cubic_residual"] = sd.cubic_residual;
    }
    o.details["which"] = c.selector;
    o.details["samples"] = 10;
    o.details["max_residual"] = worst;
    o.details["tolerance"] = kResidualTol;
    o.csv = csv.str();
    if (!(worst < kResidualTol)) {
        o.verified = false;
        o.failure = "closed-form residual " + std::to_string(worst) + " exceeds tolerance";
    }
    return o;
}

template <class C>
Outcome3 series_impl(const RunConfig& c, const ModelParams& p, const EllipticData& e)
{
    Outcome3 o;
    std::ostringstream csv;
    Series<C> s;
    if (c.selector == "wp") {
        const ExactSeries w = wp_laurent(e, c.order);
        if constexpr (std::is_same_v<C, Rational>)
            s = w;
        else
            s = to_float(w);
    } else {
        const Case2Expansion<C> ex(p, e, c.order);
        const size_t comp = static_cast<size_t>(c.component);
        if (comp > ex.modes())
            throw Error(ErrorKind::invalid_parameter, "--component out of range");
        if (c.selector == "qbar") {
            s = ex.ve1().qbar;
        } else if (c.selector == "ve1") {
            s = comp == 0 ? ex.ve1().tangential : ex.ve1().normal[comp - 1];
        } else {
            std::optional<HigherVEChoice> ref;
            if (auto n = lame_index(p.g_bf)) {
                const LameData l = lame_data(p);
                ref = reference_choice(*n, l.offsets.empty() ? Rational(0) : l.offsets.front());
            }
            HigherVEChoice ch = ref.value_or(HigherVEChoice{});
            ch.order = c.selector == "mu2" ? 2 : 3;
            if (c.row)
                ch.row = *c.row == "first" ? Row::first : Row::second;
            const HigherVEResultT<C> r = ex.solve(ch);
            if (ch.order == 2) {
                s = r.ve2.at(comp).mu(ch.row);
            } else {
                if (r.ve2_log)
                    throw Error(ErrorKind::missing_prerequisite, "VE2 has a logarithm; VE3 is not formed");
                s = r.ve3.at(comp).mu(ch.row);
            }
            o.details["choice"] = choice_to_json(ch);
        }
        o.details["component"] = component_name(comp);
    }
    write_csv(csv, s);
    o.csv = csv.str();
    o.details["what"] = c.selector;
    o.details["mode"] = std::is_same_v<C, Rational> ? "exact" : "float";
    o.details["order"] = c.order;
    if constexpr (std::is_same_v<C, Rational>) {
        if (auto tr = s.truncation(); !tr || *tr > -1)
            o.details["residue"] = to_json(s.residue());
    }
    return o;
}

Outcome3 run_series(const RunConfig& c)
{
    check_order(c.order);
    const ModelParams p = case2_params(c);
    const EllipticData e = invariants_from_energy(p.omega0, p.c0_sq, c.h);
    return c.float_mode ? series_impl<Complex>(c, p, e) : series_impl<Rational>(c, p, e);
}

Outcome3 run_sweep(const RunConfig& c)
{
    check_order(c.order);
    const ModelParams base = case2_params(c);
    const EllipticData e = invariants_from_energy(base.omega0, base.c0_sq, c.h);
    struct Row {
        std::optional<IntegrabilityVerdict> verdict;
        std::string error;
    };
    std::vector<std::future<Row>> jobs;
    for (const auto& g : c.gbf_list) {
        jobs.push_back(std::async(std::launch::async, [base, e, g, order = c.order]() {
            ModelParams p = base;
            p.g_bf = g;
            try {
                return Row{analyze_case2(p, e, order).verdict, {}};
            } catch (const Error& err) {
                return Row{std::nullopt, std::string(to_string(err.kind())) + ": " + err.what()};
            }
        }));
    }
    Outcome3 o;
    std::ostringstream csv;
    csv << "g_bf,outcome,witness_kind,witness_value\n";
    Json results = Json::array();
    for (size_t k = 0; k < jobs.size(); ++k) {
        const Row r = jobs[k].get();
        const std::string g = to_string(c.gbf_list[k]);
        if (!r.verdict) {
            csv << g << ",error,," << '"' << r.error << '"' << '\n';
            results.push_back(Json{{"g_bf", g}, {"error", r.error}});
            continue;
        }
        const Json w = witness_to_json(r.verdict->witness);
        std::string value;
        if (w.contains("residue"))
            value = w["residue"].get<std::string>();
        else if (w.contains("g_bf"))
            value = w["g_bf"].get<std::string>();
        else if (w.contains("conditions") && !w["conditions"].empty())
            value = w["conditions"][0]["id"].get<std::string>();
        csv << g << ',' << to_string(r.verdict->outcome) << ',' << w["kind"].get<std::string>() << ',' << value << '\n';
        results.push_back(Json{{"g_bf", g}, {"verdict", verdict_to_json(*r.verdict)}});
    }
    o.details["results"] = results;
    o.csv = csv.str();
    return o;
}

}

RunConfig parse_args(int argc, const char* const* argv)
{
    RunConfig cfg;
    std::map<std::string, std::string> raw;
    CLI::App app{"Integrability analysis of the stationary Bose-Fermi mixture Hamiltonian", "bfmix"};
    app.set_help_flag("--help", "Print help and exit");
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--json", cfg.json_path, "Write the JSON report to this path");
    app.add_option("--csv", cfg.csv_path, "Write CSV output to this path");

    auto param = [&](CLI::App* sub, const std::string& key, bool required, const std::string& help) {
        auto* o = sub->add_option("--" + key, raw[key], help);
        if (required)
            o->required();
        return o;
    };

    auto* analyze = app.add_subcommand("analyze", "Classify one parameter point");
    analyze->require_subcommand(1);
    analyze->fallthrough();

    auto* c1 = analyze->add_subcommand("case1", "C0 = 0, all C_j != 0: Heun reduction");
    param(c1, "omega0", true, "w0");
    param(c1, "omega", true, "common frequency w, with w_j = w^2/2");
    param(c1, "gbf", true, "coupling g_BF");
    param(c1, "csum", true, "signed sum of the C_j");
    c1->add_option("--nf", cfg.nf, "number of fermionic modes")->check(CLI::PositiveNumber);

    auto* c2 = analyze->add_subcommand("case2", "C0 != 0, all C_j = 0: variational equations");
    param(c2, "gbf", true, "coupling g_BF");
    param(c2, "omega0", true, "w0");
    param(c2, "omegaj", true, "comma separated w_j");
    param(c2, "c0sq", true, "C0^2");
    param(c2, "h", false, "energy of the q0 solution (default 0)");
    c2->add_option("--order", cfg.order, "series truncation order");

    auto* c3 = analyze->add_subcommand("case3", "C0 != 0, C1 != 0, one mode: Melnikov integral");
    param(c3, "omega0", true, "w0");
    param(c3, "omega1", true, "w1");
    param(c3, "c0sq", true, "C0^2");
    param(c3, "c1sq", true, "C1^2");
    param(c3, "gbf", false, "coupling g_BF (default 1)");
    c3->add_option("--action", cfg.action, "action I (default twice the lower bound)");
    c3->add_option("--t0-min", cfg.t0_min, "start of the t0 scan");
    c3->add_option("--t0-max", cfg.t0_max, "end of the t0 scan (default one period)");
    c3->add_option("--t0-samples", cfg.t0_samples, "scan samples")->check(CLI::PositiveNumber);

    auto* verify = app.add_subcommand("verify", "Check closed-form solutions against the equations of motion");
    verify->add_option("--which", cfg.selector, "prop1 | prop2 | separatrix")
        ->required()
        ->check(CLI::IsMember({"prop1", "prop2", "separatrix"}));
    param(verify, "omega0", false, "w0 (default 1)");
    param(verify, "omegaj", false, "comma separated w_j (default 1)");
    param(verify, "cjsq", false, "comma separated C_j^2 (prop1, default 1)");
    param(verify, "c0sq", false, "C0^2 (prop2, separatrix)");
    param(verify, "gbf", false, "coupling g_BF");
    param(verify, "h", false, "energy (prop2)");
    param(verify, "hj", false, "comma separated mode energies (prop1)");
    verify->add_option("--t0", cfg.t0, "phase t0 (prop1)");

    auto* series = app.add_subcommand("series", "Dump a local Laurent expansion as CSV");
    series->add_option("--what", cfg.selector, "wp | qbar | ve1 | mu2 | mu3")
        ->required()
        ->check(CLI::IsMember({"wp", "qbar", "ve1", "mu2", "mu3"}));
    param(series, "gbf", true, "coupling g_BF");
    param(series, "omega0", true, "w0");
    param(series, "omegaj", true, "comma separated w_j");
    param(series, "c0sq", true, "C0^2");
    param(series, "h", false, "energy (default 0)");
    series->add_option("--order", cfg.order, "series truncation order");
    series->add_option("--component", cfg.component, "0 tangential, j normal mode j (default 1)");
    std::string row;
    auto* row_opt = series->add_option("--row", row, "first | second")->check(CLI::IsMember({"first", "second"}));

    auto* sweep = app.add_subcommand("sweep", "Case-2 analysis over a list of couplings");
    param(sweep, "gbf-list", true, "comma separated g_BF values");
    param(sweep, "omega0", true, "w0");
    param(sweep, "omegaj", true, "comma separated w_j");
    param(sweep, "c0sq", true, "C0^2");
    param(sweep, "h", false, "energy (default 0)");
    sweep->add_option("--order", cfg.order, "series truncation order");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        std::ostringstream os;
        app.exit(e, os, os);
        cfg.help = true;
        cfg.help_text = os.str();
        return cfg;
    } catch (const CLI::CallForAllHelp& e) {
        std::ostringstream os;
        app.exit(e, os, os);
        cfg.help = true;
        cfg.help_text = os.str();
        return cfg;
    } catch (const CLI::ParseError& e) {
        throw Error(ErrorKind::usage, e.what());
    }

    if (analyze->parsed()) {
        cfg.command = "analyze";
        cfg.selector = c1->parsed() ? "case1" : c2->parsed() ? "case2" : "case3";
    } else if (verify->parsed()) {
        cfg.command = "verify";
    } else if (series->parsed()) {
        cfg.command = "series";
        if (row_opt->count() > 0)
            cfg.row = row;
    } else {
        cfg.command = "sweep";
    }
    if (cfg.selector == "case3")
        cfg.gbf = 1;

    for (const auto& [key, text] : raw) {
        if (text.empty())
            continue;
        cfg.given[key] = text;
        cfg.float_mode = cfg.float_mode || looks_decimal(text);
        if (std::find(kScalarKeys.begin(), kScalarKeys.end(), key) != kScalarKeys.end()) {
            scalar_field(cfg, key) = parse_rational(text);
        } else {
            auto& v = list_field(cfg, key);
            for (const auto& item : split(text))
                v.push_back(parse_rational(item));
        }
    }
    return cfg;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    const auto start = std::chrono::steady_clock::now();
    const std::string name = command_name(cfg);
    try {
        Outcome3 o;
        if (cfg.command == "analyze") {
            if (cfg.selector == "case1")
                o = run_case1(cfg);
            else if (cfg.selector == "case2")
                o = run_case2(cfg);
            else
                o = run_case3(cfg);
        } else if (cfg.command == "verify") {
            o = run_verify(cfg);
        } else if (cfg.command == "series") {
            o = run_series(cfg);
        } else if (cfg.command == "sweep") {
            o = run_sweep(cfg);
        } else {
            throw Error(ErrorKind::usage, "no command given");
        }
        const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        Json details = o.details;
        details["verification"] = o.verified ? Json("passed") : Json(o.failure);
        const Json report = make_report(name, params_given(cfg), o.verdict, details, ms);

        if (!cfg.csv_path.empty() && !o.csv.empty())
            write_atomic(cfg.csv_path, o.csv);
        if (!cfg.json_path.empty())
            write_atomic(cfg.json_path, report.dump(2) + "\n");

        if (cfg.command == "series" && cfg.csv_path.empty())
            out << o.csv;
        else if (cfg.json_path.empty())
            out << report.dump(2) << '\n';
        else if (o.verdict)
            out << to_string(o.verdict->case_id) << ' ' << to_string(o.verdict->outcome) << '\n';

        if (!o.verified) {
            err << "error: verification_failed: " << o.failure << '\n';
            return 3;
        }
        return 0;
    } catch (const Error& e) {
        err << "error: " << to_string(e.kind()) << ": " << e.what() << '\n';
        if (!cfg.json_path.empty()) {
            try {
                write_atomic(cfg.json_path, error_report(name, e.kind(), e.what()).dump(2) + "\n");
            } catch (const std::exception&) {
            }
        }
        return is_input_error(e.kind()) ? 2 : 3;
    } catch (const std::exception& e) {
        err << "error: internal: " << e.what() << '\n';
        return 3;
    }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    RunConfig cfg;
    try {
        cfg = parse_args(argc, argv);
    } catch (const Error& e) {
        err << "error: " << to_string(e.kind()) << ": " << e.what() << '\n';
        return 2;
    }
    if (cfg.help) {
        out << cfg.help_text;
        return 0;
    }
    return run(cfg, out, err);
}

}
