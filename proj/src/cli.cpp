#include "reciprel/cli.hpp"

#include "reciprel/hamilton_flow.hpp"
#include "reciprel/phase_space_metrics.hpp"
#include "reciprel/planck_scales.hpp"
#include "reciprel/random.hpp"
#include "reciprel/reciprocal_transforms.hpp"
#include "reciprel/weyl_heisenberg.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

namespace reciprel::cli {

namespace {

using json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class FileError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

double clean(double x) { return x == 0.0 ? 0.0 : x; }

std::string fmt(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, clean(x));
    return std::string(buf, res.ptr);
}

json jnum(double x) {
    if (!std::isfinite(x)) return nullptr;
    return clean(x);
}

json jvec(const Vector& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(jnum(v(i)));
    return out;
}

json jmat(const Matrix& m) {
    json out = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) out.push_back(jvec(m.row(i).transpose()));
    return out;
}

std::optional<double> parse_double(std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double x = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), x);
    if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(x)) {
        return std::nullopt;
    }
    return x;
}

std::vector<double> parse_list(const std::string& text, const std::string& what) {
    std::vector<double> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = text.find(',', start);
        const std::string_view token =
            std::string_view(text).substr(start, comma == std::string::npos ? std::string::npos
                                                                            : comma - start);
        const auto x = parse_double(token);
        if (!x) throw UsageError("malformed " + what + " '" + text + "': expected comma-separated reals");
        out.push_back(*x);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

Displacement parse_displacement(const std::string& text) {
    const std::vector<double> xs = parse_list(text, "displacement");
    if (xs.size() < 4 || xs.size() % 2 != 0) {
        throw UsageError("malformed displacement '" + text +
                         "': expected 2n+2 values dt,dq..,de,dp.. with n >= 1");
    }
    return Displacement::from_vector(Eigen::Map<const Vector>(xs.data(), xs.size()));
}

struct Common {
    std::optional<double> tol;
    std::uint64_t seed = 0;
    std::string output;
};

double resolve_tol(const Common& c, double fallback) {
    if (c.tol) return *c.tol;
    if (const char* env = std::getenv(kTolEnv); env != nullptr && *env != '\0') {
        const auto x = parse_double(env);
        if (!x || *x < 0.0) {
            throw UsageError(std::string("malformed ") + kTolEnv + " '" + env +
                             "': expected a nonnegative real");
        }
        return *x;
    }
    return fallback;
}

void add_common(CLI::App* sub, Common& c, const std::string& default_output) {
    c.output = default_output;
    sub->add_option("--tol", c.tol, "Pass/fail tolerance (default per command, or " +
                                        std::string(kTolEnv) + ")")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--seed", c.seed, "Seed for random sweeps")->capture_default_str();
    sub->add_option("--output", c.output, "Output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
}

json header(const std::string& command) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = command;
    return j;
}

void emit(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

void emit_csv(std::ostream& out, const std::vector<std::string>& head,
              const std::vector<std::vector<std::string>>& rows) {
    auto line = [&out](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
        out << '\n';
    };
    line(head);
    for (const auto& r : rows) line(r);
}

int verdict(bool pass, const std::string& what, double residual, double tol, std::ostream& err) {
    if (pass) return kExitOk;
    err << "FAIL " << what << ": residual " << fmt(residual) << " exceeds tolerance " << fmt(tol)
        << '\n';
    return kExitFail;
}

bool non_increasing(const std::vector<double>& xs) {
    for (std::size_t i = 1; i < xs.size(); ++i)
        if (!(xs[i] <= xs[i - 1])) return false;
    return true;
}

// wh

struct WhOpts {
    Common common;
    int n = 1;
    int count = 100;
    bool table = false;
};

std::string generator_label(int n, int k) {
    if (k < n) return "P" + std::to_string(k + 1);
    if (k < 2 * n) return "Q" + std::to_string(k - n + 1);
    return "I";
}

int cmd_wh_table(const WhOpts& o, double tol, std::ostream& out, std::ostream& err) {
    const auto gens = generators(o.n);
    const int m = static_cast<int>(gens.size());
    json entries = json::array();
    std::vector<std::vector<std::string>> rows;
    double worst = 0.0;
    for (int a = 0; a < m; ++a) {
        for (int b = 0; b < m; ++b) {
            const auto c = wh_commutator(gens[a], gens[b]);
            double expected = 0.0;
            if (a >= o.n && a < 2 * o.n && b == a - o.n) expected = 1.0;
            if (a < o.n && b == a + o.n) expected = -1.0;
            worst = std::max({worst, max_abs(c.p_coeff()), max_abs(c.q_coeff()),
                              std::abs(c.iota_coeff() - expected)});
            json e;
            e["x"] = generator_label(o.n, a);
            e["y"] = generator_label(o.n, b);
            e["iota"] = jnum(c.iota_coeff());
            entries.push_back(e);
            rows.push_back({generator_label(o.n, a), generator_label(o.n, b), fmt(c.iota_coeff())});
        }
    }
    const bool pass = worst <= tol;
    if (o.common.output == "csv") {
        emit_csv(out, {"x", "y", "iota"}, rows);
    } else {
        json j = header("wh");
        j["mode"] = "table";
        j["n"] = o.n;
        j["convention"] = "[Q_i,P_j] = delta_ij I";
        j["entries"] = entries;
        j["max_residual"] = jnum(worst);
        j["tol"] = jnum(tol);
        j["pass"] = pass;
        emit(out, j);
    }
    return verdict(pass, "commutator table", worst, tol, err);
}

int cmd_wh(const WhOpts& o, std::ostream& out, std::ostream& err) {
    if (o.n < 1) throw UsageError("--n must be at least 1");
    const double tol = resolve_tol(o.common, kGroupTol);
    if (o.table) return cmd_wh_table(o, tol, out, err);
    if (o.count < 1) throw UsageError("--count must be at least 1");

    Rng rng(o.common.seed);
    double max_compose = 0.0, max_assoc = 0.0, max_round = 0.0;
    int preserved_count = 0;
    std::vector<std::vector<std::string>> rows;
    for (int k = 0; k < o.count; ++k) {
        const HeisenbergElement a = random_heisenberg(o.n, rng);
        const HeisenbergElement b = random_heisenberg(o.n, rng);
        const HeisenbergElement c = random_heisenberg(o.n, rng);
        const AutomorphismElement u = random_automorphism(o.n, rng);

        const double compose = max_abs(wh_matrix(wh_compose(a, b)) - wh_matrix(a) * wh_matrix(b));
        const double assoc = max_abs(wh_matrix(wh_compose(wh_compose(a, b), c)) -
                                     wh_matrix(wh_compose(a, wh_compose(b, c))));
        double round = 0.0;
        try {
            const Matrix U = aut_matrix(u);
            const HeisenbergElement back = conjugate(U.inverse(), conjugate(U, a, tol), tol);
            round = max_abs(wh_matrix(back) - wh_matrix(a));
        } catch (const NotAnAutomorphism& e) {
            round = std::max(e.residual(), std::nextafter(tol, 2.0 * tol + 1.0));
        }
        const bool preserved = commutator_preserved(u, tol);
        preserved_count += preserved ? 1 : 0;
        max_compose = std::max(max_compose, compose);
        max_assoc = std::max(max_assoc, assoc);
        max_round = std::max(max_round, round);
        rows.push_back({std::to_string(k), fmt(compose), fmt(assoc), fmt(round),
                        preserved ? "1" : "0"});
    }
    const double worst = std::max({max_compose, max_assoc, max_round});
    const bool pass = worst <= tol && preserved_count == o.count;
    if (o.common.output == "csv") {
        emit_csv(out,
                 {"index", "compose_residual", "associativity_residual", "roundtrip_residual",
                  "commutators_preserved"},
                 rows);
    } else {
        json j = header("wh");
        j["mode"] = "sweep";
        j["n"] = o.n;
        j["count"] = o.count;
        j["seed"] = o.common.seed;
        j["max_compose_residual"] = jnum(max_compose);
        j["max_associativity_residual"] = jnum(max_assoc);
        j["max_roundtrip_residual"] = jnum(max_round);
        j["commutators_preserved"] = preserved_count;
        j["tol"] = jnum(tol);
        j["pass"] = pass;
        emit(out, j);
    }
    if (preserved_count != o.count && worst <= tol) {
        err << "FAIL automorphism sweep: " << (o.count - preserved_count)
            << " automorphisms did not preserve commutators at tolerance " << fmt(tol) << '\n';
        return kExitFail;
    }
    return verdict(pass, "group sweep", worst, tol, err);
}

// metric

struct MetricOpts {
    Common common;
    std::string d;
    double c = 1.0;
    double b = 1.0;
    std::string kind = "born";
    std::optional<double> v, f, r;
};

int cmd_metric(const MetricOpts& o, std::ostream& out, std::ostream&) {
    const double tol = resolve_tol(o.common, kNullTol);
    const Displacement d = parse_displacement(o.d);
    const int n = d.n();
    const MetricSpec spec = o.kind == "born"        ? MetricSpec::born(n, o.c, o.b)
                            : o.kind == "minkowski" ? MetricSpec::minkowski(n, o.c)
                                                    : MetricSpec::newton(n);
    const double ds2 = line_element(spec, d);
    const IntervalClass cls = interval_class(spec, d, tol);
    const double tau2 = proper_time_squared(d, o.c);
    const double mu2 = mass_line_element(d, o.c);

    std::optional<KinematicState> state;
    if (o.v || o.f || o.r) state = KinematicState::scalar(o.v.value_or(0.0), o.f.value_or(0.0),
                                                         o.r.value_or(0.0));
    double gamma = 0.0;
    if (state) gamma = gamma_factor(*state, o.c, o.b);

    if (o.common.output == "csv") {
        std::vector<std::string> head = {"kind", "line_element", "class", "proper_time_squared",
                                         "mass_line_element"};
        std::vector<std::string> row = {o.kind, fmt(ds2), to_string(cls), fmt(tau2), fmt(mu2)};
        if (state) {
            head.insert(head.end(), {"null_surface_residual", "gamma", "mass_rate_squared"});
            row.insert(row.end(), {fmt(null_surface_residual(*state, o.c, o.b)), fmt(gamma),
                                   fmt(mass_rate_squared(*state, o.c))});
        }
        emit_csv(out, head, {row});
        return kExitOk;
    }
    json j = header("metric");
    j["kind"] = o.kind;
    j["c"] = jnum(o.c);
    j["b"] = jnum(o.b);
    j["layout"] = "dt,dq,de,dp";
    j["displacement"] = jvec(d.to_vector());
    j["line_element"] = jnum(ds2);
    j["class"] = to_string(cls);
    j["proper_time_squared"] = jnum(tau2);
    j["mass_line_element"] = jnum(mu2);
    if (state) {
        json s;
        s["v"] = jnum(state->v(0));
        s["f"] = jnum(state->f(0));
        s["r"] = jnum(state->r);
        s["null_surface_residual"] = jnum(null_surface_residual(*state, o.c, o.b));
        s["gamma"] = jnum(gamma);
        s["mass_rate_squared"] = jnum(mass_rate_squared(*state, o.c));
        j["state"] = s;
    }
    j["tol"] = jnum(tol);
    emit(out, j);
    return kExitOk;
}

// transform

struct TransformOpts {
    Common common;
    double v = 0.0, f = 0.0, r = 0.0;
    double c = 1.0, b = 1.0;
    std::string d;
    int trials = 1000;
    std::string b_values;
};

int cmd_transform(const TransformOpts& o, std::ostream& out, std::ostream& err) {
    const double tol = resolve_tol(o.common, 1e-8);
    if (o.trials < 1) throw UsageError("--trials must be at least 1");
    const KinematicState s = KinematicState::scalar(o.v, o.f, o.r);

    if (o.common.output == "csv") {
        const std::vector<double> bs =
            o.b_values.empty() ? std::vector<double>{o.b} : parse_list(o.b_values, "--b-values");
        std::vector<std::vector<std::string>> rows;
        double worst = 0.0;
        for (double b : bs) {
            const double res = born_invariance_residual(s, o.c, b, o.trials, o.common.seed);
            worst = std::max(worst, res);
            rows.push_back({fmt(b), fmt(res)});
        }
        emit_csv(out, {"b", "residual"}, rows);
        return verdict(worst <= tol, "Born invariance sweep", worst, tol, err);
    }

    const Displacement d = parse_displacement(o.d);
    if (d.n() != 1) throw UsageError("transform takes a single spatial dimension: --d dt,dq,de,dp");
    const double gamma = gamma_factor(s, o.c, o.b);
    const Displacement image = explicit_transform(s, d, o.c, o.b);
    const MetricSpec born = MetricSpec::born(1, o.c, o.b);
    const double before = line_element(born, d);
    const double after = line_element(born, image);
    const double point = std::abs(after - before);
    const double sweep = born_invariance_residual(s, o.c, o.b, o.trials, o.common.seed);
    const double worst = std::max(point, sweep);
    const bool pass = worst <= tol;

    json j = header("transform");
    j["c"] = jnum(o.c);
    j["b"] = jnum(o.b);
    j["state"] = {{"v", jnum(o.v)}, {"f", jnum(o.f)}, {"r", jnum(o.r)}};
    j["gamma"] = jnum(gamma);
    j["layout"] = "dt,dq,de,dp";
    j["displacement"] = jvec(d.to_vector());
    j["image"] = jvec(image.to_vector());
    j["line_element"] = jnum(before);
    j["image_line_element"] = jnum(after);
    j["line_element_residual"] = jnum(point);
    j["matrix"] = jmat(transform_matrix(s, o.c, o.b));
    j["sweep"] = {{"trials", o.trials}, {"seed", o.common.seed}, {"max_residual", jnum(sweep)}};
    j["tol"] = jnum(tol);
    j["pass"] = pass;
    emit(out, j);
    return verdict(pass, "Born invariance", worst, tol, err);
}

// nullcone

struct NullconeOpts {
    Common common;
    double r = 0.0, c = 1.0, b = 1.0, f = 0.0;
    int count = 16;
};

int cmd_nullcone(const NullconeOpts& o, std::ostream& out, std::ostream& err) {
    const double tol = resolve_tol(o.common, 1e-12);
    if (o.count < 1) throw UsageError("--count must be at least 1");
    const auto samples = null_cone_sample(o.r, o.c, o.b, o.count);
    double worst = 0.0;
    for (const auto& s : samples) worst = std::max(worst, std::abs(s.residual));
    const bool pass = worst <= tol;

    if (o.common.output == "csv") {
        std::vector<std::vector<std::string>> rows;
        for (const auto& s : samples) rows.push_back({fmt(s.angle), fmt(s.v), fmt(s.f), fmt(s.residual)});
        emit_csv(out, {"angle", "v", "f", "residual"}, rows);
        return verdict(pass, "null cone samples", worst, tol, err);
    }

    const NullVelocity nv = null_velocity(o.f, o.r, o.c, o.b);
    json j = header("nullcone");
    j["r"] = jnum(o.r);
    j["c"] = jnum(o.c);
    j["b"] = jnum(o.b);
    j["count"] = o.count;
    json v;
    v["f"] = jnum(o.f);
    v["r"] = jnum(o.r);
    v["plus"] = jnum(nv.plus);
    v["minus"] = jnum(nv.minus);
    j["null_velocity"] = v;
    const double two_bc = 2.0 * o.b * o.c;
    if (o.f == 0.0 && std::abs(o.r - two_bc) <= 1e-12 * two_bc) {
        j["note"] = "at f = 0, r = 2bc the null speeds are +/-sqrt(5) c; "
                    "+/-2c does not satisfy the null condition";
    }
    json rows = json::array();
    for (const auto& s : samples) {
        rows.push_back({{"angle", jnum(s.angle)}, {"v", jnum(s.v)}, {"f", jnum(s.f)},
                        {"residual", jnum(s.residual)}});
    }
    j["samples"] = rows;
    j["max_residual"] = jnum(worst);
    j["tol"] = jnum(tol);
    j["pass"] = pass;
    emit(out, j);
    return verdict(pass, "null cone samples", worst, tol, err);
}

// contract

struct ContractOpts {
    Common common;
    std::string limit = "b";
    double v = 0.0, f = 0.0, r = 0.0, c = 1.0;
    std::string d = "1,1,1,1";
    std::string values;
};

int cmd_contract(const ContractOpts& o, std::ostream& out, std::ostream& err) {
    const double tol = resolve_tol(o.common, 0.1);
    const KinematicState s = KinematicState::scalar(o.v, o.f, o.r);
    const Displacement d = parse_displacement(o.d);
    if (d.n() != 1) throw UsageError("contract takes a single spatial dimension: --d dt,dq,de,dp");
    const bool by_b = o.limit == "b";
    const std::vector<double> scales =
        !o.values.empty() ? parse_list(o.values, "--values")
        : by_b            ? std::vector<double>{1e2, 1e3, 1e4, 1e5}
                          : std::vector<double>{1e1, 1e2, 1e3, 1e4};

    const ContractionReport rep = by_b ? contract_b(s, d, o.c, scales) : contract_c(s, d, scales);
    const auto gaps = by_b ? born_minkowski_gap(d, o.c, scales) : minkowski_newton_gap(d, scales);
    std::vector<double> gap_values;
    for (const auto& g : gaps) gap_values.push_back(g.gap);
    const bool gap_monotone = non_increasing(gap_values);
    // A state the limit leaves unchanged (e.g. rest) has zero deviation at
    // every scale and no slope to fit.
    const bool exact = std::all_of(rep.samples.begin(), rep.samples.end(),
                                   [](const ContractionSample& smp) { return smp.matrix_deviation == 0.0; });
    const double slope_error = exact                  ? 0.0
                               : std::isnan(rep.slope) ? INFINITY
                                                       : std::abs(rep.slope + 2.0);
    const bool pass = rep.monotone && gap_monotone && slope_error <= tol;

    if (o.common.output == "csv") {
        std::vector<std::vector<std::string>> rows;
        for (std::size_t i = 0; i < rep.samples.size(); ++i) {
            const auto& smp = rep.samples[i];
            rows.push_back({fmt(smp.scale), fmt(smp.deviation), fmt(smp.matrix_deviation),
                            fmt(gap_values[i])});
        }
        emit_csv(out, {"scale", "deviation", "matrix_deviation", "line_element_gap"}, rows);
    } else {
        json j = header("contract");
        j["limit"] = o.limit;
        j["state"] = {{"v", jnum(o.v)}, {"f", jnum(o.f)}, {"r", jnum(o.r)}};
        if (by_b) j["c"] = jnum(o.c);
        j["layout"] = "dt,dq,de,dp";
        j["displacement"] = jvec(d.to_vector());
        json rows = json::array();
        for (std::size_t i = 0; i < rep.samples.size(); ++i) {
            const auto& smp = rep.samples[i];
            rows.push_back({{"scale", jnum(smp.scale)},
                            {"image", jvec(smp.image.to_vector())},
                            {"deviation", jnum(smp.deviation)},
                            {"matrix_deviation", jnum(smp.matrix_deviation)},
                            {"line_element_gap", jnum(gap_values[i])}});
        }
        j["samples"] = rows;
        j["limit_image"] = jvec(rep.limit.to_vector());
        j["limit_matrix"] = jmat(rep.limit_matrix);
        j["slope"] = jnum(rep.slope);
        j["expected_slope"] = -2.0;
        j["exact"] = exact;
        j["monotone"] = rep.monotone;
        j["line_element_monotone"] = gap_monotone;
        j["tol"] = jnum(tol);
        j["pass"] = pass;
        emit(out, j);
    }
    if (!rep.monotone || !gap_monotone) {
        err << "FAIL contraction: deviation is not monotone along the sweep\n";
        return kExitFail;
    }
    return verdict(pass, "contraction slope", slope_error, tol, err);
}

// planck

struct PlanckOpts {
    Common common;
    double c = 299792458.0;
    double hbar = 1.054571817e-34;
    std::optional<double> b, G, alpha_G;
};

constexpr double kCodataG = 6.67430e-11;

int cmd_planck(const PlanckOpts& o, std::ostream& out, std::ostream& err) {
    const double tol = resolve_tol(o.common, 1e-14);
    ScaleConstants k;
    k.c = o.c;
    k.hbar = o.hbar;
    k.b = o.b;
    k.G = o.G;
    k.alpha_G = o.alpha_G;
    if (!k.b && !k.G) k.G = kCodataG;
    k.validate();
    const double force = k.force_scale();
    const PlanckScales s = planck_from_constants(k);
    const IdentityResiduals res = verify_identities(s, k.c, force, k.hbar);
    double worst = res.max();

    std::optional<double> route;
    if (k.G && k.coupling() == 1.0) {
        const PlanckScales g = planck_from_cGh(k.c, *k.G, k.hbar);
        auto rel = [](double a, double b) { return std::abs(a - b) / std::abs(b); };
        route = std::max({rel(s.lambda_t, g.lambda_t), rel(s.lambda_q, g.lambda_q),
                          rel(s.lambda_p, g.lambda_p), rel(s.lambda_e, g.lambda_e)});
        worst = std::max(worst, *route);
    }
    const bool pass = worst <= tol;

    if (o.common.output == "csv") {
        std::vector<std::vector<std::string>> rows = {{"lambda_t", fmt(s.lambda_t)},
                                                      {"lambda_q", fmt(s.lambda_q)},
                                                      {"lambda_p", fmt(s.lambda_p)},
                                                      {"lambda_e", fmt(s.lambda_e)}};
        for (std::size_t i = 0; i < res.values.size(); ++i) {
            rows.push_back({std::string(IdentityResiduals::names[i]), fmt(res.values[i])});
        }
        if (route) rows.push_back({"route_residual", fmt(*route)});
        emit_csv(out, {"name", "value"}, rows);
    } else {
        json j = header("planck");
        json in;
        in["c"] = jnum(k.c);
        in["hbar"] = jnum(k.hbar);
        if (k.b) in["b"] = jnum(*k.b);
        if (k.G) in["G"] = jnum(*k.G);
        in["alpha_G"] = jnum(k.coupling());
        j["inputs"] = in;
        j["force_scale"] = jnum(force);
        j["scales"] = {{"lambda_t", jnum(s.lambda_t)},
                       {"lambda_q", jnum(s.lambda_q)},
                       {"lambda_p", jnum(s.lambda_p)},
                       {"lambda_e", jnum(s.lambda_e)}};
        json r;
        for (std::size_t i = 0; i < res.values.size(); ++i) {
            r[std::string(IdentityResiduals::names[i])] = jnum(res.values[i]);
        }
        j["residuals"] = r;
        if (route) j["route_residual"] = jnum(*route);
        j["max_residual"] = jnum(worst);
        j["tol"] = jnum(tol);
        j["pass"] = pass;
        emit(out, j);
    }
    return verdict(pass, "Planck identities", worst, tol, err);
}

// hamilton verify

struct HamiltonOpts {
    Common common;
    std::string system = "harmonic";
    std::string file;
    double t = 0.0, q = 1.0, e = 0.5, p = 0.0;
    double t1 = 1.0;
    int steps = 10000;
    double h = kJacobianStep;
    double dt = 1e-6;
    bool richardson = false;
};

HamiltonianSystem load_system(const HamiltonOpts& o) {
    if (!o.file.empty()) {
        std::ifstream in(o.file);
        if (!in) throw FileError("cannot read polynomial file '" + o.file + "'");
        std::stringstream buf;
        buf << in.rdbuf();
        return PolynomialHamiltonian::from_json(buf.str()).system(o.file);
    }
    if (o.system == "zero") return HamiltonianSystem::zero(1);
    if (o.system == "free") return HamiltonianSystem::free_particle(1);
    if (o.system == "driven") return HamiltonianSystem::driven(1);
    return HamiltonianSystem::harmonic(1);
}

int cmd_hamilton(const HamiltonOpts& o, std::ostream& out, std::ostream& err) {
    const double tol = resolve_tol(o.common, 1e-5);
    if (o.steps < 1) throw UsageError("--steps must be at least 1");
    const HamiltonianSystem sys = load_system(o);
    const ExtendedState z0 = ExtendedState::scalar(o.t, o.q, o.e, o.p);

    const FlowJacobian J = flow_jacobian(sys, z0, o.t1, o.steps, o.h, o.richardson);
    const HspReport hsp = check_hsp_membership(J, tol);
    const FlowJacobian Js = flow_jacobian(sys, z0, o.dt, o.steps, o.h, o.richardson);
    const HamiltonStructureReport st = verify_hamilton_structure(Js, sys, tol);
    const bool pass = hsp.pass && st.verdict == StructureVerdict::Pass;

    if (o.common.output == "csv") {
        emit_csv(out,
                 {"system", "symplectic_residual", "time_row_residual", "generator_error",
                  "zero_pattern_residual", "curvature", "verdict", "pass"},
                 {{sys.name(), fmt(hsp.symplectic_residual), fmt(hsp.time_row_residual),
                   fmt(st.generator_error), fmt(st.zero_pattern_residual), fmt(st.curvature),
                   to_string(st.verdict), pass ? "1" : "0"}});
    } else {
        json j = header("hamilton verify");
        j["system"] = sys.name();
        j["layout"] = "t,q,e,p";
        j["base"] = jvec(z0.to_vector());
        j["t1"] = jnum(o.t1);
        j["steps"] = o.steps;
        j["h"] = jnum(o.h);
        j["richardson"] = o.richardson;
        j["end"] = jvec(J.end.to_vector());
        j["jacobian"] = jmat(J.J);
        j["hsp"] = {{"symplectic_residual", jnum(hsp.symplectic_residual)},
                    {"time_row_residual", jnum(hsp.time_row_residual)},
                    {"pass", hsp.pass}};
        j["structure"] = {{"dt", jnum(o.dt)},
                          {"v_slot", jvec(st.v_slot)},
                          {"f_slot", jvec(st.f_slot)},
                          {"r_slot", jnum(st.r_slot)},
                          {"expected_v", jvec(st.expected_v)},
                          {"expected_f", jvec(st.expected_f)},
                          {"expected_r", jnum(st.expected_r)},
                          {"generator_error", jnum(st.generator_error)},
                          {"zero_pattern_residual", jnum(st.zero_pattern_residual)},
                          {"curvature", jnum(st.curvature)},
                          {"verdict", to_string(st.verdict)}};
        j["tol"] = jnum(tol);
        j["pass"] = pass;
        emit(out, j);
    }
    if (!hsp.pass) {
        return verdict(false, "symplectic preservation",
                       std::max(hsp.symplectic_residual, hsp.time_row_residual), tol, err);
    }
    if (st.verdict == StructureVerdict::Inconclusive) {
        err << "FAIL generator structure inconclusive: curvature " << fmt(st.curvature)
            << " exceeds tolerance " << fmt(tol) << "; shorten --dt\n";
        return kExitFail;
    }
    return verdict(pass, "generator structure",
                   std::max(st.generator_error, st.zero_pattern_residual), tol, err);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Reciprocal relativity toolkit", "reciprel"};
    app.require_subcommand(1);

    WhOpts wh;
    auto* wh_cmd = app.add_subcommand("wh", "Weyl-Heisenberg group sweep or commutator table");
    add_common(wh_cmd, wh.common, "json");
    wh_cmd->add_option("--n", wh.n, "Spatial dimension")->capture_default_str();
    wh_cmd->add_option("--count", wh.count, "Random samples")->capture_default_str();
    wh_cmd->add_flag("--table", wh.table, "Print the generator commutator table");

    MetricOpts metric;
    auto* metric_cmd = app.add_subcommand("metric", "Line elements of one displacement");
    add_common(metric_cmd, metric.common, "json");
    metric_cmd->add_option("--d", metric.d, "Displacement dt,dq..,de,dp..")->required();
    metric_cmd->add_option("--c", metric.c)->capture_default_str();
    metric_cmd->add_option("--b", metric.b)->capture_default_str();
    metric_cmd->add_option("--kind", metric.kind)
        ->check(CLI::IsMember({"born", "minkowski", "newton"}))
        ->capture_default_str();
    metric_cmd->add_option("--v", metric.v, "Velocity of a kinematic state");
    metric_cmd->add_option("--f", metric.f, "Force of a kinematic state");
    metric_cmd->add_option("--r", metric.r, "Power of a kinematic state");

    TransformOpts tr;
    auto* tr_cmd = app.add_subcommand("transform", "Apply the (v, f, r) transformation");
    add_common(tr_cmd, tr.common, "json");
    tr_cmd->add_option("--v", tr.v)->capture_default_str();
    tr_cmd->add_option("--f", tr.f)->capture_default_str();
    tr_cmd->add_option("--r", tr.r)->capture_default_str();
    tr_cmd->add_option("--c", tr.c)->capture_default_str();
    tr_cmd->add_option("--b", tr.b)->capture_default_str();
    tr_cmd->add_option("--d", tr.d, "Displacement dt,dq,de,dp (JSON output)");
    tr_cmd->add_option("--trials", tr.trials, "Random displacements in the invariance sweep")
        ->capture_default_str();
    tr_cmd->add_option("--b-values", tr.b_values, "Comma-separated b values (CSV sweep)");

    NullconeOpts nc;
    auto* nc_cmd = app.add_subcommand("nullcone", "Sample the null hypersurface");
    add_common(nc_cmd, nc.common, "csv");
    nc_cmd->add_option("--r", nc.r)->capture_default_str();
    nc_cmd->add_option("--c", nc.c)->capture_default_str();
    nc_cmd->add_option("--b", nc.b)->capture_default_str();
    nc_cmd->add_option("--f", nc.f, "Force magnitude for the null velocity (JSON output)")
        ->capture_default_str();
    nc_cmd->add_option("--count", nc.count)->capture_default_str();

    ContractOpts ct;
    auto* ct_cmd = app.add_subcommand("contract", "Contraction sweep in b or c");
    add_common(ct_cmd, ct.common, "json");
    ct_cmd->add_option("--limit", ct.limit)->check(CLI::IsMember({"b", "c"}))->capture_default_str();
    ct_cmd->add_option("--v", ct.v)->capture_default_str();
    ct_cmd->add_option("--f", ct.f)->capture_default_str();
    ct_cmd->add_option("--r", ct.r)->capture_default_str();
    ct_cmd->add_option("--c", ct.c, "Speed of light for the b sweep")->capture_default_str();
    ct_cmd->add_option("--d", ct.d)->capture_default_str();
    ct_cmd->add_option("--values", ct.values, "Comma-separated increasing scales");

    PlanckOpts pl;
    auto* pl_cmd = app.add_subcommand("planck", "Planck scales and their identities");
    add_common(pl_cmd, pl.common, "json");
    pl_cmd->add_option("--c", pl.c)->capture_default_str();
    pl_cmd->add_option("--hbar", pl.hbar)->capture_default_str();
    pl_cmd->add_option("--b", pl.b, "Force scale");
    pl_cmd->add_option("--G", pl.G, "Newton's constant (default CODATA when --b is absent)");
    pl_cmd->add_option("--alpha-g", pl.alpha_G, "Coupling in G = alpha_G c^4 / b")
        ->check(CLI::Range(1e-17, 1.0));

    HamiltonOpts hm;
    auto* hm_cmd = app.add_subcommand("hamilton", "Hamiltonian flow checks");
    hm_cmd->require_subcommand(1);
    auto* hv_cmd = hm_cmd->add_subcommand("verify", "Check the flow Jacobian structure");
    hv_cmd->set_help_flag("--help", "Print this help message and exit");
    add_common(hv_cmd, hm.common, "json");
    auto* sys_opt = hv_cmd->add_option("--system", hm.system)
                        ->check(CLI::IsMember({"zero", "free", "harmonic", "driven"}))
                        ->capture_default_str();
    hv_cmd->add_option("--file", hm.file, "Polynomial Hamiltonian JSON {\"a,b,c\": coeff}")
        ->excludes(sys_opt);
    hv_cmd->add_option("--t", hm.t)->capture_default_str();
    hv_cmd->add_option("--q", hm.q)->capture_default_str();
    hv_cmd->add_option("--e", hm.e)->capture_default_str();
    hv_cmd->add_option("--p", hm.p)->capture_default_str();
    hv_cmd->add_option("--t1", hm.t1, "Elapsed time for the symplectic check")->capture_default_str();
    hv_cmd->add_option("--steps", hm.steps)->capture_default_str();
    hv_cmd->add_option("--h", hm.h, "Finite-difference step")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    hv_cmd->add_option("--dt", hm.dt, "Elapsed time for the generator reading")
        ->capture_default_str();
    hv_cmd->add_flag("--richardson", hm.richardson, "Richardson-extrapolated Jacobian");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*wh_cmd) return cmd_wh(wh, out, err);
        if (*metric_cmd) return cmd_metric(metric, out, err);
        if (*tr_cmd) {
            if (tr.common.output == "json" && tr.d.empty()) throw UsageError("--d is required");
            return cmd_transform(tr, out, err);
        }
        if (*nc_cmd) return cmd_nullcone(nc, out, err);
        if (*ct_cmd) return cmd_contract(ct, out, err);
        if (*pl_cmd) return cmd_planck(pl, out, err);
        if (*hv_cmd) return cmd_hamilton(hm, out, err);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
    } catch (const NonTimelikeState& e) {
        err << "error: state is not timelike (1 - v^2/c^2 - f^2/b^2 + r^2/(c^2 b^2) = "
            << fmt(e.denominator()) << ")\n";
    } catch (const NoNullVelocity& e) {
        err << "error: no null velocity: " << e.what() << '\n';
    } catch (const SuperluminalError& e) {
        err << "error: superluminal velocity: " << e.what() << '\n';
    } catch (const IntegrationFailure& e) {
        err << "error: integration failed: " << e.what() << '\n';
    } catch (const FileError& e) {
        err << "error: " << e.what() << '\n';
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
    }
    return kExitUsage;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv;
    argv.push_back("reciprel");
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace reciprel::cli
