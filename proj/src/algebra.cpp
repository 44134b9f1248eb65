#include "vsh/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include <json.hpp>

#include "vsh/errors.hpp"
#include "vsh/operators.hpp"
#include "vsh/random_fields.hpp"

namespace vsh {

bool IdentitySpec::suspect() const {
    return std::find(tags.begin(), tags.end(), "paper-suspect") != tags.end();
}

namespace {

int axis_of(char c) { return c == 'x' ? 0 : c == 'y' ? 1 : 2; }

FieldVariant apply_atom(const std::string& op, const FieldVariant& in) {
    const bool scalar_in = std::holds_alternative<ScalarField>(in);
    auto bad_kind = [&]() -> LayoutError {
        return LayoutError("pipeline type mismatch: atom \"" + op + "\" on a " +
                           (scalar_in ? "scalar" : "vector") + " field");
    };

    if (scalar_in) {
        const auto& f = std::get<ScalarField>(in);
        if (op == "x" || op == "y" || op == "z")
            return multiply_coordinate(f, axis_of(op[0]));
        if (op == "r2") return multiply_radial_power(f, 2);
        if (op == "rpow-2") return multiply_radial_power(f, -2);
        if (op == "lap") return laplacian(f);
        if (op == "rdg") return radial_scaling(f);
        if (op == "rdg1") return f + radial_scaling(f);
        if (op == "grad") return gradient(f);
        if (op == "L") return apply_L(f);
        if (op == "N") return apply_N(f);
        if (op == "M") return apply_M(f);
        if (op == "rvec") return multiply_position(f);
        if (op.size() == 2 &&
            (op[0] == 'L' || op[0] == 'N' || op[0] == 'M' || op[0] == 'd')) {
            const int ax = axis_of(op[1]);
            if (op[0] == 'L') return extract_component(apply_L(f), ax);
            if (op[0] == 'N') return extract_component(apply_N(f), ax);
            if (op[0] == 'M') return extract_component(apply_M(f), ax);
            return extract_component(gradient(f), ax);
        }
        throw bad_kind();
    }

    const auto& v = std::get<VectorField>(in);
    if (op == "curl") return curl(v);
    if (op == "lap_vec") return laplacian_vector(v);
    if (op == "r_cross") return cross_with_r(v);
    if (op == "div") return divergence(v);
    if (op == "dot_r") return dot_with_r(v);
    if (op == "cx" || op == "cy" || op == "cz")
        return extract_component(v, axis_of(op[1]));
    if (op == "Ldot" || op == "Mdot") {
        ScalarField acc(v.grid());
        for (int ax = 0; ax < 3; ++ax) {
            auto comp = extract_component(v, ax);
            auto w = (op[0] == 'L') ? apply_L(comp) : apply_M(comp);
            acc += extract_component(w, ax);
        }
        return acc;
    }
    throw bad_kind();
}

double variant_norm(const FieldVariant& f) {
    return std::holds_alternative<ScalarField>(f)
               ? norm(std::get<ScalarField>(f))
               : norm(std::get<VectorField>(f));
}

// evaluate one expr; returns the summed result and the largest norm of any
// intermediate field visited
std::pair<FieldVariant, double> eval_expr(const PipelineExpr& expr,
                                          const FieldVariant& input) {
    std::optional<FieldVariant> acc;
    double seen = variant_norm(input);
    for (const auto& term : expr) {
        FieldVariant cur = input;
        for (const auto& op : term.ops) {
            cur = apply_atom(op, cur);
            seen = std::max(seen, variant_norm(cur));
        }
        if (std::holds_alternative<ScalarField>(cur)) {
            auto t = term.coeff * std::get<ScalarField>(cur);
            if (!acc)
                acc = t;
            else if (std::holds_alternative<ScalarField>(*acc))
                std::get<ScalarField>(*acc) += t;
            else
                throw LayoutError("pipeline type mismatch: mixed-kind sum");
        } else {
            auto t = term.coeff * std::get<VectorField>(cur);
            if (!acc)
                acc = t;
            else if (std::holds_alternative<VectorField>(*acc))
                std::get<VectorField>(*acc) += t;
            else
                throw LayoutError("pipeline type mismatch: mixed-kind sum");
        }
    }
    if (!acc) throw ConfigError("empty pipeline expression");
    return {*acc, seen};
}

FieldVariant zero_like(const FieldVariant& proto) {
    if (std::holds_alternative<ScalarField>(proto))
        return ScalarField(std::get<ScalarField>(proto).grid());
    return VectorField(std::get<VectorField>(proto).grid());
}

double diff_norm(const FieldVariant& a, const FieldVariant& b) {
    if (std::holds_alternative<ScalarField>(a))
        return norm(std::get<ScalarField>(a) - std::get<ScalarField>(b));
    return norm(std::get<VectorField>(a) - std::get<VectorField>(b));
}

} // namespace

IdentityReport verify_identity(const IdentitySpec& spec,
                               const SuiteConfig& cfg) {
    IdentityReport rep;
    rep.name = spec.name;
    rep.suspect = spec.suspect();

    GridPtr grid;
    if (spec.fixed && spec.fixed->needs_annulus)
        grid = SphericalGrid::make_annulus(cfg.l_max, std::max(cfg.n_r, 40),
                                           cfg.r_max / 4.0, cfg.r_max);
    else
        grid = SphericalGrid::make_ball(cfg.l_max, cfg.n_r, cfg.r_max);

    const int trials = spec.fixed ? 1 : cfg.n_trials;
    rep.n_trials = trials;

    for (int t = 0; t < trials; ++t) {
        FieldVariant input;
        if (spec.fixed) {
            ScalarField f(grid);
            const int h = spec.fixed->l * (spec.fixed->l + 1) + spec.fixed->m;
            for (int j = 0; j < grid->n_r(); ++j)
                f.at(j, h) = std::pow(grid->r_nodes()[j], spec.fixed->kappa);
            input = std::move(f);
        } else {
            RandomFieldOptions opt{.l_limit = cfg.l_max - 2,
                                   .radial_scale = cfg.r_max / 3.0,
                                   .radial_terms = 3};
            std::uint64_t s = cfg.seed * 1000003ull + t;
            if (spec.input == FieldKind::Scalar)
                input = random_scalar_field(grid, s, opt);
            else
                input = random_vector_field(grid, s, opt);
        }

        auto [lv, lseen] = eval_expr(spec.lhs, input);
        auto [rv, rseen] =
            spec.rhs.empty()
                ? std::make_pair(zero_like(lv), 0.0)
                : eval_expr(spec.rhs, input);
        const double eps = std::max(lseen, rseen);
        const double denom =
            std::max({variant_norm(lv), variant_norm(rv), eps, 1e-300});
        rep.max_rel_residual =
            std::max(rep.max_rel_residual, diff_norm(lv, rv) / denom);
    }
    rep.pass = rep.max_rel_residual < cfg.tol;
    if (rep.suspect && !rep.pass)
        rep.note = "printed form fails numerically; see companion identity";
    return rep;
}

SuiteResult run_suite(const std::vector<IdentitySpec>& registry,
                      const SuiteConfig& cfg) {
    SuiteResult res;
    res.reports.reserve(registry.size());
    for (const auto& spec : registry) {
        auto rep = verify_identity(spec, cfg);
        if (rep.pass)
            ++res.n_pass;
        else if (rep.suspect)
            ++res.n_suspect_fail;
        else
            ++res.n_fail;
        res.reports.push_back(std::move(rep));
    }
    res.ok = res.n_fail == 0;
    return res;
}

// ---- registry ----------------------------------------------------------------

namespace {

double eps3(int i, int j, int k) {
    if (i == j || j == k || i == k) return 0.0;
    return ((j - i + 3) % 3 == 1) ? 1.0 : -1.0;
}

const char* ax_name(int i) { return i == 0 ? "x" : i == 1 ? "y" : "z"; }
std::string comp_op(char fam, int i) { return std::string{fam} + ax_name(i); }

} // namespace

std::vector<IdentitySpec> builtin_registry() {
    std::vector<IdentitySpec> reg;
    auto add = [&](IdentitySpec s) { reg.push_back(std::move(s)); };
    const cplx I{0.0, 1.0};

    // --- zero chains --------------------------------------------------------
    for (int i = 0; i < 3; ++i) {
        add({.name = std::string("[L") + ax_name(i) + ", r^2] = 0",
             .input = FieldKind::Scalar,
             .lhs = {{1.0, {"r2", comp_op('L', i)}},
                     {-1.0, {comp_op('L', i), "r2"}}},
             .rhs = {},
             .tags = {},
             .fixed = {}});
        add({.name = std::string("[L") + ax_name(i) + ", p^2] = 0",
             .input = FieldKind::Scalar,
             .lhs = {{1.0, {"lap", comp_op('L', i)}},
                     {-1.0, {comp_op('L', i), "lap"}}},
             .rhs = {},
             .tags = {},
             .fixed = {}});
    }
    add({"r . L = 0", FieldKind::Scalar, {{1.0, {"L", "dot_r"}}}, {}, {}, {}});
    add({"div L = 0", FieldKind::Scalar, {{1.0, {"L", "div"}}}, {}, {}, {}});
    add({"L . N = 0", FieldKind::Scalar, {{1.0, {"N", "Ldot"}}}, {}, {}, {}});
    add({"L . M = 0", FieldKind::Scalar, {{1.0, {"M", "Ldot"}}}, {}, {}, {}});
    add({"M . L = 0", FieldKind::Scalar, {{1.0, {"L", "Mdot"}}}, {}, {}, {}});

    // r.N: printed zero and printed +L^2 both fail; -L^2 holds
    add({"r . N = 0 (as printed)",
         FieldKind::Scalar,
         {{1.0, {"N", "dot_r"}}},
         {},
         {"paper-suspect"},
         {}});
    add({"r . N = L^2 (Eq-4 form)",
         FieldKind::Scalar,
         {{1.0, {"N", "dot_r"}}},
         {{1.0, {"L", "Ldot"}}},
         {"paper-suspect"},
         {}});
    add({"r . N = -L^2",
         FieldKind::Scalar,
         {{1.0, {"N", "dot_r"}}},
         {{-1.0, {"L", "Ldot"}}},
         {},
         {}});

    // --- [L^2, r] -------------------------------------------------------------
    for (int i = 0; i < 3; ++i) {
        PipelineExpr lhs{{1.0, {ax_name(i), "L", "Ldot"}},
                         {-1.0, {"L", "Ldot", ax_name(i)}}};
        PipelineExpr rxl_m_lxr;
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) {
                double e = eps3(i, j, k);
                if (e == 0.0) continue;
                // (r x L)_i = eps_ijk r_j L_k ; (L x r)_i = eps_ijk L_j r_k
                rxl_m_lxr.push_back({e, {comp_op('L', k), ax_name(j)}});
                rxl_m_lxr.push_back({-e, {ax_name(k), comp_op('L', j)}});
            }
        PipelineExpr printed_rhs = rxl_m_lxr;
        for (auto& t : printed_rhs) t.coeff *= I;
        add({std::string("[L^2, r_") + ax_name(i) +
                 "] = i(r x L - L x r) (as printed)",
             FieldKind::Scalar, lhs, printed_rhs, {"paper-suspect"}, {}});
        add({std::string("[L^2, r_") + ax_name(i) + "] = r x L - L x r",
             FieldKind::Scalar, lhs, rxl_m_lxr, {}, {}});
    }

    // --- curl N = -L lap --------------------------------------------------------
    add({"curl N = -L lap",
         FieldKind::Scalar,
         {{1.0, {"N", "curl"}}},
         {{-1.0, {"lap", "L"}}},
         {},
         {}});

    // --- commutators with the Laplacian ------------------------------------------
    for (int i = 0; i < 3; ++i) {
        add({std::string("[L") + ax_name(i) + ", lap] = 0",
             FieldKind::Scalar,
             {{1.0, {"lap", comp_op('L', i)}}, {-1.0, {comp_op('L', i), "lap"}}},
             {},
             {},
             {}});
        add({std::string("[N") + ax_name(i) + ", lap] = 0",
             FieldKind::Scalar,
             {{1.0, {"lap", comp_op('N', i)}}, {-1.0, {comp_op('N', i), "lap"}}},
             {},
             {},
             {}});
        add({std::string("[M") + ax_name(i) + ", lap] = -6 d" + ax_name(i) +
                 " (as printed)",
             FieldKind::Scalar,
             {{1.0, {"lap", comp_op('M', i)}}, {-1.0, {comp_op('M', i), "lap"}}},
             {{-6.0, {comp_op('d', i)}}},
             {"paper-suspect"},
             {}});
        add({std::string("[M") + ax_name(i) + ", lap] = 2 N" + ax_name(i),
             FieldKind::Scalar,
             {{1.0, {"lap", comp_op('M', i)}}, {-1.0, {comp_op('M', i), "lap"}}},
             {{2.0, {comp_op('N', i)}}},
             {},
             {}});
    }

    // --- index-pair commutators ---------------------------------------------------
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) {
            {
                IdentitySpec s{"[r_" + std::string(ax_name(i)) + ", d_" +
                                   ax_name(k) + "] = -delta",
                               FieldKind::Scalar,
                               {{1.0, {comp_op('d', k), ax_name(i)}},
                                {-1.0, {ax_name(i), comp_op('d', k)}}},
                               {},
                               {},
                               {}};
                if (i == k) s.rhs.push_back({-1.0, {}});
                add(std::move(s));
            }
            {
                // printed with -eps_ikj; the operators as defined satisfy
                // +eps_ikj (the paper's own [L_i,L_j] = +eps L_k forces it)
                PipelineExpr lhs{{1.0, {comp_op('L', k), ax_name(i)}},
                                 {-1.0, {ax_name(i), comp_op('L', k)}}};
                IdentitySpec printed{"[r_" + std::string(ax_name(i)) + ", L_" +
                                         ax_name(k) + "] = -eps_ikj r_j (as printed)",
                                     FieldKind::Scalar, lhs, {},
                                     {"paper-suspect"}, {}};
                IdentitySpec fixed{"[r_" + std::string(ax_name(i)) + ", L_" +
                                       ax_name(k) + "] = +eps_ikj r_j",
                                   FieldKind::Scalar, lhs, {}, {}, {}};
                bool nonzero = false;
                for (int j = 0; j < 3; ++j) {
                    double e = eps3(i, k, j);
                    if (e == 0.0) continue;
                    nonzero = true;
                    printed.rhs.push_back({-e, {ax_name(j)}});
                    fixed.rhs.push_back({e, {ax_name(j)}});
                }
                if (nonzero) add(std::move(printed));
                add(std::move(fixed));
            }
            {
                PipelineExpr lhs{{1.0, {comp_op('L', k), comp_op('d', i)}},
                                 {-1.0, {comp_op('d', i), comp_op('L', k)}}};
                IdentitySpec printed{"[d_" + std::string(ax_name(i)) + ", L_" +
                                         ax_name(k) + "] = -eps_ikj d_j (as printed)",
                                     FieldKind::Scalar, lhs, {},
                                     {"paper-suspect"}, {}};
                IdentitySpec fixed{"[d_" + std::string(ax_name(i)) + ", L_" +
                                       ax_name(k) + "] = +eps_ikj d_j",
                                   FieldKind::Scalar, lhs, {}, {}, {}};
                bool nonzero = false;
                for (int j = 0; j < 3; ++j) {
                    double e = eps3(i, k, j);
                    if (e == 0.0) continue;
                    nonzero = true;
                    printed.rhs.push_back({-e, {comp_op('d', j)}});
                    fixed.rhs.push_back({e, {comp_op('d', j)}});
                }
                if (nonzero) add(std::move(printed));
                add(std::move(fixed));
            }
            {
                IdentitySpec s{"[d_" + std::string(ax_name(i)) + ", N_" +
                                   ax_name(k) + "] = d_i d_k - lap delta",
                               FieldKind::Scalar,
                               {{1.0, {comp_op('N', k), comp_op('d', i)}},
                                {-1.0, {comp_op('d', i), comp_op('N', k)}}},
                               {{1.0, {comp_op('d', k), comp_op('d', i)}}},
                               {},
                               {}};
                if (i == k) s.rhs.push_back({-1.0, {"lap"}});
                add(std::move(s));
            }
            {
                // printed sign is flipped: these operators satisfy
                // [r_i, M_k] = r^2 delta - r_i r_k
                PipelineExpr lhs{{1.0, {comp_op('M', k), ax_name(i)}},
                                 {-1.0, {ax_name(i), comp_op('M', k)}}};
                IdentitySpec printed{"[r_" + std::string(ax_name(i)) + ", M_" +
                                         ax_name(k) +
                                         "] = r_i r_k - r^2 delta (as printed)",
                                     FieldKind::Scalar, lhs,
                                     {{1.0, {ax_name(k), ax_name(i)}}},
                                     {"paper-suspect"}, {}};
                IdentitySpec fixed{"[r_" + std::string(ax_name(i)) + ", M_" +
                                       ax_name(k) + "] = r^2 delta - r_i r_k",
                                   FieldKind::Scalar, lhs,
                                   {{-1.0, {ax_name(k), ax_name(i)}}}, {}, {}};
                if (i == k) {
                    printed.rhs.push_back({-1.0, {"r2"}});
                    fixed.rhs.push_back({1.0, {"r2"}});
                }
                add(std::move(printed));
                add(std::move(fixed));
            }
            {
                // printed rhs drops the (r grad) factor; M is a vector
                // operator under L, so [L_i, M_k] = eps_ikj M_j
                PipelineExpr lhs{{1.0, {comp_op('M', k), comp_op('L', i)}},
                                 {-1.0, {comp_op('L', i), comp_op('M', k)}}};
                IdentitySpec printed{"[L_" + std::string(ax_name(i)) + ", M_" +
                                         ax_name(k) +
                                         "] = eps_ikj (r_j - r^2 d_j) (as printed)",
                                     FieldKind::Scalar, lhs, {},
                                     {"paper-suspect"}, {}};
                IdentitySpec fixed{"[L_" + std::string(ax_name(i)) + ", M_" +
                                       ax_name(k) + "] = eps_ikj M_j",
                                   FieldKind::Scalar, lhs, {}, {}, {}};
                bool nonzero = false;
                for (int j = 0; j < 3; ++j) {
                    double e = eps3(i, k, j);
                    if (e == 0.0) continue;
                    nonzero = true;
                    printed.rhs.push_back({e, {ax_name(j)}});
                    printed.rhs.push_back({-e, {comp_op('d', j), "r2"}});
                    fixed.rhs.push_back({e, {comp_op('M', j)}});
                }
                if (nonzero) add(std::move(printed));
                add(std::move(fixed));
            }
        }

    // --- the L/N algebra ------------------------------------------------------------
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            {
                IdentitySpec s{"[L_" + std::string(ax_name(i)) + ", L_" +
                                   ax_name(j) + "] = eps_ijk L_k",
                               FieldKind::Scalar,
                               {{1.0, {comp_op('L', j), comp_op('L', i)}},
                                {-1.0, {comp_op('L', i), comp_op('L', j)}}},
                               {},
                               {},
                               {}};
                for (int k = 0; k < 3; ++k) {
                    double e = eps3(i, j, k);
                    if (e != 0.0) s.rhs.push_back({e, {comp_op('L', k)}});
                }
                add(std::move(s));
            }
            {
                IdentitySpec s{"[L_" + std::string(ax_name(i)) + ", N_" +
                                   ax_name(j) + "] = eps_ijk N_k",
                               FieldKind::Scalar,
                               {{1.0, {comp_op('N', j), comp_op('L', i)}},
                                {-1.0, {comp_op('L', i), comp_op('N', j)}}},
                               {},
                               {},
                               {}};
                for (int k = 0; k < 3; ++k) {
                    double e = eps3(i, j, k);
                    if (e != 0.0) s.rhs.push_back({e, {comp_op('N', k)}});
                }
                add(std::move(s));
            }
            {
                IdentitySpec s{"[N_" + std::string(ax_name(i)) + ", N_" +
                                   ax_name(j) + "] = -eps_ijk L_k lap",
                               FieldKind::Scalar,
                               {{1.0, {comp_op('N', j), comp_op('N', i)}},
                                {-1.0, {comp_op('N', i), comp_op('N', j)}}},
                               {},
                               {},
                               {}};
                for (int k = 0; k < 3; ++k) {
                    double e = eps3(i, j, k);
                    if (e != 0.0) s.rhs.push_back({-e, {"lap", comp_op('L', k)}});
                }
                add(std::move(s));
            }
        }

    // --- operator recompositions --------------------------------------------------------
    add({"N = -r lap + grad(r grad) + grad",
         FieldKind::Scalar,
         {{1.0, {"N"}}},
         {{-1.0, {"lap", "rvec"}}, {1.0, {"rdg", "grad"}}, {1.0, {"grad"}}},
         {},
         {}});
    add({"r x N = -L(1 + r grad)",
         FieldKind::Scalar,
         {{1.0, {"N", "r_cross"}}},
         {{-1.0, {"rdg1", "L"}}},
         {},
         {}});
    add({"lap = grad div - curl curl (vector)",
         FieldKind::Vector,
         {{1.0, {"lap_vec"}}},
         {{1.0, {"div", "grad"}}, {-1.0, {"curl", "curl"}}},
         {},
         {}});

    // --- footnote relation ------------------------------------------------------------------
    // curl(r x grad) r^k Y = -(k+1) grad r^k Y + (k-l)(k+l+1) r r^{k-2} Y,
    // at kappa = l, l+2 (ball) and kappa = -l-1 (annulus)
    for (int l : {1, 2, 3, 4, 5, 6}) {
        const int m = l - 1;
        for (int variant = 0; variant < 3; ++variant) {
            double kappa = variant == 0   ? l
                           : variant == 1 ? -l - 1.0
                                          : l + 2.0;
            const double c2 = (kappa - l) * (kappa + l + 1.0);
            IdentitySpec s{"footnote: curl(r x grad) r^k Y, l=" +
                               std::to_string(l) + " kappa=" +
                               std::to_string(static_cast<int>(kappa)),
                           FieldKind::Scalar,
                           {{-1.0, {"L", "curl"}}},
                           {{-(kappa + 1.0), {"grad"}}},
                           {},
                           FixedProfile{l, m, kappa, kappa < 0.0}};
            if (c2 != 0.0) s.rhs.push_back({c2, {"rpow-2", "rvec"}});
            add(std::move(s));
        }
    }

    return reg;
}

// ---- JSON (de)serialization -----------------------------------------------------

namespace {

nlohmann::json expr_to_json(const PipelineExpr& e) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& t : e)
        out.push_back({{"coeff", {t.coeff.real(), t.coeff.imag()}},
                       {"ops", t.ops}});
    return out;
}

PipelineExpr expr_from_json(const nlohmann::json& j) {
    PipelineExpr e;
    for (const auto& t : j) {
        PipelineTerm term;
        term.coeff = {t.at("coeff")[0].get<double>(),
                      t.at("coeff")[1].get<double>()};
        term.ops = t.at("ops").get<std::vector<std::string>>();
        e.push_back(std::move(term));
    }
    return e;
}

} // namespace

std::string registry_to_json(const std::vector<IdentitySpec>& reg) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& s : reg) {
        nlohmann::json j{{"name", s.name},
                         {"kind", s.input == FieldKind::Scalar ? "scalar" : "vector"},
                         {"lhs", expr_to_json(s.lhs)},
                         {"rhs", expr_to_json(s.rhs)},
                         {"tags", s.tags}};
        if (s.fixed)
            j["fixed"] = {{"l", s.fixed->l},
                          {"m", s.fixed->m},
                          {"kappa", s.fixed->kappa},
                          {"annulus", s.fixed->needs_annulus}};
        out.push_back(std::move(j));
    }
    return out.dump(2);
}

std::vector<IdentitySpec> registry_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw LayoutError(std::string("registry: not valid JSON: ") + e.what());
    }
    std::vector<IdentitySpec> reg;
    for (const auto& j : doc) {
        IdentitySpec s;
        s.name = j.at("name").get<std::string>();
        s.input = j.at("kind").get<std::string>() == "vector"
                      ? FieldKind::Vector
                      : FieldKind::Scalar;
        s.lhs = expr_from_json(j.at("lhs"));
        s.rhs = expr_from_json(j.at("rhs"));
        if (j.contains("tags")) s.tags = j["tags"].get<std::vector<std::string>>();
        if (j.contains("fixed"))
            s.fixed = FixedProfile{j["fixed"].at("l").get<int>(),
                                   j["fixed"].at("m").get<int>(),
                                   j["fixed"].at("kappa").get<double>(),
                                   j["fixed"].at("annulus").get<bool>()};
        reg.push_back(std::move(s));
    }
    return reg;
}

} // namespace vsh
