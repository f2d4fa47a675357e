#include "knot/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include "knot/bifurcation.hpp"
#include "knot/serialize.hpp"
#include "knot/torsion.hpp"
#include "oracle_suite.hpp"

namespace knot::cli {

namespace {

constexpr const char* kVersion = "0.1.0";

struct Tolerances {
    double residual = 1e-8;      // relator residual / divisibility / delta-root checks
    double det_interp = 1e-8;    // determinant interpolation verification
    double trim = 1e-10;         // float Laurent trim threshold
    double simple_root = 1e-6;   // simple-root flag threshold
    double newton = 1e-12;       // continuation Newton tolerance
    double root_polish = 1e-12;  // companion-root Newton polish
};

json tolerances_json(const Tolerances& t) {
    return json{{"residual", t.residual},   {"det_interp", t.det_interp},
                {"trim", t.trim},           {"simple_root", t.simple_root},
                {"newton", t.newton},       {"root_polish", t.root_polish}};
}

Complex parse_complex(const std::string& text) {
    std::istringstream in(text);
    double re = 0.0, im = 0.0;
    char comma = 0;
    if (!(in >> re)) throw error("cannot parse complex number from '" + text + "'");
    if (in >> comma) {
        if (comma != ',' || !(in >> im))
            throw error("complex numbers are written as re or re,im; got '" + text + "'");
    }
    return Complex(re, im);
}

struct InputSpec {
    std::string file;
    std::string braid;
    std::string preset;
};

struct ResolvedInput {
    Presentation presentation;
    json echo;
};

json presentation_echo(const Presentation& p) {
    json relators = json::array();
    for (const Word& r : p.relators) relators.push_back(to_string(r));
    return json{{"generators", p.generator_count},
                {"relators", relators},
                {"abelianization", p.abelianization}};
}

ResolvedInput resolve_input(const InputSpec& spec, bool two_generator) {
    const int sources =
        int(!spec.file.empty()) + int(!spec.braid.empty()) + int(!spec.preset.empty());
    if (sources != 1)
        throw CLI::ValidationError("input", "exactly one of --input, --braid, --preset is required");

    ResolvedInput r;
    if (!spec.preset.empty()) {
        const KnotPreset& preset = find_preset(spec.preset);
        r.presentation = two_generator ? preset_two_generator(preset) : preset_presentation(preset);
        r.echo = json{{"kind", "preset"}, {"name", preset.name}};
    } else if (!spec.braid.empty()) {
        auto [strands, letters] = parse_braid_spec(spec.braid);
        r.presentation = braid_to_presentation(letters, strands);
        r.echo = json{{"kind", "braid"}, {"strands", strands}, {"word", letters}};
    } else {
        std::ifstream in(spec.file);
        if (!in) throw error("cannot read input file '" + spec.file + "'");
        std::stringstream text;
        text << in.rdbuf();
        r.presentation = parse_input(text.str());
        r.echo = json{{"kind", "file"}, {"path", spec.file}};
    }

    bool normalized = false;
    if (!r.presentation.is_meridional()) {
        r.presentation = normalize_presentation(r.presentation);
        normalized = true;
    }
    if (two_generator && r.presentation.generator_count != 2)
        throw error("this command needs a 2-generator presentation; got " +
                    std::to_string(r.presentation.generator_count) + " generators");
    r.echo["normalized"] = normalized;
    r.echo.update(presentation_echo(r.presentation));
    return r;
}

struct RepSpec {
    std::string kind = "reducible"; // abelian | reducible | riley | file
    std::string z = "0";
    int root_index = 0;
    std::string s = "1", u = "0";
    std::string rep_file;
};

Representation resolve_rep(const RepSpec& spec, const Presentation& p, const Tolerances& tol,
                           json& echo) {
    echo = json{{"kind", spec.kind}};
    if (spec.kind == "abelian") {
        const Complex z = parse_complex(spec.z);
        echo["z"] = to_json(z);
        return abelian_rep(z, p);
    }
    if (spec.kind == "reducible") {
        const AlexanderData alex = alexander_polynomial(p, tol.simple_root, tol.root_polish);
        if (spec.root_index < 0 || spec.root_index >= static_cast<int>(alex.roots.size()))
            throw error("--root-index out of range; delta has " +
                        std::to_string(alex.roots.size()) + " roots");
        const Complex z0 = alex.roots[spec.root_index].z0;
        echo["root_index"] = spec.root_index;
        echo["z0"] = to_json(z0);
        return reducible_nonabelian(z0, p, tol.residual, tol.residual);
    }
    if (spec.kind == "riley") {
        const Complex s = parse_complex(spec.s), u = parse_complex(spec.u);
        echo["s"] = to_json(s);
        echo["u"] = to_json(u);
        return riley_family(p, s, u);
    }
    if (spec.kind == "file") {
        std::ifstream in(spec.rep_file);
        if (!in) throw error("cannot read representation file '" + spec.rep_file + "'");
        json j;
        in >> j;
        echo["path"] = spec.rep_file;
        return representation_from_json(j, p);
    }
    throw error("--rep must be abelian, reducible, riley or file");
}

json wada_json(const WadaInvariant& w) {
    return json{{"numerator", to_json(w.numerator)},
                {"denominator", to_json(w.denominator)},
                {"denominator_det", to_json(w.denominator_det)},
                {"denominator_deviation", coefficient_deviation(w.denominator_det, w.denominator)},
                {"trace_x_squared", to_json(w.trace_x_squared)},
                {"deleted_column", w.deleted_generator}};
}

/// Unit-equivalence of the Wada invariant across deleted columns:
/// num_j * den_1 must equal num_1 * den_j up to +-t^m.
json column_equivalence(const WadaInvariant& chosen, const WadaInvariant& reference) {
    const CxLaurent lhs = chosen.numerator * reference.denominator;
    const CxLaurent rhs = reference.numerator * chosen.denominator;
    const UnitFit unit = fit_unit(lhs, rhs);
    const CxLaurent fitted = Complex(double(unit.eps)) * rhs.shifted(unit.power);
    const double dev = coefficient_deviation(lhs, fitted) / std::max(max_abs_coeff(lhs), 1e-300);
    return json{{"eps", unit.eps}, {"power", unit.power}, {"deviation", dev}};
}

struct ReportOptions {
    std::string format = "json";
    bool no_timing = false;
};

void emit_report(std::ostream& out, const std::string& command, const json& input_echo,
                 const Tolerances& tol, const json& result, const json& residual_summary,
                 const ReportOptions& opts, std::chrono::steady_clock::time_point started) {
    json report{{"tool", "knot-torsion"},
                {"version", kVersion},
                {"command", command},
                {"input", input_echo},
                {"tolerances", tolerances_json(tol)},
                {"result", result},
                {"residual_summary", residual_summary}};
    if (!opts.no_timing) {
        const auto elapsed = std::chrono::steady_clock::now() - started;
        report["wall_time_ms"] =
            std::chrono::duration_cast<std::chrono::microseconds>(elapsed).count() / 1000.0;
    }
    out << report.dump(2) << "\n";
}

json root_json(const AlexanderRoot& r) {
    return json{{"value", to_json(r.value)}, {"simple", r.simple}, {"z0", to_json(r.z0)}};
}

} // namespace

std::vector<SelftestCheck> run_selftest(const std::vector<KnotPreset>& presets, bool quick) {
    std::vector<SelftestCheck> checks;
    const int fox_words = quick ? 150 : 1000;
    const int oracle_points = quick ? 3 : 8;

    for (const KnotPreset& preset : presets) {
        const Presentation p = preset_presentation(preset);

        {
            SelftestCheck c{"fox-identity:" + preset.name};
            std::mt19937 rng(811);
            int failures = 0;
            for (int i = 0; i < fox_words; ++i) {
                const Word w = selftest_random_word(rng, p.generator_count, 12);
                GroupRingElement sum;
                for (int j = 1; j <= p.generator_count; ++j) {
                    GroupRingElement dj = fox_derivative(w, j);
                    sum += dj * Word::generator(j) - dj;
                }
                if (sum != GroupRingElement::of(w) - GroupRingElement::one()) ++failures;
            }
            c.residual = failures;
            c.pass = failures == 0;
            if (!c.pass) c.message = std::to_string(failures) + " words violated the identity";
            checks.push_back(c);
        }

        AlexanderData alex;
        {
            SelftestCheck c{"alexander-oracle:" + preset.name};
            try {
                alex = alexander_polynomial(p);
                c.pass = (alex.delta == preset.delta);
                if (!c.pass) c.message = "computed delta differs from the fixture table";
            } catch (const error& e) {
                c.message = e.what();
            }
            checks.push_back(c);
        }

        {
            SelftestCheck c{"symmetry:" + preset.name};
            double worst = 0.0;
            for (const auto& r : alex.roots) worst = std::max(worst, symmetry_check(alex, r.value));
            c.residual = worst;
            c.pass = worst <= 1e-12;
            checks.push_back(c);
        }

        {
            SelftestCheck c{"factorization:" + preset.name};
            const double threshold = p.generator_count == 2 ? 1e-9 : 1e-8;
            try {
                double worst = 0.0;
                for (const auto& r : alex.roots) {
                    if (!r.simple) continue;
                    worst = std::max(worst, factorization_at_reducible(p, r.z0).max_rel_deviation);
                }
                c.residual = worst;
                c.pass = worst <= threshold;
            } catch (const error& e) {
                c.message = e.what();
            }
            checks.push_back(c);
        }

        if (p.generator_count == 2 && !alex.roots.empty()) {
            SelftestCheck c{"cross-oracle:" + preset.name};
            try {
                const Representation rep = reducible_nonabelian(alex.roots[0].z0, p);
                const WadaInvariant w = wada_invariant(p, rep);
                c.residual = cross_oracle_worst_error(p, rep, w, oracle_points);
                c.pass = c.residual <= 1e-8;
            } catch (const error& e) {
                c.message = e.what();
            }
            checks.push_back(c);
        }
    }
    return checks;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    const auto started = std::chrono::steady_clock::now();

    CLI::App app{"Alexander polynomials, Wada twisted Alexander invariants and "
                 "non-acyclic Reidemeister torsion limits of knot group presentations"};
    app.name("knot-torsion");
    app.require_subcommand(1);

    Tolerances tol;
    if (const char* env = std::getenv("KNOT_TORSION_TOL")) {
        try {
            tol.residual = std::stod(env);
        } catch (const std::exception&) {
            err << "invalid KNOT_TORSION_TOL value '" << env << "'\n";
            return 2;
        }
    }

    InputSpec input;
    RepSpec rep_spec;
    ReportOptions report_opts;
    int column = 1;
    int steps = 12;
    double offset = 2.048e-2;
    int root_index = -1;
    bool quick = false;
    std::string save_rep;

    auto add_input_flags = [&](CLI::App* cmd) {
        cmd->add_option("--input", input.file, "presentation or braid file (.pres)");
        cmd->add_option("--braid", input.braid, "inline braid \"n; i1 i2 ...\"");
        cmd->add_option("--preset", input.preset, "fixture knot: trefoil, figure-eight, 5_2");
        cmd->add_option("--tol", tol.residual, "residual/divisibility tolerance");
        cmd->add_option("--format", report_opts.format, "output format")
            ->check(CLI::IsMember({"json", "csv", "text"}));
        cmd->add_flag("--no-timing", report_opts.no_timing,
                      "omit wall time for byte-identical reports");
    };
    auto add_rep_flags = [&](CLI::App* cmd) {
        cmd->add_option("--rep", rep_spec.kind, "abelian, reducible, riley or file");
        cmd->add_option("--z", rep_spec.z, "abelian parameter z (re or re,im)");
        cmd->add_option("--root-index", rep_spec.root_index,
                        "delta root index for --rep reducible");
        cmd->add_option("--s", rep_spec.s, "Riley parameter s");
        cmd->add_option("--u", rep_spec.u, "Riley parameter u");
        cmd->add_option("--rep-file", rep_spec.rep_file, "representation .rep.json");
        cmd->add_option("--save-rep", save_rep, "write the representation to a .rep.json file");
        cmd->add_option("--column", column, "deleted generator column (unit-equivalence checked)");
    };

    CLI::App* alexander_cmd =
        app.add_subcommand("alexander", "normalized Alexander polynomial with root data");
    add_input_flags(alexander_cmd);

    CLI::App* bif_cmd =
        app.add_subcommand("bifurcations", "bifurcation points with reducible representations");
    add_input_flags(bif_cmd);

    CLI::App* wada_cmd = app.add_subcommand("wada", "Wada twisted Alexander invariant");
    add_input_flags(wada_cmd);
    add_rep_flags(wada_cmd);

    CLI::App* lambda_cmd =
        app.add_subcommand("lambda-torsion", "non-acyclic torsion value up to sign");
    add_input_flags(lambda_cmd);
    add_rep_flags(lambda_cmd);

    CLI::App* fact_cmd = app.add_subcommand(
        "factorize", "det A^1 at reducible points against the Alexander triple product");
    add_input_flags(fact_cmd);
    fact_cmd->add_option("--root-index", root_index, "restrict to one delta root (-1 = all)");
    fact_cmd->add_option("--column", column, "deleted generator column");

    CLI::App* limit_cmd =
        app.add_subcommand("verify-limit", "continuation of the torsion into bifurcation points");
    add_input_flags(limit_cmd);
    limit_cmd->add_option("--steps", steps, "geometric continuation steps (>= 3)");
    limit_cmd->add_option("--offset", offset, "starting relative offset along the ray in s");
    limit_cmd->add_option("--root-index", root_index, "restrict to one delta root (-1 = all)");

    CLI::App* selftest_cmd = app.add_subcommand("selftest", "bundled invariant suite");
    selftest_cmd->add_flag("--quick", quick, "reduced sample sizes");
    selftest_cmd->add_option("--format", report_opts.format, "output format")
        ->check(CLI::IsMember({"json", "text"}));
    selftest_cmd->add_flag("--no-timing", report_opts.no_timing,
                           "omit wall time for byte-identical reports");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    }

    if (tol.residual <= 0 || steps < 3) {
        err << "tolerances must be positive and steps >= 3\n";
        return 2;
    }

    try {
        if (selftest_cmd->parsed()) {
            const auto checks = run_selftest(knot_presets(), quick);
            bool all_pass = true;
            json items = json::array();
            for (const auto& c : checks) {
                all_pass = all_pass && c.pass;
                err << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << " (residual " << c.residual
                    << (c.message.empty() ? "" : ", " + c.message) << ")\n";
                items.push_back(json{{"name", c.name},
                                     {"pass", c.pass},
                                     {"residual", c.residual},
                                     {"message", c.message}});
            }
            if (report_opts.format == "text") {
                for (const auto& c : checks)
                    out << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << "\n";
                out << (all_pass ? "selftest: all checks passed\n" : "selftest: FAILURES\n");
            } else {
                emit_report(out, "selftest", json{{"kind", "fixtures"}}, tol,
                            json{{"checks", items}, {"all_pass", all_pass}},
                            json{{"failures", all_pass ? 0 : 1}}, report_opts, started);
            }
            return all_pass ? 0 : 1;
        }

        if (alexander_cmd->parsed()) {
            const ResolvedInput in = resolve_input(input, false);
            const AlexanderData alex =
                alexander_polynomial(in.presentation, tol.simple_root, tol.root_polish);
            json roots = json::array();
            double worst_symmetry = 0.0;
            for (const auto& r : alex.roots) {
                roots.push_back(root_json(r));
                worst_symmetry = std::max(worst_symmetry, symmetry_check(alex, r.value));
            }
            emit_report(out, "alexander", in.echo, tol,
                        json{{"delta", to_json(alex.delta)}, {"roots", roots}},
                        json{{"max_symmetry_residual", worst_symmetry}}, report_opts, started);
            return 0;
        }

        if (bif_cmd->parsed()) {
            const ResolvedInput in = resolve_input(input, false);
            const AlexanderData alex =
                alexander_polynomial(in.presentation, tol.simple_root, tol.root_polish);
            json points = json::array();
            double worst_residual = 0.0, worst_zero = 0.0;
            for (const auto& b : bifurcation_points(in.presentation, alex)) {
                json pj{{"root", root_json(b.root)}};
                if (b.ok()) {
                    pj["representation"] = to_json(*b.rho);
                    pj["rhs"] = to_json(b.rhs);
                    pj["abelian_torsion_zero"] = abelian_zero_check(b, alex);
                    worst_residual = std::max(worst_residual, b.rho->residual);
                    worst_zero = std::max(worst_zero, abelian_zero_check(b, alex));
                } else {
                    pj["failure"] = b.failure;
                }
                points.push_back(pj);
            }
            emit_report(out, "bifurcations", in.echo, tol, json{{"points", points}},
                        json{{"max_rep_residual", worst_residual},
                             {"max_abelian_torsion_zero", worst_zero}},
                        report_opts, started);
            return 0;
        }

        if (wada_cmd->parsed() || lambda_cmd->parsed()) {
            const ResolvedInput in = resolve_input(input, false);
            json rep_echo;
            const Representation rep = resolve_rep(rep_spec, in.presentation, tol, rep_echo);
            if (!save_rep.empty()) {
                std::ofstream repf(save_rep);
                if (!repf) throw error("cannot write '" + save_rep + "'");
                repf << to_json(rep).dump(2) << "\n";
            }
            json input_echo = in.echo;
            input_echo["representation"] = rep_echo;

            if (wada_cmd->parsed()) {
                const WadaInvariant w = wada_invariant(in.presentation, rep, column);
                json result = wada_json(w);
                if (column != 1) {
                    const WadaInvariant reference = wada_invariant(in.presentation, rep, 1);
                    result["column_unit_equivalence"] = column_equivalence(w, reference);
                    if (result["column_unit_equivalence"]["deviation"].get<double>() > tol.residual)
                        throw numeric_error("wada invariants for different deleted columns are "
                                            "not unit-equivalent");
                }
                emit_report(out, "wada", input_echo, tol, result,
                            json{{"rep_residual", rep.residual},
                                 {"denominator_deviation", result["denominator_deviation"]}},
                            report_opts, started);
            } else {
                const Complex value =
                    lambda_torsion_up_to_sign(in.presentation, rep, column, tol.residual);
                emit_report(out, "lambda-torsion", input_echo, tol,
                            json{{"value_up_to_sign", to_json(value)},
                                 {"magnitude", std::abs(value)},
                                 {"deleted_column", column}},
                            json{{"rep_residual", rep.residual}}, report_opts, started);
            }
            return 0;
        }

        if (fact_cmd->parsed()) {
            const ResolvedInput in = resolve_input(input, false);
            const AlexanderData alex =
                alexander_polynomial(in.presentation, tol.simple_root, tol.root_polish);
            json reports = json::array();
            double worst = 0.0;
            for (int i = 0; i < static_cast<int>(alex.roots.size()); ++i) {
                if (root_index >= 0 && i != root_index) continue;
                const auto& r = alex.roots[i];
                json rj{{"root_index", i}, {"root", root_json(r)}};
                try {
                    const FactorizationReport report =
                        factorization_at_reducible(in.presentation, r.z0, column);
                    rj["eps"] = report.unit.eps;
                    rj["power"] = report.unit.power;
                    rj["max_rel_deviation"] = report.max_rel_deviation;
                    rj["det_a1"] = to_json(report.det_a1);
                    worst = std::max(worst, report.max_rel_deviation);
                } catch (const error& e) {
                    rj["failure"] = e.what();
                }
                reports.push_back(rj);
            }
            emit_report(out, "factorize", in.echo, tol, json{{"points", reports}},
                        json{{"max_rel_deviation", worst}}, report_opts, started);
            return 0;
        }

        if (limit_cmd->parsed()) {
            const ResolvedInput in = resolve_input(input, true);
            const AlexanderData alex =
                alexander_polynomial(in.presentation, tol.simple_root, tol.root_polish);
            const auto points = bifurcation_points(in.presentation, alex);
            json experiments = json::array();
            std::ostringstream csv;
            csv << "root_index,offset,distance,torsion_mag\n";
            double worst_error = 0.0, worst_residual = 0.0;
            for (int i = 0; i < static_cast<int>(points.size()); ++i) {
                if (root_index >= 0 && i != root_index) continue;
                if (!points[i].ok() || !points[i].root.simple) continue;
                const LimitExperiment exp = verify_limit(in.presentation, points[i], steps, offset,
                                                         tol.newton, tol.residual);
                json steps_json = json::array();
                for (const auto& s : exp.steps) {
                    steps_json.push_back(json{{"offset", s.offset},
                                              {"s", to_json(s.s)},
                                              {"u", to_json(s.u)},
                                              {"distance", s.distance},
                                              {"rep_residual", s.rep_residual},
                                              {"commutator_margin", s.commutator_margin},
                                              {"torsion_mag", s.torsion_mag}});
                    csv << i << "," << s.offset << "," << s.distance << "," << s.torsion_mag
                        << "\n";
                    worst_residual = std::max(worst_residual, s.rep_residual);
                }
                experiments.push_back(json{{"root_index", i},
                                           {"z0", to_json(exp.z0)},
                                           {"rhs", to_json(exp.rhs)},
                                           {"rhs_mag", exp.rhs_mag},
                                           {"steps", steps_json},
                                           {"extrapolated", exp.extrapolated},
                                           {"rel_error", exp.rel_error},
                                           {"monotone", exp.monotone}});
                worst_error = std::max(worst_error, exp.rel_error);
            }
            if (experiments.empty()) throw error("no simple bifurcation points to continue into");
            if (report_opts.format == "csv") {
                out << csv.str();
            } else {
                emit_report(out, "verify-limit", in.echo, tol,
                            json{{"experiments", experiments},
                                 {"steps", steps},
                                 {"start_offset", offset}},
                            json{{"max_rel_error", worst_error},
                                 {"max_rep_residual", worst_residual}},
                            report_opts, started);
            }
            return 0;
        }
    } catch (const CLI::ValidationError& e) {
        err << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }

    err << "unknown subcommand\n";
    return 2;
}

} // namespace knot::cli
