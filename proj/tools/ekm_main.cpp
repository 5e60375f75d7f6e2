// ekm: decide existence of extremal and CSC metrics in admissible classes
// on projective bundles, from exact rational class data.
//
// Exit codes: 0 success (classify: extremal exists), 10 classify found no
// extremal metric, 2 invalid input, 1 internal error.

#include <chrono>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ekm/ekm.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNoExtremal = 10;
constexpr int kExitBadInput = 2;

ekm::Rational parse_rational_arg(const std::string& text, const std::string& name) {
    auto r = ekm::Rational::parse(text);
    if (!r) throw ekm::ParseError("flag --" + name + ": '" + text + "' is not a rational");
    return *r;
}

struct Output {
    std::string path; // empty = stdout

    void write(const std::string& payload) const {
        if (path.empty()) {
            std::cout << payload;
            return;
        }
        std::ofstream out(path, std::ios::binary);
        if (!out) throw ekm::ParseError("cannot open output file: " + path);
        out << payload;
    }
};

ekm::AdmissibleSetup load_validated(const std::string& path) {
    ekm::AdmissibleSetup setup = ekm::load_setup(path);
    const auto violations = ekm::validate(setup);
    if (!violations.empty()) {
        std::string msg = "setup invalid:";
        for (const auto& v : violations) msg += "\n  " + v;
        throw ekm::ParseError(msg);
    }
    return setup;
}

ekm::json report_header(const std::string& command, const ekm::AdmissibleSetup& setup) {
    ekm::json j;
    j["command"] = command;
    j["version"] = ekm::kVersion;
    j["setup"] = ekm::setup_to_json(setup);
    return j;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"extremal Kaehler metric existence on admissible projective bundles"};
    app.set_version_flag("--version", ekm::kVersion);
    app.require_subcommand(1);

    std::string setup_path, out_path;
    const auto t_start = std::chrono::steady_clock::now();

    // classify
    auto* cmd_classify = app.add_subcommand("classify", "verdict for one setup file");
    cmd_classify->add_option("setup", setup_path, "setup JSON file")->required();
    cmd_classify->add_option("--out", out_path, "write the record to a file");

    // scan
    auto* cmd_scan = app.add_subcommand("scan", "classification scan over 1 or 2 x-axes");
    std::vector<std::string> axis_specs;
    int threads = 1;
    cmd_scan->add_option("setup", setup_path, "setup JSON template")->required();
    cmd_scan->add_option("--axis", axis_specs,
                         "factor:lo:hi:steps (rationals; repeat for a second axis)")
        ->required()
        ->expected(1, 2);
    cmd_scan->add_option("--threads", threads, "worker threads");
    cmd_scan->add_option("--out", out_path, "CSV output file (default stdout)");

    // csc-locus
    auto* cmd_locus = app.add_subcommand("csc-locus", "CSC solutions over a product of two curves");
    std::string s1_text = "2", s2_text = "-2", tol_text = "1/100000";
    int locus_steps = 40;
    bool scalar_flat = false;
    cmd_locus->add_option("--s1", s1_text, "normalized curvature of the first factor")->required();
    cmd_locus->add_option("--s2", s2_text, "normalized curvature of the second factor")->required();
    cmd_locus->add_option("--steps", locus_steps, "x1 grid resolution");
    cmd_locus->add_option("--tol", tol_text, "bisection tolerance for --scalar-flat");
    cmd_locus->add_flag("--scalar-flat", scalar_flat,
                        "locate a scalar-flat class instead (needs s1 <= 0 < s2)");
    cmd_locus->add_option("--out", out_path, "CSV output file");

    // stability
    auto* cmd_stability = app.add_subcommand("stability", "Futaki weight sweep over z");
    int zsteps = 100;
    cmd_stability->add_option("setup", setup_path, "setup JSON file")->required();
    cmd_stability->add_option("--steps", zsteps, "z grid: z = -1 + 2i/steps interior points");
    cmd_stability->add_option("--out", out_path, "CSV output file");

    // kenergy
    auto* cmd_kenergy = app.add_subcommand("kenergy", "discrete K-energy minimization / bump run");
    int nodes = 64, kmax = 0;
    std::string bump_center_text = "0", bump_width_text = "1/10";
    cmd_kenergy->add_option("setup", setup_path, "setup JSON file")->required();
    cmd_kenergy->add_option("--nodes", nodes, "quadrature nodes (>= 16)");
    cmd_kenergy->add_option("--kmax", kmax, "emit energies along a bump family, k = 1..kmax");
    cmd_kenergy->add_option("--bump-center", bump_center_text, "bump center (rational)");
    cmd_kenergy->add_option("--bump-width", bump_width_text, "bump half-width (rational)");
    cmd_kenergy->add_option("--out", out_path, "CSV output file");

    // appendix
    auto* cmd_appendix = app.add_subcommand("appendix", "moment identities and the order-2 scan");
    int rmax = 100, mmax = 10;
    cmd_appendix->add_option("--rmax", rmax, "order-2 scan bound on |q|");
    cmd_appendix->add_option("--mmax", mmax, "identity suite bound on m, n");

    // counterexample
    auto* cmd_counter = app.add_subcommand("counterexample",
                                           "three-curve family with an irrational repeated root");
    std::string x1_text = "9/10", x2_text = "1/2", r_text = "2";
    cmd_counter->add_option("--x1", x1_text, "first class parameter")->required();
    cmd_counter->add_option("--x2", x2_text, "second class parameter")->required();
    cmd_counter->add_option("--r", r_text, "profile parameter (> 8/5)")->required();

    CLI11_PARSE(app, argc, argv);

    const auto elapsed = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    };

    try {
        if (*cmd_classify) {
            const auto setup = load_validated(setup_path);
            const ekm::Verdict v = ekm::classify(setup);
            ekm::json j = report_header("classify", setup);
            j["verdict"] = ekm::verdict_to_json(v);
            Output{out_path}.write(j.dump(2) + "\n");
            std::cerr << "wall_time_s " << elapsed() << "\n";
            return ekm::extremal_exists(v.kind) ? kExitOk : kExitNoExtremal;
        }

        if (*cmd_scan) {
            const auto setup = load_validated(setup_path);
            std::vector<ekm::ScanAxis> axes;
            for (const auto& text : axis_specs) {
                // factor:lo:hi:steps
                std::vector<std::string> parts;
                std::size_t pos = 0;
                while (true) {
                    const auto colon = text.find(':', pos);
                    parts.push_back(text.substr(pos, colon - pos));
                    if (colon == std::string::npos) break;
                    pos = colon + 1;
                }
                if (parts.size() != 4) throw ekm::ParseError("--axis needs factor:lo:hi:steps");
                ekm::ScanAxis ax;
                ax.factor_index = static_cast<std::size_t>(std::stoul(parts[0]));
                ax.lo = parse_rational_arg(parts[1], "axis");
                ax.hi = parse_rational_arg(parts[2], "axis");
                ax.steps = std::stoi(parts[3]);
                axes.push_back(ax);
            }
            const auto rows = ekm::classification_scan(setup, axes, threads);
            Output{out_path}.write(ekm::scan_csv(rows, axes.size()));
            std::cerr << "wall_time_s " << elapsed() << "\n";
            return kExitOk;
        }

        if (*cmd_locus) {
            const auto s1 = parse_rational_arg(s1_text, "s1");
            const auto s2 = parse_rational_arg(s2_text, "s2");
            if (scalar_flat) {
                const auto p = ekm::zero_scalar_intersection(s1, s2, parse_rational_arg(tol_text, "tol"));
                std::string csv = "x1,x2,r1,r2\n";
                csv += p.x1.to_string() + "," + p.x2.to_string() + "," + p.r1.to_string() + "," +
                       p.r2.to_string() + "\n";
                Output{out_path}.write(csv);
                std::cerr << "wall_time_s " << elapsed() << "\n";
                return kExitOk;
            }
            const auto points = ekm::csc_locus_scan(s1, s2, locus_steps);
            std::string csv = "x1,x2,s,exact,r1,r2,confirmed_csc\n";
            for (const auto& p : points)
                csv += p.x1.to_string() + "," + p.x2.to_string() + "," + p.s.to_string() + "," +
                       (p.exact ? "1" : "0") + "," + p.r1.to_string() + "," + p.r2.to_string() +
                       "," + (p.confirmed_csc ? "1" : "0") + "\n";
            Output{out_path}.write(csv);
            std::cerr << "wall_time_s " << elapsed() << "\n";
            return kExitOk;
        }

        if (*cmd_stability) {
            const auto setup = load_validated(setup_path);
            if (zsteps < 2) throw ekm::ParseError("--steps must be at least 2");
            const ekm::StabilityPolynomials polys = ekm::stability_polynomials(setup);
            const ekm::Rational a0 = polys.solution.moments.alpha0;
            std::string csv = "z,futaki_alpha,modified\n";
            for (int i = 1; i < zsteps; ++i) {
                const ekm::Rational z = ekm::Rational(-1) + ekm::Rational(2L * i, zsteps);
                const ekm::Rational fa = polys.futaki_alpha(z) / (a0 * a0);
                const ekm::Rational mod = polys.modified_scaled(z) / (a0 * a0);
                csv += z.to_string() + "," + fa.to_string() + "," + mod.to_string() + "\n";
            }
            Output{out_path}.write(csv);
            std::cerr << "wall_time_s " << elapsed() << "\n";
            return kExitOk;
        }

        if (*cmd_kenergy) {
            const auto setup = load_validated(setup_path);
            std::string csv;
            if (kmax > 0) {
                const auto run = ekm::destabilize(setup, parse_rational_arg(bump_center_text, "bump-center"),
                                                  parse_rational_arg(bump_width_text, "bump-width"), kmax);
                csv += "# slope_exact," + run.slope_exact.to_string() + "\n";
                csv += "k,energy\n";
                for (int k = 1; k <= kmax; ++k)
                    csv += std::to_string(k) + "," + std::to_string(run.energies[static_cast<std::size_t>(k - 1)]) + "\n";
            } else {
                const auto grid = ekm::canonical_grid(nodes);
                const auto res = ekm::minimize(setup, grid);
                const auto at_min = ekm::energy(setup, res.minimizer);
                double gnorm = 0.0;
                for (double g : at_min.gradient) gnorm = std::max(gnorm, std::abs(g));
                csv += "# gradient_sup_norm," + std::to_string(gnorm) + "\n";
                csv += "# descent_discrepancy," + std::to_string(res.discrepancy) + "\n";
                csv += "z,theta\n";
                for (std::size_t i = 0; i < res.minimizer.nodes.size(); ++i)
                    csv += std::to_string(res.minimizer.nodes[i]) + "," +
                           std::to_string(1.0 / res.minimizer.U[i]) + "\n";
            }
            Output{out_path}.write(csv);
            std::cerr << "wall_time_s " << elapsed() << "\n";
            return kExitOk;
        }

        if (*cmd_appendix) {
            const auto identities = ekm::identity_suite(mmax);
            const auto scan = ekm::order2_scan(rmax);
            ekm::json j;
            j["command"] = "appendix";
            j["version"] = ekm::kVersion;
            j["identity_suite"] = {{"max_mn", identities.max_mn},
                                   {"k0", identities.k0},
                                   {"k1", identities.k1},
                                   {"k2", identities.k2},
                                   {"ratio", identities.ratio},
                                   {"all_pass", identities.all()}};
            j["order2_scan"] = {{"range", scan.range},
                                {"pairs_scanned", scan.pairs_scanned},
                                {"eta_candidates", scan.eta_candidates},
                                {"admissible_hits", scan.hits.size()},
                                {"region_infeasible", scan.region_infeasible}};
            Output{out_path}.write(j.dump(2) + "\n");
            std::cerr << "wall_time_s " << elapsed() << "\n";
            return identities.all() && scan.hits.empty() ? kExitOk : 1;
        }

        if (*cmd_counter) {
            const auto fam = ekm::counterexample_setup(parse_rational_arg(x1_text, "x1"),
                                                       parse_rational_arg(x2_text, "x2"),
                                                       parse_rational_arg(r_text, "r"));
            ekm::json j = report_header("counterexample", fam.setup);
            j["x3"] = ekm::rational_to_json(fam.x3);
            j["mu"] = ekm::rational_to_json(fam.mu);
            j["F"] = ekm::poly_to_json(fam.F);
            j["certificate"] = ekm::witness_to_json(fam.certificate);
            const ekm::SlopeVerdict sv = ekm::relative_slope_verdict(fam.setup);
            j["verdict"] = ekm::to_string(sv.classification.kind);
            j["slope"] = ekm::to_string(sv.kind);
            j["double_root_irrational"] = sv.double_root_irrational;
            Output{out_path}.write(j.dump(2) + "\n");
            std::cerr << "wall_time_s " << elapsed() << "\n";
            return kExitOk;
        }
    } catch (const ekm::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const ekm::OutOfRange& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const ekm::NoIntersectionFound& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const ekm::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitBadInput;
}
