#include "fpcavity/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>

#include "fpcavity/coulomb.hpp"
#include "fpcavity/dicke.hpp"
#include "fpcavity/radiation.hpp"
#include "fpcavity/specfun.hpp"
#include "fpcavity/verify.hpp"

namespace fpcav::cli {

namespace {

void add_output_options(CLI::App* app, RunConfig& cfg, std::string& format) {
    app->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    app->add_option("--output", cfg.output_path, "Write output to this file instead of stdout");
}

void add_tolerance_options(CLI::App* app, RunConfig& cfg) {
    app->add_option("--tol-abs", cfg.tol.abs_tol, "Absolute tolerance")->capture_default_str();
    app->add_option("--tol-rel", cfg.tol.rel_tol, "Relative tolerance")->capture_default_str();
}

void write_output(const RunConfig& cfg, const std::string& text, std::ostream& out) {
    if (!cfg.output_path) {
        out << text;
        return;
    }
    std::ofstream f(*cfg.output_path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::ios_base::failure("cannot open output file " + *cfg.output_path);
    f << text;
    f.close();
    if (!f) throw std::ios_base::failure("failed writing output file " + *cfg.output_path);
}

std::string matrix_table(const Mat3& m, const RunConfig& cfg) {
    Table t;
    t.columns = {"u", "v", "phi", "xx", "xy", "xz", "yx", "yy", "yz", "zx", "zy", "zz"};
    std::vector<double> row{cfg.u, cfg.v, cfg.phi};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) row.push_back(m(i, j));
    t.rows.push_back(std::move(row));
    return emit_table(t, cfg.format);
}

int run_xi(const RunConfig& cfg, std::ostream& out) {
    Table t{{"u", "v", "xi"}, {{cfg.u, cfg.v, xi(cfg.u, cfg.v, cfg.tol)}}};
    write_output(cfg, emit_table(t, cfg.format), out);
    return 0;
}

int run_kernel(const RunConfig& cfg, std::ostream& out) {
    const Sign sign = cfg.sign == "plus" ? Sign::plus : Sign::minus;
    const Separation sep{cfg.u, cfg.v, cfg.phi};
    Mat3 m;
    if (cfg.family == "E") {
        if (cfg.spectral) throw DomainError("kernel: --spectral applies to family D only");
        m = kernel_e(sign, sep, cfg.tol).m;
    } else if (cfg.spectral) {
        if (cfg.u == 0.0 && cfg.v == 0.0) throw DomainError("kernel: D is ill-defined at the origin");
        m = kernel_d_spectral(sep, cfg.eps, cfg.tol).m;
        if (sign == Sign::minus) m = m * reflection_matrix();
    } else {
        m = kernel_d(sign, sep, cfg.tol).m;
    }
    write_output(cfg, matrix_table(m, cfg), out);
    return 0;
}

int run_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    static const std::map<std::string, CheckGroup> groups{
        {"bessel", CheckGroup::bessel}, {"cancellation", CheckGroup::cancellation},
        {"modesum", CheckGroup::modesum}, {"lipschitz", CheckGroup::lipschitz},
        {"green", CheckGroup::green},   {"aniso", CheckGroup::aniso}};
    VerifyConfig vc;
    vc.seed = cfg.seed;
    vc.tol = cfg.tol;
    vc.aniso_shape = cfg.cutoff_shape == "sharp" ? CutoffShape::sharp : CutoffShape::gaussian;
    if (cfg.verify_target != "all") vc.groups = {groups.at(cfg.verify_target)};
    SuiteReport suite = run_all(vc);
    suite.suite = cfg.verify_target;
    for (const auto& w : suite.warnings) err << "warning: " << w << "\n";
    write_output(cfg, emit_report(suite, cfg.format), out);
    return suite.all_pass ? 0 : 1;
}

int run_dicke(const RunConfig& cfg, std::ostream& out) {
    DickeParams p{cfg.omega_a, cfg.omega_c, cfg.y, cfg.n_atoms, cfg.cutoff};
    p.validate();
    Table t;
    if (cfg.dicke_target == "ground") {
        const GroundStateResult g = ground_state(p);
        t.columns = {"y", "energy", "photon_number", "sz_expect", "parity", "gap", "cutoff_converged"};
        t.rows.push_back({p.y, g.energy, g.photon_number, g.sz_expect, g.parity, g.gap, g.cutoff_converged ? 1.0 : 0.0});
    } else if (cfg.dicke_target == "meanfield") {
        const MeanFieldResult m = mean_field(p);
        t.columns = {"y", "y_c", "order_parameter_sq_per_atom", "energy_per_atom", "theta"};
        t.rows.push_back({p.y, m.y_c, m.order_parameter_sq_per_atom, m.energy_per_atom, m.theta});
    } else {
        if (cfg.steps < 1) throw DomainError("dicke scan: --steps must be >= 1");
        if (cfg.y_min < 0.0 || cfg.y_max < cfg.y_min) throw DomainError("dicke scan: need 0 <= y-min <= y-max");
        std::vector<double> grid;
        for (int i = 0; i < cfg.steps; ++i)
            grid.push_back(cfg.steps == 1 ? cfg.y_min : cfg.y_min + (cfg.y_max - cfg.y_min) * i / (cfg.steps - 1));
        t.columns = {"y", "energy", "photon_number", "gap", "parity_of_ground", "cutoff_converged"};
        for (const auto& r : spectrum_scan(p, grid))
            t.rows.push_back({r.y, r.energy, r.photon_number, r.gap, r.parity, r.cutoff_converged ? 1.0 : 0.0});
    }
    write_output(cfg, emit_table(t, cfg.format), out);
    return 0;
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        cfg.tol.validate();
        switch (cfg.command) {
            case Command::xi: return run_xi(cfg, out);
            case Command::kernel: return run_kernel(cfg, out);
            case Command::verify: return run_verify(cfg, out, err);
            case Command::dicke: return run_dicke(cfg, out);
        }
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << "\n";
        return 2;
    } catch (const std::ios_base::failure& e) {
        err << "i/o error: " << e.what() << "\n";
        return 2;
    } catch (const ConvergenceError& e) {
        err << "convergence failure: " << e.what() << " (best estimate " << e.best_estimate() << ", error "
            << e.achieved_error() << ")\n";
        return 1;
    }
    return 2;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    std::string format = "json";

    CLI::App app{"Fabry-Perot cavity dipole kernels, identity checks and Dicke model"};
    app.require_subcommand(1);

    auto* xi_cmd = app.add_subcommand("xi", "Axial image lattice sum xi(u, v)");
    xi_cmd->add_option("--u", cfg.u, "Axial separation / L")->capture_default_str();
    xi_cmd->add_option("--v", cfg.v, "Transverse separation / L")->capture_default_str();
    add_tolerance_options(xi_cmd, cfg);
    add_output_options(xi_cmd, cfg, format);

    auto* kernel_cmd = app.add_subcommand("kernel", "Dipole kernels E (Coulomb images) and D (quadratic)");
    kernel_cmd->add_option("--family", cfg.family, "Kernel family")
        ->check(CLI::IsMember({"E", "D"}))
        ->capture_default_str();
    kernel_cmd->add_option("--sign", cfg.sign, "Direct (plus) or mirrored (minus) kernel")
        ->check(CLI::IsMember({"plus", "minus"}))
        ->capture_default_str();
    kernel_cmd->add_option("--u", cfg.u, "Axial separation / L")->capture_default_str();
    kernel_cmd->add_option("--v", cfg.v, "Transverse separation / L")->capture_default_str();
    kernel_cmd->add_option("--phi", cfg.phi, "Azimuth of the transverse separation")->capture_default_str();
    kernel_cmd->add_flag("--spectral", cfg.spectral, "Use the regulated Bessel-spectral form (family D)");
    kernel_cmd->add_option("--eps", cfg.eps, "Spectral regulator")->capture_default_str();
    add_tolerance_options(kernel_cmd, cfg);
    add_output_options(kernel_cmd, cfg, format);

    auto* verify_cmd = app.add_subcommand("verify", "Run the identity suite");
    verify_cmd->add_option("target", cfg.verify_target, "Which checks to run")
        ->check(CLI::IsMember({"all", "bessel", "cancellation", "modesum", "lipschitz", "green", "aniso"}))
        ->capture_default_str();
    verify_cmd->add_option("--seed", cfg.seed, "Seed for randomized separations")->capture_default_str();
    verify_cmd->add_option("--cutoff-shape", cfg.cutoff_shape, "Cutoff used for the anisotropy check")
        ->check(CLI::IsMember({"gaussian", "sharp"}))
        ->capture_default_str();
    cfg.tol = Tolerance{1e-12, 1e-8};
    add_tolerance_options(verify_cmd, cfg);
    add_output_options(verify_cmd, cfg, format);

    auto* dicke_cmd = app.add_subcommand("dicke", "Dicke model: ground state, coupling scan, mean field");
    dicke_cmd->add_option("target", cfg.dicke_target, "What to compute")
        ->check(CLI::IsMember({"ground", "scan", "meanfield"}))
        ->capture_default_str();
    dicke_cmd->add_option("--omega-a", cfg.omega_a, "Atomic splitting")->capture_default_str();
    dicke_cmd->add_option("--omega-c", cfg.omega_c, "Mode frequency")->capture_default_str();
    dicke_cmd->add_option("--y", cfg.y, "Coupling (ground, meanfield)")->capture_default_str();
    dicke_cmd->add_option("--y-min", cfg.y_min, "Scan start")->capture_default_str();
    dicke_cmd->add_option("--y-max", cfg.y_max, "Scan end")->capture_default_str();
    dicke_cmd->add_option("--steps", cfg.steps, "Scan points")->capture_default_str();
    dicke_cmd->add_option("--n-atoms", cfg.n_atoms, "Number of two-level atoms")->capture_default_str();
    dicke_cmd->add_option("--cutoff", cfg.cutoff, "Fock-space cutoff")->capture_default_str();
    add_output_options(dicke_cmd, cfg, format);

    // xi/kernel keep the library default tolerance unless overridden.
    const Tolerance library_default{};
    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return 0;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e, out, err);
        return 0;
    } catch (const CLI::ParseError& e) {
        app.exit(e, err, err);
        err << app.help();
        return 2;
    }

    if (xi_cmd->parsed()) cfg.command = Command::xi;
    else if (kernel_cmd->parsed()) cfg.command = Command::kernel;
    else if (verify_cmd->parsed()) cfg.command = Command::verify;
    else cfg.command = Command::dicke;

    if (cfg.command == Command::xi || cfg.command == Command::kernel) {
        auto* cmd = cfg.command == Command::xi ? xi_cmd : kernel_cmd;
        if (cmd->count("--tol-abs") == 0) cfg.tol.abs_tol = library_default.abs_tol;
        if (cmd->count("--tol-rel") == 0) cfg.tol.rel_tol = library_default.rel_tol;
    }
    cfg.format = format == "csv" ? OutputFormat::csv : OutputFormat::json;
    return run(cfg, out, err);
}

}  // namespace fpcav::cli
