#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "mtc/generators.hpp"
#include "mtc/io.hpp"
#include "mtc/report.hpp"

namespace {

mtc::Tolerances tolerances_from_env() {
    mtc::Tolerances tol;
    if (const char* eps = std::getenv("MTC_COSET_EPS")) {
        try {
            tol.num = std::stod(eps);
        } catch (const std::exception&) {
            throw mtc::StructuralError("MTC_COSET_EPS is not a number");
        }
    }
    return tol;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw mtc::StructuralError("cannot write " + path);
    out << text;
}

int emit_report(const mtc::Report& report, const std::string& markdown_path, const std::string& json_path) {
    const std::string md = mtc::report_to_markdown(report);
    std::cout << md;
    if (!markdown_path.empty()) write_text(markdown_path, md);
    if (!json_path.empty()) write_text(json_path, mtc::report_to_json(report).dump(2) + "\n");
    return report.pass() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"modular tensor category coset toolkit"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "write reference modular data to a file");
    gen->require_subcommand(1);
    int level = 1, mp = 3, mq = 4, pn = 2, pt = 1;
    std::string out_path, left_path, right_path, product_name;
    auto* gsu2 = gen->add_subcommand("su2", "affine su(2) level k");
    gsu2->add_option("--level", level, "level k >= 0")->required();
    gsu2->add_option("-o,--out", out_path, "output file")->required();
    auto* gmin = gen->add_subcommand("minimal", "Virasoro minimal model M(p,q)");
    gmin->add_option("--p", mp)->required();
    gmin->add_option("--q", mq)->required();
    gmin->add_option("-o,--out", out_path)->required();
    auto* gpt = gen->add_subcommand("pointed", "pointed cyclic data on Z_n");
    gpt->add_option("--n", pn)->required();
    gpt->add_option("--t", pt)->required();
    gpt->add_option("-o,--out", out_path)->required();
    auto* gprod = gen->add_subcommand("product", "Deligne product of two files");
    gprod->add_option("--left", left_path)->required();
    gprod->add_option("--right", right_path)->required();
    gprod->add_option("--name", product_name, "override the generated name");
    gprod->add_option("-o,--out", out_path)->required();

    // validate
    auto* val = app.add_subcommand("validate", "check all modular-data invariants of a file");
    std::string val_path, val_json;
    val->add_option("path", val_path, "modular data file")->required();
    val->add_option("--json", val_json, "also write the report as JSON");

    // product (top level)
    auto* prod = app.add_subcommand("product", "Deligne product of two modular-data files");
    std::string pl, pr, pout, pname;
    prod->add_option("left", pl)->required();
    prod->add_option("right", pr)->required();
    prod->add_option("-o,--out", pout)->required();
    prod->add_option("--name", pname);

    // coset analyze / solve-branching
    auto* coset = app.add_subcommand("coset", "coset system operations");
    coset->require_subcommand(1);
    auto* analyze = coset->add_subcommand("analyze", "full analysis of a coset system file");
    std::string sys_path, md_out, json_out;
    analyze->add_option("system", sys_path, "coset system file")->required();
    analyze->add_option("--markdown", md_out, "write the markdown report here");
    analyze->add_option("--json", json_out, "write the JSON report here");
    auto* solve = coset->add_subcommand("solve-branching", "search branching matrices for a triple");
    std::string s1, s2, sc, sol_out;
    long long bound = 2;
    solve->add_option("c1", s1)->required();
    solve->add_option("c2", s2)->required();
    solve->add_option("ambient", sc)->required();
    solve->add_option("--bound", bound, "entry bound (default 2)");
    solve->add_option("-o,--out", sol_out, "write all solutions here");

    // spectral verify
    auto* spectral = app.add_subcommand("spectral", "module-category spectral checks");
    spectral->require_subcommand(1);
    auto* sverify = spectral->add_subcommand("verify", "joint diagonalization and identities");
    std::string sv_path, sv_json;
    sverify->add_option("system", sv_path, "coset system file")->required();
    sverify->add_option("--json", sv_json, "write the JSON report here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        const mtc::Tolerances tol = tolerances_from_env();

        if (gen->parsed()) {
            mtc::ModularData md;
            if (gsu2->parsed()) md = mtc::su2_level(level);
            if (gmin->parsed()) md = mtc::minimal_model(mp, mq);
            if (gpt->parsed()) md = mtc::pointed_cyclic(pn, pt);
            if (gprod->parsed()) {
                md = mtc::deligne_product(mtc::load_modular_data(left_path),
                                          mtc::load_modular_data(right_path));
                if (!product_name.empty()) md.name = product_name;
            }
            const mtc::ValidationReport rep = mtc::validate(md, tol);
            mtc::save_modular_data(md, out_path);
            std::cout << "wrote " << md.name << " (rank " << md.rank() << ") to " << out_path << "\n";
            if (!rep.pass) {
                std::cerr << "warning: generated data fails validation (worst residual " << rep.worst()
                          << ")\n";
                return 1;
            }
            return 0;
        }

        if (val->parsed()) {
            const mtc::ModularData md = mtc::load_modular_data(val_path);
            const mtc::Report report = mtc::validation_report(md, tol);
            return emit_report(report, "", val_json);
        }

        if (prod->parsed()) {
            mtc::ModularData md =
                mtc::deligne_product(mtc::load_modular_data(pl), mtc::load_modular_data(pr));
            if (!pname.empty()) md.name = pname;
            mtc::save_modular_data(md, pout);
            std::cout << "wrote " << md.name << " (rank " << md.rank() << ") to " << pout << "\n";
            return 0;
        }

        if (analyze->parsed()) {
            const mtc::CosetSystem cs = mtc::load_coset_system(sys_path, tol);
            const mtc::Report report = mtc::analyze_coset(cs, tol);
            return emit_report(report, md_out, json_out);
        }

        if (solve->parsed()) {
            const mtc::ModularData a = mtc::load_modular_data(s1);
            const mtc::ModularData b = mtc::load_modular_data(s2);
            const mtc::ModularData c = mtc::load_modular_data(sc);
            const std::vector<mtc::CosetSystem> sols = mtc::solve_branching(a, b, c, bound, tol);
            std::cout << "solutions: " << sols.size() << "\n";
            if (!sol_out.empty()) mtc::save_solutions(sols, sol_out);
            return 0;
        }

        if (sverify->parsed()) {
            const mtc::CosetSystem cs = mtc::load_coset_system(sv_path, tol);
            const mtc::Report report = mtc::spectral_verification(cs, tol);
            return emit_report(report, "", sv_json);
        }
    } catch (const mtc::StructuralError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const mtc::InconsistencyError& e) {
        std::cerr << "violation: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
