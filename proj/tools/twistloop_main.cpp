#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "twistloop/errors.hpp"
#include "twistloop/invariants.hpp"
#include "twistloop/json_io.hpp"
#include "twistloop/oracle.hpp"
#include "twistloop/presentation.hpp"

namespace {

using namespace twistloop;
using ordered_json = nlohmann::ordered_json;

constexpr const char* kVersion = "0.1.0";

struct CommonOpts {
    std::string family = "tbar";
    int i = 1;
    int grid = 64;
    double eps = kDefaultEps;
    std::string file; // sampled-grid input for --family import
    unsigned seed = 0;
};

LoopFamily build_family(const CommonOpts& o) {
    if (o.family == "t") return family_T(o.i, o.eps);
    if (o.family == "tbar") return family_Tbar(o.i, o.eps);
    if (o.family == "spin") return spin_loop(o.i, o.eps);
    if (o.family == "import") {
        std::ifstream in(o.file);
        if (!in) throw FormatError("cannot open input file: " + o.file);
        return import_sampled(in);
    }
    throw CLI::ValidationError("--family must be one of t, tbar, spin, import");
}

SolverConfig make_config(const CommonOpts& o) {
    SolverConfig cfg;
    cfg.nt = cfg.nz = o.grid;
    cfg.seed = o.seed;
    return cfg;
}

void write_file(const std::string& path, const std::string& body,
                std::vector<std::string>& outputs) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write output file: " + path);
    out << body;
    outputs.push_back(path);
}

void emit_manifest(const std::string& command, const ordered_json& config,
                   const std::vector<std::string>& outputs,
                   std::chrono::steady_clock::time_point t0) {
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
    ordered_json m;
    m["command"] = command;
    m["config"] = config;
    m["version"] = kVersion;
    m["wall_ms"] = ms;
    m["outputs"] = outputs;
    std::cout << m.dump(2) << "\n";
}

ordered_json config_echo(const CommonOpts& o) {
    ordered_json c;
    c["family"] = o.family;
    c["i"] = o.i;
    c["grid"] = o.grid;
    c["eps"] = o.eps;
    c["seed"] = o.seed;
    if (!o.file.empty()) c["file"] = o.file;
    return c;
}

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--family", o.family, "family: t, tbar, spin, import");
    cmd->add_option("--i", o.i, "family parameter");
    cmd->add_option("--grid", o.grid, "coarse scan resolution per axis");
    cmd->add_option("--eps", o.eps, "ball radius parameter");
    cmd->add_option("--file", o.file, "sampled grid file (family=import)");
    cmd->add_option("--seed", o.seed, "seed recorded in the manifest");
}

std::vector<Int> parse_int_list(const std::string& s) {
    std::vector<Int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) throw CLI::ValidationError("empty entry in --n list");
        out.emplace_back(Int(tok));
    }
    return out;
}

std::vector<int> parse_sign_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok == "+" || tok == "+1" || tok == "1")
            out.push_back(1);
        else if (tok == "-" || tok == "-1")
            out.push_back(-1);
        else
            throw CLI::ValidationError("--signs entries must be + or -");
    }
    return out;
}

std::string csv_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

int run(int argc, char** argv) {
    const auto t0 = std::chrono::steady_clock::now();
    CLI::App app{"Loop-family invariants for circles in S1 x S3"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    // invariants compute
    auto* inv = app.add_subcommand("invariants", "invariant computations");
    inv->require_subcommand(1);
    auto* inv_compute =
        inv->add_subcommand("compute", "compute w1 and w2 with certification");
    CommonOpts io;
    std::string inv_json;
    add_common(inv_compute, io);
    inv_compute->add_option("--json", inv_json, "write report JSON here");

    // families export
    auto* fam = app.add_subcommand("families", "family plumbing");
    fam->require_subcommand(1);
    auto* fam_export = fam->add_subcommand("export", "write a sampled grid");
    CommonOpts fo;
    int exp_nt = 64, exp_nz = 1024;
    std::string exp_out;
    add_common(fam_export, fo);
    fam_export->add_option("--nt", exp_nt, "t samples");
    fam_export->add_option("--nz", exp_nz, "z samples");
    fam_export->add_option("--out", exp_out, "output path")->required();

    // collisions dump
    auto* col = app.add_subcommand("collisions", "collision data");
    col->require_subcommand(1);
    auto* col_dump = col->add_subcommand("dump", "CSV of Sigma_2 classes");
    CommonOpts co;
    std::string col_csv;
    add_common(col_dump, co);
    col_dump->add_option("--csv", col_csv, "output CSV path");

    // slice-profile
    auto* prof = app.add_subcommand("slice-profile",
                                    "CSV of slice crossings per sampled t");
    CommonOpts po;
    int prof_samples = 64;
    double prof_slice = 0.1;
    std::string prof_csv;
    add_common(prof, po);
    prof->add_option("--samples", prof_samples, "number of t samples");
    prof->add_option("--slice", prof_slice, "slice angle");
    prof->add_option("--csv", prof_csv, "output CSV path");

    // presentation m0
    auto* pres = app.add_subcommand("presentation", "group presentations");
    pres->require_subcommand(1);
    auto* pres_m0 = pres->add_subcommand("m0", "twist-group presentation");
    std::string pres_n = "1", pres_signs = "+", pres_json;
    pres_m0->add_option("--n", pres_n, "comma list of n_i");
    pres_m0->add_option("--signs", pres_signs, "comma list of +/-");
    pres_m0->add_option("--json", pres_json, "output JSON path");

    // theorem
    auto* thm =
        app.add_subcommand("theorem", "end-to-end certification for i=1..N");
    int thm_N = 2;
    int thm_grid = 64;
    std::string thm_json;
    unsigned thm_seed = 0;
    thm->add_option("--N", thm_N, "number of tbar families")
        ->check(CLI::Range(1, 4));
    thm->add_option("--grid", thm_grid, "coarse scan resolution");
    thm->add_option("--json", thm_json, "output JSON path");
    thm->add_option("--seed", thm_seed, "seed recorded in the manifest");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1; // usage errors exit 1; --help/--version 0
    }
    std::vector<std::string> outputs;

    if (inv_compute->parsed()) {
        const LoopFamily f = build_family(io);
        const InvariantReport rep = compute_invariants(f, make_config(io));
        const std::string body = report_to_json(rep, f.eps()) + "\n";
        if (!inv_json.empty())
            write_file(inv_json, body, outputs);
        else
            std::cout << body;
        emit_manifest("invariants compute", config_echo(io), outputs, t0);
        return 0;
    }

    if (fam_export->parsed()) {
        const LoopFamily f = build_family(fo);
        std::ostringstream body;
        export_sampled(f, body, exp_nt, exp_nz);
        write_file(exp_out, body.str(), outputs);
        ordered_json c = config_echo(fo);
        c["nt"] = exp_nt;
        c["nz"] = exp_nz;
        emit_manifest("families export", c, outputs, t0);
        return 0;
    }

    if (col_dump->parsed()) {
        const LoopFamily f = build_family(co);
        const InvariantReport rep = compute_invariants(f, make_config(co));
        std::ostringstream body;
        body << "t,z1,z2,sign,k,residual,det_mag\n";
        for (const auto& ic : rep.classes)
            body << csv_num(ic.point.t) << ',' << csv_num(ic.point.z1) << ','
                 << csv_num(ic.point.z2) << ',' << ic.point.sign << ','
                 << ic.trace.k << ',' << csv_num(ic.point.residual) << ','
                 << csv_num(ic.point.det_mag) << '\n';
        if (!col_csv.empty())
            write_file(col_csv, body.str(), outputs);
        else
            std::cout << body.str();
        emit_manifest("collisions dump", config_echo(co), outputs, t0);
        return 0;
    }

    if (prof->parsed()) {
        const LoopFamily f = build_family(po);
        std::ostringstream body;
        body << "t,crossing_angle,sign\n";
        for (int s = 0; s < prof_samples; ++s) {
            const double t = (s + 0.5) / double(prof_samples);
            for (const auto& cr : slice_profile(f, t, prof_slice))
                body << csv_num(t) << ',' << csv_num(cr.position * kTwoPi)
                     << ',' << cr.sign << '\n';
        }
        if (!prof_csv.empty())
            write_file(prof_csv, body.str(), outputs);
        else
            std::cout << body.str();
        ordered_json c = config_echo(po);
        c["samples"] = prof_samples;
        c["slice"] = prof_slice;
        emit_manifest("slice-profile", c, outputs, t0);
        return 0;
    }

    if (pres_m0->parsed()) {
        const auto n = parse_int_list(pres_n);
        const auto signs = parse_sign_list(pres_signs);
        const AbelianPresentation p = build_M0_presentation(n, signs);
        const SNFResult s = smith_normal_form(p.relations);
        const std::string verdict = conclude_theorem(p);
        ordered_json j = ordered_json::parse(snf_to_json(s));
        ordered_json out;
        out["generators"] = p.generators;
        out["invariant_factors"] = j["invariant_factors"];
        out["free_rank"] = j["free_rank"];
        out["verdict"] = verdict;
        const std::string body = out.dump(2) + "\n";
        if (!pres_json.empty())
            write_file(pres_json, body, outputs);
        else
            std::cout << body;
        ordered_json c;
        c["n"] = pres_n;
        c["signs"] = pres_signs;
        emit_manifest("presentation m0", c, outputs, t0);
        return 0;
    }

    if (thm->parsed()) {
        SolverConfig cfg;
        cfg.nt = cfg.nz = thm_grid;
        cfg.seed = thm_seed;
        std::vector<Int> n;
        std::vector<int> signs;
        ordered_json per_i = ordered_json::array();
        for (int i = 1; i <= thm_N; ++i) {
            const InvariantReport rep =
                compute_invariants(family_Tbar(i), cfg);
            if (rep.w2.coeffs.size() != 1 ||
                rep.w2.coeffs.begin()->first != 2) {
                std::ostringstream os;
                os << "theorem: w2 of tbar(" << i
                   << ") is not a pure x^2 multiple: " << rep.w2.to_string();
                throw TheoremViolated(os.str());
            }
            const Int c = rep.w2.coeffs.begin()->second;
            const int sign = c > 0 ? 1 : -1;
            n.push_back(c > 0 ? c : Int(-c));
            signs.push_back(sign);
            ordered_json e;
            e["i"] = i;
            e["w2"] = rep.w2.to_string();
            std::ostringstream ns;
            ns << n.back();
            e["n"] = ns.str();
            e["sign"] = sign;
            per_i.push_back(e);
        }
        const AbelianPresentation p = build_M0_presentation(n, signs);
        const SNFResult s = smith_normal_form(p.relations);
        const std::string verdict = conclude_theorem(p);
        ordered_json j = ordered_json::parse(snf_to_json(s));
        ordered_json out;
        out["families"] = per_i;
        out["invariant_factors"] = j["invariant_factors"];
        out["free_rank"] = j["free_rank"];
        out["verdict"] = verdict;
        const std::string body = out.dump(2) + "\n";
        if (!thm_json.empty())
            write_file(thm_json, body, outputs);
        else
            std::cout << body;
        ordered_json c;
        c["N"] = thm_N;
        c["grid"] = thm_grid;
        c["seed"] = thm_seed;
        emit_manifest("theorem", c, outputs, t0);
        return 0;
    }

    return 1;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const FormatError& e) {
        std::cerr << "format error: " << e.what() << "\n";
        return 3;
    } catch (const UnitSphereViolation& e) {
        std::cerr << "format error: " << e.what() << "\n";
        return 3;
    } catch (const LoopConditionViolation& e) {
        std::cerr << "format error: " << e.what() << "\n";
        return 3;
    } catch (const BasepointMismatch& e) {
        std::cerr << "format error: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "certification error: " << e.what() << "\n";
        return 2;
    } catch (const CLI::Error&) {
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
