// Command-line frontend: builds subdivisions, runs the solvers, compiles
// formula instances into gadget geometry, checks the reduction targets, and
// renders drawings.
//
// Exit codes: 0 success, 1 infeasible or refuted verification, 2 bad input.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "subcover/formats.hpp"
#include "subcover/generate.hpp"
#include "subcover/reduction.hpp"
#include "subcover/solvers.hpp"
#include "subcover/svg.hpp"

using namespace subcover;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    out << text;
}

Problem parse_problem(const std::string& s) {
    if (s == "stab") return Problem::stab;
    if (s == "mis") return Problem::mis;
    if (s == "mds") return Problem::mds;
    throw CLI::ValidationError("--problem", "must be stab, mis or mds");
}

struct SolveOptions {
    std::string input;
    std::string algo = "exact";
    std::string faces = "all";
    std::string out;
    int k = 3;
    std::int64_t node_limit = 50'000'000;
    std::int64_t time_limit_ms = 60'000;
};

void add_solve_options(CLI::App* cmd, SolveOptions& opt, bool with_local) {
    cmd->add_option("input", opt.input, "segment file (.segs)")->required();
    std::string algos = with_local ? "greedy, exact or local" : "greedy or exact";
    cmd->add_option("--algo", opt.algo, "algorithm: " + algos)->capture_default_str();
    cmd->add_option("--faces", opt.faces, "target faces: all or rect")->capture_default_str();
    cmd->add_option("-o,--out", opt.out, "write the solution document here");
    if (with_local) cmd->add_option("-k", opt.k, "local search level")->capture_default_str();
    cmd->add_option("--node-limit", opt.node_limit, "search node budget");
    cmd->add_option("--time-limit-ms", opt.time_limit_ms, "search time budget");
}

FaceFilter filter_of(const std::string& faces) {
    if (faces == "all") return FaceFilter::all();
    if (faces == "rect") return FaceFilter::rect();
    throw CLI::ValidationError("--faces", "must be all or rect");
}

int run_stab(const SolveOptions& opt) {
    SegmentSet segs = parse_segments(slurp(opt.input));
    Subdivision sub = build_subdivision(segs);
    FaceFilter filter = filter_of(opt.faces);
    PointSolution sol;
    if (opt.algo == "greedy")
        sol = greedy_stab(sub, filter);
    else if (opt.algo == "exact")
        sol = exact_stab(sub, filter, {opt.node_limit, opt.time_limit_ms});
    else if (opt.algo == "local")
        sol = local_search_stab(sub, {opt.k, 1'000'000}, filter);
    else
        throw CLI::ValidationError("--algo", "unknown algorithm " + opt.algo);
    Variant variant = opt.faces == "rect" ? Variant::rect : Variant::all;
    emit(serialize_solution(make_document(segs, Problem::stab, variant, sol)), opt.out);
    return 0;
}

int run_faces(Problem problem, const SolveOptions& opt) {
    SegmentSet segs = parse_segments(slurp(opt.input));
    Subdivision sub = build_subdivision(segs);
    FaceFilter filter = filter_of(opt.faces);
    FaceSolution sol;
    if (opt.algo == "greedy")
        sol = problem == Problem::mis ? greedy_mis(sub, filter) : greedy_mds(sub, filter);
    else if (opt.algo == "exact")
        sol = problem == Problem::mis
                  ? exact_mis(sub, filter, {opt.node_limit, opt.time_limit_ms})
                  : exact_mds(sub, filter, {opt.node_limit, opt.time_limit_ms});
    else
        throw CLI::ValidationError("--algo", "unknown algorithm " + opt.algo);
    Variant variant = opt.faces == "rect" ? Variant::rect : Variant::all;
    emit(serialize_solution(make_document(segs, problem, variant, sol)), opt.out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"covering and packing tools for rectilinear subdivisions"};
    app.require_subcommand(1);

    // build
    std::string build_in, build_out;
    auto* cmd_build = app.add_subcommand("build", "build a subdivision and report its structure");
    cmd_build->add_option("input", build_in, "segment file (.segs)")->required();
    cmd_build->add_option("-o,--out", build_out, "output path");

    // solvers
    SolveOptions stab_opt, mis_opt, mds_opt;
    add_solve_options(app.add_subcommand("stab", "minimum point set stabbing the target faces"),
                      stab_opt, true);
    add_solve_options(app.add_subcommand("mis", "maximum independent face set"), mis_opt, false);
    add_solve_options(app.add_subcommand("mds", "minimum dominating face set"), mds_opt, false);

    // reduce
    std::string red_in, red_problem = "stab", red_variant = "all", red_out, red_report;
    auto* cmd_reduce = app.add_subcommand("reduce", "compile a formula into gadget geometry");
    cmd_reduce->add_option("input", red_in, "formula file (JSON)")->required();
    cmd_reduce->add_option("--problem", red_problem, "stab, mis or mds")->capture_default_str();
    cmd_reduce->add_option("--variant", red_variant, "rect or all")->capture_default_str();
    cmd_reduce->add_option("-o,--out", red_out, "segment output path");
    cmd_reduce->add_option("--report", red_report, "manifest/target report path");

    // verify-lemma
    std::string vl_in, vl_problem = "stab", vl_variant = "all", vl_out;
    std::int64_t vl_nodes = 50'000'000, vl_ms = 120'000;
    auto* cmd_vl = app.add_subcommand("verify-lemma",
                                      "machine-check a reduction on one instance");
    cmd_vl->add_option("input", vl_in, "formula file (JSON)")->required();
    cmd_vl->add_option("--problem", vl_problem, "stab, mis or mds")->capture_default_str();
    cmd_vl->add_option("--variant", vl_variant, "rect or all")->capture_default_str();
    cmd_vl->add_option("--node-limit", vl_nodes, "per-search node budget");
    cmd_vl->add_option("--time-limit-ms", vl_ms, "per-search time budget");
    cmd_vl->add_option("-o,--out", vl_out, "report output path");

    // render
    std::string render_in, render_sol, render_out;
    int render_scale = 16;
    auto* cmd_render = app.add_subcommand("render", "render a subdivision as SVG");
    cmd_render->add_option("input", render_in, "segment file (.segs)")->required();
    cmd_render->add_option("--solution", render_sol, "overlay a solution document");
    cmd_render->add_option("--scale", render_scale, "pixels per unit")->capture_default_str();
    cmd_render->add_option("-o,--out", render_out, "SVG output path");

    // gen
    std::string gen_kind = "guillotine", gen_problem = "stab", gen_variant = "rect", gen_out;
    int gen_rooms = 8, gen_rows = 2, gen_cols = 2, gen_m = 1;
    std::uint64_t gen_seed = 0;
    auto* cmd_gen = app.add_subcommand("gen", "generate instances");
    cmd_gen->add_option("--kind", gen_kind, "guillotine, grid or gadget")->capture_default_str();
    cmd_gen->add_option("--rooms", gen_rooms, "guillotine room count")->capture_default_str();
    cmd_gen->add_option("--rows", gen_rows, "grid rows")->capture_default_str();
    cmd_gen->add_option("--cols", gen_cols, "grid columns")->capture_default_str();
    cmd_gen->add_option("--problem", gen_problem, "gadget problem")->capture_default_str();
    cmd_gen->add_option("-m", gen_m, "gadget capacity")->capture_default_str();
    cmd_gen->add_option("--variant", gen_variant, "gadget variant")->capture_default_str();
    cmd_gen->add_option("--seed", gen_seed, "generator seed")->capture_default_str();
    cmd_gen->add_option("-o,--out", gen_out, "segment output path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_build->parsed()) {
            SegmentSet segs = parse_segments(slurp(build_in));
            Subdivision sub = build_subdivision(segs);
            nlohmann::ordered_json j;
            j["instance"] = instance_hash(segs);
            j["segments"] = segs.size();
            j["faces"] = sub.face_count();
            j["rectangular_faces"] = rectangular_faces(sub).size();
            j["vertices"] = sub.graph_vertex_count();
            j["edges"] = sub.graph_edge_count();
            j["components"] = sub.graph_component_count();
            emit(j.dump(2) + "\n", build_out);
            return 0;
        }
        if (app.get_subcommand("stab")->parsed()) return run_stab(stab_opt);
        if (app.get_subcommand("mis")->parsed()) return run_faces(Problem::mis, mis_opt);
        if (app.get_subcommand("mds")->parsed()) return run_faces(Problem::mds, mds_opt);

        if (cmd_reduce->parsed()) {
            Rp3SatInstance inst = parse_formula(slurp(red_in));
            auto violations = validate_layout(inst);
            if (!violations.empty()) {
                for (const auto& v : violations) std::cerr << "layout: " << v.what << "\n";
                return 2;
            }
            Variant variant = red_variant == "all" ? Variant::all : Variant::rect;
            ReductionOutput out = build_reduction(inst, parse_problem(red_problem), variant);
            emit(serialize_segments(out.segments), red_out);
            if (!red_report.empty()) emit(serialize_reduction_report(out), red_report);
            return 0;
        }

        if (cmd_vl->parsed()) {
            Rp3SatInstance inst = parse_formula(slurp(vl_in));
            auto violations = validate_layout(inst);
            if (!violations.empty()) {
                for (const auto& v : violations) std::cerr << "layout: " << v.what << "\n";
                return 2;
            }
            Variant variant = vl_variant == "all" ? Variant::all : Variant::rect;
            LemmaReport rep =
                verify_lemma(inst, parse_problem(vl_problem), variant, {vl_nodes, vl_ms});
            emit(serialize_lemma_report(rep), vl_out);
            bool bad = !rep.forward_ok || rep.converse == LemmaReport::Converse::refuted;
            return bad ? 1 : 0;
        }

        if (cmd_render->parsed()) {
            SegmentSet segs = parse_segments(slurp(render_in));
            Subdivision sub = build_subdivision(segs);
            RenderOptions opts;
            opts.scale = render_scale;
            if (!render_sol.empty()) {
                SolutionDocument doc = parse_solution(slurp(render_sol));
                if (doc.hash != instance_hash(segs)) {
                    std::cerr << "solution was computed for a different instance\n";
                    return 2;
                }
                opts.highlight_points = doc.points;
                opts.highlight_faces = doc.faces;
            }
            emit(render_svg(sub, segs, opts), render_out);
            return 0;
        }

        if (cmd_gen->parsed()) {
            GeneratorSpec spec;
            if (gen_kind == "guillotine") spec.kind = GeneratorSpec::Kind::guillotine;
            else if (gen_kind == "grid") spec.kind = GeneratorSpec::Kind::grid;
            else if (gen_kind == "gadget") spec.kind = GeneratorSpec::Kind::gadget;
            else throw CLI::ValidationError("--kind", "must be guillotine, grid or gadget");
            spec.rooms = gen_rooms;
            spec.rows = gen_rows;
            spec.cols = gen_cols;
            spec.problem = parse_problem(gen_problem);
            spec.m = gen_m;
            spec.variant = gen_variant == "all" ? Variant::all : Variant::rect;
            spec.seed = gen_seed;
            emit(serialize_segments(generate(spec)), gen_out);
            return 0;
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "parse error";
        if (e.line) std::cerr << " (line " << e.line << ")";
        if (!e.path.empty()) std::cerr << " at " << e.path;
        std::cerr << ": " << e.what() << "\n";
        return 2;
    } catch (const ReductionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const GeometryError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
