// arcflow command line: build compressed arc-flow graphs for multiple-choice
// vector packing, emit the integer programming models, and solve or verify
// small instances with the built-in solver.
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "arcflow/builder.hpp"
#include "arcflow/instance.hpp"
#include "arcflow/miplite.hpp"
#include "arcflow/model.hpp"
#include "arcflow/oracle.hpp"
#include "arcflow/testgen.hpp"
#include "arcflow/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitGuard = 2;
constexpr int kExitVerify = 3;

struct InputArgs {
    std::string path;
    std::string format; // "", "vbp", "mvp"
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw arcflow::ParseError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << content;
}

arcflow::Instance load_instance(const InputArgs& in) {
    std::string fmt = in.format;
    if (fmt.empty()) {
        auto ext = std::filesystem::path(in.path).extension().string();
        if (ext == ".vbp")
            fmt = "vbp";
        else if (ext == ".mvp")
            fmt = "mvp";
        else
            throw arcflow::ParseError("cannot infer format of '" + in.path +
                                      "'; pass --format vbp|mvp");
    }
    std::string text = read_file(in.path);
    return fmt == "vbp" ? arcflow::parse_vbp(text) : arcflow::parse_mvp(text);
}

arcflow::Instance load_normalized(const InputArgs& in) {
    arcflow::Diagnostics diag;
    arcflow::Instance inst = arcflow::normalize(load_instance(in), &diag);
    for (const auto& msg : diag.messages) std::cerr << "note: " << msg << "\n";
    return inst;
}

std::string stem_of(const std::string& path) {
    return std::filesystem::path(path).stem().string();
}

std::string pattern_items(const arcflow::Pattern& pat) {
    std::string s;
    for (const auto& [ij, cnt] : pat.uses) {
        if (!s.empty()) s += ",";
        s += "(" + std::to_string(ij.first) + "," + std::to_string(ij.second) + ")x" +
             std::to_string(cnt);
    }
    return s;
}

int run(int argc, char** argv) {
    CLI::App app{"compressed arc-flow graphs and models for multiple-choice vector packing"};
    app.require_subcommand(1);
    std::uint64_t seed = 0;
    app.add_option("--seed", seed, "base seed for randomized commands")->capture_default_str();

    InputArgs input;
    auto add_input = [&](CLI::App* cmd, bool format_flag = true) {
        cmd->add_option("instance", input.path, "instance file (.vbp or .mvp)")->required();
        // the model subcommand uses --format for lp|mps, so it exposes the
        // instance format under a distinct name
        cmd->add_option(format_flag ? "--format" : "--instance-format", input.format,
                        "vbp|mvp (default: by extension)");
    };

    // build
    auto* cmd_build = app.add_subcommand("build", "build the compressed graph");
    add_input(cmd_build);
    std::string out_json, out_dot;
    bool dot_feedback = false;
    cmd_build->add_option("--out", out_json, "graph JSON output (default <stem>.json)");
    cmd_build->add_option("--dot", out_dot, "also write GraphViz DOT");
    cmd_build->add_flag("--dot-feedback", dot_feedback, "include feedback arcs in DOT");

    // model
    auto* cmd_model = app.add_subcommand("model", "emit the arc-flow integer program");
    add_input(cmd_model, false);
    std::string model_kind = "full", model_format = "lp", model_out;
    cmd_model->add_option("--model", model_kind, "full|simple")->capture_default_str();
    cmd_model->add_option("--format", model_format, "lp|mps")->capture_default_str();
    cmd_model->add_option("-o,--out", model_out, "output path (default <stem>.<format>)");

    // solve
    auto* cmd_solve = app.add_subcommand("solve", "solve a desk-scale instance exactly");
    add_input(cmd_solve);
    std::int64_t node_limit = 100000;
    cmd_solve->add_option("--node-limit", node_limit, "branch and bound node limit")
        ->capture_default_str();

    // verify
    auto* cmd_verify = app.add_subcommand("verify", "run the equivalence checks");
    add_input(cmd_verify);
    int seeds = 0;
    cmd_verify->add_option("--seeds", seeds, "also check this many seeded random instances")
        ->capture_default_str();

    // compare
    auto* cmd_compare = app.add_subcommand("compare", "compare against the per-bin-type baseline");
    add_input(cmd_compare);

    // price
    auto* cmd_price = app.add_subcommand("price", "price the most attractive column for duals");
    add_input(cmd_price);
    std::string duals_path;
    cmd_price->add_option("duals", duals_path, "duals file: lines 'i pi_i'")->required();

    CLI11_PARSE(app, argc, argv);

    if (cmd_build->parsed()) {
        arcflow::Instance inst = load_normalized(input);
        arcflow::BuildStats stats;
        arcflow::ArcFlowGraph g = arcflow::build_graph(inst, {}, &stats);
        if (stats.virtual_init_count > 0)
            std::cerr << "note: " << stats.virtual_init_count
                      << " lifted states took a virtual base label matching no single bin\n";
        std::string json = arcflow::to_canonical_json(g);
        std::string path = out_json.empty() ? stem_of(input.path) + ".json" : out_json;
        write_file(path, json);
        if (!out_dot.empty()) write_file(out_dot, arcflow::to_dot(g, dot_feedback));
        std::cout << "nodes=" << g.nodes.size() << " arcs=" << g.arcs.size()
                  << " build_ms=" << std::llround(stats.build_ms) << "\n";
        return kExitOk;
    }

    if (cmd_model->parsed()) {
        if (model_kind != "full" && model_kind != "simple")
            throw arcflow::ParseError("--model must be full or simple");
        if (model_format != "lp" && model_format != "mps")
            throw arcflow::ParseError("--format must be lp or mps");
        arcflow::Instance inst = load_normalized(input);
        arcflow::ArcFlowGraph g = arcflow::build_graph(inst);
        arcflow::FlowModel mdl = model_kind == "full"
                                     ? arcflow::build_full_model(g, inst, arcflow::default_exact_set(inst))
                                     : arcflow::build_simple_model(g, inst);
        std::string path = model_out.empty() ? stem_of(input.path) + "." + model_format : model_out;
        write_file(path, model_format == "lp" ? arcflow::emit_lp(mdl) : arcflow::emit_mps(mdl));
        std::filesystem::path map_path(path);
        map_path.replace_extension(".map.json");
        write_file(map_path.string(), arcflow::emit_map_json(mdl));
        std::cout << "vars=" << mdl.vars.size() << " rows=" << mdl.rows.size() << " wrote " << path
                  << "\n";
        return kExitOk;
    }

    if (cmd_solve->parsed()) {
        arcflow::Instance inst = load_normalized(input);
        arcflow::ArcFlowGraph g = arcflow::build_graph(inst);
        arcflow::FlowModel mdl = arcflow::build_full_model(g, inst, arcflow::default_exact_set(inst));
        arcflow::MipliteOptions opts;
        opts.node_limit = node_limit;
        arcflow::IpResult res = arcflow::solve_ip(mdl, opts);
        if (res.status == arcflow::IpResult::Status::Infeasible) {
            std::cerr << "error: model infeasible\n";
            return kExitInput;
        }
        bool partial = res.status == arcflow::IpResult::Status::NodeLimit;
        if (!res.x.empty()) {
            std::cout << "objective=" << std::llround(res.objective) << "\n";
            std::map<int, std::int64_t> flows;
            for (std::size_t k = 0; k < res.x.size(); ++k)
                flows[static_cast<int>(k)] = std::llround(res.x[k]);
            for (const auto& [pat, count] : arcflow::decompose_solution(g, flows))
                std::cout << "bin=" << pat.bin << " count=" << count
                          << " items=" << pattern_items(pat) << "\n";
        }
        if (partial) {
            std::cerr << "error: node limit reached after " << res.nodes << " nodes\n";
            return kExitGuard;
        }
        return kExitOk;
    }

    if (cmd_verify->parsed()) {
        arcflow::VerifyReport report;
        arcflow::Instance inst = load_instance(input);
        verify_instance(inst, report, "instance " + input.path);
        for (int k = 0; k < seeds; ++k) {
            std::uint64_t s = seed + static_cast<std::uint64_t>(k);
            verify_instance(arcflow::random_instance(s), report, "seed " + std::to_string(s));
        }
        for (const auto& c : report.checks) {
            std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << "\n";
            if (!c.pass) std::cerr << "  " << c.detail << "\n";
        }
        return report.all_pass() ? kExitOk : kExitVerify;
    }

    if (cmd_compare->parsed()) {
        arcflow::Instance inst = load_normalized(input);
        arcflow::ArcFlowGraph direct, baseline;
        bool direct_ok = false, baseline_ok = false;
        try {
            direct = arcflow::build_graph(inst);
            direct_ok = true;
            std::cout << "new: nodes=" << direct.nodes.size() << " arcs=" << direct.arcs.size()
                      << "\n";
        } catch (const arcflow::GuardError& e) {
            std::cout << "new: guard_exceeded\n";
            std::cerr << "error: " << e.what() << "\n";
        }
        try {
            baseline = arcflow::build_baseline_merged(inst);
            baseline_ok = true;
            std::cout << "baseline: nodes=" << baseline.nodes.size()
                      << " arcs=" << baseline.arcs.size() << "\n";
        } catch (const arcflow::GuardError& e) {
            std::cout << "baseline: guard_exceeded\n";
            std::cerr << "error: " << e.what() << "\n";
        }
        if (!direct_ok || !baseline_ok) return kExitGuard;
        bool equal =
            arcflow::demand_capped_aggregate(arcflow::enumerate_paths(direct), inst) ==
            arcflow::demand_capped_aggregate(arcflow::enumerate_paths(baseline), inst);
        std::cout << "patterns_equal=" << (equal ? "true" : "false") << "\n";
        return kExitOk;
    }

    if (cmd_price->parsed()) {
        arcflow::Instance inst = load_instance(input);
        auto duals = arcflow::oracle::parse_duals(read_file(duals_path), inst.m());
        arcflow::oracle::PriceResult res = arcflow::oracle::price_pattern(inst, duals);
        std::cout << "reduced_cost=" << res.reduced_cost.to_decimal_string() << "\n";
        if (res.pattern)
            std::cout << "bin=" << res.pattern->bin << " items=" << pattern_items(*res.pattern)
                      << "\n";
        else
            std::cout << "pattern=none\n";
        return kExitOk;
    }

    return kExitInput;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const arcflow::GuardError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitGuard;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
}
