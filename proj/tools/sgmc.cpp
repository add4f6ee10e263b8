// Command-line surface for the signed max-cut kernelization library:
// instance generation, exact solving, kernelization with JSON run records,
// and corpus verification.
//
// Exit codes: 0 Yes, 1 No / kernel emitted, 2 usage or parse error,
// 3 decomposition-stuck, 4 invariant violation.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <future>
#include <thread>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "sgmc/instance_gen.hpp"
#include "sgmc/report.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace sgmc;

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

SignedGraph read_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return load_graph(in);
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

json partition_to_json(const Partition& p) {
    return {{"independent_sets", p.independent_sets}, {"cliques", p.cliques}};
}

Partition partition_from_json(const json& j) {
    Partition p;
    p.independent_sets = j.at("independent_sets").get<std::vector<std::vector<int>>>();
    p.cliques = j.at("cliques").get<std::vector<std::vector<int>>>();
    return p;
}

json run_record(const std::string& command, const json& payload) {
    json j;
    j["schema"] = kSchemaVersion;
    j["versions"] = {{"sgmc", kVersion}, {"schema", kSchemaVersion}};
    j["command"] = command;
    j.update(payload);
    return j;
}

int cmd_generate(const GenSpec& spec, const std::string& base_path, const std::string& out_path) {
    std::optional<SignedGraph> base;
    if (!base_path.empty()) base = read_graph_file(base_path);
    Generated gen = generate(spec, base);
    write_text_file(out_path, graph_to_string(gen.graph));
    if (gen.partition) {
        write_text_file(out_path + ".partition.json", partition_to_json(*gen.partition).dump(2) + "\n");
        std::cout << "wrote " << out_path << " (n=" << gen.graph.n() << ", m=" << gen.graph.m()
                  << ") and partition sidecar\n";
    } else {
        std::cout << "wrote " << out_path << " (n=" << gen.graph.n() << ", m=" << gen.graph.m()
                  << ")\n";
    }
    return 0;
}

int cmd_solve(const std::string& path, long long k, int cap) {
    auto t0 = std::chrono::steady_clock::now();
    SignedGraph g = read_graph_file(path);
    if (!is_connected(g)) {
        std::cerr << "error: graph is not connected\n";
        return 2;
    }
    auto beta = beta_exact(g, cap);
    bool yes = 4 * beta.beta >= 2 * g.m() + (g.n() - 1) + k;
    json j = run_record("solve", {{"input", {{"path", path}, {"hash", input_hash(g)}}},
                                  {"k", k},
                                  {"beta", beta.beta},
                                  {"pt_quarters", pt(g).q},
                                  {"verdict", yes ? "yes" : "no"},
                                  {"timings_ms", {{"total", ms_since(t0)}}}});
    std::cout << j.dump(2) << "\n";
    return yes ? 0 : 1;
}

int cmd_kernelize(const std::string& path, long long k, const ClassSpec& spec, bool linear,
                  long long d, int cap, const std::string& report_path,
                  const std::string& kernel_path) {
    auto t0 = std::chrono::steady_clock::now();
    SignedGraph g = read_graph_file(path);
    double parse_ms = ms_since(t0);
    Instance inst{g, k};
    auto t1 = std::chrono::steady_clock::now();
    KernelReport report;
    try {
        report = linear ? linear_kernel_dsplit(inst, d, spec.planted) : kernelize(inst, spec, cap);
    } catch (const DecompositionStuck& e) {
        std::string residual_path = path + ".residual.sg";
        write_text_file(residual_path, graph_to_string(e.residual));
        std::cerr << "error: " << e.what() << "\nresidual graph written to " << residual_path
                  << "\n";
        return 3;
    }
    double kernel_ms = ms_since(t1);

    json j = run_record("kernelize",
                        {{"input", {{"path", path}, {"hash", input_hash(g)}}},
                         {"k", k},
                         {"report", to_json(report)},
                         {"timings_ms",
                          {{"parse", parse_ms}, {"kernelize", kernel_ms}, {"total", ms_since(t0)}}}});
    if (!report_path.empty()) write_text_file(report_path, j.dump(2) + "\n");
    std::cout << j.dump(2) << "\n";
    if (report.outcome == KernelReport::Outcome::kernel && !kernel_path.empty())
        write_text_file(kernel_path, graph_to_string(report.kernel->graph));
    return report.outcome == KernelReport::Outcome::yes ? 0 : 1;
}

struct VerifyCase {
    std::string name;
    bool ok = true;
    std::vector<std::string> violations;
};

VerifyCase verify_instance(const std::string& name, const SignedGraph& g, long long k, int cap) {
    VerifyCase vc;
    vc.name = name + " k=" + std::to_string(k);
    auto complain = [&](const std::string& what) {
        vc.ok = false;
        vc.violations.push_back(what);
    };
    bool oracle_ok = g.n() <= cap;
    try {
        std::optional<bool> truth;
        if (oracle_ok) truth = answer_exact(g, k, cap);
        Instance inst{g, k};

        auto outcome = decompose(inst, cap);
        if (outcome.yes) {
            if (truth && !*truth) complain("decompose certified a No-instance");
        } else {
            if (static_cast<long long>(outcome.s_set.size()) > 3 * k)
                complain("|S| exceeds 3k");
            auto rest = g.switched(outcome.switch_set).without_vertices(outcome.s_set).first;
            if (!is_negative_clique_forest(rest))
                complain("G - S is not a negative clique-forest");
        }

        auto report = kernelize(inst, ClassSpec::general(), cap);
        if (truth) {
            bool verdict = report.outcome == KernelReport::Outcome::yes
                               ? true
                               : report.kernel->k <= 0 ||
                                     answer_exact(report.kernel->graph, report.kernel->k, cap);
            if (verdict != *truth) complain("kernelize verdict disagrees with the oracle");
        }
        if (report.outcome == KernelReport::Outcome::kernel) {
            Instance replayed = replay_trace(inst, report.trace);
            if (graph_to_string(replayed.graph) != graph_to_string(report.kernel->graph) ||
                replayed.k != report.kernel->k)
                complain("trace replay does not reproduce the kernel");
        }
        for (const auto& check : report.bound_checks)
            if (check.triggered && check.name.ends_with("-bound"))
                complain("structural bound exceeded: " + check.name);

        // One-step rule validity at the initial context.
        if (!outcome.yes && oracle_ok) {
            RuleContext ctx = RuleContext::make(
                Instance{g.switched(outcome.switch_set), k}, outcome.s_set);
            if (auto a = find_applicable(ctx)) {
                auto applied = apply(ctx, *a);
                bool before = *truth;
                bool after = applied.ctx.inst.k <= 0
                                 ? true
                                 : answer_exact(applied.ctx.inst.graph, applied.ctx.inst.k, cap);
                if (before != after)
                    complain(std::string("two-way rule ") + rule_name(a->rule) +
                             " changed the answer");
            }
        }
    } catch (const DecompositionStuck&) {
        complain("decomposition-stuck");
    } catch (const OracleCapError&) {
        // nothing to check exactly at this size
    } catch (const std::exception& e) {
        complain(std::string("exception: ") + e.what());
    }
    return vc;
}

int cmd_verify(const std::string& path, long long k_min, long long k_max, int cap,
               const std::string& report_path, const std::string& replay_path) {
    if (!replay_path.empty()) {
        // Replay a recorded kernelization against its input.
        std::ifstream in(replay_path);
        if (!in) {
            std::cerr << "error: cannot open " << replay_path << "\n";
            return 2;
        }
        json rec = json::parse(in);
        SignedGraph g = read_graph_file(path);
        if (rec.at("input").at("hash").get<std::string>() != input_hash(g)) {
            std::cout << "replay mismatch: input hash differs\n";
            return 4;
        }
        const json& rep = rec.at("report");
        if (rep.at("outcome") != "kernel") {
            std::cout << "nothing to replay: outcome was yes\n";
            return 0;
        }
        Instance inst{g, rec.at("k").get<long long>()};
        inst = replay_trace(inst, trace_from_json(rep.at("trace")));
        std::string got = graph_to_string(inst.graph);
        std::string want = rep.at("kernel").at("graph").get<std::string>();
        if (got != want || inst.k != rep.at("kernel").at("k").get<long long>()) {
            std::cout << "replay mismatch: final instance differs\n";
            return 4;
        }
        std::cout << "replay ok\n";
        return 0;
    }

    std::vector<std::pair<std::string, SignedGraph>> inputs;
    if (fs::is_directory(path)) {
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(path))
            if (entry.path().extension() == ".sg") files.push_back(entry.path());
        std::sort(files.begin(), files.end());
        for (const auto& f : files) inputs.emplace_back(f.filename().string(), read_graph_file(f));
    } else {
        inputs.emplace_back(fs::path(path).filename().string(), read_graph_file(path));
    }

    std::vector<std::pair<std::string, long long>> worklist;
    for (const auto& [name, g] : inputs)
        for (long long k = k_min; k <= k_max; ++k) worklist.emplace_back(name, k);

    // fan out with a bounded window, joining results in input order
    const std::size_t window = std::max(1u, std::thread::hardware_concurrency());
    std::vector<std::future<VerifyCase>> futures(worklist.size());
    json details = json::array();
    long long failures = 0, cases = 0;
    std::size_t launched = 0;
    auto graph_of = [&](const std::string& name) -> const SignedGraph& {
        for (const auto& [n, g] : inputs)
            if (n == name) return g;
        throw std::logic_error("verify: lost input");
    };
    for (std::size_t i = 0; i < worklist.size(); ++i) {
        while (launched < worklist.size() && launched < i + window) {
            const auto& [name, k] = worklist[launched];
            futures[launched] =
                std::async(std::launch::async, verify_instance, name, graph_of(name), k, cap);
            ++launched;
        }
        VerifyCase vc = futures[i].get();
        ++cases;
        if (!vc.ok) ++failures;
        std::cout << (vc.ok ? "[ok]   " : "[FAIL] ") << vc.name;
        for (const auto& v : vc.violations) std::cout << "  <" << v << ">";
        std::cout << "\n";
        details.push_back({{"case", vc.name}, {"ok", vc.ok}, {"violations", vc.violations}});
    }
    std::cout << "verified " << cases << " cases, " << failures << " failures\n";
    if (!report_path.empty())
        write_text_file(report_path,
                        run_record("verify", {{"cases", details}, {"failures", failures}}).dump(2) +
                            "\n");
    return failures == 0 ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"signed max-cut above tight lower bound: kernelization toolkit"};
    app.require_subcommand(1);
    int cap = default_oracle_cap();

    // generate
    auto* gen = app.add_subcommand("generate", "write a generated instance");
    std::string family = "random", base_path, out_path = "out.sg";
    GenSpec spec;
    std::vector<int> ind_sizes, clique_sizes;
    gen->add_option("--family", family,
                    "negative-clique|random|split|rl|dsplit|double|bodlaender");
    gen->add_option("--n", spec.n, "vertex count");
    gen->add_option("--sizes-ind", ind_sizes, "independent set sizes (rl)");
    gen->add_option("--sizes-clique", clique_sizes, "clique sizes (rl)");
    gen->add_option("--d", spec.d, "degree bound (dsplit)");
    gen->add_option("--k-size", spec.k_size, "clique side size (dsplit/split)");
    gen->add_option("--i-size", spec.i_size, "independent side size (dsplit/split)");
    gen->add_option("--edge-prob", spec.edge_prob, "cross edge probability");
    gen->add_option("--pos-prob", spec.pos_prob, "positive sign probability");
    gen->add_option("--seed", spec.seed, "rng seed");
    gen->add_option("--base", base_path, "base graph file (double/bodlaender)");
    gen->add_option("--out", out_path, "output file")->required();

    // solve
    auto* solve = app.add_subcommand("solve", "exact decision by brute force");
    std::string solve_path;
    long long solve_k = 1;
    solve->add_option("file", solve_path)->required();
    solve->add_option("--k", solve_k)->required();
    solve->add_option("--cap", cap, "oracle cap override");

    // kernelize
    auto* ker = app.add_subcommand("kernelize", "run the kernelization pipeline");
    std::string ker_path, ker_class = "general", ker_partition, ker_report, ker_kernel;
    long long ker_k = 1, ker_r = 0, ker_l = 0, ker_d = 2;
    bool linear = false;
    ker->add_option("file", ker_path)->required();
    ker->add_option("--k", ker_k)->required();
    ker->add_option("--class", ker_class, "general|split|rl|dsplit");
    ker->add_option("--r", ker_r, "independent set count (rl)");
    ker->add_option("--l", ker_l, "clique count (rl)");
    ker->add_option("--d", ker_d, "degree bound (dsplit)");
    ker->add_flag("--linear", linear, "use the d*-split linear kernel");
    ker->add_option("--partition", ker_partition, "planted partition sidecar JSON");
    ker->add_option("--report", ker_report, "write the run record here");
    ker->add_option("--kernel-out", ker_kernel, "write the kernel graph here");
    ker->add_option("--cap", cap, "oracle cap override");

    // verify
    auto* ver = app.add_subcommand("verify", "oracle-check a corpus");
    std::string ver_path, ver_report, ver_replay;
    long long ver_kmin = 1, ver_kmax = 2;
    ver->add_option("path", ver_path, "graph file or directory of .sg files")->required();
    ver->add_option("--k-min", ver_kmin);
    ver->add_option("--k-max", ver_kmax);
    ver->add_option("--report", ver_report, "write details JSON here");
    ver->add_option("--replay", ver_replay, "replay a kernelize run record against the input");
    ver->add_option("--cap", cap, "oracle cap override");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            if (family == "negative-clique") spec.family = GenSpec::Family::negative_clique;
            else if (family == "random") spec.family = GenSpec::Family::random_signed;
            else if (family == "split") spec.family = GenSpec::Family::split;
            else if (family == "rl") spec.family = GenSpec::Family::rl;
            else if (family == "dsplit") spec.family = GenSpec::Family::dsplit;
            else if (family == "double") spec.family = GenSpec::Family::double_copy;
            else if (family == "bodlaender") spec.family = GenSpec::Family::bodlaender_split;
            else {
                std::cerr << "error: unknown family " << family << "\n";
                return 2;
            }
            spec.ind_sizes = ind_sizes;
            spec.clique_sizes = clique_sizes;
            return cmd_generate(spec, base_path, out_path);
        }
        if (solve->parsed()) return cmd_solve(solve_path, solve_k, cap);
        if (ker->parsed()) {
            ClassSpec cs = ClassSpec::general();
            if (ker_class == "split") cs = ClassSpec::split();
            else if (ker_class == "rl") cs = ClassSpec::rl(ker_r, ker_l);
            else if (ker_class == "dsplit") cs = ClassSpec::dsplit(ker_d);
            else if (ker_class != "general") {
                std::cerr << "error: unknown class " << ker_class << "\n";
                return 2;
            }
            if (!ker_partition.empty()) {
                std::ifstream in(ker_partition);
                if (!in) {
                    std::cerr << "error: cannot open " << ker_partition << "\n";
                    return 2;
                }
                cs.planted = partition_from_json(json::parse(in));
            }
            return cmd_kernelize(ker_path, ker_k, cs, linear, ker_d, cap, ker_report, ker_kernel);
        }
        if (ver->parsed()) return cmd_verify(ver_path, ver_kmin, ver_kmax, cap, ver_report,
                                             ver_replay);
    } catch (const DecompositionStuck& e) {
        std::cerr << "error: " << e.what() << "\n";
        std::cerr << graph_to_string(e.residual);
        return 3;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const OracleCapError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::logic_error& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
