/**
 * Command-line front end: AP bounds, facet censuses, solving, coefficient
 * independence certificates, and bound-chain verification, all emitting
 * reproducible JSON (or CSV summaries) with a run manifest.
 *
 * Exit codes: 0 success, 2 validation/invariant breach, 3 inconclusive
 * numerics, 4 input error.
 */
#include <kap/json_io.hpp>
#include <kap/solver.hpp>

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

constexpr const char* kToolVersion = "1.0.0";
constexpr int kExitOk = 0;
constexpr int kExitBreach = 2;
constexpr int kExitInconclusive = 3;
constexpr int kExitInput = 4;

struct NetworkArgs {
    std::string input_file;
    std::string tree_spec;  // "path:N" or "star:N"
    int star = 0;
    int random_tree = 0;
    int cycle = 0;
    std::uint64_t seed = 0;
    bool symmetric_real = false;
    std::optional<double> omega_const;

    void attach(CLI::App* cmd, bool generators_only = false) {
        if (!generators_only) cmd->add_option("--input", input_file, "network JSON file");
        cmd->add_option("--tree", tree_spec, "deterministic tree, e.g. path:5 or star:4");
        cmd->add_option("--star", star, "star graph with N vertices");
        cmd->add_option("--random-tree", random_tree, "seeded random tree with N vertices");
        cmd->add_option("--cycle", cycle, "cycle graph with N vertices");
        cmd->add_option("--seed", seed, "generator / solver seed");
        cmd->add_flag("--symmetric-real", symmetric_real,
                      "draw a physical instance (real positive couplings, real omega)");
        cmd->add_option_function<double>(
            "--omega", [this](double v) { omega_const = v; },
            "override every omega_i with a constant");
    }

    kap::OscillatorNetwork make() const {
        using namespace kap;
        OscillatorNetwork net;
        int sources = !input_file.empty() + !tree_spec.empty() + (star > 0) + (random_tree > 0) +
                      (cycle > 0);
        if (sources != 1)
            throw std::invalid_argument("exactly one of --input/--tree/--star/--random-tree/--cycle");
        if (!input_file.empty()) {
            std::ifstream in(input_file);
            if (!in) throw std::invalid_argument("cannot open " + input_file);
            std::stringstream ss;
            ss << in.rdbuf();
            net = load_network(ss.str());
        } else if (!tree_spec.empty()) {
            auto colon = tree_spec.find(':');
            if (colon == std::string::npos) throw std::invalid_argument("--tree expects kind:N");
            std::string kind = tree_spec.substr(0, colon);
            int N = std::stoi(tree_spec.substr(colon + 1));
            if (kind == "path")
                net = generate(GenTopology::Path, N, seed, symmetric_real);
            else if (kind == "star")
                net = generate(GenTopology::Star, N, seed, symmetric_real);
            else
                throw std::invalid_argument("unknown tree kind: " + kind);
        } else if (star > 0) {
            net = generate(GenTopology::Star, star, seed, symmetric_real);
        } else if (random_tree > 0) {
            net = generate(GenTopology::RandomTree, random_tree, seed, symmetric_real);
        } else {
            net = generate(GenTopology::Cycle, cycle, seed, symmetric_real);
        }
        if (omega_const) {
            for (auto& w : net.omega) w = kap::Complex(*omega_const, 0);
            net.symmetric_real = net.symmetric_real && *omega_const == 0;
        }
        return net;
    }
};

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

kap::Json manifest(const std::string& command, const kap::Json& input, std::uint64_t seed,
                   const kap::Json& config, double seconds) {
    kap::Json m;
    m["command"] = command;
    std::ostringstream h;
    h << std::hex << fnv1a(input.dump());
    m["input_hash"] = h.str();
    m["seed"] = seed;
    m["config"] = config;
    m["tool_version"] = kToolVersion;
    m["timing_seconds"] = seconds; // only field allowed to vary between runs
    return m;
}

double now() {
    using C = std::chrono::steady_clock;
    return std::chrono::duration<double>(C::now().time_since_epoch()).count();
}

void emit(const kap::Json& j) { std::cout << j.dump(2) << "\n"; }

kap::Json tracker_config_json(const kap::TrackerConfig& cfg) {
    kap::Json j;
    j["step_init"] = cfg.step_init;
    j["step_min"] = cfg.step_min;
    j["step_max"] = cfg.step_max;
    j["newton_tol"] = cfg.newton_tol;
    j["max_corrector_iters"] = cfg.max_corrector_iters;
    j["diverge_norm"] = cfg.diverge_norm;
    j["coordinate_zero_tol"] = cfg.coordinate_zero_tol;
    j["dedup_tol"] = cfg.dedup_tol;
    j["accept_tol"] = cfg.accept_tol;
    j["torus_tol"] = cfg.torus_tol;
    j["path_budget"] = cfg.path_budget;
    return j;
}

} // namespace

int main(int argc, char** argv) {
    using namespace kap;
    CLI::App app{"equilibrium counting and certification for oscillator networks"};
    app.require_subcommand(1);

    NetworkArgs bound_net, solve_net, chain_net;
    std::string bound_method = "auto";
    bool csv = false;
    int facets_cycle = 0, certify_cycle = 0;
    bool certify_corrupted = false;
    std::string config_file;

    auto* cmd_bound = app.add_subcommand("bound", "AP bound with baseline comparison");
    bound_net.attach(cmd_bound);
    cmd_bound->add_option("--method", bound_method, "auto|formula|triangulation|both")
        ->check(CLI::IsMember({"auto", "formula", "triangulation", "both"}));
    cmd_bound->add_flag("--csv", csv, "summary as CSV");

    auto* cmd_facets = app.add_subcommand("facets", "facet census of the cycle polytope P_N");
    cmd_facets->add_option("--cycle", facets_cycle, "cycle size N")->required();
    cmd_facets->add_flag("--csv", csv, "summary as CSV");

    auto* cmd_solve = app.add_subcommand("solve", "enumerate C*-solutions");
    solve_net.attach(cmd_solve);
    cmd_solve->add_option("--config", config_file, "tracker config JSON file");
    cmd_solve->add_flag("--csv", csv, "summary as CSV");

    auto* cmd_certify = app.add_subcommand("certify", "coefficient independence certificate");
    cmd_certify->add_option("--cycle", certify_cycle, "cycle size N");
    cmd_certify->add_flag("--corrupted-fixture", certify_corrupted,
                          "run the negative-control fixture instead");

    auto* cmd_chain = app.add_subcommand("verify-chain", "torus <= C* <= closed form <= MV <= AP");
    chain_net.attach(cmd_chain);

    CLI11_PARSE(app, argc, argv);

    try {
        double t0 = now();
        if (cmd_bound->parsed()) {
            auto net = bound_net.make();
            BoundMethod m = bound_method == "formula"         ? BoundMethod::Formula
                            : bound_method == "triangulation" ? BoundMethod::Triangulation
                            : bound_method == "both"          ? BoundMethod::Both
                                                              : BoundMethod::Auto;
            ApBoundResult r;
            try {
                r = ap_bound(net, m);
            } catch (const std::runtime_error& e) {
                std::cerr << e.what() << "\n";
                return kExitBreach; // method disagreement
            }
            Json j;
            j["ap_bound"] = int_to_json(r.ap_bound);
            if (r.formula_value) j["formula"] = int_to_json(*r.formula_value);
            if (r.triangulation_value) j["triangulation"] = int_to_json(*r.triangulation_value);
            j["baseline"] = int_to_json(baseline_bound(r.N));
            j["agreement"] = !r.formula_value || !r.triangulation_value ||
                             *r.formula_value == *r.triangulation_value;
            j["N"] = r.N;
            j["topology"] = r.topology == Topology::Tree    ? "tree"
                            : r.topology == Topology::Cycle ? "cycle"
                                                            : "general";
            j["manifest"] =
                manifest("bound", network_to_json(net), bound_net.seed, {{"method", bound_method}},
                         now() - t0);
            if (csv) {
                std::cout << "N,topology,ap_bound,baseline\n"
                          << r.N << "," << j["topology"].get<std::string>() << "," << r.ap_bound
                          << "," << baseline_bound(r.N) << "\n";
            } else {
                emit(j);
            }
            return kExitOk;
        }
        if (cmd_facets->parsed()) {
            auto census = cycle_facet_family(facets_cycle);
            Json j;
            j["N"] = census.N;
            j["facets"] = census.facet_count;
            j["total"] = int_to_json(census.total);
            if (census.N % 2 == 1) {
                j["all_unimodular"] = census.all_unimodular;
            } else {
                j["facet_nvol"] = int_to_json(census.facet_volumes.empty()
                                                  ? Int(0)
                                                  : census.facet_volumes.front());
                j["sign_pattern_ok"] = census.sign_pattern_ok;
            }
            Json vols = Json::array();
            for (const auto& v : census.facet_volumes) vols.push_back(int_to_json(v));
            j["facet_volumes"] = std::move(vols);
            j["manifest"] = manifest("facets", Json{{"cycle", facets_cycle}}, 0, {}, now() - t0);
            if (csv) {
                std::cout << "N,facets,total\n"
                          << census.N << "," << census.facet_count << "," << census.total << "\n";
            } else {
                emit(j);
            }
            return kExitOk;
        }
        if (cmd_solve->parsed()) {
            auto net = solve_net.make();
            TrackerConfig cfg;
            cfg.seed = solve_net.seed;
            if (!config_file.empty()) {
                std::ifstream in(config_file);
                if (!in) throw std::invalid_argument("cannot open " + config_file);
                Json cj = Json::parse(in);
                if (cj.contains("step_init")) cfg.step_init = cj["step_init"];
                if (cj.contains("step_min")) cfg.step_min = cj["step_min"];
                if (cj.contains("step_max")) cfg.step_max = cj["step_max"];
                if (cj.contains("newton_tol")) cfg.newton_tol = cj["newton_tol"];
                if (cj.contains("max_corrector_iters"))
                    cfg.max_corrector_iters = cj["max_corrector_iters"];
                if (cj.contains("diverge_norm")) cfg.diverge_norm = cj["diverge_norm"];
                if (cj.contains("coordinate_zero_tol"))
                    cfg.coordinate_zero_tol = cj["coordinate_zero_tol"];
                if (cj.contains("dedup_tol")) cfg.dedup_tol = cj["dedup_tol"];
                if (cj.contains("accept_tol")) cfg.accept_tol = cj["accept_tol"];
                if (cj.contains("torus_tol")) cfg.torus_tol = cj["torus_tol"];
                if (cj.contains("path_budget")) cfg.path_budget = cj["path_budget"];
            }
            auto topo = classify(net);
            SolutionSet sols =
                topo.tag == Topology::Tree ? tree_solve(net, cfg) : homotopy_solve(net, cfg);
            Json j = solution_set_to_json(sols, cfg.torus_tol);
            Int ap = ap_bound(net).ap_bound;
            j["ap_bound"] = int_to_json(ap);
            j["manifest"] = manifest("solve", network_to_json(net), cfg.seed,
                                     tracker_config_json(cfg), now() - t0);
            if (csv) {
                std::cout << "N,count,torus_count,ap_bound\n"
                          << net.N << "," << sols.solutions.size() << "," << sols.torus_count()
                          << "," << ap << "\n";
            } else {
                emit(j);
            }
            if (Int(static_cast<long>(sols.solutions.size())) > ap) return kExitBreach;
            if (sols.inconclusive) return kExitInconclusive;
            return kExitOk;
        }
        if (cmd_certify->parsed()) {
            IndependenceCertificate cert;
            Json input;
            if (certify_corrupted) {
                cert = certify_independent_coefficients(corrupted_support_fixture(), 2);
                input = Json{{"fixture", "corrupted"}};
            } else {
                if (certify_cycle < 3) throw std::invalid_argument("--cycle N (N >= 3) required");
                cert = independence_certificate(generate(GenTopology::Cycle, certify_cycle, 0));
                input = Json{{"cycle", certify_cycle}};
            }
            Json j = certificate_to_json(cert);
            j["manifest"] = manifest("certify", input, 0, {}, now() - t0);
            emit(j);
            return cert.pass ? kExitOk : kExitBreach;
        }
        if (cmd_chain->parsed()) {
            auto net = chain_net.make();
            TrackerConfig cfg;
            cfg.seed = chain_net.seed;
            auto rep = verify_chain(net, cfg);
            Json j = bound_report_to_json(rep);
            j["manifest"] = manifest("verify-chain", network_to_json(net), cfg.seed,
                                     tracker_config_json(cfg), now() - t0);
            emit(j);
            if (!rep.chain_ok) return kExitBreach;
            if (rep.partial) return kExitInconclusive;
            return kExitOk;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBreach;
    }
    return kExitInput;
}
