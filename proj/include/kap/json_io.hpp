/**
 * JSON serialization for networks, polytopes, systems, solution sets, and
 * certificates. Network parse/serialize is the identity on the canonical
 * form; all report emitters are deterministic given identical inputs.
 */
#pragma once

#include "graph.hpp"
#include "laurent.hpp"
#include "polytope.hpp"
#include "solver.hpp"

#include <json.hpp>
#include <string>

namespace kap {

using Json = nlohmann::ordered_json;

/// Exact integers as JSON numbers when they fit, decimal strings otherwise.
inline Json int_to_json(const Int& v) {
    if (v >= std::numeric_limits<std::int64_t>::min() &&
        v <= std::numeric_limits<std::int64_t>::max())
        return static_cast<std::int64_t>(v);
    return v.str();
}

// ---------------------------------------------------------------------------
// Networks
// ---------------------------------------------------------------------------

inline Json network_to_json(const OscillatorNetwork& net) {
    Json j;
    j["N"] = net.N;
    j["edges"] = Json::array();
    for (auto [i, k] : net.edges) {
        Json e;
        e["i"] = i;
        e["j"] = k;
        Complex a = net.weight(i, k), b = net.weight(k, i);
        e["a_re"] = a.real();
        e["a_im"] = a.imag();
        if (b != a) {
            e["a_ji_re"] = b.real();
            e["a_ji_im"] = b.imag();
        }
        j["edges"].push_back(std::move(e));
    }
    j["omega"] = Json::array();
    for (const auto& w : net.omega) j["omega"].push_back(Json::array({w.real(), w.imag()}));
    return j;
}

inline OscillatorNetwork network_from_json(const Json& j) {
    OscillatorNetwork net;
    if (!j.contains("N") || !j.contains("edges") || !j.contains("omega"))
        throw std::invalid_argument("network JSON needs N, edges, omega");
    net.N = j.at("N").get<int>();
    for (const auto& e : j.at("edges")) {
        int a = e.at("i").get<int>(), b = e.at("j").get<int>();
        Complex w(e.at("a_re").get<double>(), e.at("a_im").get<double>());
        Complex wr = w;
        if (e.contains("a_ji_re") || e.contains("a_ji_im"))
            wr = Complex(e.value("a_ji_re", 0.0), e.value("a_ji_im", 0.0));
        net.edges.emplace_back(a, b);
        net.weights[{a, b}] = w;
        net.weights[{b, a}] = wr;
    }
    for (const auto& w : j.at("omega")) {
        if (!w.is_array() || w.size() != 2)
            throw std::invalid_argument("omega entries must be [re,im] pairs");
        net.omega.emplace_back(w[0].get<double>(), w[1].get<double>());
    }
    net.validate();
    net.symmetric_weights = true;
    for (auto [i, k] : net.edges)
        if (net.weights[{i, k}] != net.weights[{k, i}]) net.symmetric_weights = false;
    net.id = "file";
    return net;
}

inline OscillatorNetwork load_network(const std::string& text) {
    return network_from_json(Json::parse(text));
}

// ---------------------------------------------------------------------------
// Polytopes and facets
// ---------------------------------------------------------------------------

inline Json polytope_to_json(const LatticePolytope& P) {
    Json j;
    j["dim"] = P.dim_ambient();
    j["vertices"] = Json::array();
    for (const auto& v : P.vertices()) {
        Json row = Json::array();
        for (const auto& x : v) row.push_back(int_to_json(x));
        j["vertices"].push_back(std::move(row));
    }
    return j;
}

inline LatticePolytope polytope_from_json(const Json& j) {
    std::vector<LatticePoint> pts;
    for (const auto& row : j.at("vertices")) {
        LatticePoint p;
        for (const auto& x : row) {
            if (x.is_string())
                p.emplace_back(Int(x.get<std::string>()));
            else
                p.emplace_back(Int(x.get<std::int64_t>()));
        }
        pts.push_back(std::move(p));
    }
    auto P = convex_hull(pts);
    if (j.contains("dim") && j.at("dim").get<int>() != P.dim_ambient())
        throw std::invalid_argument("polytope dim mismatch");
    return P;
}

inline Json facet_to_json(const Facet& f) {
    Json j;
    j["normal"] = Json::array();
    for (const auto& x : f.normal) j["normal"].push_back(int_to_json(x));
    j["offset"] = int_to_json(f.offset);
    j["vertices"] = f.vertex_indices;
    return j;
}

// ---------------------------------------------------------------------------
// Systems, solutions, certificates
// ---------------------------------------------------------------------------

inline Json system_to_json(const LaurentSystem& sys) {
    Json j;
    j["n"] = sys.n;
    j["provenance"] = sys.provenance;
    j["equations"] = Json::array();
    for (const auto& eq : sys.equations) {
        Json terms = Json::array();
        for (const auto& [e, c] : eq.terms) {
            Json t;
            t["exponents"] = e;
            t["coeff"] = Json::array({c.real(), c.imag()});
            terms.push_back(std::move(t));
        }
        j["equations"].push_back(std::move(terms));
    }
    return j;
}

inline Json solution_set_to_json(const SolutionSet& set, double torus_tol = 1e-6) {
    Json j;
    j["count"] = set.solutions.size();
    j["torus_count"] = set.torus_count();
    j["solutions"] = Json::array();
    for (const auto& s : set.solutions) {
        Json e;
        Json pt = Json::array();
        for (const auto& z : s.point) pt.push_back(Json::array({z.real(), z.imag()}));
        e["point"] = std::move(pt);
        e["residual"] = s.residual;
        e["newton_converged"] = s.newton_converged;
        e["jacobian_condition_estimate"] = s.jacobian_condition_estimate;
        e["on_torus"] = s.on_torus;
        if (s.multiplicity_suspected) e["multiplicity_suspected"] = true;
        if (s.on_torus) {
            Json theta = Json::array();
            for (const auto& z : s.point) {
                double a = std::arg(z);
                if (a < 0) a += 2.0 * M_PI;
                theta.push_back(a);
            }
            e["theta"] = std::move(theta);
        }
        j["solutions"].push_back(std::move(e));
        (void)torus_tol;
    }
    Json stats;
    stats["tracked"] = set.raw_path_stats.tracked;
    stats["diverged"] = set.raw_path_stats.diverged;
    stats["at_zero"] = set.raw_path_stats.at_zero;
    stats["failed"] = set.raw_path_stats.failed;
    stats["merged"] = set.raw_path_stats.merged;
    j["path_stats"] = std::move(stats);
    j["inconclusive"] = set.inconclusive;
    if (set.non_generic) j["non_generic"] = true;
    if (!set.message.empty()) j["message"] = set.message;
    return j;
}

inline Json certificate_to_json(const IndependenceCertificate& cert) {
    Json j;
    j["pass"] = cert.pass;
    j["directions_checked"] = cert.directions_checked;
    j["trace"] = Json::array();
    for (const auto& rep : cert.trace) {
        Json e;
        Json dir = Json::array();
        for (const auto& x : rep.direction) dir.push_back(int_to_json(x));
        e["direction"] = std::move(dir);
        e["opposite_pair_found"] = rep.opposite_pair_found;
        if (rep.opposite_pair_found) {
            e["offending_equation"] = rep.offending_equation;
            e["offending_monomial"] = rep.offending_monomial;
        }
        j["trace"].push_back(std::move(e));
    }
    return j;
}

inline Json bound_report_to_json(const BoundReport& rep) {
    Json j;
    j["N"] = rep.N;
    j["topology"] = rep.topology == Topology::Tree    ? "tree"
                    : rep.topology == Topology::Cycle ? "cycle"
                                                      : "general";
    j["torus_count"] = rep.torus_count;
    j["cstar_count"] = rep.cstar_count;
    if (rep.theorem_value) j["closed_form"] = int_to_json(*rep.theorem_value);
    if (rep.mixed_volume_value) j["mixed_volume"] = int_to_json(*rep.mixed_volume_value);
    j["ap_bound"] = int_to_json(rep.ap_bound_value);
    j["baseline"] = int_to_json(rep.baseline);
    j["chain_ok"] = rep.chain_ok;
    j["partial"] = rep.partial;
    j["violations"] = rep.violations;
    return j;
}

} // namespace kap
