/**
 * Solution machinery: denominator clearing, the closed-form tree solver
 * (reduce, substitute, quadratics), a total-degree homotopy continuation
 * tracker, torus classification, and the bound-chain verifier.
 *
 * Tracking runs on the cleared polynomial system; acceptance and polishing
 * use the Laurent form, whose residual is the contract.
 */
#pragma once

#include "graph.hpp"
#include "laurent.hpp"
#include "rng.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace kap {

// ---------------------------------------------------------------------------
// Cleared polynomial systems
// ---------------------------------------------------------------------------

struct PolynomialSystem {
    int n = 0;
    std::vector<LaurentPolynomial> equations; // nonnegative exponents only
    std::vector<Exponent> multipliers;        // clearing monomial per equation
    std::vector<int> degrees;                 // d_i = total degree of equation i
    LaurentSystem laurent;                    // source system (residual contract)

    long total_degree() const {
        long d = 1;
        for (int di : degrees) d *= di;
        return d;
    }
};

/// Multiply equation i by the smallest monomial making all exponents
/// nonnegative. Zero sets agree on (C*)^n; new roots have a zero coordinate
/// and are excluded downstream.
inline PolynomialSystem clear_denominators(const LaurentSystem& sys) {
    PolynomialSystem out;
    out.n = sys.n;
    out.laurent = sys;
    out.equations.resize(sys.n);
    out.multipliers.resize(sys.n);
    out.degrees.resize(sys.n);
    for (int i = 0; i < sys.n; ++i) {
        Exponent mult(sys.n, 0);
        for (const auto& [e, c] : sys.equations[i].terms)
            for (int j = 0; j < sys.n; ++j) mult[j] = std::max(mult[j], -e[j]);
        out.multipliers[i] = mult;
        int deg = 0;
        for (const auto& [e, c] : sys.equations[i].terms) {
            Exponent shifted(sys.n);
            int total = 0;
            for (int j = 0; j < sys.n; ++j) {
                shifted[j] = e[j] + mult[j];
                total += shifted[j];
            }
            deg = std::max(deg, total);
            out.equations[i].add(shifted, c);
        }
        out.degrees[i] = deg;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Solutions
// ---------------------------------------------------------------------------

struct Solution {
    std::vector<Complex> point;
    double residual = 0;                      // max |equation| on the Laurent form
    bool newton_converged = false;
    double jacobian_condition_estimate = 0;
    bool on_torus = false;                    // all | |x_i| - 1 | < torus_tol
    bool multiplicity_suspected = false;
};

struct PathStats {
    long tracked = 0;
    long diverged = 0;
    long at_zero = 0;
    long failed = 0;   // corrector never converged / step underflow
    long merged = 0;   // duplicates removed by dedup
};

struct SolutionSet {
    std::vector<Solution> solutions;
    PathStats raw_path_stats;
    bool inconclusive = false;   // > 5% of paths failed; retry with new gamma/seed
    bool non_generic = false;    // degenerate quadratic in the tree solver
    std::string message;

    long torus_count() const {
        long c = 0;
        for (const auto& s : solutions)
            if (s.on_torus) ++c;
        return c;
    }
};

struct TrackerConfig {
    std::optional<Complex> gamma;  // drawn from seed when unset
    double step_init = 0.02;
    double step_min = 1e-7;
    double step_max = 0.05;
    double newton_tol = 1e-10;
    int max_corrector_iters = 10;
    double t_end_threshold = 1e-10;
    double diverge_norm = 1e8;
    double coordinate_zero_tol = 1e-6;
    double dedup_tol = 1e-6;
    double accept_tol = 1e-9;
    double torus_tol = 1e-6;
    std::uint64_t seed = 0;
    long path_budget = 2000;

    void validate() const {
        if (!(0 < step_min && step_min <= step_init && step_init <= step_max && step_max < 1))
            throw std::invalid_argument("step sizes out of order");
        if (newton_tol <= 0 || diverge_norm <= 0 || coordinate_zero_tol <= 0 ||
            dedup_tol <= 0 || accept_tol <= 0 || torus_tol <= 0)
            throw std::invalid_argument("tolerances must be positive");
    }
};

namespace detail {

using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

inline CVec eval_poly(const std::vector<LaurentPolynomial>& eqs, const CVec& x) {
    const int n = static_cast<int>(eqs.size());
    CVec r(n);
    for (int i = 0; i < n; ++i) {
        Complex s = 0;
        for (const auto& [e, c] : eqs[i].terms) {
            Complex m = c;
            for (int j = 0; j < n; ++j)
                if (e[j] != 0) m *= std::pow(x[j], e[j]);
            s += m;
        }
        r[i] = s;
    }
    return r;
}

/// Jacobian of a system with possibly negative exponents; valid wherever
/// every x_j with a negative exponent is nonzero.
inline CMat jac_poly(const std::vector<LaurentPolynomial>& eqs, const CVec& x) {
    const int n = static_cast<int>(eqs.size());
    CMat J = CMat::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (const auto& [e, c] : eqs[i].terms) {
            Complex m = c;
            for (int j = 0; j < n; ++j)
                if (e[j] != 0) m *= std::pow(x[j], e[j]);
            for (int j = 0; j < n; ++j)
                if (e[j] != 0) J(i, j) += m * Complex(e[j]) / x[j];
        }
    return J;
}

/// Newton iteration on an arbitrary (Laurent or polynomial) square system.
/// Returns convergence flag; writes back the refined point.
inline bool newton_refine(const std::vector<LaurentPolynomial>& eqs, CVec& x, double tol,
                          int max_iters) {
    for (int it = 0; it < max_iters; ++it) {
        CVec f = eval_poly(eqs, x);
        if (f.lpNorm<Eigen::Infinity>() < tol) return true;
        CMat J = jac_poly(eqs, x);
        Eigen::PartialPivLU<CMat> lu(J);
        CVec dx = lu.solve(f);
        if (!dx.allFinite()) return false;
        x -= dx;
    }
    return eval_poly(eqs, x).lpNorm<Eigen::Infinity>() < tol;
}

/// Rough condition estimate from full-pivot LU pivot magnitudes.
inline double condition_estimate(const CMat& J) {
    Eigen::FullPivLU<CMat> lu(J);
    const auto& U = lu.matrixLU();
    double mx = 0, mn = std::numeric_limits<double>::infinity();
    for (int i = 0; i < U.rows(); ++i) {
        double p = std::abs(U(i, i));
        mx = std::max(mx, p);
        mn = std::min(mn, p);
    }
    if (mn == 0) return std::numeric_limits<double>::infinity();
    return mx / mn;
}

/// Deterministic ordering: lexicographic by coordinates rounded to the dedup
/// scale, so path scheduling cannot reorder reports.
inline void sort_solutions(std::vector<Solution>& sols) {
    auto key = [](const Solution& s) {
        std::vector<long long> k;
        for (const auto& z : s.point) {
            k.push_back(llround(z.real() * 1e7));
            k.push_back(llround(z.imag() * 1e7));
        }
        return k;
    };
    std::sort(sols.begin(), sols.end(),
              [&](const Solution& a, const Solution& b) { return key(a) < key(b); });
}

inline double point_distance(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    double d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

} // namespace detail

/// Accept, classify, and deduplicate raw C* endpoints against the Laurent
/// form. Shared by both solvers.
inline void finalize_solutions(const LaurentSystem& lsys, std::vector<Solution>& raw,
                               const TrackerConfig& cfg, SolutionSet& out) {
    std::vector<Solution> kept;
    for (auto& s : raw) {
        detail::CVec x(lsys.n);
        for (int i = 0; i < lsys.n; ++i) x[i] = s.point[i];
        bool conv = detail::newton_refine(lsys.equations, x, cfg.accept_tol * 0.1,
                                          cfg.max_corrector_iters);
        bool zero = false;
        for (int i = 0; i < lsys.n; ++i) {
            s.point[i] = x[i];
            if (std::abs(x[i]) < cfg.coordinate_zero_tol) zero = true;
        }
        if (zero) {
            ++out.raw_path_stats.at_zero;
            continue;
        }
        s.residual = lsys.max_residual(s.point);
        s.newton_converged = conv;
        s.jacobian_condition_estimate = detail::condition_estimate(detail::jac_poly(lsys.equations, x));
        if (s.residual >= cfg.accept_tol) {
            ++out.raw_path_stats.failed;
            continue;
        }
        bool torus = true;
        for (const auto& z : s.point)
            if (std::abs(std::abs(z) - 1.0) >= cfg.torus_tol) torus = false;
        s.on_torus = torus;
        bool dup = false;
        for (auto& k : kept)
            if (detail::point_distance(k.point, s.point) < cfg.dedup_tol) {
                dup = true;
                // cluster that resists quadratic Newton convergence: flag it
                if (!conv || !k.newton_converged) k.multiplicity_suspected = true;
                break;
            }
        if (dup)
            ++out.raw_path_stats.merged;
        else
            kept.push_back(std::move(s));
    }
    detail::sort_solutions(kept);
    out.solutions = std::move(kept);
}

// ---------------------------------------------------------------------------
// Closed-form tree solver
// ---------------------------------------------------------------------------

/// Exact solver for tree networks: reindex so every parent precedes its
/// child, eliminate leaves, substitute x = y^A, and solve one quadratic
/// -a y^2 + omega* y + a = 0 per coordinate. 2^{N-1} solutions generically.
inline SolutionSet tree_solve(const OscillatorNetwork& net, const TrackerConfig& cfg = {}) {
    cfg.validate();
    if (classify(net).tag != Topology::Tree) throw std::invalid_argument("not a tree");
    auto t0 = tree_structure(net);
    auto relnet = relabel(net, t0.reindex_perm);
    auto tree = tree_structure(relnet);
    auto reduction = tree_reduce(build_system(relnet), tree, relnet);
    auto A = tree_exponent_matrix(tree);
    const int n = net.n();

    SolutionSet out;
    std::vector<std::array<Complex, 2>> roots(n);
    for (int i = 1; i <= n; ++i) {
        Complex a = relnet.weight(i, tree.parent[i]);
        Complex ws = reduction.omega_star[i - 1];
        Complex disc = ws * ws + Complex(4) * a * a;
        if (a == Complex(0) || disc == Complex(0)) {
            out.non_generic = true;
            out.message = "non-generic instance";
        }
        Complex sq = std::sqrt(disc);
        roots[i - 1] = {(ws + sq) / (Complex(2) * a), (ws - sq) / (Complex(2) * a)};
    }

    auto lsys = build_system(net);
    std::vector<Solution> raw;
    std::vector<Complex> y(n);
    for (long mask = 0; mask < (1L << n); ++mask) {
        for (int i = 0; i < n; ++i) y[i] = roots[i][(mask >> i) & 1];
        auto xrel = apply_monomial_map(A, y);
        Solution s;
        // undo the reindexing: relabeled coordinate perm[i]-1 is vertex i
        s.point.resize(n);
        for (int i = 1; i <= net.N - 1; ++i) s.point[i - 1] = xrel[t0.reindex_perm[i] - 1];
        raw.push_back(std::move(s));
    }
    out.raw_path_stats.tracked = static_cast<long>(raw.size());
    finalize_solutions(lsys, raw, cfg, out);
    return out;
}

// ---------------------------------------------------------------------------
// Total-degree homotopy continuation
// ---------------------------------------------------------------------------

namespace detail {

struct Homotopy {
    const PolynomialSystem& psys;
    Complex gamma;
    std::vector<int> degrees;

    CVec eval_start(const CVec& x) const {
        const int n = psys.n;
        CVec g(n);
        for (int i = 0; i < n; ++i) g[i] = std::pow(x[i], degrees[i]) - Complex(1);
        return g;
    }

    CMat jac_start(const CVec& x) const {
        const int n = psys.n;
        CMat J = CMat::Zero(n, n);
        for (int i = 0; i < n; ++i)
            J(i, i) = Complex(degrees[i]) * std::pow(x[i], degrees[i] - 1);
        return J;
    }

    CVec eval(const CVec& x, double t) const {
        return Complex(1 - t) * gamma * eval_start(x) + Complex(t) * eval_poly(psys.equations, x);
    }

    CMat jac_x(const CVec& x, double t) const {
        return Complex(1 - t) * gamma * jac_start(x) + Complex(t) * jac_poly(psys.equations, x);
    }

    CVec dH_dt(const CVec& x) const {
        return -gamma * eval_start(x) + eval_poly(psys.equations, x);
    }

    /// Davidenko tangent dx/dt = -H_x^{-1} H_t.
    std::optional<CVec> tangent(const CVec& x, double t) const {
        Eigen::PartialPivLU<CMat> lu(jac_x(x, t));
        CVec dx = lu.solve(-dH_dt(x));
        if (!dx.allFinite()) return std::nullopt;
        return dx;
    }
};

enum class PathEnd { Converged, Diverged, Failed };

/// Track one start point from t = 0 to t = 1 with an explicit 4th-order
/// predictor on the Davidenko ODE and a Newton corrector; halve the step on
/// corrector failure, grow it after clean steps.
inline PathEnd track_path(const Homotopy& H, CVec& x, const TrackerConfig& cfg) {
    double t = 0, h = cfg.step_init;
    while (t < 1.0 - cfg.t_end_threshold) {
        h = std::min(h, 1.0 - t);
        auto k1 = H.tangent(x, t);
        if (!k1) return PathEnd::Failed;
        auto k2 = H.tangent(x + 0.5 * h * *k1, t + 0.5 * h);
        auto k3 = k2 ? H.tangent(x + 0.5 * h * *k2, t + 0.5 * h) : std::nullopt;
        auto k4 = k3 ? H.tangent(x + h * *k3, t + h) : std::nullopt;
        bool ok = false;
        CVec xp;
        if (k4) {
            xp = x + (h / 6.0) * (*k1 + 2.0 * *k2 + 2.0 * *k3 + *k4);
            if (xp.allFinite()) {
                // corrector at the advanced time
                // few corrector iterations per step: a long correction is a
                // sign the predictor left the tracked path's basin; the
                // criterion is relative so large-coordinate paths converge
                double tn = t + h;
                const int iters = std::min(3, cfg.max_corrector_iters);
                ok = false;
                for (int it = 0; it < iters; ++it) {
                    Eigen::PartialPivLU<CMat> lu(H.jac_x(xp, tn));
                    CVec dx = lu.solve(H.eval(xp, tn));
                    if (!dx.allFinite()) break;
                    xp -= dx;
                    if (dx.norm() < cfg.newton_tol * std::max(1.0, xp.norm())) {
                        ok = true;
                        break;
                    }
                }
            }
        }
        if (ok) {
            x = xp;
            t += h;
            if (x.norm() > cfg.diverge_norm) return PathEnd::Diverged;
            h = std::min(h * 2.0, cfg.step_max);
        } else {
            h *= 0.5;
            if (h < cfg.step_min) return PathEnd::Failed;
        }
    }
    // land exactly at t = 1
    for (int it = 0; it < cfg.max_corrector_iters; ++it) {
        Eigen::PartialPivLU<CMat> lu(H.jac_x(x, 1.0));
        CVec dx = lu.solve(H.eval(x, 1.0));
        if (!dx.allFinite()) return PathEnd::Failed;
        x -= dx;
        if (dx.norm() < cfg.newton_tol * std::max(1.0, x.norm())) return PathEnd::Converged;
    }
    return PathEnd::Failed;
}

} // namespace detail

inline SolutionSet homotopy_solve(const PolynomialSystem& psys, const TrackerConfig& cfg = {}) {
    cfg.validate();
    const int n = psys.n;
    const long total = psys.total_degree();
    if (total > cfg.path_budget) throw std::invalid_argument("path budget exceeded");

    Rng rng(cfg.seed ^ 0x5b1dULL);
    Complex gamma = cfg.gamma.value_or(std::polar(1.0, 2.0 * M_PI * rng.next_unit()));
    detail::Homotopy H{psys, gamma, psys.degrees};

    SolutionSet out;
    out.raw_path_stats.tracked = total;
    std::vector<Solution> raw;
    std::vector<int> idx(n, 0);
    for (long p = 0; p < total; ++p) {
        detail::CVec start(n);
        for (int i = 0; i < n; ++i)
            start[i] = std::polar(1.0, 2.0 * M_PI * idx[i] / psys.degrees[i]);
        detail::CVec x = start;
        auto end = detail::track_path(H, x, cfg);
        if (end == detail::PathEnd::Failed) {
            // one deterministic retry with fine steps before giving up
            TrackerConfig fine = cfg;
            fine.step_init = cfg.step_init / 10;
            fine.step_max = cfg.step_max / 10;
            x = start;
            end = detail::track_path(H, x, fine);
        }
        double mn = std::numeric_limits<double>::infinity();
        for (int i = 0; i < n; ++i) mn = std::min(mn, std::abs(x[i]));
        if (end == detail::PathEnd::Converged && x.norm() <= cfg.diverge_norm &&
            mn >= cfg.coordinate_zero_tol) {
            Solution s;
            s.point.assign(x.data(), x.data() + n);
            raw.push_back(std::move(s));
        } else if (end == detail::PathEnd::Diverged || x.norm() > 1e3 ||
                   (end == detail::PathEnd::Converged && x.norm() > cfg.diverge_norm)) {
            ++out.raw_path_stats.diverged;
        } else if (mn < 1e-3) {
            // stalled while collapsing onto a coordinate hyperplane
            ++out.raw_path_stats.at_zero;
        } else {
            ++out.raw_path_stats.failed;
        }
        for (int i = 0; i < n; ++i) {
            if (++idx[i] < psys.degrees[i]) break;
            idx[i] = 0;
        }
    }
    finalize_solutions(psys.laurent, raw, cfg, out);
    if (out.raw_path_stats.failed * 20 > total) {
        out.inconclusive = true;
        out.message = "inconclusive run, retry with new gamma/seed";
    }
    return out;
}

inline SolutionSet homotopy_solve(const OscillatorNetwork& net, const TrackerConfig& cfg = {}) {
    return homotopy_solve(clear_denominators(build_system(net)), cfg);
}

// ---------------------------------------------------------------------------
// Torus classification
// ---------------------------------------------------------------------------

/// Residual of the sine system omega_i - sum_j a_ij sin(theta_i - theta_j)
/// at theta (theta_0 = 0), using the physical couplings a_ij = 2i a'_ij.
inline double sine_residual(const OscillatorNetwork& net, const std::vector<double>& theta) {
    double worst = 0;
    for (int i = 1; i < net.N; ++i) {
        Complex s = net.omega[i - 1];
        double ti = theta[i - 1];
        for (int j : net.neighbors(i)) {
            double tj = j == 0 ? 0.0 : theta[j - 1];
            s -= physical_coupling(net, i, j) * std::sin(ti - tj);
        }
        worst = std::max(worst, std::abs(s));
    }
    return worst;
}

struct TorusClassification {
    std::vector<Solution> torus_solutions;
    std::vector<std::vector<double>> angles; // theta_i = arg(x_i) in [0, 2pi)
};

inline TorusClassification classify_torus(const SolutionSet& set, double torus_tol = 1e-6) {
    TorusClassification out;
    for (const auto& s : set.solutions) {
        bool torus = true;
        for (const auto& z : s.point)
            if (std::abs(std::abs(z) - 1.0) >= torus_tol) torus = false;
        if (!torus) continue;
        std::vector<double> theta;
        for (const auto& z : s.point) {
            double a = std::arg(z);
            if (a < 0) a += 2.0 * M_PI;
            theta.push_back(a);
        }
        out.torus_solutions.push_back(s);
        out.angles.push_back(std::move(theta));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Bound chain
// ---------------------------------------------------------------------------

struct BoundReport {
    int N = 0;
    Topology topology = Topology::General;
    long torus_count = 0;
    long cstar_count = 0;
    std::optional<Int> theorem_value; // tree/cycle closed form
    std::optional<Int> mixed_volume_value;
    Int ap_bound_value;
    Int baseline;
    bool chain_ok = true;
    bool partial = false; // solver inconclusive
    std::vector<std::string> violations;
};

/// Assembles torus count <= C* count <= closed form <= mixed volume <= AP
/// bound and checks every comparison. Mixed volume is skipped above the
/// inclusion-exclusion size limit.
inline BoundReport verify_chain(const OscillatorNetwork& net, const TrackerConfig& cfg = {},
                                int mixed_volume_max_n = 5) {
    auto topo = classify(net);
    BoundReport rep;
    rep.N = topo.N;
    rep.topology = topo.tag;
    rep.baseline = baseline_bound(topo.N);
    rep.ap_bound_value = ap_bound(net).ap_bound;
    if (topo.tag == Topology::Tree)
        rep.theorem_value = tree_formula(topo.N);
    else if (topo.tag == Topology::Cycle)
        rep.theorem_value = cycle_formula(topo.N);

    auto lsys = build_system(net);
    if (net.n() <= mixed_volume_max_n) {
        std::vector<LatticePolytope> newtons;
        for (int i = 0; i < lsys.n; ++i) newtons.push_back(lsys.newton_polytope(i));
        rep.mixed_volume_value = mixed_volume(newtons);
    }

    SolutionSet sols =
        topo.tag == Topology::Tree ? tree_solve(net, cfg) : homotopy_solve(net, cfg);
    rep.partial = sols.inconclusive;
    rep.cstar_count = static_cast<long>(sols.solutions.size());
    rep.torus_count = sols.torus_count();

    auto violate = [&](const std::string& what) {
        rep.chain_ok = false;
        rep.violations.push_back(what);
    };
    if (rep.torus_count > rep.cstar_count) violate("torus count exceeds C* count");
    if (rep.theorem_value && Int(rep.cstar_count) > *rep.theorem_value)
        violate("C* count exceeds the closed-form value");
    if (rep.mixed_volume_value) {
        if (Int(rep.cstar_count) > *rep.mixed_volume_value)
            violate("C* count exceeds the mixed volume");
        if (rep.theorem_value && *rep.theorem_value > *rep.mixed_volume_value)
            violate("closed form exceeds the mixed volume");
        if (*rep.mixed_volume_value > rep.ap_bound_value)
            violate("mixed volume exceeds the AP bound");
    }
    if (Int(rep.cstar_count) > rep.ap_bound_value) violate("C* count exceeds the AP bound");
    return rep;
}

} // namespace kap
