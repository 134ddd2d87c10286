/**
 * The algebraic synchronization system and everything derived from it:
 * Laurent supports and Newton polytopes, the adjacency polytope and its
 * bounds (closed-form and by exact triangulation), the tree reduction and
 * toric substitution, initial systems, and the cycle-graph facet and
 * initial-coefficient certificates.
 */
#pragma once

#include "graph.hpp"
#include "polytope.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace kap {

/// Exponent vector in Z^n. Entries are small; plain ints suffice.
using Exponent = std::vector<int>;

struct LaurentPolynomial {
    std::map<Exponent, Complex> terms; // no zero coefficients stored

    void add(const Exponent& e, Complex c) {
        if (c == Complex(0)) return;
        auto it = terms.find(e);
        if (it == terms.end()) {
            terms.emplace(e, c);
        } else {
            it->second += c;
            if (it->second == Complex(0)) terms.erase(it);
        }
    }

    Complex eval(const std::vector<Complex>& x) const {
        Complex s = 0;
        for (const auto& [e, c] : terms) {
            Complex m = c;
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (e[i] == 0) continue;
                m *= std::pow(x[i], e[i]);
            }
            s += m;
        }
        return s;
    }
};

struct LaurentSystem {
    int n = 0;
    std::vector<LaurentPolynomial> equations;
    std::string provenance;

    std::vector<Complex> eval(const std::vector<Complex>& x) const {
        std::vector<Complex> r(n);
        for (int i = 0; i < n; ++i) r[i] = equations[i].eval(x);
        return r;
    }

    double max_residual(const std::vector<Complex>& x) const {
        double m = 0;
        for (const auto& v : eval(x)) m = std::max(m, std::abs(v));
        return m;
    }

    /// Support of equation i as lattice points.
    std::vector<LatticePoint> support(int i) const {
        std::vector<LatticePoint> pts;
        for (const auto& [e, c] : equations[i].terms) {
            LatticePoint p(n);
            for (int j = 0; j < n; ++j) p[j] = e[j];
            pts.push_back(std::move(p));
        }
        return pts;
    }

    LatticePolytope newton_polytope(int i) const { return convex_hull(support(i)); }
};

/// Equation i of the algebraic system: omega_i - sum_j a'_ij (x_i/x_j - x_j/x_i)
/// with x_0 = 1 (exponent e_0 is the zero vector).
inline LaurentSystem build_system(const OscillatorNetwork& net) {
    net.validate();
    if (!net.connected()) throw std::invalid_argument("disconnected network");
    LaurentSystem sys;
    sys.n = net.n();
    sys.provenance = net.id;
    sys.equations.resize(sys.n);
    auto unit = [&](int v) { // e_v with e_0 = 0
        Exponent e(sys.n, 0);
        if (v > 0) e[v - 1] = 1;
        return e;
    };
    for (int i = 1; i <= sys.n; ++i) {
        auto& eq = sys.equations[i - 1];
        eq.add(Exponent(sys.n, 0), net.omega[i - 1]);
        for (int j : net.neighbors(i)) {
            Exponent eij(sys.n, 0), eji(sys.n, 0);
            auto ei = unit(i), ej = unit(j);
            for (int k = 0; k < sys.n; ++k) {
                eij[k] = ei[k] - ej[k];
                eji[k] = ej[k] - ei[k];
            }
            Complex a = net.weight(i, j);
            eq.add(eij, -a);
            eq.add(eji, a);
        }
    }
    return sys;
}

/// conv{ +-(e_i - e_j) : (i,j) in E }, with e_0 = 0.
inline LatticePolytope adjacency_polytope(const OscillatorNetwork& net) {
    if (!net.connected()) throw std::invalid_argument("disconnected network");
    const int n = net.n();
    std::vector<LatticePoint> pts;
    for (auto [i, j] : net.edges) {
        LatticePoint p(n, Int(0));
        if (i > 0) p[i - 1] = 1;
        if (j > 0) p[j - 1] = -1;
        pts.push_back(p);
        for (auto& x : p) x = -x;
        pts.push_back(p);
    }
    return convex_hull(pts);
}

// ---------------------------------------------------------------------------
// Closed-form bounds
// ---------------------------------------------------------------------------

/// AP bound of any tree with N vertices.
inline Int tree_formula(int N) {
    if (N < 2) throw std::invalid_argument("tree needs N >= 2");
    return int_pow2(N - 1);
}

/// AP bound of the N-cycle: N * C(N-1, floor((N-1)/2)).
inline Int cycle_formula(int N) {
    if (N < 3) throw std::invalid_argument("cycle needs N >= 3");
    return Int(N) * binomial(N - 1, (N - 1) / 2);
}

/// Topology-independent comparator C(2N-2, N-1).
inline Int baseline_bound(int N) {
    if (N < 2) throw std::invalid_argument("N >= 2 required");
    return binomial(2 * N - 2, N - 1);
}

enum class BoundMethod { Auto, Formula, Triangulation, Both };

struct ApBoundResult {
    Int ap_bound;
    std::optional<Int> formula_value;
    std::optional<Int> triangulation_value;
    Topology topology;
    int N;
};

inline ApBoundResult ap_bound(const OscillatorNetwork& net, BoundMethod method = BoundMethod::Auto) {
    auto topo = classify(net);
    ApBoundResult r;
    r.topology = topo.tag;
    r.N = topo.N;
    const bool closed_form = topo.tag == Topology::Tree || topo.tag == Topology::Cycle;
    if ((method == BoundMethod::Formula || method == BoundMethod::Both) && !closed_form)
        throw std::invalid_argument("no closed form in scope");
    if (method == BoundMethod::Auto)
        method = closed_form ? BoundMethod::Formula : BoundMethod::Triangulation;
    if (method == BoundMethod::Formula || method == BoundMethod::Both)
        r.formula_value = topo.tag == Topology::Tree ? tree_formula(topo.N) : cycle_formula(topo.N);
    if (method == BoundMethod::Triangulation || method == BoundMethod::Both)
        r.triangulation_value = normalized_volume(adjacency_polytope(net));
    if (method == BoundMethod::Both && *r.formula_value != *r.triangulation_value) {
        std::ostringstream os;
        os << "AP bound disagreement: formula " << *r.formula_value << " vs triangulation "
           << *r.triangulation_value;
        throw std::runtime_error(os.str());
    }
    r.ap_bound = r.formula_value ? *r.formula_value : *r.triangulation_value;
    return r;
}

// ---------------------------------------------------------------------------
// Tree reduction and toric substitution
// ---------------------------------------------------------------------------

struct TreeReduction {
    LaurentSystem system;              // omega*_i - a'_{i,pi(i)} (x_i/x_pi - x_pi/x_i)
    std::vector<Complex> omega_star;   // indexed 1..n (0-based storage)
};

/// Leaf-elimination loop: repeatedly add (a'_{pi(i),i}/a'_{i,pi(i)}) times
/// equation i to the parent equation, processing the highest index first.
/// The C*-solution set is unchanged. Requires pi(i) < i indexing.
inline TreeReduction tree_reduce(const LaurentSystem& sys, const TreeStructure& tree,
                                 const OscillatorNetwork& net) {
    const int n = sys.n;
    if (tree.N - 1 != n) throw std::invalid_argument("tree/system size mismatch");
    for (int i = 1; i <= n; ++i)
        if (tree.parent[i] >= i) throw std::invalid_argument("tree not in pi(i) < i indexing");
    TreeReduction out;
    out.system = sys;
    auto& eqs = out.system.equations;
    for (int i = n; i >= 1; --i) {
        int p = tree.parent[i];
        if (p == 0) continue;
        Complex a_child = net.weight(i, p);  // a'_{i,pi(i)}
        Complex a_parent = net.weight(p, i); // a'_{pi(i),i}
        if (a_child == Complex(0))
            throw std::runtime_error("non-generic weight (division by zero)");
        Complex ratio = a_parent / a_child;
        // the (i,p) edge terms cancel exactly by construction; erase them
        // instead of trusting floating-point cancellation
        Exponent ip(n, 0), pi(n, 0);
        ip[i - 1] = 1;
        pi[i - 1] = -1;
        if (p > 0) {
            ip[p - 1] = -1;
            pi[p - 1] = 1;
        }
        for (const auto& [e, c] : eqs[i - 1].terms) {
            if (e == ip || e == pi)
                eqs[p - 1].terms.erase(e);
            else
                eqs[p - 1].add(e, ratio * c);
        }
    }
    out.omega_star.resize(n);
    for (int i = 1; i <= n; ++i) {
        auto it = eqs[i - 1].terms.find(Exponent(n, 0));
        out.omega_star[i - 1] = it == eqs[i - 1].terms.end() ? Complex(0) : it->second;
    }
    out.system.provenance = sys.provenance + ":reduced";
    return out;
}

/// Monomial substitution x = y^A: exponent m maps to A*m, coefficients
/// unchanged. A must be unimodular.
inline LaurentSystem toric_substitution(const LaurentSystem& sys, const UnimodularMap& A) {
    if (A.dim() != sys.n) throw std::invalid_argument("dimension mismatch");
    LaurentSystem out;
    out.n = sys.n;
    out.provenance = sys.provenance + ":subst";
    out.equations.resize(sys.n);
    for (int i = 0; i < sys.n; ++i) {
        for (const auto& [e, c] : sys.equations[i].terms) {
            Exponent img(sys.n, 0);
            for (int r = 0; r < sys.n; ++r) {
                Int s = 0;
                for (int k = 0; k < sys.n; ++k) s += A.matrix[r][k] * e[k];
                img[r] = static_cast<int>(s);
            }
            out.equations[i].add(img, c);
        }
    }
    return out;
}

/// Point image under the torus automorphism x = y^A (x_i = prod_k y_k^{A_ki},
/// i.e. column i of A is the exponent vector of coordinate i).
inline std::vector<Complex> apply_monomial_map(const UnimodularMap& A,
                                               const std::vector<Complex>& y) {
    const int n = A.dim();
    std::vector<Complex> x(n, Complex(1));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            int e = static_cast<int>(A.matrix[k][i]);
            if (e != 0) x[i] *= std::pow(y[k], e);
        }
    return x;
}

// ---------------------------------------------------------------------------
// Initial systems
// ---------------------------------------------------------------------------

struct InitialSystem {
    std::vector<Rat> direction;
    std::vector<std::map<Exponent, Complex>> face_terms; // per equation
};

/// Restriction of every equation to the v-minimal face of its support.
inline InitialSystem initial_system(const LaurentSystem& sys, const std::vector<Rat>& v) {
    bool nz = false;
    for (const auto& x : v)
        if (x != 0) nz = true;
    if (!nz) throw std::invalid_argument("zero direction");
    InitialSystem out;
    out.direction = v;
    out.face_terms.resize(sys.n);
    std::vector<Int> vi = primitive_integer_direction(v);
    for (int i = 0; i < sys.n; ++i) {
        std::optional<Int> best;
        for (const auto& [e, c] : sys.equations[i].terms) {
            Int s = 0;
            for (int j = 0; j < sys.n; ++j) s += vi[j] * e[j];
            if (!best || s < *best) best = s;
        }
        for (const auto& [e, c] : sys.equations[i].terms) {
            Int s = 0;
            for (int j = 0; j < sys.n; ++j) s += vi[j] * e[j];
            if (s == *best) out.face_terms[i].emplace(e, c);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// P_N and the cycle facet census
// ---------------------------------------------------------------------------

/// P_N = conv{ +-e_1, ..., +-e_n, +-(e_1+...+e_n) } with n = N-1.
inline LatticePolytope pn_polytope(int N) {
    if (N < 3) throw std::invalid_argument("N >= 3 required");
    const int n = N - 1;
    std::vector<LatticePoint> pts;
    for (int i = 0; i < n; ++i) {
        LatticePoint p(n, Int(0));
        p[i] = 1;
        pts.push_back(p);
        p[i] = -1;
        pts.push_back(p);
    }
    pts.push_back(LatticePoint(n, Int(1)));
    pts.push_back(LatticePoint(n, Int(-1)));
    return convex_hull(pts);
}

/// Lower-triangular all-ones map sending the cycle adjacency polytope to P_N.
inline UnimodularMap cycle_to_pn_map(int N) {
    const int n = N - 1;
    std::vector<std::vector<Int>> m(n, std::vector<Int>(n, Int(0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) m[i][j] = 1;
    return UnimodularMap(std::move(m));
}

struct FacetCensus {
    int N = 0;
    int facet_count = 0;
    std::vector<Int> facet_volumes; // aligned with facet_enumeration order
    Int total = 0;
    bool all_unimodular = false;    // odd N: P_N is simplicial and unimodular
    bool sign_pattern_ok = false;   // even N: facets match the Lambda_n description
};

/// Facet count, per-facet normalized volumes, and the structural checks for
/// P_N: odd N facets are unimodular simplices; even N facets match the
/// sign-pattern family {lambda_1 e_1,...,lambda_n e_n, sum e_i} (or its
/// negation) with sum(lambda) = 1.
inline FacetCensus cycle_facet_family(int N) {
    LatticePolytope P = pn_polytope(N);
    const int n = N - 1;
    const auto& facets = facet_enumeration(P);
    FacetCensus census;
    census.N = N;
    census.facet_count = static_cast<int>(facets.size());
    census.all_unimodular = true;
    census.sign_pattern_ok = (N % 2 == 0);
    for (const auto& f : facets) {
        Int fv = facet_normalized_volume(P, f);
        census.total += fv;
        census.facet_volumes.push_back(fv);
        if (fv != 1 || static_cast<int>(f.vertex_indices.size()) != n)
            census.all_unimodular = false;
        if (N % 2 == 0) {
            // expect one vertex +-(1,...,1) and n signed unit vectors with the
            // opposite-signed sum condition
            int ones_sign = 0;
            std::vector<int> signs(n, 0);
            bool ok = static_cast<int>(f.vertex_indices.size()) == n + 1;
            for (int vi : f.vertex_indices) {
                const auto& p = P.vertices()[vi];
                int nz = 0, idx = -1;
                bool all_same = true;
                for (int j = 0; j < n; ++j) {
                    if (p[j] != 0) {
                        ++nz;
                        idx = j;
                    }
                    if (p[j] != p[0]) all_same = false;
                }
                if (nz == n && all_same)
                    ones_sign = p[0] > 0 ? 1 : -1;
                else if (nz == 1)
                    signs[idx] = p[idx] > 0 ? 1 : -1;
                else
                    ok = false;
            }
            int sum = 0;
            for (int s : signs) {
                if (s == 0) ok = false;
                sum += s;
            }
            // facet { lambda_i e_i, sum e_i } with sum(lambda) = 1, or its negation
            if (!(ok && ones_sign != 0 && sum == ones_sign)) census.sign_pattern_ok = false;
        }
    }
    return census;
}

// ---------------------------------------------------------------------------
// Independence certificate (cycle graphs)
// ---------------------------------------------------------------------------

struct DirectionReport {
    std::vector<Int> direction;
    bool opposite_pair_found = false;
    int offending_equation = -1;  // 1-based vertex index
    Exponent offending_monomial;  // the e_i - e_j that co-occurs with its negative
};

struct IndependenceCertificate {
    bool pass = false;
    int directions_checked = 0;
    std::vector<DirectionReport> trace; // only directions with non-singleton faces
};

namespace detail {

/// Reduced row echelon form with primitive integer rows; canonical key for
/// a row space.
inline std::vector<std::vector<Int>> canonical_span(std::vector<std::vector<Rat>> m, int n) {
    int r = 0;
    const int rows = static_cast<int>(m.size());
    std::vector<int> pivots;
    for (int c = 0; c < n && r < rows; ++c) {
        int p = -1;
        for (int i = r; i < rows; ++i)
            if (m[i][c] != 0) { p = i; break; }
        if (p < 0) continue;
        std::swap(m[r], m[p]);
        for (int i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rat f = m[i][c] / m[r][c];
            for (int j = c; j < n; ++j) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    std::vector<std::vector<Int>> out;
    for (int i = 0; i < r; ++i) {
        std::vector<Int> row = primitive_integer_direction(m[i]);
        if (row[pivots[i]] < 0)
            for (auto& x : row) x = -x;
        out.push_back(std::move(row));
    }
    return out;
}

/// All candidate facet normals of the Minkowski sum of the supports'
/// Newton polytopes, found by enumerating (n-1)-dimensional spans built from
/// the positive-dimensional face direction spans of the summands. This is a
/// superset of the true facet normals; spurious directions are harmless
/// (they get checked like any other).
inline std::vector<std::vector<Int>>
candidate_facet_normals(const std::vector<std::vector<LatticePoint>>& supports, int n) {
    // per summand: deduplicated linear spans of vertex-subset differences
    std::vector<std::vector<std::vector<std::vector<Int>>>> options(supports.size());
    for (std::size_t i = 0; i < supports.size(); ++i) {
        LatticePolytope Pi = convex_hull(supports[i]);
        const auto& vs = Pi.vertices();
        const int m = static_cast<int>(vs.size());
        std::set<std::vector<std::vector<Int>>> dedup;
        for (unsigned mask = 1; mask < (1u << m); ++mask) {
            if (__builtin_popcount(mask) < 2) continue;
            std::vector<const LatticePoint*> sub;
            for (int k = 0; k < m; ++k)
                if (mask & (1u << k)) sub.push_back(&vs[k]);
            std::vector<std::vector<Rat>> span;
            for (std::size_t k = 1; k < sub.size(); ++k) {
                std::vector<Rat> e(n);
                for (int j = 0; j < n; ++j) e[j] = Rat((*sub[k])[j] - (*sub[0])[j]);
                span.push_back(std::move(e));
            }
            auto canon = canonical_span(std::move(span), n);
            if (dedup.insert(canon).second) options[i].push_back(canon);
        }
    }

    // depth-first combination, maintaining an incremental echelon basis
    std::set<std::vector<Int>> normals;
    std::vector<std::vector<Rat>> basis;        // echelon rows
    std::vector<int> basis_pivot;               // pivot column per basis row

    auto try_add = [&](const std::vector<Int>& row_in) -> bool {
        std::vector<Rat> row(n);
        for (int j = 0; j < n; ++j) row[j] = Rat(row_in[j]);
        for (std::size_t b = 0; b < basis.size(); ++b) {
            int pc = basis_pivot[b];
            if (row[pc] == 0) continue;
            Rat f = row[pc] / basis[b][pc];
            for (int j = 0; j < n; ++j) row[j] -= f * basis[b][j];
        }
        int pc = -1;
        for (int j = 0; j < n; ++j)
            if (row[j] != 0) { pc = j; break; }
        if (pc < 0) return false;
        basis.push_back(std::move(row));
        basis_pivot.push_back(pc);
        return true;
    };

    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        const int r = static_cast<int>(basis.size());
        if (r > n - 1) return;
        // remaining summands can add at most 2 dimensions each
        if (r + 2 * static_cast<int>(options.size() - i) < n - 1) return;
        if (i == options.size()) {
            if (r != n - 1) return;
            // primitive normal of the (n-1)-dim span: 1-dim null space
            std::set<int> piv(basis_pivot.begin(), basis_pivot.end());
            int free_col = -1;
            for (int c = 0; c < n; ++c)
                if (!piv.count(c)) { free_col = c; break; }
            // order basis rows by pivot for back substitution
            std::vector<int> order(r);
            for (int k = 0; k < r; ++k) order[k] = k;
            std::sort(order.begin(), order.end(),
                      [&](int a, int b) { return basis_pivot[a] < basis_pivot[b]; });
            std::vector<Rat> nv(n, Rat(0));
            nv[free_col] = 1;
            for (int k = r - 1; k >= 0; --k) {
                int row = order[k];
                Rat s = basis[row][free_col];
                for (int k2 = k + 1; k2 < r; ++k2)
                    s += basis[row][basis_pivot[order[k2]]] * nv[basis_pivot[order[k2]]];
                nv[basis_pivot[row]] = -s / basis[row][basis_pivot[row]];
            }
            auto prim = primitive_integer_direction(nv);
            normals.insert(prim);
            for (auto& x : prim) x = -x;
            normals.insert(prim);
            return;
        }
        rec(i + 1); // vertex face of summand i: contributes nothing
        for (const auto& span : options[i]) {
            std::size_t saved = basis.size();
            int added = 0;
            for (const auto& e : span)
                if (try_add(e)) ++added;
            if (added > 0)
                rec(i + 1);
            // a span fully inside the current space repeats a coarser branch
            basis.resize(saved);
            basis_pivot.resize(saved);
        }
    };
    rec(0);
    return {normals.begin(), normals.end()};
}

} // namespace detail

/// Finite certificate for the cycle theorem: over representatives of the
/// cones of the supports' common normal-fan refinement (facet normals of the
/// Minkowski sum plus sums of adjacent pairs/triples, the configured fan
/// depth), no equation's initial face ever contains an opposite monomial
/// pair {e_i - e_j, e_j - e_i}.
inline IndependenceCertificate certify_independent_coefficients(
    const std::vector<std::vector<LatticePoint>>& supports, int n, int fan_depth = 3) {
    IndependenceCertificate cert;
    auto normals = detail::candidate_facet_normals(supports, n);

    auto argmin = [&](const std::vector<LatticePoint>& sup, const std::vector<Int>& v) {
        std::optional<Int> best;
        std::vector<int> arg;
        for (int k = 0; k < static_cast<int>(sup.size()); ++k) {
            Int s = dot(v, sup[k]);
            if (!best || s < *best) {
                best = s;
                arg = {k};
            } else if (s == *best) {
                arg.push_back(k);
            }
        }
        return arg;
    };

    std::set<std::vector<Int>> seen;
    std::vector<std::vector<Int>> queue = normals;
    if (fan_depth >= 2) {
        const auto& base = normals;
        const std::size_t nb = base.size();
        // precompute per-direction argmin sets once; adjacency (the two
        // facets share a face) holds iff the per-summand argmins intersect
        std::vector<std::vector<std::vector<int>>> faces(nb);
        for (std::size_t a = 0; a < nb; ++a)
            for (const auto& sup : supports) faces[a].push_back(argmin(sup, base[a]));
        auto adjacent = [&](std::size_t a, std::size_t b) {
            for (std::size_t s = 0; s < supports.size(); ++s) {
                const auto& fa = faces[a][s];
                const auto& fb = faces[b][s];
                bool hit = false;
                for (int x : fa) {
                    if (std::binary_search(fb.begin(), fb.end(), x)) { hit = true; break; }
                }
                if (!hit) return false;
            }
            return true;
        };
        std::vector<std::pair<std::size_t, std::size_t>> adj_pairs;
        for (std::size_t a = 0; a < nb; ++a)
            for (std::size_t b = a + 1; b < nb; ++b) {
                if (!adjacent(a, b)) continue;
                adj_pairs.emplace_back(a, b);
                std::vector<Int> v(n);
                for (int j = 0; j < n; ++j) v[j] = base[a][j] + base[b][j];
                make_primitive(v);
                if (!std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; }))
                    queue.push_back(std::move(v));
            }
        if (fan_depth >= 3) {
            for (auto [a, b] : adj_pairs)
                for (std::size_t c = b + 1; c < nb; ++c) {
                    if (!adjacent(a, c) || !adjacent(b, c)) continue;
                    std::vector<Int> w(n);
                    for (int j = 0; j < n; ++j) w[j] = base[a][j] + base[b][j] + base[c][j];
                    make_primitive(w);
                    if (!std::all_of(w.begin(), w.end(), [](const Int& x) { return x == 0; }))
                        queue.push_back(std::move(w));
                }
        }
    }

    cert.pass = true;
    for (const auto& v : queue) {
        if (!seen.insert(v).second) continue;
        ++cert.directions_checked;
        // a singleton face anywhere makes init_v a monomial equation, which
        // has no torus root regardless of coefficients; only directions with
        // every face non-singleton can defeat the generic-coefficient lemma
        std::vector<std::vector<int>> faces;
        bool all_nonsingleton = true;
        for (const auto& sup : supports) {
            faces.push_back(argmin(sup, v));
            if (faces.back().size() < 2) all_nonsingleton = false;
        }
        if (!all_nonsingleton) continue;
        DirectionReport rep;
        rep.direction = v;
        for (int i = 0; i < static_cast<int>(supports.size()) && !rep.opposite_pair_found; ++i) {
            const auto& face = faces[i];
            for (std::size_t a = 0; a < face.size() && !rep.opposite_pair_found; ++a)
                for (std::size_t b = a + 1; b < face.size(); ++b) {
                    const auto& pa = supports[i][face[a]];
                    const auto& pb = supports[i][face[b]];
                    bool opposite = true, zero = true;
                    for (int j = 0; j < n; ++j) {
                        if (pa[j] != -pb[j]) opposite = false;
                        if (pa[j] != 0) zero = false;
                    }
                    if (opposite && !zero) {
                        rep.opposite_pair_found = true;
                        rep.offending_equation = i + 1;
                        rep.offending_monomial.assign(n, 0);
                        for (int j = 0; j < n; ++j)
                            rep.offending_monomial[j] = static_cast<int>(pa[j]);
                        break;
                    }
                }
        }
        cert.trace.push_back(rep);
        if (rep.opposite_pair_found) cert.pass = false;
    }
    return cert;
}

/// Certificate for a cycle network's own supports.
inline IndependenceCertificate independence_certificate(const OscillatorNetwork& net,
                                                        int max_n = 8, int fan_depth = 3) {
    if (classify(net).tag != Topology::Cycle) throw std::invalid_argument("cycle topology required");
    if (net.N > max_n) throw std::invalid_argument("N over certificate enumeration limit");
    LaurentSystem sys = build_system(net);
    std::vector<std::vector<LatticePoint>> supports;
    for (int i = 0; i < sys.n; ++i) supports.push_back(sys.support(i));
    return certify_independent_coefficients(supports, sys.n, fan_depth);
}

/// Negative-control fixture: a C_3-like support family in which one equation
/// contains the opposite pair {e_1 - e_2, e_2 - e_1} on a shared minimal
/// face (the constant term is removed so the pair becomes v-minimal).
inline std::vector<std::vector<LatticePoint>> corrupted_support_fixture() {
    auto pt = [](std::initializer_list<int> xs) {
        LatticePoint p;
        for (int x : xs) p.emplace_back(x);
        return p;
    };
    std::vector<std::vector<LatticePoint>> sup(2);
    // at v = (1,1) both faces are non-singleton and equation 1's face is the
    // opposite pair {+-(e1-e2)}, so the certificate must reject this system
    sup[0] = {pt({1, -1}), pt({-1, 1}), pt({1, 1})};
    sup[1] = {pt({1, 0}), pt({0, 1})};
    return sup;
}

} // namespace kap
