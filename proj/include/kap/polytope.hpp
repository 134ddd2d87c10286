/**
 * Exact rational convex/lattice geometry: hulls, facets, triangulations,
 * normalized volume, free sums, Minkowski sums, mixed volume, reflexivity
 * and unimodular maps.
 *
 * All predicates are exact (arbitrary-precision integers/rationals); there
 * is no epsilon logic anywhere in this module. The hull is an incremental
 * beneath-beyond construction that maintains a simplicial triangulation of
 * the boundary; coplanar boundary simplices are merged into true facets
 * afterwards. Intended scale is small dimension (n <= ~8) with few
 * vertices, which is all the adjacency/Newton polytopes here need.
 */
#pragma once

#include "numeric.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace kap {

using LatticePoint = std::vector<Int>;

/// Point with exact rational coordinates (directions, affine coordinates).
struct RationalPoint {
    std::vector<Rat> coords;

    int dim() const { return static_cast<int>(coords.size()); }
};

/// Supporting hyperplane {x : <normal,x> = offset} with the polytope on the
/// side <normal,x> >= offset. The normal is primitive integer.
struct Facet {
    std::vector<Int> normal;
    Int offset;
    std::vector<int> vertex_indices; // polytope vertices lying on the facet
};

struct UnimodularMap {
    std::vector<std::vector<Int>> matrix; // row-major, n x n
    int det_sign = 1;

    explicit UnimodularMap(std::vector<std::vector<Int>> m);

    int dim() const { return static_cast<int>(matrix.size()); }
    LatticePoint apply(const LatticePoint& p) const;
    UnimodularMap inverse() const;
};

struct SimplicialCell {
    std::vector<int> vertex_indices; // indices into the owning point list
    Int normalized_volume;
};

/// Simplicial cells over an explicit point list (the apex of a cone
/// triangulation need not be a polytope vertex, so cells carry their own
/// points).
struct Triangulation {
    std::vector<LatticePoint> points;
    std::vector<SimplicialCell> cells;

    Int total_volume() const {
        Int s = 0;
        for (const auto& c : cells) s += c.normalized_volume;
        return s;
    }
};

// ---------------------------------------------------------------------------
// Exact linear algebra helpers
// ---------------------------------------------------------------------------

inline Int dot(const std::vector<Int>& a, const LatticePoint& b) {
    Int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Rat dot_rat(const std::vector<Rat>& a, const std::vector<Rat>& b) {
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

/// |det| of a square integer matrix by fraction-free (Bareiss) elimination.
inline Int abs_det(std::vector<std::vector<Int>> m) {
    const int n = static_cast<int>(m.size());
    if (n == 0) return 1;
    Int prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m[k][k] == 0) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (m[i][k] != 0) { p = i; break; }
            if (p < 0) return 0;
            std::swap(m[k], m[p]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    Int d = m[n - 1][n - 1];
    if (sign < 0) d = -d;
    return d < 0 ? -d : d;
}

/// Rank of a rational matrix by Gaussian elimination.
inline int rank_rat(std::vector<std::vector<Rat>> m) {
    if (m.empty()) return 0;
    const int rows = static_cast<int>(m.size());
    const int cols = static_cast<int>(m[0].size());
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int p = -1;
        for (int i = r; i < rows; ++i)
            if (m[i][c] != 0) { p = i; break; }
        if (p < 0) continue;
        std::swap(m[r], m[p]);
        for (int i = r + 1; i < rows; ++i) {
            if (m[i][c] == 0) continue;
            Rat f = m[i][c] / m[r][c];
            for (int j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        ++r;
    }
    return r;
}

/// Normalized volume of a k-simplex spanned by integer edge vectors (rows),
/// measured in the lattice induced on its affine span: the gcd of the
/// maximal minors of the k x d edge matrix. For k = d this is |det|.
inline Int simplex_lattice_volume(const std::vector<std::vector<Int>>& edges) {
    const int k = static_cast<int>(edges.size());
    if (k == 0) return 1;
    const int d = static_cast<int>(edges[0].size());
    if (k == d) return abs_det(edges);
    // enumerate k-subsets of columns
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    Int g = 0;
    for (;;) {
        std::vector<std::vector<Int>> sub(k, std::vector<Int>(k));
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) sub[i][j] = edges[i][idx[j]];
        g = int_gcd(g, abs_det(sub));
        int pos = k - 1;
        while (pos >= 0 && idx[pos] == d - k + pos) --pos;
        if (pos < 0) break;
        ++idx[pos];
        for (int i = pos + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
    }
    return g;
}

/// Primitive integer normal of the hyperplane through d affinely independent
/// integer points in R^d (unique up to sign).
inline std::vector<Int> hyperplane_normal(const std::vector<LatticePoint>& pts) {
    const int d = static_cast<int>(pts[0].size());
    const int m = static_cast<int>(pts.size()) - 1;
    // Solve E n = 0 for the (d-1) x d edge matrix E.
    std::vector<std::vector<Rat>> e(m, std::vector<Rat>(d));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < d; ++j) e[i][j] = Rat(pts[i + 1][j] - pts[0][j]);
    // row echelon with column pivots
    std::vector<int> pivot_col;
    int r = 0;
    for (int c = 0; c < d && r < m; ++c) {
        int p = -1;
        for (int i = r; i < m; ++i)
            if (e[i][c] != 0) { p = i; break; }
        if (p < 0) continue;
        std::swap(e[r], e[p]);
        for (int i = 0; i < m; ++i) {
            if (i == r || e[i][c] == 0) continue;
            Rat f = e[i][c] / e[r][c];
            for (int j = c; j < d; ++j) e[i][j] -= f * e[r][j];
        }
        pivot_col.push_back(c);
        ++r;
    }
    if (r != d - 1) throw std::runtime_error("degenerate facet: points do not span a hyperplane");
    // one free column
    int free_col = -1;
    std::set<int> piv(pivot_col.begin(), pivot_col.end());
    for (int c = 0; c < d; ++c)
        if (!piv.count(c)) { free_col = c; break; }
    std::vector<Rat> n(d, Rat(0));
    n[free_col] = 1;
    for (int i = r - 1; i >= 0; --i) {
        Rat s = e[i][free_col];
        for (int k2 = i + 1; k2 < r; ++k2) s += e[i][pivot_col[k2]] * n[pivot_col[k2]];
        n[pivot_col[i]] = -s / e[i][pivot_col[i]];
    }
    return primitive_integer_direction(n);
}

// ---------------------------------------------------------------------------
// LatticePolytope
// ---------------------------------------------------------------------------

class LatticePolytope {
public:
    LatticePolytope() = default;
    LatticePolytope(int dim_ambient, std::vector<LatticePoint> vertices, int affine_dim)
        : dim_ambient_(dim_ambient), vertices_(std::move(vertices)), affine_dim_(affine_dim) {}

    int dim_ambient() const { return dim_ambient_; }
    int affine_dim() const { return affine_dim_; }
    bool full_dimensional() const { return affine_dim_ == dim_ambient_; }
    const std::vector<LatticePoint>& vertices() const { return vertices_; }

    mutable std::optional<std::vector<Facet>> facet_cache;

private:
    int dim_ambient_ = 0;
    std::vector<LatticePoint> vertices_;
    int affine_dim_ = 0;
};

namespace detail {

struct BoundarySimplex {
    std::vector<int> verts; // sorted, size = dim
    std::vector<Int> normal;
    Int offset; // hull satisfies <normal,x> >= offset
};

struct HullResult {
    std::vector<LatticePoint> points; // deduped input points
    std::vector<BoundarySimplex> boundary;
};

/// Incremental (placing) hull of a full-dimensional integer point set.
/// Insertion order follows the given point order after the initial simplex.
inline HullResult hull_full_dim(const std::vector<LatticePoint>& pts_in, int d) {
    HullResult h;
    {
        std::set<LatticePoint> seen;
        for (const auto& p : pts_in)
            if (seen.insert(p).second) h.points.push_back(p);
    }
    const auto& pts = h.points;
    const int m = static_cast<int>(pts.size());
    if (m < d + 1) throw std::runtime_error("not full-dimensional");

    // greedily pick d+1 affinely independent points
    std::vector<int> base{0};
    std::vector<std::vector<Rat>> edges;
    for (int i = 1; i < m && static_cast<int>(base.size()) < d + 1; ++i) {
        std::vector<Rat> e(d);
        for (int j = 0; j < d; ++j) e[j] = Rat(pts[i][j] - pts[0][j]);
        edges.push_back(e);
        if (rank_rat(edges) == static_cast<int>(edges.size()))
            base.push_back(i);
        else
            edges.pop_back();
    }
    if (static_cast<int>(base.size()) < d + 1) throw std::runtime_error("not full-dimensional");

    // strictly interior reference point: centroid of the initial simplex
    std::vector<Rat> ref(d, Rat(0));
    for (int i : base)
        for (int j = 0; j < d; ++j) ref[j] += Rat(pts[i][j], d + 1);

    auto make_simplex = [&](std::vector<int> vs) {
        std::sort(vs.begin(), vs.end());
        std::vector<LatticePoint> fp;
        for (int v : vs) fp.push_back(pts[v]);
        BoundarySimplex s;
        s.verts = std::move(vs);
        s.normal = hyperplane_normal(fp);
        s.offset = dot(s.normal, fp[0]);
        // orient so the interior reference satisfies <n,ref> > offset
        Rat side = 0;
        for (int j = 0; j < d; ++j) side += Rat(s.normal[j]) * ref[j];
        if (side < Rat(s.offset)) {
            for (auto& x : s.normal) x = -x;
            s.offset = -s.offset;
        }
        return s;
    };

    std::vector<BoundarySimplex> facets;
    for (int skip = 0; skip < d + 1; ++skip) {
        std::vector<int> vs;
        for (int i = 0; i < d + 1; ++i)
            if (i != skip) vs.push_back(base[i]);
        facets.push_back(make_simplex(vs));
    }

    std::set<int> in_base(base.begin(), base.end());
    for (int i = 0; i < m; ++i) {
        if (in_base.count(i)) continue;
        std::vector<int> visible;
        for (int f = 0; f < static_cast<int>(facets.size()); ++f)
            if (dot(facets[f].normal, pts[i]) < facets[f].offset) visible.push_back(f);
        if (visible.empty()) continue; // inside the current hull
        // horizon ridges: ridges incident to exactly one visible facet
        std::map<std::vector<int>, int> ridge_count;
        for (int f : visible) {
            const auto& vs = facets[f].verts;
            for (int skip = 0; skip < d; ++skip) {
                std::vector<int> ridge;
                for (int k2 = 0; k2 < d; ++k2)
                    if (k2 != skip) ridge.push_back(vs[k2]);
                ++ridge_count[ridge];
            }
        }
        std::vector<BoundarySimplex> fresh;
        for (const auto& [ridge, cnt] : ridge_count) {
            if (cnt != 1) continue;
            std::vector<int> vs = ridge;
            vs.push_back(i);
            fresh.push_back(make_simplex(std::move(vs)));
        }
        std::set<int> kill(visible.begin(), visible.end());
        std::vector<BoundarySimplex> next;
        next.reserve(facets.size() - kill.size() + fresh.size());
        for (int f = 0; f < static_cast<int>(facets.size()); ++f)
            if (!kill.count(f)) next.push_back(std::move(facets[f]));
        for (auto& s : fresh) next.push_back(std::move(s));
        facets = std::move(next);
    }
    h.boundary = std::move(facets);
    return h;
}

/// Affine-coordinate reduction for a non-full-dimensional point set:
/// rational coordinates w.r.t. a basis of edge vectors, rescaled columnwise
/// to integers (convexity combinatorics is preserved).
struct AffineFrame {
    int affine_dim = 0;
    std::vector<LatticePoint> reduced; // one per (deduped) input point
    std::vector<LatticePoint> original;
};

inline AffineFrame reduce_to_affine_span(const std::vector<LatticePoint>& pts_in, int d) {
    AffineFrame fr;
    {
        std::set<LatticePoint> seen;
        for (const auto& p : pts_in)
            if (seen.insert(p).second) fr.original.push_back(p);
    }
    const auto& pts = fr.original;
    const int m = static_cast<int>(pts.size());
    std::vector<std::vector<Rat>> basis; // independent edge vectors (rows)
    for (int i = 1; i < m; ++i) {
        std::vector<Rat> e(d);
        for (int j = 0; j < d; ++j) e[j] = Rat(pts[i][j] - pts[0][j]);
        basis.push_back(e);
        if (rank_rat(basis) != static_cast<int>(basis.size())) basis.pop_back();
    }
    const int r = static_cast<int>(basis.size());
    fr.affine_dim = r;
    if (r == 0) {
        fr.reduced.assign(m, LatticePoint{});
        return fr;
    }
    // coordinates: solve basis^T * alpha = p - p0 restricted to pivot rows
    // (membership in the span is guaranteed by the rank construction)
    // Build r x r system from r independent coordinates of the basis.
    std::vector<int> cols;
    {
        std::vector<std::vector<Rat>> t = basis;
        int rr = 0;
        for (int c = 0; c < d && rr < r; ++c) {
            int p = -1;
            for (int i = rr; i < r; ++i)
                if (t[i][c] != 0) { p = i; break; }
            if (p < 0) continue;
            std::swap(t[rr], t[p]);
            for (int i = rr + 1; i < r; ++i) {
                if (t[i][c] == 0) continue;
                Rat f = t[i][c] / t[rr][c];
                for (int j = c; j < d; ++j) t[i][j] -= f * t[rr][j];
            }
            cols.push_back(c);
            ++rr;
        }
    }
    std::vector<std::vector<Rat>> coords(m, std::vector<Rat>(r));
    for (int i = 0; i < m; ++i) {
        // solve sum_k alpha_k basis[k][cols[j]] = (p_i - p0)[cols[j]]
        std::vector<std::vector<Rat>> a(r, std::vector<Rat>(r + 1));
        for (int row = 0; row < r; ++row) {
            for (int k2 = 0; k2 < r; ++k2) a[row][k2] = basis[k2][cols[row]];
            a[row][r] = Rat(pts[i][cols[row]] - pts[0][cols[row]]);
        }
        for (int c = 0; c < r; ++c) {
            int p = -1;
            for (int i2 = c; i2 < r; ++i2)
                if (a[i2][c] != 0) { p = i2; break; }
            std::swap(a[c], a[p]);
            for (int i2 = 0; i2 < r; ++i2) {
                if (i2 == c || a[i2][c] == 0) continue;
                Rat f = a[i2][c] / a[c][c];
                for (int j = c; j <= r; ++j) a[i2][j] -= f * a[c][j];
            }
        }
        for (int k2 = 0; k2 < r; ++k2) coords[i][k2] = a[k2][r] / a[k2][k2];
    }
    // columnwise rescale to integers
    fr.reduced.assign(m, LatticePoint(r));
    for (int k2 = 0; k2 < r; ++k2) {
        Int l = 1;
        for (int i = 0; i < m; ++i) {
            Int den = boost::multiprecision::denominator(coords[i][k2]);
            l = l / int_gcd(l, den) * den;
        }
        for (int i = 0; i < m; ++i)
            fr.reduced[i][k2] = boost::multiprecision::numerator(coords[i][k2] * Rat(l));
    }
    return fr;
}

/// Merge coplanar boundary simplices into true facets and identify the true
/// vertices (points whose incident facet normals span the ambient space).
inline std::pair<std::vector<int>, std::vector<Facet>>
merge_facets(const HullResult& h, int d) {
    std::map<std::pair<std::vector<Int>, Int>, std::set<int>> groups;
    for (const auto& s : h.boundary)
        groups[{s.normal, s.offset}].insert(s.verts.begin(), s.verts.end());

    // vertex test: incident facet normals span R^d
    std::map<int, std::vector<const std::vector<Int>*>> incident;
    for (const auto& [key, vs] : groups)
        for (int v : vs) incident[v].push_back(&key.first);
    std::vector<int> vertex_ids;
    for (const auto& [v, normals] : incident) {
        std::vector<std::vector<Rat>> m;
        for (const auto* n : normals) {
            std::vector<Rat> row(d);
            for (int j = 0; j < d; ++j) row[j] = Rat((*n)[j]);
            m.push_back(std::move(row));
        }
        if (rank_rat(m) == d) vertex_ids.push_back(v);
    }
    std::sort(vertex_ids.begin(), vertex_ids.end());
    std::map<int, int> remap;
    for (int i = 0; i < static_cast<int>(vertex_ids.size()); ++i) remap[vertex_ids[i]] = i;

    std::vector<Facet> facets;
    for (const auto& [key, vs] : groups) {
        Facet f;
        f.normal = key.first;
        f.offset = key.second;
        // facet vertices = true vertices on the hyperplane
        for (int v : vertex_ids)
            if (dot(f.normal, h.points[v]) == f.offset) f.vertex_indices.push_back(remap[v]);
        facets.push_back(std::move(f));
    }
    return {vertex_ids, facets};
}

} // namespace detail

// ---------------------------------------------------------------------------
// Public operations
// ---------------------------------------------------------------------------

/// Irredundant vertex set of conv(points); affine dimension recorded.
inline LatticePolytope convex_hull(const std::vector<LatticePoint>& points) {
    if (points.empty()) throw std::invalid_argument("empty point set");
    const int d = static_cast<int>(points[0].size());
    for (const auto& p : points)
        if (static_cast<int>(p.size()) != d)
            throw std::invalid_argument("inconsistent point dimensions");

    auto fr = detail::reduce_to_affine_span(points, d);
    if (fr.affine_dim == 0)
        return LatticePolytope(d, {fr.original[0]}, 0);
    if (fr.affine_dim == 1) {
        // endpoints of the segment: min/max along the single reduced coord
        int lo = 0, hi = 0;
        for (int i = 1; i < static_cast<int>(fr.reduced.size()); ++i) {
            if (fr.reduced[i][0] < fr.reduced[lo][0]) lo = i;
            if (fr.reduced[i][0] > fr.reduced[hi][0]) hi = i;
        }
        std::vector<LatticePoint> vs{fr.original[lo], fr.original[hi]};
        return LatticePolytope(d, vs, 1);
    }
    if (fr.affine_dim == d) {
        auto h = detail::hull_full_dim(fr.original, d);
        auto [vertex_ids, facets] = detail::merge_facets(h, d);
        std::vector<LatticePoint> vs;
        for (int v : vertex_ids) vs.push_back(h.points[v]);
        LatticePolytope P(d, vs, d);
        P.facet_cache = std::move(facets);
        return P;
    }
    auto h = detail::hull_full_dim(fr.reduced, fr.affine_dim);
    auto [vertex_ids, facets] = detail::merge_facets(h, fr.affine_dim);
    (void)facets; // reduced-space planes are not valid in ambient coordinates
    std::map<LatticePoint, int> orig_index;
    for (int i = 0; i < static_cast<int>(fr.original.size()); ++i) orig_index[fr.reduced[i]] = i;
    std::vector<LatticePoint> vs;
    for (int v : vertex_ids) vs.push_back(fr.original[orig_index.at(h.points[v])]);
    return LatticePolytope(d, vs, fr.affine_dim);
}

/// Complete, duplicate-free facet list of a full-dimensional polytope.
inline const std::vector<Facet>& facet_enumeration(const LatticePolytope& P) {
    if (!P.full_dimensional()) throw std::runtime_error("not full-dimensional");
    if (!P.facet_cache) {
        auto h = detail::hull_full_dim(P.vertices(), P.dim_ambient());
        auto [ids, facets] = detail::merge_facets(h, P.dim_ambient());
        (void)ids;
        // vertex order of P is authoritative: remap indices
        std::map<LatticePoint, int> vid;
        for (int i = 0; i < static_cast<int>(P.vertices().size()); ++i) vid[P.vertices()[i]] = i;
        for (auto& f : facets) {
            std::vector<int> mapped;
            for (const auto& v : P.vertices())
                if (dot(f.normal, v) == f.offset) mapped.push_back(vid.at(v));
            f.vertex_indices = std::move(mapped);
        }
        P.facet_cache = std::move(facets);
    }
    return *P.facet_cache;
}

/// True iff the origin satisfies every facet inequality strictly.
inline bool origin_strictly_interior(const LatticePolytope& P) {
    for (const auto& f : facet_enumeration(P))
        if (f.offset >= 0) return false;
    return true;
}

namespace detail {

/// Triangulate by coning boundary simplices at an apex. If `apex_point` is
/// given (origin), every boundary simplex is coned; otherwise the first hull
/// vertex is the apex and its incident simplices are dropped.
inline Triangulation cone_triangulation(const HullResult& h, int d,
                                        const std::optional<LatticePoint>& apex_point) {
    Triangulation tri;
    tri.points = h.points;
    int apex;
    if (apex_point) {
        apex = static_cast<int>(tri.points.size());
        tri.points.push_back(*apex_point);
    } else {
        apex = h.boundary.front().verts.front();
    }
    for (const auto& s : h.boundary) {
        if (!apex_point && std::find(s.verts.begin(), s.verts.end(), apex) != s.verts.end())
            continue;
        SimplicialCell cell;
        cell.vertex_indices = s.verts;
        cell.vertex_indices.push_back(apex);
        std::vector<std::vector<Int>> edges;
        for (int v : s.verts) {
            std::vector<Int> e(d);
            for (int j = 0; j < d; ++j) e[j] = tri.points[v][j] - tri.points[apex][j];
            edges.push_back(std::move(e));
        }
        cell.normalized_volume = abs_det(edges);
        if (cell.normalized_volume == 0) continue; // apex on the facet plane
        tri.cells.push_back(std::move(cell));
    }
    return tri;
}

} // namespace detail

/// Exact n! * vol_n(P). Full-dimensional polytopes are triangulated in place;
/// lower-dimensional ones require `project=true` and are measured in the
/// lattice induced on their affine span.
inline Int normalized_volume(const LatticePolytope& P, bool project = false) {
    if (P.affine_dim() == 0) return project ? Int(1) : throw std::runtime_error("not full-dimensional");
    if (!P.full_dimensional() && !project) throw std::runtime_error("not full-dimensional");
    if (P.affine_dim() == 1) {
        if (P.dim_ambient() == 1) {
            Int len = P.vertices()[1][0] - P.vertices()[0][0];
            return len < 0 ? -len : len;
        }
        std::vector<std::vector<Int>> e(1, std::vector<Int>(P.dim_ambient()));
        for (int j = 0; j < P.dim_ambient(); ++j)
            e[0][j] = P.vertices()[1][j] - P.vertices()[0][j];
        return simplex_lattice_volume(e);
    }
    if (P.full_dimensional()) {
        auto h = detail::hull_full_dim(P.vertices(), P.dim_ambient());
        auto tri = detail::cone_triangulation(h, P.dim_ambient(), std::nullopt);
        return tri.total_volume();
    }
    // lower-dimensional: combinatorics in affine coordinates, volumes in the
    // ambient lattice via gcd-of-minors
    auto fr = detail::reduce_to_affine_span(P.vertices(), P.dim_ambient());
    auto h = detail::hull_full_dim(fr.reduced, fr.affine_dim);
    std::map<LatticePoint, int> orig_index;
    for (int i = 0; i < static_cast<int>(fr.original.size()); ++i) orig_index[fr.reduced[i]] = i;
    int apex = h.boundary.front().verts.front();
    Int total = 0;
    for (const auto& s : h.boundary) {
        if (std::find(s.verts.begin(), s.verts.end(), apex) != s.verts.end()) continue;
        std::vector<std::vector<Int>> edges;
        const auto& ap = fr.original[orig_index.at(h.points[apex])];
        for (int v : s.verts) {
            const auto& pv = fr.original[orig_index.at(h.points[v])];
            std::vector<Int> e(P.dim_ambient());
            for (int j = 0; j < P.dim_ambient(); ++j) e[j] = pv[j] - ap[j];
            edges.push_back(std::move(e));
        }
        total += simplex_lattice_volume(edges);
    }
    return total;
}

/// Boundary triangulation coned at the interior origin. Cells partition P and
/// their normalized volumes sum to NVol(P).
inline Triangulation boundary_cone_triangulation(const LatticePolytope& P) {
    if (!P.full_dimensional()) throw std::runtime_error("not full-dimensional");
    if (!origin_strictly_interior(P)) throw std::runtime_error("origin not interior");
    auto h = detail::hull_full_dim(P.vertices(), P.dim_ambient());
    return detail::cone_triangulation(h, P.dim_ambient(), LatticePoint(P.dim_ambient(), Int(0)));
}

/// Normalized (dim-1)-volume of a facet in the lattice induced on its span.
inline Int facet_normalized_volume(const LatticePolytope& P, const Facet& f) {
    std::vector<LatticePoint> pts;
    for (int v : f.vertex_indices) pts.push_back(P.vertices()[v]);
    LatticePolytope F = convex_hull(pts);
    return normalized_volume(F, /*project=*/true);
}

/// conv(P x {0} u {0} x Q); both summands must contain the origin.
inline LatticePolytope free_sum(const LatticePolytope& P, const LatticePolytope& Q) {
    auto contains_origin = [](const LatticePolytope& X) {
        if (X.full_dimensional()) {
            for (const auto& f : facet_enumeration(X))
                if (f.offset > 0) return false;
            return true;
        }
        // fall back: origin must be one of the points of conv; test by
        // checking the hull of vertices+origin has the same vertex set
        std::vector<LatticePoint> pts = X.vertices();
        pts.emplace_back(X.dim_ambient(), Int(0));
        auto H = convex_hull(pts);
        return H.affine_dim() == X.affine_dim();
    };
    if (!contains_origin(P) || !contains_origin(Q))
        throw std::invalid_argument("free sum requires both polytopes to contain the origin");
    const int dp = P.dim_ambient(), dq = Q.dim_ambient();
    std::vector<LatticePoint> pts;
    for (const auto& v : P.vertices()) {
        LatticePoint p(dp + dq, Int(0));
        for (int j = 0; j < dp; ++j) p[j] = v[j];
        pts.push_back(std::move(p));
    }
    for (const auto& v : Q.vertices()) {
        LatticePoint p(dp + dq, Int(0));
        for (int j = 0; j < dq; ++j) p[dp + j] = v[j];
        pts.push_back(std::move(p));
    }
    return convex_hull(pts);
}

/// Reflexive iff the origin is interior and all facet offsets are -1 (with
/// primitive normals and the >= convention).
inline bool is_reflexive(const LatticePolytope& P) {
    if (!P.full_dimensional()) throw std::runtime_error("not full-dimensional");
    if (!origin_strictly_interior(P)) throw std::runtime_error("origin not interior");
    for (const auto& f : facet_enumeration(P))
        if (f.offset != -1) return false;
    return true;
}

inline UnimodularMap::UnimodularMap(std::vector<std::vector<Int>> m) : matrix(std::move(m)) {
    const int n = static_cast<int>(matrix.size());
    for (const auto& row : matrix)
        if (static_cast<int>(row.size()) != n)
            throw std::invalid_argument("unimodular map must be square");
    // signed determinant via Bareiss on a copy
    std::vector<std::vector<Int>> c = matrix;
    Int ad = abs_det(c);
    if (ad != 1) throw std::invalid_argument("matrix is not unimodular (|det| != 1)");
    // recover the sign by rational elimination
    std::vector<std::vector<Rat>> r(n, std::vector<Rat>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r[i][j] = Rat(matrix[i][j]);
    Rat det = 1;
    for (int c2 = 0; c2 < n; ++c2) {
        int p = -1;
        for (int i = c2; i < n; ++i)
            if (r[i][c2] != 0) { p = i; break; }
        if (p != c2) { std::swap(r[p], r[c2]); det = -det; }
        det *= r[c2][c2];
        for (int i = c2 + 1; i < n; ++i) {
            Rat f = r[i][c2] / r[c2][c2];
            for (int j = c2; j < n; ++j) r[i][j] -= f * r[c2][j];
        }
    }
    det_sign = det > 0 ? 1 : -1;
}

inline LatticePoint UnimodularMap::apply(const LatticePoint& p) const {
    const int n = dim();
    LatticePoint out(n, Int(0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out[i] += matrix[i][j] * p[j];
    return out;
}

inline UnimodularMap UnimodularMap::inverse() const {
    const int n = dim();
    std::vector<std::vector<Rat>> a(n, std::vector<Rat>(2 * n, Rat(0)));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) a[i][j] = Rat(matrix[i][j]);
        a[i][n + i] = 1;
    }
    for (int c = 0; c < n; ++c) {
        int p = -1;
        for (int i = c; i < n; ++i)
            if (a[i][c] != 0) { p = i; break; }
        std::swap(a[c], a[p]);
        for (int i = 0; i < n; ++i) {
            if (i == c || a[i][c] == 0) continue;
            Rat f = a[i][c] / a[c][c];
            for (int j = c; j < 2 * n; ++j) a[i][j] -= f * a[c][j];
        }
    }
    std::vector<std::vector<Int>> inv(n, std::vector<Int>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Rat v = a[i][n + j] / a[i][i];
            if (boost::multiprecision::denominator(v) != 1)
                throw std::runtime_error("unimodular inverse is not integral");
            inv[i][j] = boost::multiprecision::numerator(v);
        }
    return UnimodularMap(std::move(inv));
}

/// Vertex-wise image of P under a unimodular map; NVol is preserved.
inline LatticePolytope apply_unimodular(const LatticePolytope& P, const UnimodularMap& A) {
    if (A.dim() != P.dim_ambient()) throw std::invalid_argument("dimension mismatch");
    std::vector<LatticePoint> pts;
    for (const auto& v : P.vertices()) pts.push_back(A.apply(v));
    return convex_hull(pts);
}

/// conv of pairwise vertex sums, irredundant.
inline LatticePolytope minkowski_sum(const LatticePolytope& P, const LatticePolytope& Q) {
    if (P.dim_ambient() != Q.dim_ambient()) throw std::invalid_argument("dimension mismatch");
    std::set<LatticePoint> sums;
    for (const auto& p : P.vertices())
        for (const auto& q : Q.vertices()) {
            LatticePoint s(P.dim_ambient());
            for (int j = 0; j < P.dim_ambient(); ++j) s[j] = p[j] + q[j];
            sums.insert(std::move(s));
        }
    return convex_hull({sums.begin(), sums.end()});
}

/// Mixed volume of n polytopes in R^n via the inclusion-exclusion identity,
/// normalized so that MV(P,...,P) = NVol(P).
inline Int mixed_volume(const std::vector<LatticePolytope>& ps, int limit = 7) {
    const int n = static_cast<int>(ps.size());
    if (n == 0) throw std::invalid_argument("empty polytope list");
    if (n > limit) throw std::runtime_error("inclusion-exclusion too large");
    for (const auto& p : ps)
        if (p.dim_ambient() != n) throw std::invalid_argument("need n polytopes in R^n");
    Int mv = 0;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::set<LatticePoint> sums{LatticePoint(n, Int(0))};
        for (int i = 0; i < n; ++i) {
            if (!(mask & (1u << i))) continue;
            std::set<LatticePoint> next;
            for (const auto& s : sums)
                for (const auto& v : ps[i].vertices()) {
                    LatticePoint t(n);
                    for (int j = 0; j < n; ++j) t[j] = s[j] + v[j];
                    next.insert(std::move(t));
                }
            sums = std::move(next);
        }
        LatticePolytope S = convex_hull({sums.begin(), sums.end()});
        Int vol = S.full_dimensional() ? normalized_volume(S) : Int(0);
        int bits = __builtin_popcount(mask);
        if ((n - bits) % 2 == 0)
            mv += vol;
        else
            mv -= vol;
    }
    // the alternating sum of NVol(P_S) equals n! * MV
    Int fact = 1;
    for (int i = 2; i <= n; ++i) fact *= i;
    if (mv % fact != 0) throw std::runtime_error("mixed volume inclusion-exclusion not divisible by n!");
    return mv / fact;
}

/// Argmin set of <.,v> over the vertices, with the minimum value.
inline std::pair<std::vector<int>, Rat>
face_in_direction(const LatticePolytope& P, const std::vector<Rat>& v) {
    bool all_zero = true;
    for (const auto& x : v)
        if (x != 0) all_zero = false;
    if (all_zero) throw std::invalid_argument("zero direction");
    std::vector<Int> vi = primitive_integer_direction(v);
    // scale factor is positive, so the argmin set is unchanged; the height is
    // reported against the original v
    std::optional<Int> best;
    std::vector<int> arg;
    for (int i = 0; i < static_cast<int>(P.vertices().size()); ++i) {
        Int s = dot(vi, P.vertices()[i]);
        if (!best || s < *best) {
            best = s;
            arg = {i};
        } else if (s == *best) {
            arg.push_back(i);
        }
    }
    Rat height = 0;
    for (std::size_t j = 0; j < v.size(); ++j) height += v[j] * Rat(P.vertices()[arg[0]][j]);
    return {arg, height};
}

} // namespace kap
