#pragma once

// Rational convex polytopes in H-representation. Facet alpha is the
// inequality <x, normal_alpha> >= -offset_alpha; the facet order is shared
// with the columns of the defining module map throughout the library.

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "stacky/int_matrix.hpp"
#include "stacky/lp.hpp"
#include "stacky/strata_family.hpp"

namespace stacky {

struct Facet {
    RatVector normal;
    Rat offset;
};

struct HPolytope {
    int dim = 0;
    std::vector<Facet> facets;

    int facet_count() const { return static_cast<int>(facets.size()); }

    // System {x : A x >= b} with A rows the normals and b = -offsets.
    std::pair<RatMatrix, RatVector> system() const {
        RatMatrix a(facet_count(), dim);
        RatVector b(facet_count());
        for (int i = 0; i < facet_count(); ++i) {
            for (int j = 0; j < dim; ++j) a.at(i, j) = facets[i].normal[j];
            b[i] = -facets[i].offset;
        }
        return {a, b};
    }
};

inline HPolytope make_hpolytope(int dim, const std::vector<RatVector>& normals, const RatVector& offsets) {
    if (normals.size() != offsets.size()) throw DimensionMismatch("normals/offsets length mismatch");
    HPolytope p;
    p.dim = dim;
    for (size_t i = 0; i < normals.size(); ++i) {
        if (static_cast<int>(normals[i].size()) != dim)
            throw DimensionMismatch("normal has wrong dimension");
        p.facets.push_back({normals[i], offsets[i]});
    }
    return p;
}

inline bool contains_point(const HPolytope& p, const RatVector& x) {
    for (const Facet& f : p.facets)
        if (dot(f.normal, x) < -f.offset) return false;
    return true;
}

inline bool is_feasible(const HPolytope& p) {
    auto [a, b] = p.system();
    return lp_check(a, b, LpMode::Feasible).feasible;
}

inline bool is_bounded(const HPolytope& p) {
    auto [a, b] = p.system();
    return lp_check(a, b, LpMode::Bounded).bounded;
}

namespace detail {

// Unique solution of the square-ish rational system rows(A_I) x = b_I, if any.
inline std::optional<RatVector> solve_unique(const RatMatrix& a, const RatVector& b) {
    const int m = a.rows(), n = a.cols();
    RatMatrix w(m, n + 1);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) w.at(i, j) = a.at(i, j);
        w.at(i, n) = b[i];
    }
    int row = 0;
    std::vector<int> pivot_col;
    for (int col = 0; col < n && row < m; ++col) {
        int piv = -1;
        for (int i = row; i < m; ++i)
            if (w.at(i, col) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != row)
            for (int j = 0; j <= n; ++j) std::swap(w.at(row, j), w.at(piv, j));
        Rat p = w.at(row, col);
        for (int j = 0; j <= n; ++j) w.at(row, j) /= p;
        for (int i = 0; i < m; ++i) {
            if (i == row || w.at(i, col) == 0) continue;
            Rat f = w.at(i, col);
            for (int j = 0; j <= n; ++j) w.at(i, j) -= f * w.at(row, j);
        }
        pivot_col.push_back(col);
        ++row;
    }
    if (static_cast<int>(pivot_col.size()) != n) return std::nullopt;  // underdetermined
    for (int i = row; i < m; ++i)
        if (w.at(i, n) != 0) return std::nullopt;  // inconsistent
    RatVector x(n);
    for (int k = 0; k < n; ++k) x[pivot_col[k]] = w.at(k, n);
    return x;
}

inline int rat_rank(const RatMatrix& a) {
    RatMatrix w = a;
    const int m = w.rows(), n = w.cols();
    int row = 0;
    for (int col = 0; col < n && row < m; ++col) {
        int piv = -1;
        for (int i = row; i < m; ++i)
            if (w.at(i, col) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != row)
            for (int j = 0; j < n; ++j) std::swap(w.at(row, j), w.at(piv, j));
        for (int i = row + 1; i < m; ++i) {
            if (w.at(i, col) == 0) continue;
            Rat f = w.at(i, col) / w.at(row, col);
            for (int j = col; j < n; ++j) w.at(i, j) -= f * w.at(row, j);
        }
        ++row;
    }
    return row;
}

}  // namespace detail

// All vertices, deduplicated and sorted lexicographically. Each vertex is the
// unique solution of some dim-subset of facet equalities that satisfies every
// inequality.
inline std::vector<RatVector> vertices(const HPolytope& p) {
    if (!is_feasible(p)) throw EmptyPolytope("polytope is empty");
    if (!is_bounded(p)) throw UnboundedPolytope("polytope is unbounded");
    const int r = p.dim, d = p.facet_count();
    if (r == 0) return {RatVector{}};

    std::vector<RatVector> out;
    // iterate over r-subsets of {0..d-1}; a bounded nonempty polytope in
    // dimension r > 0 has at least r+1 facets
    std::vector<int> idx(r);
    for (int i = 0; i < r; ++i) idx[i] = i;
    while (true) {
        RatMatrix a(r, r);
        RatVector b(r);
        for (int i = 0; i < r; ++i) {
            const Facet& f = p.facets[idx[i]];
            for (int j = 0; j < r; ++j) a.at(i, j) = f.normal[j];
            b[i] = -f.offset;
        }
        auto sol = detail::solve_unique(a, b);
        if (sol && contains_point(p, *sol)) out.push_back(*sol);
        // next subset
        int i = r - 1;
        while (i >= 0 && idx[i] == d - r + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Facets active (tight) at a point.
inline IndexSet active_set(const HPolytope& p, const RatVector& x) {
    IndexSet out;
    for (int i = 0; i < p.facet_count(); ++i)
        if (dot(p.facets[i].normal, x) == -p.facets[i].offset) out.push_back(i);
    return out;
}

struct FaceInfo {
    bool nonempty = false;
    int dim = -1;              // -1 when empty
    RatVector point;           // a point of the face when nonempty
    std::vector<RatVector> face_vertices;
};

// The face cut out by turning the inequalities in I into equalities.
// Requires a nonempty bounded polytope.
inline FaceInfo face(const HPolytope& p, const IndexSet& i_set) {
    FaceInfo out;
    IndexSet idx = sorted_set(i_set);
    for (int i : idx)
        if (i < 0 || i >= p.facet_count()) throw RangeError("facet index out of range");
    std::vector<RatVector> verts = vertices(p);
    for (const RatVector& v : verts) {
        bool all = true;
        for (int i : idx)
            if (dot(p.facets[i].normal, v) != -p.facets[i].offset) {
                all = false;
                break;
            }
        if (all) out.face_vertices.push_back(v);
    }
    if (out.face_vertices.empty()) return out;
    out.nonempty = true;
    out.point = out.face_vertices.front();
    // affine dimension = rank of the difference matrix
    const int r = p.dim;
    RatMatrix diff(static_cast<int>(out.face_vertices.size()) - 1, r);
    for (int i = 1; i < static_cast<int>(out.face_vertices.size()); ++i)
        for (int j = 0; j < r; ++j)
            diff.at(i - 1, j) = out.face_vertices[i][j] - out.face_vertices[0][j];
    out.dim = detail::rat_rank(diff);
    return out;
}

struct SimplicityReport {
    bool simple = true;
    RatVector offending_vertex;
    IndexSet offending_active;
};

// Every vertex on exactly dim facets? Facets must be irredundant for the
// count to mean anything.
inline SimplicityReport is_simple(const HPolytope& p) {
    SimplicityReport out;
    for (const RatVector& v : vertices(p)) {
        IndexSet act = active_set(p, v);
        if (static_cast<int>(act.size()) != p.dim) {
            out.simple = false;
            out.offending_vertex = v;
            out.offending_active = act;
            return out;
        }
    }
    return out;
}

// Family { I : the face with equality set I is nonempty } = downward closure
// of the vertex active sets (the polytope is bounded, so every nonempty face
// contains a vertex).
inline StrataFamily facet_sets_of_faces(const HPolytope& p) {
    StrataFamily fam(p.facet_count());
    fam.add({});
    for (const RatVector& v : vertices(p)) fam.add_with_subsets(active_set(p, v));
    return fam;
}

struct IrredundancyResult {
    HPolytope polytope;
    std::vector<int> removed;  // ascending original indices
};

// Drops every inequality whose removal leaves the point set unchanged.
// Scans from the highest index down so the lowest copy of a duplicated facet
// survives.
inline IrredundancyResult irredundant(const HPolytope& p) {
    if (!is_feasible(p)) throw EmptyPolytope("polytope is empty");
    std::vector<bool> keep(p.facet_count(), true);
    for (int alpha = p.facet_count() - 1; alpha >= 0; --alpha) {
        // minimise <n_alpha, x> over the others; redundant iff min >= -c_alpha
        std::vector<int> others;
        for (int i = 0; i < p.facet_count(); ++i)
            if (keep[i] && i != alpha) others.push_back(i);
        RatMatrix a(static_cast<int>(others.size()), p.dim);
        RatVector b(others.size());
        for (size_t i = 0; i < others.size(); ++i) {
            for (int j = 0; j < p.dim; ++j) a.at(static_cast<int>(i), j) = p.facets[others[i]].normal[j];
            b[i] = -p.facets[others[i]].offset;
        }
        LpInterval range = lp_objective_range(a, b, p.facets[alpha].normal);
        if (range.feasible && range.lower && *range.lower >= -p.facets[alpha].offset)
            keep[alpha] = false;
    }
    IrredundancyResult out;
    out.polytope.dim = p.dim;
    for (int i = 0; i < p.facet_count(); ++i) {
        if (keep[i])
            out.polytope.facets.push_back(p.facets[i]);
        else
            out.removed.push_back(i);
    }
    return out;
}

// Interior slack: the largest t with {x : A x >= b + t*1} nonempty.
// t_max >= 0 iff the polytope is nonempty, t_max > 0 iff it has interior.
inline LpInterval interior_slack(const HPolytope& p) {
    const int d = p.facet_count();
    // rows <n_i, x> - t >= -c_i with t as variable 0; project onto t
    RatMatrix sys(d, p.dim + 1);
    RatVector rhs(d);
    for (int i = 0; i < d; ++i) {
        sys.at(i, 0) = -1;
        for (int j = 0; j < p.dim; ++j) sys.at(i, j + 1) = p.facets[i].normal[j];
        rhs[i] = -p.facets[i].offset;
    }
    detail::FourierMotzkin fm(sys, rhs);
    LpInterval out;
    out.feasible = fm.feasible();
    if (!out.feasible) return out;
    auto [lo, hi] = fm.first_variable_interval();
    out.lower = lo;
    out.upper = hi;
    return out;
}

inline bool is_full_dimensional(const HPolytope& p) {
    if (p.dim == 0) return true;
    LpInterval s = interior_slack(p);
    return s.feasible && (!s.upper || *s.upper > 0);
}

// Set equality of two H-polytopes in the same ambient space. Bounded inputs
// compare canonical vertex lists; anything unbounded falls back to a mutual
// inclusion test on the defining inequalities.
inline bool equal_as_sets(const HPolytope& p, const HPolytope& q) {
    if (p.dim != q.dim) throw DimensionMismatch("ambient dimension mismatch");
    bool fp = is_feasible(p), fq = is_feasible(q);
    if (!fp || !fq) return fp == fq;
    bool bp = is_bounded(p), bq = is_bounded(q);
    if (bp && bq) return vertices(p) == vertices(q);
    if (bp != bq) return false;
    auto includes = [](const HPolytope& outer, const HPolytope& inner) {
        auto [a, b] = inner.system();
        for (const Facet& f : outer.facets) {
            LpInterval range = lp_objective_range(a, b, f.normal);
            if (!range.lower || *range.lower < -f.offset) return false;
        }
        return true;
    };
    return includes(p, q) && includes(q, p);
}

}  // namespace stacky
