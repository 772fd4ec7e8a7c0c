#pragma once

// Exact normal forms and solvers over the integers: Smith and Hermite
// reduction, kernels, cokernel invariants, lattice comparison. Everything is
// deterministic; pivot choice is pinned so decompositions are reproducible.

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "stacky/int_matrix.hpp"

namespace stacky {

struct SNFDecomposition {
    IntMatrix u;  // rows x rows, |det| = 1
    IntMatrix d;  // diagonal, nonnegative, divisibility chain, zeros trailing
    IntMatrix v;  // cols x cols, |det| = 1
    int rank = 0;

    std::vector<Int> diagonal() const {
        std::vector<Int> out;
        int n = std::min(d.rows(), d.cols());
        for (int i = 0; i < n; ++i) out.push_back(d.at(i, i));
        return out;
    }
};

namespace detail {

inline void swap_rows(IntMatrix& m, int a, int b) {
    if (a == b) return;
    for (int j = 0; j < m.cols(); ++j) std::swap(m.at(a, j), m.at(b, j));
}
inline void swap_cols(IntMatrix& m, int a, int b) {
    if (a == b) return;
    for (int i = 0; i < m.rows(); ++i) std::swap(m.at(i, a), m.at(i, b));
}
// row[a] -= q * row[b]
inline void add_row(IntMatrix& m, int a, int b, const Int& q) {
    if (q == 0) return;
    for (int j = 0; j < m.cols(); ++j) m.at(a, j) -= q * m.at(b, j);
}
inline void add_col(IntMatrix& m, int a, int b, const Int& q) {
    if (q == 0) return;
    for (int i = 0; i < m.rows(); ++i) m.at(i, a) -= q * m.at(i, b);
}
inline void negate_row(IntMatrix& m, int a) {
    for (int j = 0; j < m.cols(); ++j) m.at(a, j) = -m.at(a, j);
}

}  // namespace detail

// Smith normal form U*M*V = D. Pivot = minimal absolute nonzero entry of the
// trailing submatrix, ties broken by smallest (row, col).
inline SNFDecomposition snf(const IntMatrix& m) {
    using namespace detail;
    SNFDecomposition out{IntMatrix::identity(m.rows()), m, IntMatrix::identity(m.cols()), 0};
    IntMatrix& d = out.d;
    IntMatrix& u = out.u;
    IntMatrix& v = out.v;

    int p = 0;
    const int t = d.rows(), s = d.cols();
    while (p < t && p < s) {
        // locate pivot
        int pi = -1, pj = -1;
        Int best = 0;
        for (int i = p; i < t; ++i)
            for (int j = p; j < s; ++j) {
                const Int& x = d.at(i, j);
                if (x == 0) continue;
                Int ax = abs(x);
                if (pi < 0 || ax < best) {
                    best = ax;
                    pi = i;
                    pj = j;
                }
            }
        if (pi < 0) break;  // trailing submatrix is zero

        swap_rows(d, p, pi);
        swap_rows(u, p, pi);
        swap_cols(d, p, pj);
        swap_cols(v, p, pj);

        bool settled = false;
        while (!settled) {
            bool changed = false;
            for (int i = p + 1; i < t; ++i) {
                if (d.at(i, p) == 0) continue;
                Int q = d.at(i, p) / d.at(p, p);
                add_row(d, i, p, q);
                add_row(u, i, p, q);
                if (d.at(i, p) != 0) changed = true;
            }
            for (int j = p + 1; j < s; ++j) {
                if (d.at(p, j) == 0) continue;
                Int q = d.at(p, j) / d.at(p, p);
                add_col(d, j, p, q);
                add_col(v, j, p, q);
                if (d.at(p, j) != 0) changed = true;
            }
            if (changed) {
                // a smaller remainder appeared; re-pivot on the minimum
                int qi = -1, qj = -1;
                Int mn = 0;
                for (int i = p; i < t; ++i)
                    for (int j = p; j < s; ++j) {
                        const Int& x = d.at(i, j);
                        if (x == 0) continue;
                        Int ax = abs(x);
                        if (qi < 0 || ax < mn) {
                            mn = ax;
                            qi = i;
                            qj = j;
                        }
                    }
                swap_rows(d, p, qi);
                swap_rows(u, p, qi);
                swap_cols(d, p, qj);
                swap_cols(v, p, qj);
                continue;
            }
            // cross is clear; enforce divisibility of the rest by the pivot
            int bi = -1;
            for (int i = p + 1; i < t && bi < 0; ++i)
                for (int j = p + 1; j < s; ++j)
                    if (d.at(i, j) % d.at(p, p) != 0) {
                        bi = i;
                        break;
                    }
            if (bi >= 0) {
                add_row(d, p, bi, Int(-1));  // row_p += row_bi
                add_row(u, p, bi, Int(-1));
                continue;
            }
            settled = true;
        }
        if (d.at(p, p) < 0) {
            negate_row(d, p);
            negate_row(u, p);
        }
        ++p;
    }
    out.rank = p;
    return out;
}

struct HNFResult {
    IntMatrix h;  // row echelon, positive pivots, entries above pivots reduced
    IntMatrix u;  // |det| = 1, u * m = h
    std::vector<int> pivot_cols;
};

// Row-style Hermite normal form U*M = H.
inline HNFResult hnf(const IntMatrix& m) {
    using namespace detail;
    HNFResult out{m, IntMatrix::identity(m.rows()), {}};
    IntMatrix& h = out.h;
    IntMatrix& u = out.u;
    const int t = h.rows(), s = h.cols();

    int r = 0;
    for (int j = 0; j < s && r < t; ++j) {
        // Euclidean reduction in column j among rows >= r
        while (true) {
            int best = -1;
            Int mn = 0;
            for (int i = r; i < t; ++i) {
                if (h.at(i, j) == 0) continue;
                Int ax = abs(h.at(i, j));
                if (best < 0 || ax < mn) {
                    mn = ax;
                    best = i;
                }
            }
            if (best < 0) break;  // column clear below r
            swap_rows(h, r, best);
            swap_rows(u, r, best);
            bool any = false;
            for (int i = r + 1; i < t; ++i) {
                if (h.at(i, j) == 0) continue;
                Int q = h.at(i, j) / h.at(r, j);
                add_row(h, i, r, q);
                add_row(u, i, r, q);
                if (h.at(i, j) != 0) any = true;
            }
            if (!any) break;
        }
        if (h.at(r, j) == 0) continue;
        if (h.at(r, j) < 0) {
            negate_row(h, r);
            negate_row(u, r);
        }
        // reduce entries above the pivot into [0, pivot)
        for (int i = 0; i < r; ++i) {
            Int q = h.at(i, j) / h.at(r, j);
            if (h.at(i, j) - q * h.at(r, j) < 0) q -= 1;  // floor
            add_row(h, i, r, q);
            add_row(u, i, r, q);
        }
        out.pivot_cols.push_back(j);
        ++r;
    }
    return out;
}

// Saturated Z-basis of {x : M x = 0}, as columns.
inline IntMatrix kernel_basis(const IntMatrix& m) {
    SNFDecomposition f = snf(m);
    std::vector<int> idx;
    for (int j = f.rank; j < m.cols(); ++j) idx.push_back(j);
    return f.v.select_columns(idx);
}

struct CokernelInvariants {
    int free_rank = 0;
    std::vector<Int> torsion;  // factors > 1, divisibility chain

    bool finite() const { return free_rank == 0; }
    Int order() const {
        Int o = 1;
        for (const Int& m : torsion) o *= m;
        return o;
    }
    bool operator==(const CokernelInvariants& other) const {
        return free_rank == other.free_rank && torsion == other.torsion;
    }
};

// Invariants of coker(M : Z^cols -> Z^rows) = Z^rows / colspan(M).
inline CokernelInvariants cokernel_invariants(const IntMatrix& m) {
    SNFDecomposition f = snf(m);
    CokernelInvariants out;
    out.free_rank = m.rows() - f.rank;
    for (const Int& d : f.diagonal())
        if (d > 1) out.torsion.push_back(d);
    return out;
}

inline int rank(const IntMatrix& m) { return snf(m).rank; }

// Exact determinant by fraction-free (Bareiss) elimination.
inline Int det(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw DimensionMismatch("det of non-square matrix");
    const int n = m.rows();
    if (n == 0) return 1;
    IntMatrix a = m;
    Int sign = 1, prev = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a.at(k, k) == 0) {
            int piv = -1;
            for (int i = k + 1; i < n; ++i)
                if (a.at(i, k) != 0) {
                    piv = i;
                    break;
                }
            if (piv < 0) return 0;
            detail::swap_rows(a, k, piv);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                a.at(i, j) = (a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j)) / prev;
        prev = a.at(k, k);
    }
    return sign * a.at(n - 1, n - 1);
}

// One integer solution of M x = b, if any.
inline std::optional<std::vector<Int>> solve_integer(const IntMatrix& m, const std::vector<Int>& b) {
    if (static_cast<int>(b.size()) != m.rows()) throw DimensionMismatch("solve shape mismatch");
    SNFDecomposition f = snf(m);
    std::vector<Int> ub = f.u.apply(b);
    std::vector<Int> y(m.cols(), Int(0));
    for (int i = 0; i < m.rows(); ++i) {
        if (i < f.rank) {
            const Int& d = f.d.at(i, i);
            if (ub[i] % d != 0) return std::nullopt;
            y[i] = ub[i] / d;
        } else if (ub[i] != 0) {
            return std::nullopt;
        }
    }
    return f.v.apply(y);
}

inline bool in_column_span(const IntMatrix& m, const std::vector<Int>& b) {
    return solve_integer(m, b).has_value();
}

// Canonical basis of the column lattice: nonzero rows of hnf(M^T), transposed.
// Two generator matrices span the same lattice iff these agree.
inline IntMatrix lattice_basis(const IntMatrix& m) {
    HNFResult f = hnf(m.transpose());
    std::vector<int> idx;
    for (int i = 0; i < static_cast<int>(f.pivot_cols.size()); ++i) idx.push_back(i);
    return f.h.select_rows(idx).transpose();
}

inline bool lattice_equal(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows() != b.rows()) throw DimensionMismatch("lattice ambient mismatch");
    return lattice_basis(a) == lattice_basis(b);
}

}  // namespace stacky
