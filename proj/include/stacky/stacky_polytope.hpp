#pragma once

// Stacky polytopes (N, Delta, beta) and the quotient presentation they induce:
// the compact abelian group acting on C^d, its weight covectors, the moment
// level, and the certificates that the level is regular and the moment map
// proper. All moment-map values are stored divided by pi, so every quantity
// stays rational; reports carry the unit.

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "stacky/abgroup.hpp"
#include "stacky/polytope.hpp"

namespace stacky {

struct StackyPolytope {
    FGAbelianGroup n;
    GroupHom beta;      // free(d) -> n
    RatVector offsets;  // facet offsets c_alpha, shared index order with beta columns

    // derived
    IntMatrix lambda_projection;  // r x t
    IntMatrix normals;            // r x d, column alpha = image of beta(e_alpha) in Lambda
    HPolytope delta;              // in Lambda^dual coordinates

    int facet_count() const { return beta.lift.cols(); }
    int dim() const { return normals.rows(); }
};

inline StackyPolytope make_stacky_polytope(FGAbelianGroup n, IntMatrix beta_lift, RatVector offsets) {
    if (beta_lift.rows() != n.ambient_rank())
        throw DimensionMismatch("beta lift does not match the ambient presentation rank");
    if (static_cast<int>(offsets.size()) != beta_lift.cols())
        throw DimensionMismatch("offset count does not match the facet count");
    StackyPolytope sp;
    sp.lambda_projection = n.free_projection();
    sp.normals = sp.lambda_projection * beta_lift;
    const int d = beta_lift.cols(), r = sp.normals.rows();
    std::vector<RatVector> normal_cols;
    for (int j = 0; j < d; ++j) normal_cols.push_back(rat_vector(sp.normals.column(j)));
    sp.delta = make_hpolytope(r, normal_cols, offsets);
    sp.n = std::move(n);
    sp.beta = GroupHom{FGAbelianGroup::free_group(d), sp.n, std::move(beta_lift)};
    sp.offsets = std::move(offsets);
    return sp;
}

enum class ValidateMode { Strict, Lenient };

struct ConditionVerdict {
    bool pass = true;
    std::string witness;
};

struct ValidationReport {
    ConditionVerdict simple;           // condition 1
    ConditionVerdict facets;           // condition 2
    ConditionVerdict finite_cokernel;  // condition 3
    std::vector<int> redundant;        // redundant facet indices (0-based)
    ValidateMode mode = ValidateMode::Strict;

    bool pass() const { return simple.pass && facets.pass && finite_cokernel.pass; }
};

namespace detail {

inline std::string format_point(const RatVector& v) {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) os << ",";
        os << rat_to_string(v[i]);
    }
    os << ")";
    return os.str();
}

inline std::string format_indices_1based(const IndexSet& s) {
    std::ostringstream os;
    os << "{";
    for (size_t i = 0; i < s.size(); ++i) {
        if (i) os << ",";
        os << (s[i] + 1);
    }
    os << "}";
    return os.str();
}

// Any rational solution of A x = b (free variables set to zero).
inline std::optional<RatVector> solve_affine(const RatMatrix& a, const RatVector& b) {
    const int m = a.rows(), n = a.cols();
    RatMatrix w(m, n + 1);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) w.at(i, j) = a.at(i, j);
        w.at(i, n) = b[i];
    }
    int row = 0;
    std::vector<std::pair<int, int>> pivots;
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
            Rat fct = w.at(i, col);
            for (int j = 0; j <= n; ++j) w.at(i, j) -= fct * w.at(row, j);
        }
        pivots.emplace_back(row, col);
        ++row;
    }
    for (int i = row; i < m; ++i)
        if (w.at(i, n) != 0) return std::nullopt;
    RatVector x(n, Rat(0));
    for (auto [pr, pc] : pivots) x[pc] = w.at(pr, n);
    return x;
}

}  // namespace detail

// Definition-level validation. Strict mode rejects redundant inequalities
// (they would desynchronize the facet order against the beta columns);
// lenient mode reports them and judges simplicity on the reduced polytope.
inline ValidationReport validate(const StackyPolytope& sp, ValidateMode mode) {
    ValidationReport rep;
    rep.mode = mode;

    CokernelInvariants coker = cokernel_invariants(sp.beta.lift.hconcat(sp.n.presentation()));
    if (!coker.finite()) {
        rep.finite_cokernel.pass = false;
        rep.finite_cokernel.witness =
            "coker(beta) has free rank " + std::to_string(coker.free_rank);
    }

    for (int j = 0; j < sp.facet_count(); ++j) {
        bool zero = true;
        for (int i = 0; i < sp.dim(); ++i)
            if (sp.normals.at(i, j) != 0) zero = false;
        if (zero) {
            rep.facets.pass = false;
            rep.facets.witness = "facet " + std::to_string(j + 1) + " has zero normal";
        }
    }

    HPolytope reduced = sp.delta;
    if (rep.facets.pass) {
        if (!is_feasible(sp.delta)) {
            rep.facets.pass = false;
            rep.facets.witness = "polytope is empty";
        } else if (!is_bounded(sp.delta)) {
            rep.facets.pass = false;
            rep.facets.witness = "polytope is unbounded";
        } else if (!is_full_dimensional(sp.delta)) {
            rep.facets.pass = false;
            rep.facets.witness = "polytope is not full-dimensional";
        } else {
            IrredundancyResult irr = irredundant(sp.delta);
            rep.redundant = irr.removed;
            reduced = irr.polytope;
            if (!irr.removed.empty() && mode == ValidateMode::Strict) {
                rep.facets.pass = false;
                rep.facets.witness = "facet " + std::to_string(irr.removed.front() + 1) + " redundant";
            }
        }
    }

    if (is_feasible(sp.delta) && is_bounded(sp.delta)) {
        SimplicityReport simp = is_simple(reduced);
        if (!simp.simple) {
            rep.simple.pass = false;
            rep.simple.witness = "vertex " + detail::format_point(simp.offending_vertex) + " lies on " +
                                 std::to_string(simp.offending_active.size()) + " facets";
        }
    } else {
        rep.simple.pass = false;
        rep.simple.witness = "simplicity undefined: polytope empty or unbounded";
    }
    return rep;
}

// The symplectic-quotient presentation (G, rho, tau) of a stacky polytope.
struct QuotientData {
    CompactAbelianGroup g;
    IntMatrix weight_matrix;        // f x d, column alpha = w^alpha in the Lie coalgebra
    IntMatrix component_characters; // q x d, entries reduced mod the invariant factors
    RatVector tau;                  // f entries, pi units
    GaleData gale;

    int d() const { return weight_matrix.cols(); }
};

inline QuotientData quotient_data(const StackyPolytope& sp) {
    ValidationReport rep = validate(sp, ValidateMode::Strict);
    if (!rep.pass()) throw InvalidStackyPolytope("stacky polytope validation failed");
    QuotientData qd;
    qd.gale = gale_dual(sp.beta);
    qd.g = hom_to_circle(qd.gale.dg);
    qd.weight_matrix = qd.gale.weight_matrix();
    qd.component_characters = qd.gale.component_characters();
    qd.tau.assign(qd.weight_matrix.rows(), Rat(0));
    for (int i = 0; i < qd.weight_matrix.rows(); ++i)
        for (int j = 0; j < qd.weight_matrix.cols(); ++j)
            qd.tau[i] += Rat(qd.weight_matrix.at(i, j)) * sp.offsets[j];
    return qd;
}

struct StabilizerReport {
    IndexSet stratum;            // 0-based
    std::vector<Int> invariants; // finite invariant factors
    bool finite = true;
    Int order = 1;               // meaningful when finite
};

// Stabilizer of a point with zero set I: the kernel of rho restricted to the
// coordinates off I. Its character group is dg / <beta_dg(e^alpha) : alpha
// not in I>, so the invariant factors come from one cokernel computation.
inline StabilizerReport stabilizer_at(const QuotientData& qd, const IndexSet& stratum) {
    StabilizerReport out;
    out.stratum = sorted_set(stratum);
    IndexSet off = complement_set(out.stratum, qd.d());
    IntMatrix block = qd.gale.dg.presentation().hconcat(qd.gale.beta_dg.lift.select_columns(off));
    CokernelInvariants inv = cokernel_invariants(block);
    out.invariants = inv.torsion;
    out.finite = inv.finite();
    out.order = inv.order();
    return out;
}

inline StabilizerReport stabilizer(const QuotientData& qd, const StrataFamily& family,
                                   const IndexSet& stratum) {
    if (!family.contains(stratum))
        throw StratumNotInFamily("stratum " + detail::format_indices_1based(sorted_set(stratum)) +
                                 " is not in the level-set family");
    return stabilizer_at(qd, stratum);
}

struct RegularValueCertificate {
    bool pass = true;
    IndexSet witness;  // first failing stratum when !pass
};

// tau is regular iff at every stratum of the family the remaining weights
// span the Lie coalgebra; equivalently every stabilizer is finite. Both
// formulations are checked.
inline RegularValueCertificate check_regular_value(const QuotientData& qd, const StrataFamily& family) {
    RegularValueCertificate cert;
    const int f = qd.weight_matrix.rows();
    for (const IndexSet& stratum : family.sets()) {
        IndexSet off = complement_set(stratum, qd.d());
        bool spans = rank(qd.weight_matrix.select_columns(off)) == f;
        bool finite = stabilizer_at(qd, stratum).finite;
        if (!spans || !finite) {
            cert.pass = false;
            cert.witness = stratum;
            return cert;
        }
    }
    return cert;
}

struct PropernessCertificate {
    bool pass = false;
    bool feasible = false;
    bool bounded = false;
    RatVector witness;    // s >= 0 with rho^dual(s) = tau, when feasible
    RatVector recession;  // unbounded direction of the moment level, when not bounded
};

// Properness of the moment map: tau lies in the nonnegative weight cone and
// the level polyhedron {s >= 0 : rho^dual(s) = tau} is compact. The level is
// handled in slice coordinates s = s0 + K y, which keeps the elimination in
// d - f variables.
inline PropernessCertificate check_proper(const QuotientData& qd) {
    PropernessCertificate cert;
    const int d = qd.d();
    RatMatrix w = RatMatrix::from_int(qd.weight_matrix);

    auto base = detail::solve_affine(w, qd.tau);
    if (!base) {
        cert.feasible = false;
        cert.bounded = true;  // the level is empty
        return cert;
    }
    IntMatrix k = kernel_basis(qd.weight_matrix);
    RatMatrix local(d, k.cols());
    RatVector rhs(d);
    for (int alpha = 0; alpha < d; ++alpha) {
        for (int j = 0; j < k.cols(); ++j) local.at(alpha, j) = Rat(k.at(alpha, j));
        rhs[alpha] = -(*base)[alpha];
    }
    LpCertificate feas = lp_check(local, rhs, LpMode::Feasible);
    cert.feasible = feas.feasible;
    if (cert.feasible) {
        cert.witness = *base;
        for (int alpha = 0; alpha < d; ++alpha)
            for (int j = 0; j < k.cols(); ++j)
                cert.witness[alpha] += Rat(k.at(alpha, j)) * feas.witness[j];
    }
    RatVector dir = recession_direction(local);
    cert.bounded = dir.empty();
    if (!dir.empty()) {
        RatVector ambient(d, Rat(0));
        for (int alpha = 0; alpha < d; ++alpha)
            for (int j = 0; j < k.cols(); ++j) ambient[alpha] += Rat(k.at(alpha, j)) * dir[j];
        cert.recession = rat_vector(primitive_direction(ambient));
    }
    cert.pass = cert.feasible && cert.bounded;
    return cert;
}

// The moment level as a polytope inside the affine slice {rho^dual(s) = tau},
// in coordinates y with s = base + basis * y.
struct SlicePolytope {
    HPolytope local;
    RatVector base;   // particular solution in (R^d)^dual
    IntMatrix basis;  // d x k kernel basis of the weight matrix

    RatVector embed(const RatVector& y) const {
        RatVector s = base;
        for (int i = 0; i < basis.rows(); ++i)
            for (int j = 0; j < basis.cols(); ++j) s[i] += Rat(basis.at(i, j)) * y[j];
        return s;
    }
};

inline SlicePolytope delta_tau(const QuotientData& qd) {
    const int d = qd.d();
    RatMatrix w = RatMatrix::from_int(qd.weight_matrix);
    auto base = detail::solve_affine(w, qd.tau);
    if (!base) throw InfeasibleSlice("tau is not in the image of the weight map");
    IntMatrix k = kernel_basis(qd.weight_matrix);
    SlicePolytope out;
    out.base = *base;
    out.basis = k;
    std::vector<RatVector> normals;
    RatVector offsets;
    for (int alpha = 0; alpha < d; ++alpha) {
        normals.push_back(rat_vector(k.row(alpha)));
        offsets.push_back((*base)[alpha]);
    }
    out.local = make_hpolytope(k.cols(), normals, offsets);
    return out;
}

// Facet sets of nonempty faces of Delta; equals the family of zero patterns
// on the moment level (the two are identified through the slice translate of
// the embedded polytope).
inline StrataFamily f_tau(const StackyPolytope& sp) {
    ValidationReport rep = validate(sp, ValidateMode::Strict);
    if (!rep.pass()) throw InvalidStackyPolytope("stacky polytope validation failed");
    return facet_sets_of_faces(sp.delta);
}

// Constructs the stacky polytope of a torus quotient: G = T^k acting through
// an integer weight matrix rho (k x d), moment level tau = rho * c.
inline StackyPolytope from_torus_quotient(const IntMatrix& rho, const RatVector& c) {
    const int k = rho.rows(), d = rho.cols();
    if (static_cast<int>(c.size()) != d) throw DimensionMismatch("offset count must match d");
    if (rank(rho) != k) throw RankDeficientRho("rho has rank below its row count");

    FGAbelianGroup n(rho.transpose());  // Z^d / image of the coweight lattice
    StackyPolytope sp = make_stacky_polytope(n, IntMatrix::identity(d), c);

    if (!is_feasible(sp.delta) || !is_bounded(sp.delta))
        throw EmptyOrUnboundedPolytope("the moment polytope is empty or unbounded");

    // regular-value test straight on the given weights: every stratum of the
    // face family must leave a spanning set of columns
    StrataFamily family = facet_sets_of_faces(sp.delta);
    for (const IndexSet& stratum : family.sets()) {
        IndexSet off = complement_set(stratum, d);
        if (rank(rho.select_columns(off)) != k)
            throw NotRegularValue("tau fails to be regular at stratum " +
                                  detail::format_indices_1based(stratum));
    }

    ValidationReport rep = validate(sp, ValidateMode::Strict);
    if (!rep.pass()) throw InvalidStackyPolytope("torus quotient data does not define a stacky polytope");
    return sp;
}

// Weighted projective space P(w): the rank-one quotient with weights w and
// offsets (0,...,0,1/w_d), so the level is 1 in pi units.
inline StackyPolytope wps(const std::vector<Int>& w) {
    if (w.empty()) throw InvalidInvariants("weight list is empty");
    for (const Int& x : w)
        if (x < 1) throw InvalidInvariants("weights must be positive");
    const int d = static_cast<int>(w.size());
    IntMatrix rho(1, d);
    for (int j = 0; j < d; ++j) rho.at(0, j) = w[j];
    RatVector c(d, Rat(0));
    c[d - 1] = make_rat(1, w[d - 1]);
    return from_torus_quotient(rho, c);
}

struct LabelledPolytope {
    HPolytope polytope;           // primitive inward normals
    IntMatrix primitive_normals;  // r x d
    std::vector<Int> labels;      // m_alpha >= 1
};

// Facet labels m_alpha from beta(e_alpha) = m_alpha * (primitive normal);
// defined for free N only.
inline LabelledPolytope to_labelled(const StackyPolytope& sp) {
    if (!sp.n.is_free()) throw NotFreeModule("labels are defined for free N only");
    const int r = sp.dim(), d = sp.facet_count();
    LabelledPolytope out;
    out.primitive_normals = IntMatrix(r, d);
    std::vector<RatVector> normals;
    RatVector offsets;
    for (int alpha = 0; alpha < d; ++alpha) {
        std::vector<Int> v = sp.normals.column(alpha);
        Int m = content(v);
        if (m == 0) throw InvalidStackyPolytope("facet " + std::to_string(alpha + 1) + " has zero normal");
        for (int i = 0; i < r; ++i) out.primitive_normals.at(i, alpha) = v[i] / m;
        out.labels.push_back(m);
        normals.push_back(rat_vector(out.primitive_normals.column(alpha)));
        offsets.push_back(sp.offsets[alpha] / Rat(m));
    }
    out.polytope = make_hpolytope(r, normals, offsets);
    return out;
}

}  // namespace stacky
