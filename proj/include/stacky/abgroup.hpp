#pragma once

// Finitely generated Z-modules given by presentation matrices, their duals
// and Ext^1, and the Gale-dual group of a module map together with the induced
// covector map. The Gale construction runs through a two-term free resolution
// and the dualized mapping cone; its output is canonicalized so that equal
// inputs produce byte-equal results.

#include <string>
#include <utility>
#include <vector>

#include "stacky/intlinalg.hpp"

namespace stacky {

inline Int mod_positive(const Int& a, const Int& m) {
    Int r = a % m;
    if (r < 0) r += m;
    return r;
}

// coker(P : Z^s -> Z^t), presented by the columns of P.
class FGAbelianGroup {
public:
    FGAbelianGroup() : FGAbelianGroup(IntMatrix(0, 0)) {}

    explicit FGAbelianGroup(IntMatrix presentation) : pres_(std::move(presentation)) {
        SNFDecomposition f = snf(pres_);
        u_ = f.u;
        const int t = pres_.rows();
        for (int i = 0; i < f.rank; ++i) {
            const Int& d = f.d.at(i, i);
            if (d > 1) {
                torsion_.push_back(d);
                torsion_rows_.push_back(i);
            }
        }
        for (int i = f.rank; i < t; ++i) free_rows_.push_back(i);
    }

    // Canonical presentation diag(torsion) padded with zero rows for the free
    // part; torsion coordinates come first.
    static FGAbelianGroup from_invariants(int free_rank, const std::vector<Int>& torsion) {
        if (free_rank < 0) throw InvalidInvariants("negative free rank");
        for (size_t i = 0; i < torsion.size(); ++i) {
            if (torsion[i] <= 1) throw InvalidInvariants("torsion factors must exceed 1");
            if (i + 1 < torsion.size() && torsion[i + 1] % torsion[i] != 0)
                throw InvalidInvariants("torsion factors must form a divisibility chain");
        }
        const int q = static_cast<int>(torsion.size());
        IntMatrix pres(q + free_rank, q);
        for (int j = 0; j < q; ++j) pres.at(j, j) = torsion[j];
        return FGAbelianGroup(pres);
    }

    static FGAbelianGroup free_group(int rank) { return from_invariants(rank, {}); }

    const IntMatrix& presentation() const { return pres_; }
    int ambient_rank() const { return pres_.rows(); }

    int free_rank() const { return static_cast<int>(free_rows_.size()); }
    const std::vector<Int>& torsion() const { return torsion_; }
    int torsion_rank() const { return static_cast<int>(torsion_.size()); }

    bool is_free() const { return torsion_.empty(); }
    bool is_finite() const { return free_rows_.empty(); }
    Int order() const {
        if (!is_finite()) throw Error("group is infinite");
        Int o = 1;
        for (const Int& m : torsion_) o *= m;
        return o;
    }

    // Rows of the canonical coordinate map ambient -> Z^q (+) Z^f: the torsion
    // coordinates (mod their invariants) followed by the free coordinates.
    IntMatrix canonical_map() const {
        std::vector<int> idx = torsion_rows_;
        idx.insert(idx.end(), free_rows_.begin(), free_rows_.end());
        return u_.select_rows(idx);
    }

    // f x t projection onto the free quotient Lambda = group / torsion.
    IntMatrix free_projection() const { return u_.select_rows(free_rows_); }

    bool same_invariants(const FGAbelianGroup& other) const {
        return free_rank() == other.free_rank() && torsion_ == other.torsion_;
    }

private:
    IntMatrix pres_;
    IntMatrix u_;                 // SNF row transform of pres_
    std::vector<Int> torsion_;    // invariant factors > 1
    std::vector<int> torsion_rows_, free_rows_;
};

// Homomorphism carried by a lift between the ambient free covers.
struct GroupHom {
    FGAbelianGroup source;
    FGAbelianGroup target;
    IntMatrix lift;  // ambient(target) x ambient(source)

    bool well_defined() const {
        if (lift.rows() != target.ambient_rank() || lift.cols() != source.ambient_rank()) return false;
        IntMatrix carried = lift * source.presentation();
        for (int j = 0; j < carried.cols(); ++j)
            if (!in_column_span(target.presentation(), carried.column(j))) return false;
        return true;
    }
};

struct CompactAbelianGroup {
    int torus_rank = 0;
    std::vector<Int> component_group;  // invariant factors of pi_0

    bool operator==(const CompactAbelianGroup& other) const {
        return torus_rank == other.torus_rank && component_group == other.component_group;
    }
};

// G = Hom(D, circle): a torus of the free rank times a finite component group.
inline CompactAbelianGroup hom_to_circle(const FGAbelianGroup& d) {
    return {d.free_rank(), d.torsion()};
}

struct DualData {
    FGAbelianGroup group;   // free of rank = free rank of the input
    IntMatrix functionals;  // t x r columns: a basis of Hom(N, Z) inside (Z^t)^dual
};

// Hom(N, Z): the functionals on the ambient cover vanishing on the relations.
inline DualData dual(const FGAbelianGroup& n) {
    IntMatrix k = kernel_basis(n.presentation().transpose());
    return {FGAbelianGroup::free_group(k.cols()), k};
}

// Ext^1(N, Z) via the dualized two-term resolution 0 -> Z^k -> Z^t -> N -> 0.
inline FGAbelianGroup ext1(const FGAbelianGroup& n) {
    IntMatrix b = lattice_basis(n.presentation());
    return FGAbelianGroup(b.transpose());
}

struct ImageLattice {
    FGAbelianGroup lambda;  // N / torsion, free
    GroupHom projection;    // N -> Lambda
};

inline ImageLattice image_lattice(const FGAbelianGroup& n) {
    IntMatrix proj = n.free_projection();
    FGAbelianGroup lambda = FGAbelianGroup::free_group(proj.rows());
    return {lambda, GroupHom{n, lambda, proj}};
}

// Gale-dual data of beta : Z^d -> N.
struct GaleData {
    GroupHom beta;              // the input map
    FGAbelianGroup dg;          // canonical presentation (torsion first, then free)
    GroupHom beta_dg;           // (Z^d)^dual -> dg, canonical coordinates
    IntMatrix resolution_basis; // chosen basis of the relation lattice of N
    IntMatrix cone_matrix;      // boundary of the mapping cone in degree 1
    bool finite_cokernel = true;

    int d() const { return beta.lift.cols(); }

    // f x d block of beta_dg hitting the free quotient of dg; column alpha is
    // the weight covector w^alpha.
    IntMatrix weight_matrix() const {
        std::vector<int> rows;
        for (int i = dg.torsion_rank(); i < dg.torsion_rank() + dg.free_rank(); ++i) rows.push_back(i);
        return beta_dg.lift.select_rows(rows);
    }
    // q x d block hitting the component characters, entries reduced mod the
    // matching invariant factor.
    IntMatrix component_characters() const {
        std::vector<int> rows;
        for (int i = 0; i < dg.torsion_rank(); ++i) rows.push_back(i);
        return beta_dg.lift.select_rows(rows);
    }
};

// DG(beta) and beta^DG from the dualized mapping cone of a two-term
// resolution. The free resolution of N is 0 -> Z^k -> Z^t -> N -> 0 with the
// middle basis taken canonically from the relation lattice; the cone boundary
// in degree 1 is (e, f) |-> relations(f) - beta(e). Dualizing leaves a single
// cokernel, which is returned in Smith-canonical coordinates with the free
// block of the induced map further reduced to row Hermite form.
inline GaleData gale_dual(const GroupHom& beta) {
    const FGAbelianGroup& n = beta.target;
    const int d = beta.lift.cols();
    const int t = n.ambient_rank();

    IntMatrix b = lattice_basis(n.presentation());  // t x k
    IntMatrix c(t, d + b.cols());
    for (int i = 0; i < t; ++i) {
        for (int j = 0; j < d; ++j) c.at(i, j) = -beta.lift.at(i, j);
        for (int j = 0; j < b.cols(); ++j) c.at(i, d + j) = b.at(i, j);
    }

    FGAbelianGroup raw(c.transpose());  // coker of the dualized cone boundary
    const int q = raw.torsion_rank(), f = raw.free_rank();

    std::vector<int> first_d(d);
    for (int j = 0; j < d; ++j) first_d[j] = j;
    IntMatrix lift = raw.canonical_map().select_columns(first_d);  // (q+f) x d

    for (int i = 0; i < q; ++i)
        for (int j = 0; j < d; ++j) lift.at(i, j) = mod_positive(lift.at(i, j), raw.torsion()[i]);

    if (f > 0) {
        std::vector<int> fr;
        for (int i = q; i < q + f; ++i) fr.push_back(i);
        IntMatrix w = hnf(lift.select_rows(fr)).h;
        for (int i = 0; i < f; ++i)
            for (int j = 0; j < d; ++j) lift.at(q + i, j) = w.at(i, j);
    }

    GaleData out;
    out.beta = beta;
    out.dg = FGAbelianGroup::from_invariants(f, raw.torsion());
    out.beta_dg = GroupHom{FGAbelianGroup::free_group(d), out.dg, lift};
    out.resolution_basis = b;
    out.cone_matrix = c;
    out.finite_cokernel = cokernel_invariants(beta.lift.hconcat(n.presentation())).finite();
    return out;
}

struct GaleCertificate {
    bool pass = false;
    bool beta_dual_injective = false;
    bool kernel_equals_image = false;
    bool cokernel_is_ext1 = false;
    bool finite_cokernel = true;
    std::string failing_stage;  // empty when pass
};

// Exactness of 0 -> N^dual -> (Z^d)^dual -> DG(beta) -> Ext^1(N,Z) -> 0,
// checked stage by stage with exact integer linear algebra.
inline GaleCertificate verify_gale_sequence(const GaleData& g) {
    GaleCertificate cert;
    cert.finite_cokernel = g.finite_cokernel;
    const FGAbelianGroup& n = g.beta.target;
    const int d = g.d();

    DualData nd = dual(n);
    IntMatrix beta_dual = g.beta.lift.transpose() * nd.functionals;  // d x r
    cert.beta_dual_injective = (rank(beta_dual) == beta_dual.cols());

    IntMatrix block = g.beta_dg.lift.hconcat(g.dg.presentation());
    IntMatrix ker = kernel_basis(block);
    std::vector<int> first_d(d);
    for (int j = 0; j < d; ++j) first_d[j] = j;
    IntMatrix ker_in_zd = ker.select_rows(first_d);
    cert.kernel_equals_image = lattice_equal(ker_in_zd, beta_dual);

    CokernelInvariants coker = cokernel_invariants(block);
    FGAbelianGroup ext = ext1(n);
    cert.cokernel_is_ext1 =
        coker.free_rank == ext.free_rank() && coker.torsion == ext.torsion();

    if (!cert.beta_dual_injective)
        cert.failing_stage = "beta_dual_injective";
    else if (!cert.kernel_equals_image)
        cert.failing_stage = "kernel_equals_image";
    else if (!cert.cokernel_is_ext1)
        cert.failing_stage = "cokernel_is_ext1";
    cert.pass = cert.failing_stage.empty();
    return cert;
}

}  // namespace stacky
