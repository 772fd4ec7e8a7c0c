#pragma once

// Stacky fans stored combinatorially: cones are ray-index sets (closed under
// subsets, with the origin), geometry delegated to the ray images n_alpha.
// Includes the normal fan of a stacky polytope, irrelevant-ideal generators,
// the admissible strata of the complement, and the correspondence certificate
// between the polytope and fan pictures.

#include <string>
#include <utility>
#include <vector>

#include "stacky/stacky_polytope.hpp"

namespace stacky {

struct StackyFan {
    FGAbelianGroup n;
    GroupHom beta;        // free(d) -> n
    StrataFamily cones;   // all cones incl. {}, subset-closed
    IntMatrix normals;    // r x d ray images in Lambda

    int ray_count() const { return beta.lift.cols(); }
    int dim() const { return normals.rows(); }
};

// Builds a fan from any cone list; the stored set is the subset closure
// (faces of simplicial cones are exactly the subsets of their ray sets).
inline StackyFan make_stacky_fan(FGAbelianGroup n, IntMatrix beta_lift,
                                 const std::vector<IndexSet>& cones) {
    if (beta_lift.rows() != n.ambient_rank())
        throw DimensionMismatch("beta lift does not match the ambient presentation rank");
    StackyFan sf;
    const int d = beta_lift.cols();
    sf.cones = StrataFamily(d);
    sf.cones.add({});
    for (const IndexSet& c : cones) {
        for (int i : c)
            if (i < 0 || i >= d) throw RangeError("ray index out of range");
        sf.cones.add_with_subsets(c);
    }
    sf.normals = n.free_projection() * beta_lift;
    sf.n = std::move(n);
    sf.beta = GroupHom{FGAbelianGroup::free_group(d), sf.n, std::move(beta_lift)};
    return sf;
}

// The normal fan of a stacky polytope: one cone per nonempty face, generated
// by the normals of the facets containing it; recorded by facet-index set.
// N and beta are carried over unchanged.
inline StackyFan normal_fan(const StackyPolytope& sp) {
    ValidationReport rep = validate(sp, ValidateMode::Strict);
    if (!rep.pass()) throw InvalidStackyPolytope("stacky polytope validation failed");
    std::vector<IndexSet> cones;
    for (const RatVector& v : vertices(sp.delta)) cones.push_back(active_set(sp.delta, v));
    return make_stacky_fan(sp.n, sp.beta.lift, cones);
}

struct FanValidationReport {
    ConditionVerdict simplicial;       // condition 1
    ConditionVerdict rays;             // condition 2
    ConditionVerdict finite_cokernel;  // condition 3

    bool pass() const { return simplicial.pass && rays.pass && finite_cokernel.pass; }
};

inline FanValidationReport validate_fan(const StackyFan& sf) {
    FanValidationReport rep;

    for (const IndexSet& cone : sf.cones.sets()) {
        if (cone.empty()) continue;
        IntMatrix gens = sf.normals.select_columns(cone);
        if (rank(gens) != static_cast<int>(cone.size())) {
            rep.simplicial.pass = false;
            rep.simplicial.witness =
                "cone " + detail::format_indices_1based(cone) + " has dependent generators";
            break;
        }
    }

    for (int alpha = 0; alpha < sf.ray_count(); ++alpha) {
        bool zero = true;
        for (int i = 0; i < sf.dim(); ++i)
            if (sf.normals.at(i, alpha) != 0) zero = false;
        if (zero) {
            rep.rays.pass = false;
            rep.rays.witness = "ray " + std::to_string(alpha + 1) + " has zero image";
            break;
        }
        if (!sf.cones.contains({alpha})) {
            rep.rays.pass = false;
            rep.rays.witness = "ray " + std::to_string(alpha + 1) + " is not a cone of the fan";
            break;
        }
    }

    CokernelInvariants coker = cokernel_invariants(sf.beta.lift.hconcat(sf.n.presentation()));
    if (!coker.finite()) {
        rep.finite_cokernel.pass = false;
        rep.finite_cokernel.witness =
            "coker(beta) has free rank " + std::to_string(coker.free_rank);
    }
    return rep;
}

// Index sets of the irrelevant-ideal monomials: for each cone the complement
// of its ray set; the minimal generating family comes from the maximal cones.
struct MonomialGeneratorSet {
    std::vector<std::pair<IndexSet, IndexSet>> by_cone;  // (cone, complement)
    std::vector<IndexSet> minimal;                       // complements of maximal cones, sorted
};

inline MonomialGeneratorSet irrelevant_generators(const StackyFan& sf) {
    if (!validate_fan(sf).pass()) throw InvalidFan("fan validation failed");
    MonomialGeneratorSet out;
    for (const IndexSet& cone : sf.cones.sets())
        out.by_cone.emplace_back(cone, complement_set(cone, sf.ray_count()));
    for (const IndexSet& cone : sf.cones.maximal_sets())
        out.minimal.push_back(complement_set(cone, sf.ray_count()));
    std::sort(out.minimal.begin(), out.minimal.end());
    out.minimal.erase(std::unique(out.minimal.begin(), out.minimal.end()), out.minimal.end());
    return out;
}

// Zero patterns admitted by the fan's open subset: I is admissible iff it is
// contained in the ray set of some cone. Enumerated per maximal cone.
inline StrataFamily admissible_family(const StackyFan& sf) {
    if (!validate_fan(sf).pass()) throw InvalidFan("fan validation failed");
    StrataFamily fam(sf.ray_count());
    fam.add({});
    for (const IndexSet& cone : sf.cones.maximal_sets()) fam.add_with_subsets(cone);
    return fam;
}

struct EquivalenceCertificate {
    bool pass = false;
    StrataFamily polytope_family;   // zero patterns on the moment level
    StrataFamily fan_family;        // admissible strata of the fan complement
    std::vector<IndexSet> mismatch; // symmetric difference, sorted
    CompactAbelianGroup g;
    IntMatrix weight_matrix;
    RatVector tau;
    std::vector<Int> dg_torsion;
    int dg_free_rank = 0;
};

namespace detail {

// Independent route to the face family: each index set is tested for
// nonemptiness of its face by an exact feasibility check, no face lattice
// shortcuts. Exponential in the facet count; fine at desk scale.
inline StrataFamily face_family_by_lp(const HPolytope& p) {
    const int d = p.facet_count();
    StrataFamily fam(d);
    auto [a, b] = p.system();
    for (size_t mask = 0; mask < (size_t{1} << d); ++mask) {
        IndexSet stratum;
        for (int i = 0; i < d; ++i)
            if (mask & (size_t{1} << i)) stratum.push_back(i);
        // facets of the stratum become equalities
        RatMatrix sys(d + static_cast<int>(stratum.size()), p.dim);
        RatVector rhs(d + stratum.size());
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < p.dim; ++j) sys.at(i, j) = a.at(i, j);
            rhs[i] = b[i];
        }
        for (size_t k = 0; k < stratum.size(); ++k) {
            for (int j = 0; j < p.dim; ++j) sys.at(d + static_cast<int>(k), j) = -a.at(stratum[k], j);
            rhs[d + k] = -b[stratum[k]];
        }
        if (lp_check(sys, rhs, LpMode::Feasible).feasible) fam.add(stratum);
    }
    return fam;
}

}  // namespace detail

// Combinatorial witness that the polytope and fan quotient presentations
// agree: the zero-pattern family of the moment level (computed by per-stratum
// feasibility) must equal the admissible family of the normal fan (computed
// by cone-subset closure), and both sides share (N, beta) and hence the same
// group, weights and level.
inline EquivalenceCertificate correspondence_check(const StackyPolytope& sp) {
    ValidationReport rep = validate(sp, ValidateMode::Strict);
    if (!rep.pass()) throw InvalidStackyPolytope("stacky polytope validation failed");
    if (sp.facet_count() > 20) throw Error("correspondence check is limited to 20 facets");

    EquivalenceCertificate cert;
    cert.polytope_family = detail::face_family_by_lp(sp.delta);
    cert.fan_family = admissible_family(normal_fan(sp));
    cert.mismatch = cert.polytope_family.symmetric_difference(cert.fan_family);
    cert.pass = cert.mismatch.empty();

    QuotientData qd = quotient_data(sp);
    cert.g = qd.g;
    cert.weight_matrix = qd.weight_matrix;
    cert.tau = qd.tau;
    cert.dg_torsion = qd.gale.dg.torsion();
    cert.dg_free_rank = qd.gale.dg.free_rank();
    return cert;
}

}  // namespace stacky
