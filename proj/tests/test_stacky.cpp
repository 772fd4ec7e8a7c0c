#include <catch2/catch_amalgamated.hpp>

#include "stacky/stacky_polytope.hpp"
#include "support/corpus.hpp"

using namespace stacky;
using namespace testsupport;

TEST_CASE("validate passes on the weighted projective datum") {
    ValidationReport rep = validate(wps({1, 2, 3}), ValidateMode::Strict);
    CHECK(rep.pass());
    CHECK(rep.redundant.empty());
}

TEST_CASE("validate flags a duplicated facet in strict mode only") {
    StackyPolytope cube = cube_datum();
    std::vector<std::vector<Int>> cols;
    for (int j = 0; j < 6; ++j) cols.push_back(cube.beta.lift.column(j));
    cols.push_back(cols[0]);  // duplicate of facet 1 appended as facet 7
    RatVector offs = cube.offsets;
    offs.push_back(cube.offsets[0]);
    StackyPolytope doubled = free_polytope(3, cols, offs);

    ValidationReport strict = validate(doubled, ValidateMode::Strict);
    CHECK_FALSE(strict.pass());
    CHECK_FALSE(strict.facets.pass);
    CHECK(strict.facets.witness == "facet 7 redundant");
    CHECK(strict.redundant == std::vector<int>{6});

    ValidationReport lenient = validate(doubled, ValidateMode::Lenient);
    CHECK(lenient.pass());
    CHECK(lenient.redundant == std::vector<int>{6});
}

TEST_CASE("validate flags an infinite cokernel") {
    // beta: Z^2 -> Z^3 missing a direction
    IntMatrix lift = IntMatrix::from_columns(3, {{1, 0, 0}, {0, 1, 0}});
    StackyPolytope sp = make_stacky_polytope(FGAbelianGroup::free_group(3), lift, {Rat(0), Rat(0)});
    ValidationReport rep = validate(sp, ValidateMode::Strict);
    CHECK_FALSE(rep.finite_cokernel.pass);
    CHECK(rep.finite_cokernel.witness == "coker(beta) has free rank 1");
}

TEST_CASE("quotient data of weighted projective spaces") {
    QuotientData qd = quotient_data(wps({1, 2, 3}));
    CHECK(qd.g.torus_rank == 1);
    CHECK(qd.g.component_group.empty());
    CHECK(qd.weight_matrix == IntMatrix{{1, 2, 3}});
    CHECK(qd.tau == RatVector{Rat(1)});
    CHECK(qd.gale.dg.free_rank() == 1);
    CHECK(qd.gale.dg.torsion().empty());

    StackyPolytope p123 = wps({1, 2, 3});
    CHECK(p123.n.free_rank() == 2);
    CHECK(p123.n.is_free());
    CHECK(vertices(p123.delta).size() == 3);

    QuotientData plain = quotient_data(wps({1, 1, 1}));
    CHECK(plain.weight_matrix == IntMatrix{{1, 1, 1}});
    CHECK(plain.gale.dg.free_rank() == 1);
    CHECK(plain.gale.dg.torsion().empty());
}

TEST_CASE("quotient data of the projective plane datum") {
    QuotientData qd = quotient_data(simplex2_datum());
    CHECK(qd.g.torus_rank == 1);
    CHECK(qd.weight_matrix == IntMatrix{{1, 1, 1}});
    CHECK(qd.tau == RatVector{Rat(1)});
}

TEST_CASE("quotient data of the square datum") {
    QuotientData qd = quotient_data(square_datum());
    CHECK(qd.g.torus_rank == 2);
    CHECK(qd.weight_matrix == IntMatrix{{1, 0, 1, 0}, {0, 1, 0, 1}});
    CHECK(qd.tau == RatVector{Rat(1), Rat(1)});
}

TEST_CASE("regular value certificate") {
    StackyPolytope p123 = wps({1, 2, 3});
    QuotientData qd = quotient_data(p123);
    CHECK(check_regular_value(qd, f_tau(p123)).pass);

    StackyPolytope sq = square_datum();
    QuotientData sq_qd = quotient_data(sq);
    CHECK(check_regular_value(sq_qd, f_tau(sq)).pass);

    // drop the closing facet of the interval quotient but keep the level:
    // the corner stratum {1,2} appears and no weights remain to span
    StackyPolytope interval = from_torus_quotient(IntMatrix{{1, 1}}, {Rat(1, 2), Rat(1, 2)});
    QuotientData iqd = quotient_data(interval);
    StrataFamily broken(2);
    broken.add_with_subsets({0, 1});
    RegularValueCertificate cert = check_regular_value(iqd, broken);
    CHECK_FALSE(cert.pass);
    CHECK(cert.witness == IndexSet{0, 1});
}

TEST_CASE("properness certificate") {
    StackyPolytope p123 = wps({1, 2, 3});
    PropernessCertificate cert = check_proper(quotient_data(p123));
    CHECK(cert.pass);
    // the witness solves s >= 0, rho(s) = tau
    Rat pairing = 0;
    for (size_t i = 0; i < cert.witness.size(); ++i) {
        CHECK(cert.witness[i] >= 0);
        pairing += Rat(std::vector<Int>{1, 2, 3}[i]) * cert.witness[i];
    }
    CHECK(pairing == 1);

    CHECK(check_proper(quotient_data(square_datum())).pass);

    // the noncompact quotient: weights (1,-1) at level zero
    GroupHom sum{FGAbelianGroup::free_group(2), FGAbelianGroup::free_group(1), IntMatrix{{1, 1}}};
    QuotientData bad;
    bad.gale = gale_dual(sum);
    bad.g = hom_to_circle(bad.gale.dg);
    bad.weight_matrix = bad.gale.weight_matrix();
    bad.component_characters = bad.gale.component_characters();
    bad.tau = {Rat(0)};
    REQUIRE(bad.weight_matrix == IntMatrix{{1, -1}});
    PropernessCertificate fail = check_proper(bad);
    CHECK_FALSE(fail.pass);
    CHECK(fail.feasible);  // s = 0 sits in the level
    CHECK_FALSE(fail.bounded);
    CHECK(fail.recession == RatVector{Rat(1), Rat(1)});
}

TEST_CASE("moment level polytopes") {
    QuotientData p123 = quotient_data(wps({1, 2, 3}));
    SlicePolytope slice = delta_tau(p123);
    CHECK(slice.local.dim == 2);
    CHECK(slice.local.facet_count() == 3);
    CHECK(vertices(slice.local).size() == 3);

    // interval quotient: the level is the segment joining (1,0) and (0,1)
    StackyPolytope interval = from_torus_quotient(IntMatrix{{1, 1}}, {Rat(1, 2), Rat(1, 2)});
    SlicePolytope iv = delta_tau(quotient_data(interval));
    std::vector<RatVector> embedded;
    for (const RatVector& y : vertices(iv.local)) embedded.push_back(iv.embed(y));
    std::sort(embedded.begin(), embedded.end());
    CHECK(embedded == std::vector<RatVector>{{Rat(0), Rat(1)}, {Rat(1), Rat(0)}});

    // infeasible slice: tau outside the image of the weight map
    QuotientData off = p123;
    off.tau = {Rat(1), Rat(1)};
    off.weight_matrix = IntMatrix{{1, 2, 3}, {2, 4, 6}};  // rank 1, tau not proportional
    CHECK_THROWS_AS(delta_tau(off), InfeasibleSlice);
}

TEST_CASE("the moment level agrees with the translated polytope image") {
    for (const auto& entry : full_corpus(4)) {
        QuotientData qd = quotient_data(entry.sp);
        CHECK(moment_level_matches_polytope_image(entry.sp, qd));
    }
}

TEST_CASE("level-set strata families") {
    StrataFamily p2 = f_tau(simplex2_datum());
    CHECK(p2.size() == 7);
    CHECK(p2.subset_closed());

    StrataFamily sq = f_tau(square_datum());
    CHECK(sq.size() == 9);
    CHECK(sq.contains({0, 1}));
    CHECK_FALSE(sq.contains({0, 2}));

    // the point quotient: no facets at all
    StackyPolytope point = make_stacky_polytope(FGAbelianGroup::free_group(0), IntMatrix(0, 0), {});
    StrataFamily f = f_tau(point);
    CHECK(f.size() == 1);
    CHECK(f.contains({}));
    QuotientData qd = quotient_data(point);
    CHECK(qd.g.torus_rank == 0);
    CHECK(qd.tau.empty());
    CHECK(check_regular_value(qd, f).pass);
    CHECK(check_proper(qd).pass);
}

TEST_CASE("stabilizers of weighted projective spaces") {
    StackyPolytope p112 = wps({1, 1, 2});
    QuotientData qd = quotient_data(p112);
    StrataFamily family = f_tau(p112);

    StabilizerReport corner = stabilizer(qd, family, {0, 1});
    CHECK(corner.finite);
    CHECK(corner.invariants == std::vector<Int>{2});
    CHECK(corner.order == 2);

    for (const IndexSet& stratum : family.sets()) {
        StabilizerReport rep = stabilizer(qd, family, stratum);
        if (stratum == IndexSet{0, 1})
            CHECK(rep.order == 2);
        else
            CHECK(rep.order == 1);
        // independent circle-group enumeration
        CHECK(rep.order == brute_force_stabilizer_order(qd.weight_matrix, stratum));
    }

    StackyPolytope p111 = wps({1, 1, 1});
    QuotientData qd3 = quotient_data(p111);
    StrataFamily family3 = f_tau(p111);
    for (const IndexSet& stratum : family3.sets()) {
        CHECK(stabilizer(qd3, family3, stratum).order == 1);
        CHECK(brute_force_stabilizer_order(qd3.weight_matrix, stratum) == 1);
    }

    CHECK_THROWS_AS(stabilizer(qd, family, {0, 1, 2}), StratumNotInFamily);
}

TEST_CASE("generic stabilizer is the torsion of N") {
    // an interval with N = Z (+) Z/2: a gerbe, stabilizer Z/2 at every stratum
    FGAbelianGroup n = FGAbelianGroup::from_invariants(1, {2});
    IntMatrix lift = IntMatrix::from_columns(2, {{1, 1}, {0, -1}});  // torsion row, then free row
    StackyPolytope gerbe = make_stacky_polytope(n, lift, {Rat(0), Rat(1)});
    REQUIRE(validate(gerbe, ValidateMode::Strict).pass());
    QuotientData qd = quotient_data(gerbe);
    // the circle acts through doubled characters; the gerbe shows up in the
    // stabilizers, not in the component group
    CHECK(qd.g.torus_rank == 1);
    CHECK(qd.weight_matrix == IntMatrix{{2, 2}});
    StrataFamily family = f_tau(gerbe);
    CHECK(check_regular_value(qd, family).pass);
    StabilizerReport generic = stabilizer(qd, family, {});
    CHECK(generic.invariants == std::vector<Int>{2});
    CHECK(generic.order == ext1(n).order());
}

TEST_CASE("torus quotient constructors") {
    StackyPolytope p123 = from_torus_quotient(IntMatrix{{1, 2, 3}}, {Rat(0), Rat(0), Rat(1, 3)});
    QuotientData qd = quotient_data(p123);
    CHECK(qd.weight_matrix == IntMatrix{{1, 2, 3}});
    CHECK(qd.tau == RatVector{Rat(1)});
    CHECK(f_tau(p123) == f_tau(wps({1, 2, 3})));

    StackyPolytope square = from_torus_quotient(IntMatrix{{1, 0, 1, 0}, {0, 1, 0, 1}},
                                                {Rat(0), Rat(0), Rat(1), Rat(1)});
    CHECK(f_tau(square) == f_tau(square_datum()));

    StackyPolytope interval = from_torus_quotient(IntMatrix{{1, 1}}, {Rat(1, 2), Rat(1, 2)});
    CHECK(f_tau(interval).size() == 3);
}

TEST_CASE("torus quotient rejects bad data") {
    CHECK_THROWS_AS(from_torus_quotient(IntMatrix{{1, 1}, {1, 1}}, {Rat(0), Rat(0)}),
                    RankDeficientRho);
    CHECK_THROWS_AS(from_torus_quotient(IntMatrix{{1, -1}}, {Rat(0), Rat(0)}),
                    EmptyOrUnboundedPolytope);
    // collapsing the square to a point puts a four-fold stratum in the family
    CHECK_THROWS_AS(from_torus_quotient(IntMatrix{{1, 0, 1, 0}, {0, 1, 0, 1}},
                                        {Rat(0), Rat(0), Rat(0), Rat(0)}),
                    NotRegularValue);
}

TEST_CASE("round trip through the quotient presentation") {
    for (const auto& entry : full_corpus(4)) {
        const StackyPolytope& sp = entry.sp;
        if (!sp.n.is_free()) continue;
        QuotientData qd = quotient_data(sp);
        REQUIRE(qd.g.component_group.empty());
        StackyPolytope back = from_torus_quotient(qd.weight_matrix, sp.offsets);
        QuotientData qd2 = quotient_data(back);
        CHECK(validate(back, ValidateMode::Strict).pass());
        CHECK(qd2.weight_matrix == qd.weight_matrix);
        CHECK(qd2.tau == qd.tau);
        CHECK(qd2.gale.dg.free_rank() == qd.gale.dg.free_rank());
        CHECK(qd2.gale.dg.torsion() == qd.gale.dg.torsion());
        CHECK(f_tau(back) == f_tau(sp));
    }
}

TEST_CASE("facet labels") {
    StackyPolytope p2 = simplex2_datum();
    LabelledPolytope plain = to_labelled(p2);
    CHECK(plain.labels == std::vector<Int>{1, 1, 1});

    StackyPolytope doubled = free_polytope(2, {{1, 0}, {0, 1}, {-2, -2}}, {Rat(0), Rat(0), Rat(1)});
    LabelledPolytope lab = to_labelled(doubled);
    CHECK(lab.labels == std::vector<Int>{1, 1, 2});
    CHECK(lab.primitive_normals.column(2) == std::vector<Int>{-1, -1});
    CHECK(lab.polytope.facets[2].offset == Rat(1, 2));

    StackyPolytope stretched =
        free_polytope(2, {{3, 0}, {0, 1}, {-1, 0}, {0, -1}}, {Rat(0), Rat(0), Rat(1), Rat(1)});
    LabelledPolytope lab2 = to_labelled(stretched);
    CHECK(lab2.labels == std::vector<Int>{3, 1, 1, 1});
    CHECK(lab2.primitive_normals.column(0) == std::vector<Int>{1, 0});

    FGAbelianGroup torsion_n = FGAbelianGroup::from_invariants(1, {2});
    IntMatrix lift = IntMatrix::from_columns(2, {{1, 1}, {0, -1}});
    StackyPolytope gerbe = make_stacky_polytope(torsion_n, lift, {Rat(0), Rat(1)});
    CHECK_THROWS_AS(to_labelled(gerbe), NotFreeModule);
}

TEST_CASE("every valid corpus datum passes the regular-value and properness checks") {
    for (const auto& entry : full_corpus(4)) {
        QuotientData qd = quotient_data(entry.sp);
        CHECK(check_regular_value(qd, f_tau(entry.sp)).pass);
        CHECK(check_proper(qd).pass);
    }
}

TEST_CASE("strata families are subset closed with maximal sets of full size") {
    for (const auto& entry : full_corpus(4)) {
        StrataFamily fam = f_tau(entry.sp);
        CHECK(fam.subset_closed());
        CHECK(fam.contains({}));
        for (const IndexSet& s : fam.maximal_sets())
            CHECK(static_cast<int>(s.size()) == entry.sp.dim());
    }
}
