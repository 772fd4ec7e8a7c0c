// Acceptance suite: one line per criterion, every check exact. Each criterion
// also carries a wall-clock budget; exceeding it fails the criterion. The
// random corpora are seeded (STACKY_SEED overrides the default seed).

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "stacky/stacky.hpp"
#include "support/corpus.hpp"

using namespace stacky;
using namespace testsupport;

namespace {

struct Criterion {
    std::string label;
    double budget_seconds;
    std::function<bool(std::string&)> body;
};

bool expect(bool ok, const std::string& what, std::string& detail) {
    if (!ok && detail.empty()) detail = what;
    return ok;
}

// ---- criterion 1: weighted projective reproduction --------------------------

bool criterion_wps(std::string& detail) {
    bool ok = true;
    for (const std::vector<Int>& w : {std::vector<Int>{1, 2, 3}, std::vector<Int>{1, 1, 2}}) {
        // through the document pipeline, as the tool runs it
        InputDocument wdoc;
        wdoc.kind = DocumentKind::Wps;
        wdoc.weights = w;
        Json polytope_doc = run_command("wps", wdoc, CliOptions{});
        InputDocument pdoc = parse_input(serialize(polytope_doc));
        Json rep = run_command("quotient-data", pdoc, CliOptions{});

        ok = expect(rep["quotient"]["group"]["torus_rank"] == 1, "torus rank is not 1", detail) && ok;
        ok = expect(rep["quotient"]["group"]["component_group"].empty(), "component group not trivial",
                    detail) && ok;
        Json expected_weights = Json::array();
        for (const Int& x : w) expected_weights.push_back(Json::array({int_to_json(x)}));
        ok = expect(rep["quotient"]["weights"] == expected_weights, "weights differ", detail) && ok;
        ok = expect(rep["quotient"]["tau"] == Json::parse(R"(["1"])"), "tau is not 1", detail) && ok;
        ok = expect(pdoc.free_rank == 2 && pdoc.torsion.empty(), "N is not Z^2", detail) && ok;
    }
    return ok;
}

// ---- criterion 2: gale sequence exactness ------------------------------------

bool criterion_gale(std::string& detail) {
    Rng rng(corpus_seed() ^ 0xacce97ULL);
    auto corpus = random_beta_corpus(200, rng);
    for (size_t i = 0; i < corpus.size(); ++i) {
        const auto& rb = corpus[i];
        GroupHom beta{FGAbelianGroup::free_group(rb.lift.cols()), rb.n, rb.lift};
        GaleData g = gale_dual(beta);
        GaleCertificate cert = verify_gale_sequence(g);
        if (!expect(cert.pass, "sequence fails at sample " + std::to_string(i) + " stage " +
                                   cert.failing_stage,
                    detail))
            return false;
        if (!expect(g.dg.free_rank() == rb.lift.cols() - rb.n.free_rank(),
                    "rank count fails at sample " + std::to_string(i), detail))
            return false;
    }
    return true;
}

// ---- criterion 3: correspondence witness -------------------------------------

bool criterion_correspondence(std::string& detail) {
    bool ok = true;
    for (const auto& entry : full_corpus(10)) {
        EquivalenceCertificate cert = correspondence_check(entry.sp);
        ok = expect(cert.pass, entry.name + ": families differ", detail) && ok;

        // both sides carry the same module data, so the induced presentations
        // must agree when recomputed from each side
        StackyFan fan = normal_fan(entry.sp);
        ok = expect(fan.n.presentation() == entry.sp.n.presentation(), entry.name + ": N differs",
                    detail) && ok;
        ok = expect(fan.beta.lift == entry.sp.beta.lift, entry.name + ": beta differs", detail) && ok;
        GaleData from_polytope = gale_dual(entry.sp.beta);
        GaleData from_fan = gale_dual(fan.beta);
        ok = expect(from_polytope.dg.same_invariants(from_fan.dg),
                    entry.name + ": DG invariants differ", detail) && ok;
        ok = expect(from_polytope.beta_dg.lift == from_fan.beta_dg.lift,
                    entry.name + ": induced maps differ", detail) && ok;
        QuotientData qd = quotient_data(entry.sp);
        ok = expect(qd.weight_matrix == cert.weight_matrix && qd.tau == cert.tau,
                    entry.name + ": quotient data differs", detail) && ok;
    }
    return ok;
}

// ---- criterion 4: moment level identity --------------------------------------

bool criterion_moment_level(std::string& detail) {
    bool ok = true;
    for (const auto& entry : full_corpus(10)) {
        QuotientData qd = quotient_data(entry.sp);
        ok = expect(moment_level_matches_polytope_image(entry.sp, qd),
                    entry.name + ": vertex sets differ", detail) && ok;
    }
    return ok;
}

// ---- criterion 5: regular value and properness -------------------------------

bool criterion_certificates(std::string& detail) {
    bool ok = true;
    for (const auto& entry : full_corpus(10)) {
        QuotientData qd = quotient_data(entry.sp);
        ok = expect(check_regular_value(qd, f_tau(entry.sp)).pass,
                    entry.name + ": regular value fails", detail) && ok;
        ok = expect(check_proper(qd).pass, entry.name + ": properness fails", detail) && ok;
    }

    // dropping the closing facet from a simplex keeps tau but puts the corner
    // stratum into the family; no weights remain there
    StackyPolytope interval = from_torus_quotient(IntMatrix{{1, 1}}, {Rat(1, 2), Rat(1, 2)});
    QuotientData iqd = quotient_data(interval);
    StrataFamily dropped(2);
    dropped.add_with_subsets({0, 1});
    RegularValueCertificate reg = check_regular_value(iqd, dropped);
    ok = expect(!reg.pass, "dropped-facet datum passed", detail) && ok;
    ok = expect(reg.witness == IndexSet{0, 1}, "dropped-facet witness is not {1,2}", detail) && ok;

    // weights (1,-1) at level zero: feasible but noncompact
    GroupHom sum{FGAbelianGroup::free_group(2), FGAbelianGroup::free_group(1), IntMatrix{{1, 1}}};
    QuotientData bad;
    bad.gale = gale_dual(sum);
    bad.g = hom_to_circle(bad.gale.dg);
    bad.weight_matrix = bad.gale.weight_matrix();
    bad.component_characters = bad.gale.component_characters();
    bad.tau = {Rat(0)};
    PropernessCertificate prop = check_proper(bad);
    ok = expect(bad.weight_matrix == IntMatrix{{1, -1}}, "counterexample weights are not (1,-1)",
                detail) && ok;
    ok = expect(!prop.pass && !prop.bounded, "noncompact datum passed", detail) && ok;
    ok = expect(prop.recession == RatVector{Rat(1), Rat(1)}, "recession direction is not (1,1)",
                detail) && ok;
    return ok;
}

// ---- criterion 6: stabilizers -------------------------------------------------

bool criterion_stabilizers(std::string& detail) {
    bool ok = true;
    StackyPolytope p112 = wps({1, 1, 2});
    QuotientData qd = quotient_data(p112);
    StrataFamily family = f_tau(p112);
    for (const IndexSet& stratum : family.sets()) {
        StabilizerReport rep = stabilizer(qd, family, stratum);
        Int expected = (stratum == IndexSet{0, 1}) ? 2 : 1;
        ok = expect(rep.finite && rep.order == expected,
                    "P(1,1,2) stabilizer wrong at a stratum", detail) && ok;
        ok = expect(rep.order == brute_force_stabilizer_order(qd.weight_matrix, stratum),
                    "P(1,1,2) disagrees with the brute-force kernel", detail) && ok;
        if (stratum == IndexSet{0, 1})
            ok = expect(rep.invariants == std::vector<Int>{2}, "P(1,1,2) corner is not Z/2", detail) && ok;
    }

    StackyPolytope p111 = wps({1, 1, 1});
    QuotientData qd3 = quotient_data(p111);
    StrataFamily family3 = f_tau(p111);
    for (const IndexSet& stratum : family3.sets()) {
        StabilizerReport rep = stabilizer(qd3, family3, stratum);
        ok = expect(rep.finite && rep.order == 1, "P(1,1,1) has a nontrivial stabilizer", detail) && ok;
        ok = expect(brute_force_stabilizer_order(qd3.weight_matrix, stratum) == 1,
                    "P(1,1,1) oracle disagrees", detail) && ok;
    }
    return ok;
}

// ---- criterion 7: oracle suites ------------------------------------------------

bool criterion_oracles(std::string& detail) {
    bool ok = true;

    Rng rng(corpus_seed() ^ 0x0bacULL);
    for (int trial = 0; trial < 500; ++trial) {
        int rows = static_cast<int>(rng.range(1, 6));
        int cols = static_cast<int>(rng.range(1, 6));
        IntMatrix m(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) m.at(i, j) = rng.range(-9, 9);
        SNFDecomposition f = snf(m);
        bool good = (f.u * m * f.v == f.d) && abs(det(f.u)) == 1 && abs(det(f.v)) == 1;
        std::vector<Int> diag = f.diagonal();
        for (size_t i = 0; i + 1 < diag.size(); ++i)
            if (diag[i] != 0 && diag[i + 1] != 0) good = good && diag[i + 1] % diag[i] == 0;
        if (!expect(good, "SNF contract fails at trial " + std::to_string(trial), detail))
            return false;
    }

    for (const auto& entry : full_corpus(10)) {
        ok = expect(vertices(entry.sp.delta) == oracle_vertices(entry.sp.delta),
                    entry.name + ": vertex enumeration disagrees with the oracle", detail) && ok;
        StrataFamily fam = f_tau(entry.sp);
        ok = expect(fam.subset_closed(), entry.name + ": family is not subset-closed", detail) && ok;
        for (const IndexSet& s : fam.maximal_sets())
            ok = expect(static_cast<int>(s.size()) == entry.sp.dim(),
                        entry.name + ": a maximal stratum misses the dimension", detail) && ok;
    }
    return ok;
}

// ---- criterion 8: round trip ----------------------------------------------------

bool criterion_round_trip(std::string& detail) {
    bool ok = true;
    for (const auto& entry : full_corpus(10)) {
        const StackyPolytope& sp = entry.sp;
        if (!sp.n.is_free()) continue;
        QuotientData qd = quotient_data(sp);
        if (!expect(qd.g.component_group.empty(), entry.name + ": not a torus quotient", detail))
            continue;
        StackyPolytope back = from_torus_quotient(qd.weight_matrix, sp.offsets);
        QuotientData qd2 = quotient_data(back);
        ok = expect(f_tau(back) == f_tau(sp), entry.name + ": families differ", detail) && ok;
        ok = expect(qd2.gale.dg.same_invariants(qd.gale.dg), entry.name + ": DG differs", detail) && ok;
        ok = expect(qd2.weight_matrix == qd.weight_matrix, entry.name + ": weights differ", detail) && ok;
        ok = expect(qd2.tau == qd.tau, entry.name + ": tau differs", detail) && ok;
    }
    return ok;
}

}  // namespace

int main() {
    std::vector<Criterion> criteria = {
        {"1 weighted projective reproduction", 1.0, criterion_wps},
        {"2 gale sequence exactness on 200 samples", 10.0, criterion_gale},
        {"3 polytope/fan correspondence witness", 5.0, criterion_correspondence},
        {"4 moment level equals translated polytope image", 5.0, criterion_moment_level},
        {"5 regular value and properness certificates", 60.0, criterion_certificates},
        {"6 stabilizer groups", 60.0, criterion_stabilizers},
        {"7 oracle suites", 30.0, criterion_oracles},
        {"8 quotient round trip", 60.0, criterion_round_trip},
    };

    int failures = 0;
    for (auto& c : criteria) {
        auto start = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = false;
        try {
            ok = c.body(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (elapsed > c.budget_seconds) {
            ok = false;
            if (detail.empty())
                detail = "time budget exceeded (" + std::to_string(c.budget_seconds) + "s)";
        }
        std::cout << (ok ? "[PASS] " : "[FAIL] ") << "criterion " << c.label << " ("
                  << std::fixed << std::setprecision(2) << elapsed << "s)";
        if (!ok && !detail.empty()) std::cout << " -- " << detail;
        std::cout << "\n";
        if (!ok) ++failures;
    }
    if (failures == 0)
        std::cout << "all criteria passed\n";
    else
        std::cout << failures << " criterion(s) failed\n";
    return failures == 0 ? 0 : 1;
}
