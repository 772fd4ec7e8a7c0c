#pragma once

// Command dispatch for the `stacky` tool. Reads one input document, runs the
// requested computation, writes one canonical report document to stdout.
// Exit codes: 0 every check passed, 1 a mathematical condition failed (the
// report carries the witness), 2 the input could not be used.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "stacky/io.hpp"

namespace stacky {

struct CliOptions {
    ValidateMode mode = ValidateMode::Strict;
    bool approx = false;
};

namespace detail {

inline double rat_to_double(const Rat& r) { return r.convert_to<double>(); }

inline Json approx_vector(const RatVector& v) {
    Json out = Json::array();
    for (const Rat& x : v) out.push_back(rat_to_double(x));
    return out;
}

inline Json verdict_to_json(const ConditionVerdict& v) {
    Json j;
    j["pass"] = v.pass;
    j["witness"] = v.witness;
    return j;
}

inline Json validation_to_json(const ValidationReport& rep) {
    Json j;
    j["simple"] = verdict_to_json(rep.simple);
    j["facets"] = verdict_to_json(rep.facets);
    j["finite_cokernel"] = verdict_to_json(rep.finite_cokernel);
    return j;
}

inline Json group_to_json(const CompactAbelianGroup& g) {
    Json j;
    j["torus_rank"] = g.torus_rank;
    Json comp = Json::array();
    for (const Int& m : g.component_group) comp.push_back(int_to_json(m));
    j["component_group"] = comp;
    return j;
}

inline Json weights_to_json(const IntMatrix& w) {
    Json out = Json::array();
    for (int alpha = 0; alpha < w.cols(); ++alpha) {
        Json col = Json::array();
        for (int i = 0; i < w.rows(); ++i) col.push_back(int_to_json(w.at(i, alpha)));
        out.push_back(col);
    }
    return out;
}

inline Json quotient_to_json(const QuotientData& qd, bool approx) {
    Json j;
    j["group"] = group_to_json(qd.g);
    j["weights"] = weights_to_json(qd.weight_matrix);
    j["tau"] = rational_vector_to_json(qd.tau);
    j["moment_unit"] = "pi";
    Json dg;
    dg["free_rank"] = qd.gale.dg.free_rank();
    Json tors = Json::array();
    for (const Int& m : qd.gale.dg.torsion()) tors.push_back(int_to_json(m));
    dg["torsion"] = tors;
    j["dg"] = dg;
    j["component_characters"] = int_matrix_to_json(qd.component_characters);
    if (approx) j["tau_approx"] = approx_vector(qd.tau);
    return j;
}

}  // namespace detail

// Runs one command against a parsed document. Throws SchemaError for
// command/kind mismatches and lets mathematical errors propagate.
inline Json run_command(const std::string& command, const InputDocument& doc, const CliOptions& opt) {
    Json rep;
    rep["schema_version"] = 1;
    rep["command"] = command;
    rep["kind"] = kind_name(doc.kind);

    if (command == "validate") {
        if (doc.kind == DocumentKind::StackyFan) {
            StackyFan sf = document_to_stacky_fan(doc);
            FanValidationReport fr = validate_fan(sf);
            Json cond;
            cond["simplicial"] = detail::verdict_to_json(fr.simplicial);
            cond["rays"] = detail::verdict_to_json(fr.rays);
            cond["finite_cokernel"] = detail::verdict_to_json(fr.finite_cokernel);
            rep["conditions"] = cond;
            rep["ok"] = fr.pass();
        } else {
            StackyPolytope sp = document_to_stacky_polytope(doc);
            ValidationReport vr = validate(sp, opt.mode);
            rep["conditions"] = detail::validation_to_json(vr);
            Json red = Json::array();
            for (int i : vr.redundant) red.push_back(i + 1);
            rep["redundant_facets"] = red;
            rep["mode"] = opt.mode == ValidateMode::Strict ? "strict" : "lenient";
            rep["ok"] = vr.pass();
        }
        return rep;
    }

    if (command == "quotient-data") {
        StackyPolytope sp = document_to_stacky_polytope(doc);
        QuotientData qd = quotient_data(sp);
        rep["quotient"] = detail::quotient_to_json(qd, opt.approx);
        StrataFamily family = f_tau(sp);
        rep["f_tau"] = family_to_json_1based(family);
        RegularValueCertificate reg = check_regular_value(qd, family);
        Json rj;
        rj["pass"] = reg.pass;
        rj["witness"] = index_set_to_json_1based(reg.witness);
        rep["regular_value"] = rj;
        PropernessCertificate prop = check_proper(qd);
        Json pj;
        pj["pass"] = prop.pass;
        pj["feasible"] = prop.feasible;
        pj["bounded"] = prop.bounded;
        pj["witness"] = rational_vector_to_json(prop.witness);
        pj["recession"] = rational_vector_to_json(prop.recession);
        rep["proper"] = pj;
        if (opt.approx) rep["offsets_approx"] = detail::approx_vector(sp.offsets);
        rep["ok"] = reg.pass && prop.pass;
        return rep;
    }

    if (command == "fan") {
        StackyPolytope sp = document_to_stacky_polytope(doc);
        StackyFan sf = normal_fan(sp);
        FanValidationReport fr = validate_fan(sf);
        Json fj;
        fj["cones"] = family_to_json_1based(sf.cones);
        Json maxc = Json::array();
        for (const IndexSet& c : sf.cones.maximal_sets()) maxc.push_back(index_set_to_json_1based(c));
        fj["maximal_cones"] = maxc;
        Json cond;
        cond["simplicial"] = detail::verdict_to_json(fr.simplicial);
        cond["rays"] = detail::verdict_to_json(fr.rays);
        cond["finite_cokernel"] = detail::verdict_to_json(fr.finite_cokernel);
        fj["conditions"] = cond;
        MonomialGeneratorSet gens = irrelevant_generators(sf);
        Json minimal = Json::array();
        for (const IndexSet& s : gens.minimal) minimal.push_back(index_set_to_json_1based(s));
        fj["irrelevant_minimal"] = minimal;
        fj["admissible_family"] = family_to_json_1based(admissible_family(sf));
        rep["fan"] = fj;
        rep["ok"] = fr.pass();
        return rep;
    }

    if (command == "correspond") {
        StackyPolytope sp = document_to_stacky_polytope(doc);
        EquivalenceCertificate cert = correspondence_check(sp);
        Json cj;
        cj["pass"] = cert.pass;
        cj["f_tau"] = family_to_json_1based(cert.polytope_family);
        cj["admissible_family"] = family_to_json_1based(cert.fan_family);
        Json mm = Json::array();
        for (const IndexSet& s : cert.mismatch) mm.push_back(index_set_to_json_1based(s));
        cj["mismatch"] = mm;
        Json shared;
        shared["group"] = detail::group_to_json(cert.g);
        shared["weights"] = detail::weights_to_json(cert.weight_matrix);
        shared["tau"] = rational_vector_to_json(cert.tau);
        shared["dg_free_rank"] = cert.dg_free_rank;
        Json tors = Json::array();
        for (const Int& m : cert.dg_torsion) tors.push_back(int_to_json(m));
        shared["dg_torsion"] = tors;
        cj["shared_data"] = shared;
        rep["equivalence"] = cj;
        rep["ok"] = cert.pass;
        return rep;
    }

    if (command == "stabilizers") {
        StackyPolytope sp = document_to_stacky_polytope(doc);
        QuotientData qd = quotient_data(sp);
        StrataFamily family = f_tau(sp);
        Json list = Json::array();
        bool all_finite = true;
        for (const IndexSet& stratum : family.sets()) {
            StabilizerReport sr = stabilizer(qd, family, stratum);
            Json e;
            e["stratum"] = index_set_to_json_1based(sr.stratum);
            Json inv = Json::array();
            for (const Int& m : sr.invariants) inv.push_back(int_to_json(m));
            e["invariants"] = inv;
            e["finite"] = sr.finite;
            e["order"] = int_to_json(sr.order);
            list.push_back(e);
            all_finite = all_finite && sr.finite;
        }
        rep["f_tau"] = family_to_json_1based(family);
        rep["stabilizers"] = list;
        rep["ok"] = all_finite;
        return rep;
    }

    if (command == "labelled") {
        StackyPolytope sp = document_to_stacky_polytope(doc);
        LabelledPolytope lp = to_labelled(sp);
        Json lj;
        lj["normals"] = int_matrix_to_json(lp.primitive_normals);
        Json labels = Json::array();
        for (const Int& m : lp.labels) labels.push_back(int_to_json(m));
        lj["labels"] = labels;
        RatVector offs;
        for (const Facet& f : lp.polytope.facets) offs.push_back(f.offset);
        lj["offsets"] = rational_vector_to_json(offs);
        rep["labelled"] = lj;
        rep["ok"] = true;
        return rep;
    }

    if (command == "wps") {
        if (doc.kind != DocumentKind::Wps)
            throw SchemaError("kind: the wps command expects a wps document");
        StackyPolytope sp = wps(doc.weights);
        // the report is the constructed stacky polytope document itself
        return input_to_json(stacky_polytope_to_document(sp));
    }

    throw SchemaError("command: unknown command '" + command + "'");
}

inline const std::vector<std::string>& cli_commands() {
    static const std::vector<std::string> cmds = {
        "validate", "quotient-data", "fan", "correspond", "stabilizers", "labelled", "wps"};
    return cmds;
}

inline void print_usage(std::ostream& err) {
    err << "usage: stacky <command> [--strict|--lenient] [--approx] <input-file|->\n"
           "commands: validate quotient-data fan correspond stabilizers labelled wps\n"
           "reads the input document from the file (or stdin when '-'), writes the\n"
           "report document to stdout\n";
}

inline int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
                   std::ostream& err) {
    std::string command, path;
    CliOptions opt;
    bool mode_set = false;
    for (const std::string& a : args) {
        if (a == "--strict" || a == "--lenient") {
            if (mode_set) {
                err << "conflicting mode flags\n";
                return 2;
            }
            opt.mode = a == "--strict" ? ValidateMode::Strict : ValidateMode::Lenient;
            mode_set = true;
        } else if (a == "--approx") {
            opt.approx = true;
        } else if (a == "--help" || a == "-h") {
            print_usage(err);
            return 0;
        } else if (!a.empty() && a[0] == '-' && a != "-") {
            err << "unknown flag: " << a << "\n";
            print_usage(err);
            return 2;
        } else if (command.empty()) {
            command = a;
        } else if (path.empty()) {
            path = a;
        } else {
            err << "unexpected argument: " << a << "\n";
            print_usage(err);
            return 2;
        }
    }
    if (command.empty() || path.empty()) {
        print_usage(err);
        return 2;
    }
    bool known = false;
    for (const std::string& c : cli_commands()) known = known || c == command;
    if (!known) {
        err << "unknown command: " << command << "\n";
        print_usage(err);
        return 2;
    }

    std::string text;
    if (path == "-") {
        std::ostringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    } else {
        std::ifstream file(path);
        if (!file) {
            err << "cannot read input file: " << path << "\n";
            return 2;
        }
        std::ostringstream buf;
        buf << file.rdbuf();
        text = buf.str();
    }

    try {
        InputDocument doc = parse_input(text);
        Json rep = run_command(command, doc, opt);
        out << serialize(rep) << "\n";
        bool ok = !rep.contains("ok") || rep["ok"].get<bool>();
        return ok ? 0 : 1;
    } catch (const SchemaError& e) {
        err << "schema error: " << e.what() << "\n";
        return 2;
    } catch (const RangeError& e) {
        err << "range error: " << e.what() << "\n";
        return 2;
    } catch (const RationalFormatError& e) {
        err << "rational format error: " << e.what() << "\n";
        return 2;
    } catch (const DimensionMismatch& e) {
        err << "dimension mismatch: " << e.what() << "\n";
        return 2;
    } catch (const TooManyVariables& e) {
        err << "input too large: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        Json rep;
        rep["schema_version"] = 1;
        rep["command"] = command;
        rep["ok"] = false;
        rep["error"] = e.what();
        out << serialize(rep) << "\n";
        return 1;
    }
}

}  // namespace stacky
