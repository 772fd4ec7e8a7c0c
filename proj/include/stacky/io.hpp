#pragma once

// Input and report documents. One self-describing JSON format; canonical
// serialization (sorted keys, lowest-term "p/q" rationals, integers unquoted
// while they fit the JSON integer range) so that reports are byte-stable and
// usable as test fixtures. Facet and ray indices are 1-based in documents and
// 0-based inside the library; the conversion happens here and nowhere else.

#include <json.hpp>

#include <string>
#include <vector>

#include "stacky/fan.hpp"
#include "stacky/stacky_polytope.hpp"

namespace stacky {

using Json = nlohmann::json;

// ---- scalar encoding -------------------------------------------------------

inline Rat parse_rational(const std::string& text, const std::string& path) {
    auto fail = [&]() -> Rat {
        throw RationalFormatError(path + ": malformed rational '" + text + "'");
    };
    size_t slash = text.find('/');
    std::string ns = slash == std::string::npos ? text : text.substr(0, slash);
    std::string ds = slash == std::string::npos ? "1" : text.substr(slash + 1);
    auto is_int = [](const std::string& s) {
        if (s.empty()) return false;
        size_t i = (s[0] == '-') ? 1 : 0;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i)
            if (!isdigit(static_cast<unsigned char>(s[i]))) return false;
        return true;
    };
    if (!is_int(ns) || !is_int(ds)) return fail();
    Int p(ns), q(ds);
    if (q <= 0) return fail();
    return make_rat(p, q);
}

inline Rat json_to_rational(const Json& j, const std::string& path) {
    if (j.is_string()) return parse_rational(j.get<std::string>(), path);
    if (j.is_number_integer()) return Rat(Int(j.get<long long>()));
    if (j.is_number_unsigned()) return Rat(Int(j.get<unsigned long long>()));
    throw RationalFormatError(path + ": expected a rational as \"p/q\" or an integer");
}

inline Int json_to_int(const Json& j, const std::string& path) {
    if (j.is_number_integer()) return Int(j.get<long long>());
    if (j.is_number_unsigned()) return Int(j.get<unsigned long long>());
    if (j.is_string()) {
        Rat r = parse_rational(j.get<std::string>(), path);
        if (!is_integer(r)) throw SchemaError(path + ": expected an integer");
        return rat_num(r);
    }
    throw SchemaError(path + ": expected an integer");
}

inline Json int_to_json(const Int& x) {
    static const Int lo = Int(std::numeric_limits<long long>::min());
    static const Int hi = Int(std::numeric_limits<long long>::max());
    if (x >= lo && x <= hi) return Json(static_cast<long long>(x));
    return Json(x.str());
}

inline Json rational_to_json(const Rat& r) { return Json(rat_to_string(r)); }

inline Json rational_vector_to_json(const RatVector& v) {
    Json out = Json::array();
    for (const Rat& x : v) out.push_back(rational_to_json(x));
    return out;
}

inline Json int_matrix_to_json(const IntMatrix& m) {
    Json out = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(int_to_json(m.at(i, j)));
        out.push_back(row);
    }
    return out;
}

inline Json index_set_to_json_1based(const IndexSet& s) {
    Json out = Json::array();
    for (int i : s) out.push_back(i + 1);
    return out;
}

inline Json family_to_json_1based(const StrataFamily& fam) {
    Json out = Json::array();
    for (const IndexSet& s : fam.sets()) out.push_back(index_set_to_json_1based(s));
    return out;
}

// ---- input documents -------------------------------------------------------

enum class DocumentKind { StackyPolytope, StackyFan, TorusQuotient, Wps };

inline std::string kind_name(DocumentKind k) {
    switch (k) {
        case DocumentKind::StackyPolytope: return "stacky_polytope";
        case DocumentKind::StackyFan: return "stacky_fan";
        case DocumentKind::TorusQuotient: return "torus_quotient";
        case DocumentKind::Wps: return "wps";
    }
    return "?";
}

struct InputDocument {
    int schema_version = 1;
    DocumentKind kind = DocumentKind::StackyPolytope;

    int free_rank = 0;          // N, for polytope/fan kinds
    std::vector<Int> torsion;
    IntMatrix beta;             // (free_rank + torsion count) x d
    RatVector offsets;          // polytope offsets c, also for torus_quotient
    std::vector<IndexSet> cones;  // 0-based
    IntMatrix rho;              // torus_quotient weights, k x d
    std::vector<Int> weights;   // wps
};

namespace detail {

inline IntMatrix json_to_int_matrix(const Json& j, const std::string& path, int expect_rows = -1,
                                    int expect_cols = -1) {
    if (!j.is_array()) throw SchemaError(path + ": expected an array of rows");
    std::vector<std::vector<Int>> rows;
    int cols = -1;
    for (size_t i = 0; i < j.size(); ++i) {
        const Json& row = j[i];
        std::string rp = path + "[" + std::to_string(i) + "]";
        if (!row.is_array()) throw SchemaError(rp + ": expected an array");
        if (cols < 0)
            cols = static_cast<int>(row.size());
        else if (cols != static_cast<int>(row.size()))
            throw SchemaError(rp + ": ragged matrix");
        std::vector<Int> r;
        for (size_t k = 0; k < row.size(); ++k)
            r.push_back(json_to_int(row[k], rp + "[" + std::to_string(k) + "]"));
        rows.push_back(std::move(r));
    }
    if (cols < 0) cols = expect_cols >= 0 ? expect_cols : 0;
    IntMatrix m(static_cast<int>(rows.size()), cols);
    for (int i = 0; i < m.rows(); ++i)
        for (int k = 0; k < cols; ++k) m.at(i, k) = rows[i][k];
    if (expect_rows >= 0 && m.rows() != expect_rows)
        throw SchemaError(path + ": expected " + std::to_string(expect_rows) + " rows");
    if (expect_cols >= 0 && m.cols() != expect_cols)
        throw SchemaError(path + ": expected " + std::to_string(expect_cols) + " columns");
    return m;
}

inline const Json& require_field(const Json& j, const std::string& name) {
    auto it = j.find(name);
    if (it == j.end()) throw SchemaError(name + ": missing field");
    return *it;
}

}  // namespace detail

inline InputDocument parse_input(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw SchemaError(std::string("document is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw SchemaError("document root: expected an object");

    InputDocument doc;
    const Json& ver = detail::require_field(j, "schema_version");
    if (!ver.is_number_integer() || ver.get<int>() != 1)
        throw SchemaError("schema_version: expected 1");

    const Json& kind = detail::require_field(j, "kind");
    std::string ks = kind.is_string() ? kind.get<std::string>() : "";
    if (ks == "stacky_polytope")
        doc.kind = DocumentKind::StackyPolytope;
    else if (ks == "stacky_fan")
        doc.kind = DocumentKind::StackyFan;
    else if (ks == "torus_quotient")
        doc.kind = DocumentKind::TorusQuotient;
    else if (ks == "wps")
        doc.kind = DocumentKind::Wps;
    else
        throw SchemaError("kind: expected stacky_polytope | stacky_fan | torus_quotient | wps");

    auto parse_offsets = [&](int d) {
        const Json& off = detail::require_field(j, "offsets");
        if (!off.is_array() || static_cast<int>(off.size()) != d)
            throw SchemaError("offsets: expected " + std::to_string(d) + " entries");
        for (size_t i = 0; i < off.size(); ++i)
            doc.offsets.push_back(json_to_rational(off[i], "offsets[" + std::to_string(i) + "]"));
    };

    if (doc.kind == DocumentKind::StackyPolytope || doc.kind == DocumentKind::StackyFan) {
        const Json& nj = detail::require_field(j, "N");
        if (!nj.is_object()) throw SchemaError("N: expected an object");
        const Json& fr = detail::require_field(nj, "free_rank");
        if (!fr.is_number_integer() || fr.get<int>() < 0)
            throw SchemaError("N.free_rank: expected a nonnegative integer");
        doc.free_rank = fr.get<int>();
        const Json& tj = detail::require_field(nj, "torsion");
        if (!tj.is_array()) throw SchemaError("N.torsion: expected an array");
        for (size_t i = 0; i < tj.size(); ++i) {
            std::string path = "N.torsion[" + std::to_string(i) + "]";
            Int m = json_to_int(tj[i], path);
            if (m <= 1) throw SchemaError(path + ": torsion factors must exceed 1");
            if (!doc.torsion.empty() && m % doc.torsion.back() != 0)
                throw SchemaError(path + ": torsion factors must form a divisibility chain");
            doc.torsion.push_back(m);
        }
        int ambient = doc.free_rank + static_cast<int>(doc.torsion.size());
        doc.beta = detail::json_to_int_matrix(detail::require_field(j, "beta"), "beta", ambient);
        const int d = doc.beta.cols();

        if (doc.kind == DocumentKind::StackyPolytope) {
            parse_offsets(d);
        } else {
            const Json& cj = detail::require_field(j, "cones");
            if (!cj.is_array()) throw SchemaError("cones: expected an array");
            for (size_t i = 0; i < cj.size(); ++i) {
                std::string path = "cones[" + std::to_string(i) + "]";
                if (!cj[i].is_array()) throw SchemaError(path + ": expected an array of ray indices");
                IndexSet cone;
                for (size_t k = 0; k < cj[i].size(); ++k) {
                    Int idx = json_to_int(cj[i][k], path + "[" + std::to_string(k) + "]");
                    if (idx < 1 || idx > d)
                        throw RangeError(path + "[" + std::to_string(k) + "]: ray index out of range");
                    cone.push_back(static_cast<int>(idx) - 1);
                }
                doc.cones.push_back(sorted_set(cone));
            }
        }
    } else if (doc.kind == DocumentKind::TorusQuotient) {
        doc.rho = detail::json_to_int_matrix(detail::require_field(j, "rho"), "rho");
        parse_offsets(doc.rho.cols());
    } else {
        const Json& wj = detail::require_field(j, "weights");
        if (!wj.is_array() || wj.empty()) throw SchemaError("weights: expected a nonempty array");
        for (size_t i = 0; i < wj.size(); ++i) {
            std::string path = "weights[" + std::to_string(i) + "]";
            Int w = json_to_int(wj[i], path);
            if (w < 1) throw RangeError(path + ": weights must be positive");
            doc.weights.push_back(w);
        }
    }
    return doc;
}

inline Json input_to_json(const InputDocument& doc) {
    Json j;
    j["schema_version"] = doc.schema_version;
    j["kind"] = kind_name(doc.kind);
    switch (doc.kind) {
        case DocumentKind::StackyPolytope:
        case DocumentKind::StackyFan: {
            Json nj;
            nj["free_rank"] = doc.free_rank;
            Json tors = Json::array();
            for (const Int& m : doc.torsion) tors.push_back(int_to_json(m));
            nj["torsion"] = tors;
            j["N"] = nj;
            j["beta"] = int_matrix_to_json(doc.beta);
            if (doc.kind == DocumentKind::StackyPolytope)
                j["offsets"] = rational_vector_to_json(doc.offsets);
            else {
                Json cones = Json::array();
                for (const IndexSet& c : doc.cones) cones.push_back(index_set_to_json_1based(c));
                j["cones"] = cones;
            }
            break;
        }
        case DocumentKind::TorusQuotient:
            j["rho"] = int_matrix_to_json(doc.rho);
            j["offsets"] = rational_vector_to_json(doc.offsets);
            break;
        case DocumentKind::Wps: {
            Json w = Json::array();
            for (const Int& x : doc.weights) w.push_back(int_to_json(x));
            j["weights"] = w;
            break;
        }
    }
    return j;
}

inline std::string serialize(const Json& j) { return j.dump(); }

inline std::string serialize_input(const InputDocument& doc) { return serialize(input_to_json(doc)); }

// ---- document -> library objects -------------------------------------------

inline StackyPolytope document_to_stacky_polytope(const InputDocument& doc) {
    switch (doc.kind) {
        case DocumentKind::StackyPolytope:
            return make_stacky_polytope(FGAbelianGroup::from_invariants(doc.free_rank, doc.torsion),
                                        doc.beta, doc.offsets);
        case DocumentKind::TorusQuotient:
            return from_torus_quotient(doc.rho, doc.offsets);
        case DocumentKind::Wps:
            return wps(doc.weights);
        case DocumentKind::StackyFan:
            break;
    }
    throw SchemaError("kind: a stacky polytope is required for this command");
}

inline StackyFan document_to_stacky_fan(const InputDocument& doc) {
    if (doc.kind != DocumentKind::StackyFan)
        throw SchemaError("kind: a stacky fan is required for this command");
    return make_stacky_fan(FGAbelianGroup::from_invariants(doc.free_rank, doc.torsion), doc.beta,
                           doc.cones);
}

// Re-expresses a stacky polytope over the canonical presentation of N, the
// form used by documents.
inline InputDocument stacky_polytope_to_document(const StackyPolytope& sp) {
    InputDocument doc;
    doc.kind = DocumentKind::StackyPolytope;
    doc.free_rank = sp.n.free_rank();
    doc.torsion = sp.n.torsion();
    IntMatrix lift = sp.n.canonical_map() * sp.beta.lift;
    for (int i = 0; i < sp.n.torsion_rank(); ++i)
        for (int j = 0; j < lift.cols(); ++j)
            lift.at(i, j) = mod_positive(lift.at(i, j), sp.n.torsion()[i]);
    doc.beta = lift;
    doc.offsets = sp.offsets;
    return doc;
}

}  // namespace stacky
