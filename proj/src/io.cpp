#include "nbcqi/io.hpp"

#include <fstream>

#include "nbcqi/errors.hpp"

namespace nbcqi {

namespace {

void expect_keys(const Json& obj, const std::vector<std::string>& allowed,
                 const std::string& where) {
    if (!obj.is_object()) throw ParseError(where + ": expected an object");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const auto& k : allowed)
            if (it.key() == k) ok = true;
        if (!ok) throw ParseError(where + ": unknown field '" + it.key() + "'");
    }
}

Rat json_rational(const Json& j, const std::string& where) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rat(Int(j.get<long long>()));
    throw ParseError(where + ": expected a rational string like \"p\" or \"p/q\"");
}

std::size_t json_index(const Json& j, std::size_t dim, const std::string& where) {
    if (!j.is_number_integer()) throw ParseError(where + ": expected a 1-based index");
    long long v = j.get<long long>();
    if (v < 1 || static_cast<std::size_t>(v) > dim)
        throw ParseError(where + ": index " + std::to_string(v) + " out of range 1.." +
                         std::to_string(dim));
    return static_cast<std::size_t>(v) - 1;
}

}  // namespace

RawDocument parse_document(const Json& doc) {
    expect_keys(doc, {"algebra", "endomorphisms"}, "document");
    if (!doc.contains("algebra")) throw ParseError("document: missing 'algebra'");
    const Json& alg = doc["algebra"];
    expect_keys(alg, {"name", "dim", "brackets", "weights"}, "algebra");
    RawDocument raw;
    raw.name = alg.value("name", std::string("unnamed"));
    if (!alg.contains("dim") || !alg["dim"].is_number_integer())
        throw ParseError("algebra: missing integer 'dim'");
    long long dim = alg["dim"].get<long long>();
    if (dim < 1 || dim > 64) throw ParseError("algebra: dim out of supported range");
    raw.sc = StructureConstants(static_cast<std::size_t>(dim));

    if (alg.contains("brackets")) {
        if (!alg["brackets"].is_array()) throw ParseError("algebra.brackets: expected an array");
        for (const auto& br : alg["brackets"]) {
            expect_keys(br, {"i", "j", "terms"}, "bracket");
            std::size_t i = json_index(br.at("i"), raw.sc.dim(), "bracket.i");
            std::size_t j = json_index(br.at("j"), raw.sc.dim(), "bracket.j");
            if (i == j) {
                raw.warnings.push_back("bracket [e" + std::to_string(i + 1) + ", e" +
                                       std::to_string(j + 1) +
                                       "] is forced to zero by antisymmetry; entry ignored");
                continue;
            }
            if (i > j)
                throw ParseError("bracket: indices must satisfy i < j (got i=" +
                                 std::to_string(i + 1) + ", j=" + std::to_string(j + 1) + ")");
            std::vector<std::pair<std::size_t, Rat>> terms;
            if (!br.contains("terms") || !br["terms"].is_array())
                throw ParseError("bracket: missing 'terms' array");
            for (const auto& term : br["terms"]) {
                expect_keys(term, {"k", "c"}, "bracket term");
                std::size_t k = json_index(term.at("k"), raw.sc.dim(), "term.k");
                Rat c = json_rational(term.at("c"), "term.c");
                terms.emplace_back(k, c);
            }
            raw.sc.set_bracket(i, j, std::move(terms));
        }
    }

    if (alg.contains("weights")) {
        if (!alg["weights"].is_array() || alg["weights"].size() != raw.sc.dim())
            throw ParseError("algebra.weights: expected an array of length dim");
        for (const auto& w : alg["weights"]) {
            if (!w.is_number_integer() || w.get<long long>() < 1)
                throw ParseError("algebra.weights: entries must be positive integers");
            raw.explicit_weights.push_back(static_cast<unsigned>(w.get<long long>()));
        }
    }

    if (doc.contains("endomorphisms")) {
        const Json& endos = doc["endomorphisms"];
        if (!endos.is_object()) throw ParseError("endomorphisms: expected an object");
        for (auto it = endos.begin(); it != endos.end(); ++it) {
            const Json& e = it.value();
            expect_keys(e, {"matrix", "base_action"}, "endomorphism '" + it.key() + "'");
            if (e.contains("matrix") == e.contains("base_action"))
                throw ParseError("endomorphism '" + it.key() +
                                 "': exactly one of 'matrix' or 'base_action' is required");
            const bool full = e.contains("matrix");
            const Json& rows = full ? e["matrix"] : e["base_action"];
            if (!rows.is_array() || rows.empty())
                throw ParseError("endomorphism '" + it.key() + "': expected a matrix");
            QMat m;
            for (const auto& row : rows) {
                if (!row.is_array() || row.size() != rows.size())
                    throw ParseError("endomorphism '" + it.key() + "': matrix must be square");
                QVec v;
                for (const auto& cell : row)
                    v.push_back(json_rational(cell, "endomorphism '" + it.key() + "'"));
                m.push_back(std::move(v));
            }
            if (full && m.size() != raw.sc.dim())
                throw ParseError("endomorphism '" + it.key() + "': matrix size != dim");
            raw.endo_names.push_back(it.key());
            (full ? raw.endo_matrices : raw.endo_base_actions)[it.key()] = std::move(m);
        }
    }
    return raw;
}

RawDocument parse_document_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const std::exception& ex) {
        throw ParseError("invalid JSON in " + path + ": " + ex.what());
    }
    return parse_document(doc);
}

Document build_document(const RawDocument& raw) {
    Document doc;
    doc.name = raw.name;
    doc.warnings = raw.warnings;
    doc.algebra = GradedAlgebra::build(raw.sc, raw.explicit_weights);
    doc.endo_names = raw.endo_names;

    // input index -> canonical slot
    const auto& order = doc.algebra.input_order();
    std::vector<std::size_t> perm(order.size());
    for (std::size_t s = 0; s < order.size(); ++s) perm[order[s]] = s;

    for (const auto& [name, m] : raw.endo_matrices) {
        const std::size_t n = m.size();
        QMat cm(n, QVec(n, Rat(0)));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) cm[perm[i]][perm[j]] = m[i][j];
        doc.endos.emplace(name, Endomorphism{doc.algebra, std::move(cm)});
    }
    for (const auto& [name, base] : raw.endo_base_actions) {
        // base action rows/columns follow the weight-1 input vectors in input
        // order, which the stable canonical sort preserves
        doc.endos.emplace(name, carnot_complete(doc.algebra, base));
    }
    return doc;
}

Json rational_to_json(const Rat& r) { return format_rational(r); }

Json algebraic_to_json(const AlgebraicReal& a) {
    if (a.is_rational()) return format_rational(a.rational_value());
    Json j;
    Json coeffs = Json::array();
    IntPoly poly = a.defining_poly();
    for (const auto& c : poly.coeffs()) coeffs.push_back(c.str());
    j["min_poly"] = coeffs;
    j["lo"] = format_rational(a.lower());
    j["hi"] = format_rational(a.upper());
    return j;
}

AlgebraicReal algebraic_from_json(const Json& j) {
    if (j.is_string() || j.is_number_integer())
        return AlgebraicReal(json_rational(j, "algebraic"));
    expect_keys(j, {"min_poly", "lo", "hi"}, "algebraic");
    std::vector<Int> coeffs;
    for (const auto& c : j.at("min_poly")) {
        if (c.is_string())
            coeffs.emplace_back(c.get<std::string>());
        else
            coeffs.emplace_back(c.get<long long>());
    }
    return AlgebraicReal::from_poly_interval(IntPoly(std::move(coeffs)),
                                             json_rational(j.at("lo"), "algebraic.lo"),
                                             json_rational(j.at("hi"), "algebraic.hi"));
}

Json violations_to_json(const std::vector<Violation>& v) {
    Json arr = Json::array();
    for (const auto& viol : v) {
        Json j;
        switch (viol.kind) {
            case Violation::Kind::Antisymmetry: j["kind"] = "antisymmetry"; break;
            case Violation::Kind::Jacobi: j["kind"] = "jacobi"; break;
            case Violation::Kind::Triangularity: j["kind"] = "triangularity"; break;
        }
        j["indices"] = viol.indices;
        j["detail"] = viol.detail;
        arr.push_back(std::move(j));
    }
    return arr;
}

Json weights_to_json(const GradedAlgebra& g) {
    Json j;
    j["weights"] = g.weights();
    j["grade_dims"] = g.grade_dims();
    j["nilpotency_class"] = g.nilpotency_class();
    j["weights_explicit"] = g.weights_explicit();
    Json order = Json::array();
    for (auto i : g.input_order()) order.push_back(i + 1);
    j["input_order"] = order;
    auto cert = is_carnot(g);
    j["carnot"] = cert.is_carnot;
    if (!cert.is_carnot) j["carnot_failing_grades"] = cert.failing_grades;
    return j;
}

Json jordan_to_json(const RealJordanData& d) {
    Json j;
    Json coeffs = Json::array();
    for (const auto& c : d.characteristic.coeffs()) coeffs.push_back(c.str());
    j["char_poly"] = coeffs;
    Json blocks = Json::array();
    for (const auto& b : d.blocks) {
        Json bj;
        if (b.kind == JordanBlockData::Kind::Real) {
            bj["kind"] = "real";
            bj["eigenvalue"] = algebraic_to_json(b.eigenvalue);
        } else {
            bj["kind"] = "complex_pair";
            bj["re"] = algebraic_to_json(b.pair_re);
            bj["im"] = algebraic_to_json(b.pair_im);
        }
        bj["size"] = b.size;
        blocks.push_back(std::move(bj));
    }
    j["blocks"] = blocks;
    return j;
}

Json abs_blocks_to_json(const std::vector<AbsBlock>& blocks) {
    Json arr = Json::array();
    for (const auto& b : blocks) {
        Json j;
        j["modulus"] = algebraic_to_json(b.modulus);
        j["size"] = b.size;
        arr.push_back(std::move(j));
    }
    return arr;
}

Json pajf_to_json(const Pajf& p) {
    Json j;
    Json blocks = Json::array();
    for (const auto& b : p.blocks) {
        Json bj;
        bj["modulus"] = algebraic_to_json(b.modulus);
        bj["size"] = b.size;
        bj["weights"] = b.weight_sig;
        blocks.push_back(std::move(bj));
    }
    j["blocks"] = blocks;
    Json sigma = Json::array();
    for (auto s : p.sigma) sigma.push_back(s + 1);
    j["sigma"] = sigma;
    auto m = pajf_matrix(p);
    Json rows = Json::array();
    for (const auto& row : m) {
        Json r = Json::array();
        for (const auto& cell : row) r.push_back(algebraic_to_json(cell));
        rows.push_back(std::move(r));
    }
    j["matrix"] = rows;
    Json weights = Json::array();
    for (const auto& s : p.slots) weights.push_back(s.weight);
    j["slot_weights"] = weights;
    j["weight_order"] = p.weight_ascending ? "asc" : "desc";
    return j;
}

Json growth_rate_to_json(const GrowthRate& r) {
    Json j;
    j["lambda"] = algebraic_to_json(r.lam);
    j["k"] = r.k;
    j["w"] = r.w;
    return j;
}

Json rates_to_json(const DivergenceData& d, Direction dir) {
    Json j;
    j["direction"] = dir == Direction::Forward ? "fwd" : "bwd";
    Json entries = Json::array();
    for (const auto& e : d.entries) {
        Json ej;
        ej["block"] = e.block + 1;
        ej["chain_pos"] = e.chain_pos + 1;
        ej["rate"] = growth_rate_to_json(e.rate);
        entries.push_back(std::move(ej));
    }
    j["entries"] = entries;
    Json ms = Json::array();
    for (const auto& r : d.multiset()) ms.push_back(growth_rate_to_json(r));
    j["multiset"] = ms;
    return j;
}

Json filtration_to_json(const GrowthFiltration& f) {
    Json arr = Json::array();
    for (const auto& s : f.spaces) {
        Json j;
        j["base"] = growth_rate_to_json({s.base_lam, 0, s.base_w});
        Json members = Json::array();
        for (auto m : s.member_slots) members.push_back(m + 1);
        j["member_slots"] = members;
        Json span = Json::array();
        for (const auto& row : s.span) {
            Json r = Json::array();
            for (const auto& c : row) r.push_back(format_rational(c));
            span.push_back(std::move(r));
        }
        j["span"] = span;
        Json fp;
        fp["dim"] = s.fingerprint.dim;
        fp["graded_dims"] = s.fingerprint.graded_dims;
        fp["lcs_dims"] = s.fingerprint.lcs_dims;
        fp["center_dim"] = s.fingerprint.center_dim;
        fp["abelianization_dim"] = s.fingerprint.abelianization_dim;
        j["fingerprint"] = fp;
        arr.push_back(std::move(j));
    }
    return Json{{"spaces", arr}};
}

Json assumptions_to_json(const AssumptionReport& r) {
    Json j;
    j["homomorphism"] = r.homomorphism;
    j["injective"] = r.injective;
    j["nonsurjective"] = r.nonsurjective;
    j["unipotent_free"] = r.unipotent_free;
    j["carnot"] = r.carnot;
    j["det_abs"] = r.det_abs;
    if (!r.notes.empty()) j["notes"] = r.notes;
    j["all_ok"] = r.all_ok();
    return j;
}

Json verdict_to_json(const Verdict& v) {
    Json j;
    switch (v.outcome) {
        case Verdict::Outcome::QuasiIsometric:
            j["outcome"] = "quasi_isometric";
            j["r1"] = v.r1;
            j["r2"] = v.r2;
            break;
        case Verdict::Outcome::NotQuasiIsometric:
            j["outcome"] = "not_quasi_isometric";
            j["witness"] = v.witness;
            break;
        case Verdict::Outcome::Unknown: j["outcome"] = "unknown"; break;
    }
    Json ev = Json::array();
    for (const auto& e : v.evidence) {
        Json ej;
        ej["check"] = e.check;
        ej["result"] = e.result;
        ej["data"] = e.data;
        ev.push_back(std::move(ej));
    }
    j["evidence"] = ev;
    return j;
}

Json estimate_to_json(const FlowEstimate& e) {
    Json j;
    j["base_est"] = e.base_est;
    j["polydeg_est"] = e.polydeg_est;
    j["r2"] = e.r2;
    j["t_min"] = e.t_min;
    j["t_max"] = e.t_max;
    return j;
}

Json rate_checks_to_json(const std::vector<RateCheck>& checks) {
    Json arr = Json::array();
    bool all = true;
    for (const auto& c : checks) {
        Json j;
        j["block"] = c.block + 1;
        j["chain_pos"] = c.chain_pos + 1;
        j["base_symbolic"] = c.base_symbolic;
        j["deg_symbolic"] = c.deg_symbolic;
        j["estimate"] = estimate_to_json(c.estimate);
        j["pass"] = c.pass;
        if (!c.pass) all = false;
        arr.push_back(std::move(j));
    }
    return Json{{"all_pass", all}, {"checks", arr}};
}

}  // namespace nbcqi
