#pragma once

#include <json.hpp>

#include "nbcqi/classifier.hpp"
#include "nbcqi/oracle.hpp"

namespace nbcqi {

using Json = nlohmann::ordered_json;

/// Raw parse of the document schema (strict: unknown fields are rejected).
/// Bracket entries with i == j are dropped with a warning, matching the
/// antisymmetry convention; i > j is a parse error.
struct RawDocument {
    std::string name;
    StructureConstants sc;                      // input basis order
    std::vector<unsigned> explicit_weights;     // empty when omitted
    std::vector<std::string> endo_names;        // document order
    std::map<std::string, QMat> endo_matrices;  // full matrices, input order
    std::map<std::string, QMat> endo_base_actions;
    std::vector<std::string> warnings;
};

RawDocument parse_document(const Json& doc);
RawDocument parse_document_file(const std::string& path);

/// Validated document: canonical graded algebra plus named endomorphisms
/// (matrices permuted into canonical order; base actions completed).
struct Document {
    std::string name;
    GradedAlgebra algebra;
    std::vector<std::string> endo_names;
    std::map<std::string, Endomorphism> endos;
    std::vector<std::string> warnings;
};

Document build_document(const RawDocument& raw);

// ---- report serialization ----

Json rational_to_json(const Rat& r);
Json algebraic_to_json(const AlgebraicReal& a);
AlgebraicReal algebraic_from_json(const Json& j);

Json violations_to_json(const std::vector<Violation>& v);
Json weights_to_json(const GradedAlgebra& g);
Json jordan_to_json(const RealJordanData& d);
Json abs_blocks_to_json(const std::vector<AbsBlock>& blocks);
Json pajf_to_json(const Pajf& p);
Json rates_to_json(const DivergenceData& d, Direction dir);
Json growth_rate_to_json(const GrowthRate& r);
Json filtration_to_json(const GrowthFiltration& f);
Json assumptions_to_json(const AssumptionReport& r);
Json verdict_to_json(const Verdict& v);
Json estimate_to_json(const FlowEstimate& e);
Json rate_checks_to_json(const std::vector<RateCheck>& checks);

}  // namespace nbcqi
