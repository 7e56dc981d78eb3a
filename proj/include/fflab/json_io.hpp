#ifndef FFLAB_JSON_IO_HPP
#define FFLAB_JSON_IO_HPP

#include <json.hpp>

#include "fflab/additive.hpp"

namespace fflab {

/// Insertion-ordered JSON keeps report output byte-stable.
using Json = nlohmann::ordered_json;

// encoding (stable wire formats)
Json to_json(const Scalar& s);
Json to_json(const Poly& p);
Json to_json(const RatFunc& r);
Json to_json(const BaseField& f);
Json to_json(const ModelPtr& m);
Json to_json(const FFElem& e);
Json to_json(const PlaceId& p);
Json to_json(const Divisor& d);
Json to_json(const KSubspace& s);
Json to_json(const KxSubspace& s);

// decoding
Scalar scalar_from_json(const Json& j, const BaseField& f);
Poly poly_from_json(const Json& j, const BaseField& f);
RatFunc ratfunc_from_json(const Json& j, const BaseField& f);
BaseField field_from_json(const Json& j);
ModelPtr model_from_json(const Json& j);
FFElem elem_from_json(const Json& j, const ModelPtr& m);

/// One verification instance: a model, generators of S, and run options.
struct Instance {
    ModelPtr model;
    std::vector<FFElem> subspace;
    bool normalize = true;
    bool do_assert = true;
};

Json to_json(const Instance& inst);
Instance instance_from_json(const Json& j);
Instance load_instance(const std::string& path);

// reports
Json report_json(const TheoremReport& r);
Json report_json(const Freiman3k4Report& r);
Json report_json(const KneserModReport& r);
Json report_json(const LevSmelianskyReport& r);
Json report_json(const BridgeReport& r);
Json report_json(const StabilizerAnalysis& a);
Json report_json(const EvaluationReport& r);
Json report_json(const KneserBoundReport& r);
Json report_json(const ABCReport& r);
Json report_json(const RRBasis& r);

}  // namespace fflab

#endif
