#include "fflab/json_io.hpp"

#include <fstream>

namespace fflab {

namespace {
constexpr int kReportVersion = 1;
}

// ---------------------------------------------------------------------------
// encoding
// ---------------------------------------------------------------------------

Json to_json(const Scalar& s) {
    if (s.field().is_rationals()) {
        const mpq_class& q = s.rat();
        if (q.get_den() == 1) return q.get_num().get_str();
        return q.get_num().get_str() + "/" + q.get_den().get_str();
    }
    Json arr = Json::array();
    for (u64 c : s.coeffs()) arr.push_back(c);
    return arr;
}

Json to_json(const Poly& p) {
    Json arr = Json::array();
    for (const auto& c : p.coeffs()) arr.push_back(to_json(c));
    return arr;
}

Json to_json(const RatFunc& r) {
    return Json{{"num", to_json(r.num())}, {"den", to_json(r.den())}};
}

Json to_json(const BaseField& f) {
    if (f.is_rationals()) return Json{{"kind", "rationals"}};
    return Json{{"kind", "finite"}, {"p", f.p()}, {"m", f.m()}};
}

Json to_json(const ModelPtr& m) {
    Json j{{"kind", m->kind() == CurveKind::Rational      ? "rational"
                    : m->kind() == CurveKind::Hyperelliptic ? "hyperelliptic"
                                                            : "tower"},
           {"field", to_json(m->base())}};
    if (m->kind() == CurveKind::Hyperelliptic) j["f"] = to_json(m->hyp_f());
    if (m->kind() == CurveKind::Tower) j["w"] = to_json(m->tower_w());
    return j;
}

Json to_json(const FFElem& e) {
    Json arr = Json::array();
    for (const auto& c : e.coords()) arr.push_back(to_json(c));
    return arr;
}

Json to_json(const PlaceId& p) {
    switch (p.kind) {
        case PlaceKind::Infinity0: return Json{{"kind", "infinity"}};
        case PlaceKind::InfinityHyp: return Json{{"kind", "infinity_hyp"}};
        case PlaceKind::Finite0: return Json{{"kind", "finite"}, {"a", to_json(*p.a)}};
        case PlaceKind::Point:
            return Json{{"kind", "point"}, {"a", to_json(*p.a)}, {"b", to_json(*p.b)}};
    }
    return {};
}

Json to_json(const Divisor& d) {
    Json arr = Json::array();
    for (const auto& [p, m] : d.entries())
        arr.push_back(Json{{"place", to_json(p)}, {"mult", m}});
    return arr;
}

Json to_json(const KSubspace& s) {
    Json basis = Json::array();
    Json pretty = Json::array();
    for (const auto& b : s.basis()) {
        basis.push_back(to_json(b));
        pretty.push_back(b.to_string());
    }
    return Json{{"model", to_json(s.model())}, {"dim", s.dim()}, {"basis", basis},
                {"basis_pretty", pretty}};
}

Json to_json(const KxSubspace& s) {
    Json basis = Json::array();
    Json pretty = Json::array();
    for (const auto& b : s.basis()) {
        basis.push_back(to_json(b));
        pretty.push_back(b.to_string());
    }
    return Json{{"model", to_json(s.model())}, {"dim_over_kx", s.dim()}, {"basis", basis},
                {"basis_pretty", pretty}};
}

// ---------------------------------------------------------------------------
// decoding
// ---------------------------------------------------------------------------

namespace {
[[noreturn]] void bad(const std::string& what) { throw input_error("malformed JSON: " + what); }
}  // namespace

Scalar scalar_from_json(const Json& j, const BaseField& f) {
    if (f.is_rationals()) {
        if (j.is_number_integer()) return f.from_int(j.get<i64>());
        if (!j.is_string()) bad("rational scalar must be a \"num/den\" string or integer");
        std::string s = j.get<std::string>();
        try {
            mpq_class q(s);
            q.canonicalize();
            return f.from_mpq(q);
        } catch (const std::invalid_argument&) {
            bad("unparseable rational: " + s);
        }
    }
    if (j.is_number_integer()) return f.from_int(j.get<i64>());
    if (!j.is_array()) bad("finite-field scalar must be a coefficient list");
    std::vector<u64> cs;
    for (const auto& c : j) {
        if (!c.is_number_integer()) bad("finite-field coefficient must be an integer");
        i64 v = c.get<i64>();
        i64 p = static_cast<i64>(f.p());
        cs.push_back(static_cast<u64>(((v % p) + p) % p));
    }
    return f.from_coeffs(std::move(cs));
}

Poly poly_from_json(const Json& j, const BaseField& f) {
    if (!j.is_array()) bad("polynomial must be a coefficient list");
    std::vector<Scalar> cs;
    for (const auto& c : j) cs.push_back(scalar_from_json(c, f));
    return Poly(f, std::move(cs));
}

RatFunc ratfunc_from_json(const Json& j, const BaseField& f) {
    if (!j.is_object() || !j.contains("num") || !j.contains("den"))
        bad("rational function must be {num, den}");
    return RatFunc(poly_from_json(j["num"], f), poly_from_json(j["den"], f));
}

BaseField field_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("kind")) bad("field must have a kind");
    std::string kind = j["kind"].get<std::string>();
    if (kind == "rationals" || kind == "Q" || kind == "q") return BaseField::rationals();
    if (kind == "finite") {
        if (!j.contains("p")) bad("finite field needs p");
        u64 p = j["p"].get<u64>();
        unsigned m = j.contains("m") ? j["m"].get<unsigned>() : 1;
        return BaseField::finite(p, m);
    }
    bad("unknown field kind " + kind);
}

ModelPtr model_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("kind") || !j.contains("field"))
        bad("model must have kind and field");
    BaseField f = field_from_json(j["field"]);
    std::string kind = j["kind"].get<std::string>();
    if (kind == "rational") return CurveModel::rational(f);
    if (kind == "hyperelliptic") {
        if (!j.contains("f")) bad("hyperelliptic model needs f");
        return CurveModel::hyperelliptic(f, poly_from_json(j["f"], f));
    }
    if (kind == "tower") {
        if (!j.contains("w")) bad("tower model needs w");
        if (j["w"].is_array()) return CurveModel::tower(f, RatFunc::from_poly(poly_from_json(j["w"], f)));
        return CurveModel::tower(f, ratfunc_from_json(j["w"], f));
    }
    bad("unknown model kind " + kind);
}

FFElem elem_from_json(const Json& j, const ModelPtr& m) {
    if (!j.is_array()) bad("element must be a coordinate list");
    if (static_cast<int>(j.size()) > m->n()) bad("element has too many coordinates");
    std::vector<RatFunc> coords;
    for (const auto& c : j) coords.push_back(ratfunc_from_json(c, m->base()));
    while (static_cast<int>(coords.size()) < m->n()) coords.push_back(RatFunc::zero(m->base()));
    return FFElem(m, std::move(coords));
}

Json to_json(const Instance& inst) {
    Json elems = Json::array();
    for (const auto& e : inst.subspace) elems.push_back(to_json(e));
    return Json{{"model", to_json(inst.model)},
                {"subspace", elems},
                {"options", Json{{"normalize", inst.normalize}, {"assert", inst.do_assert}}}};
}

Instance instance_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("model") || !j.contains("subspace"))
        bad("instance must have model and subspace");
    Instance inst{model_from_json(j["model"]), {}, true, true};
    for (const auto& e : j["subspace"]) inst.subspace.push_back(elem_from_json(e, inst.model));
    if (inst.subspace.empty()) bad("instance subspace is empty");
    if (j.contains("options")) {
        const Json& o = j["options"];
        if (o.contains("normalize")) inst.normalize = o["normalize"].get<bool>();
        if (o.contains("assert")) inst.do_assert = o["assert"].get<bool>();
    }
    return inst;
}

Instance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open instance file: " + path);
    Json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw input_error(std::string("JSON parse error: ") + e.what());
    }
    return instance_from_json(j);
}

// ---------------------------------------------------------------------------
// reports
// ---------------------------------------------------------------------------

Json report_json(const TheoremReport& r) {
    return Json{{"report_version", kReportVersion},
                {"report", "theorem"},
                {"k", r.k},
                {"gamma", r.gamma},
                {"hypothesis_met", r.hypothesis_met},
                {"g", r.g},
                {"D", to_json(r.D)},
                {"rr_dim", r.rr_dim},
                {"codim", r.codim},
                {"genus_ok", r.genus_ok},
                {"codim_ok", r.codim_ok},
                {"generates_field", r.generates_field},
                {"asserted", r.asserted}};
}

Json report_json(const Freiman3k4Report& r) {
    return Json{{"report_version", kReportVersion},
                {"report", "freiman_3k4"},
                {"A", r.A.elements()},
                {"k", r.k},
                {"sumset_size", r.sumset_size},
                {"gamma", r.gamma},
                {"hypothesis_met", r.hypothesis_met},
                {"ap_cover_ok", r.ap_cover_ok},
                {"verified", r.verified}};
}

Json report_json(const KneserModReport& r) {
    return Json{{"report_version", kReportVersion},
                {"report", "kneser_mod"},
                {"n", r.n},
                {"Atilde", r.Atilde},
                {"sumset", r.sum2},
                {"H", r.H},
                {"H_gen", r.H_gen},
                {"stab_ok", r.stab_ok},
                {"bound_ok", r.bound_ok}};
}

Json report_json(const LevSmelianskyReport& r) {
    return Json{{"report_version", kReportVersion},
                {"report", "lev_smeliansky"},
                {"A", r.A.elements()},
                {"n", r.n},
                {"atilde_size", r.atilde_size},
                {"sum2_size", r.sum2_size},
                {"gamma", r.gamma},
                {"hypothesis_met", r.hypothesis_met},
                {"chain_ok", r.chain_ok}};
}

Json report_json(const BridgeReport& r) {
    return Json{{"report_version", kReportVersion},
                {"report", "bridge"},
                {"A", r.A.elements()},
                {"gamma_add", r.gamma_add},
                {"gamma_ff", r.gamma_ff},
                {"sumset_size", r.sumset_size},
                {"dimS", r.dimS},
                {"dimS2", r.dimS2},
                {"ap_cover_ok", r.ap_cover_ok},
                {"codim", r.codim},
                {"dims_match", r.dims_match},
                {"divisor_ok", r.divisor_ok},
                {"verdicts_agree", r.verdicts_agree},
                {"theorem", report_json(r.theorem)}};
}

Json report_json(const StabilizerAnalysis& a) {
    Json j{{"report_version", kReportVersion},
           {"report", "stabilizer"},
           {"k", a.k},
           {"ell", a.ell},
           {"kappa", a.kappa},
           {"tau", a.tau},
           {"N", a.local.N},
           {"d", a.local.d},
           {"kx_dim_ok", a.kx_dim_ok},
           {"kneser_ok", a.kneser_ok},
           {"lemma_bound_ok", a.lemma_bound_ok},
           {"L_is_full", a.L_is_full},
           {"hypothesis_met", a.hypothesis_met},
           {"generates_field", a.generates},
           {"plan", a.plan.identity ? "model" : "tower"},
           {"L", to_json(a.L)}};
    if (a.pivot) {
        j["pivot"] = to_json(a.pivot->w);
        j["pivot_pretty"] = a.pivot->w.to_string();
        j["D"] = to_json(a.pivot->D);
    }
    if (!a.plan.identity) {
        Json lm = Json::array();
        for (const auto& e : a.L_model) lm.push_back(e.to_string());
        j["L_model_pretty"] = lm;
    }
    return j;
}

Json report_json(const EvaluationReport& r) {
    Json pts = Json::array();
    for (const auto& p : r.points) pts.push_back(to_json(p));
    return Json{{"report_version", kReportVersion},
                {"report", "evaluation"},
                {"fibre_a", to_json(r.fibre_a)},
                {"w_eval", r.w_eval.to_string()},
                {"points", pts},
                {"blocks", r.blocks},
                {"S0", to_json(r.S0)},
                {"SL", to_json(r.SL)},
                {"containment_ok", r.containment_ok},
                {"equality", r.equality},
                {"dim_bound_ok", r.dim_bound_ok},
                {"kernel_ok", r.kernel_ok},
                {"ell", r.ell},
                {"tau", r.tau}};
}

Json report_json(const KneserBoundReport& r) {
    return Json{{"report_version", kReportVersion},
                {"report", "kneser_bounds"},
                {"k", r.k},
                {"dimS2", r.dimS2},
                {"freiman_hyp", r.freiman_hyp},
                {"dimW", r.dimW},
                {"w_bar", r.w_bar},
                {"lemma_w_ok", r.lemma_w_ok},
                {"dim_sum", r.dim_sum},
                {"sum_ok", r.sum_ok},
                {"intersect_ok", r.intersect_ok}};
}

Json report_json(const ABCReport& r) {
    return Json{{"report_version", kReportVersion},
                {"report", "abc"},
                {"s_used", r.s_used.to_string()},
                {"a", r.a},
                {"b", r.b},
                {"c", r.c},
                {"A", to_json(r.A)},
                {"B", to_json(r.B)},
                {"C", to_json(r.C)},
                {"A_cap_S_dim", r.A_cap_S.dim()},
                {"Aplus_cap_S_dim", r.Aplus_cap_S.dim()},
                {"cond1", r.cond1},
                {"cond2", r.cond2},
                {"cond3", r.cond3},
                {"cond4", r.cond4},
                {"iterations", r.iterations}};
}

Json report_json(const RRBasis& r) {
    Json pretty = Json::array();
    Json basis = Json::array();
    for (const auto& b : r.basis) {
        pretty.push_back(b.to_string());
        basis.push_back(to_json(b));
    }
    return Json{{"report_version", kReportVersion},
                {"report", "riemann_roch"},
                {"divisor", to_json(r.divisor)},
                {"dim", r.dim},
                {"genus", r.genus_used},
                {"basis", pretty},
                {"basis_coords", basis}};
}

}  // namespace fflab
