#include "fflab/search.hpp"

#include <numeric>

namespace fflab {

void SearchConfig::validate() const {
    if (trials < 1) throw input_error("trials must be positive");
    if (genus < 0 || genus > 2) throw input_error("supported genus range is 0..2");
    if (k_min < 2 || k_max < k_min) throw input_error("empty k range");
    if (codim_min < 0 || codim_max < codim_min) throw input_error("empty codim range");
    if (characteristic != 0) BaseField::finite(characteristic, ext);  // validates p, m
}

namespace {

Scalar random_scalar(const BaseField& K, Xorshift64Star& rng) {
    if (K.is_rationals()) {
        // small integers keep bignum growth tame in searches
        long v = static_cast<long>(rng.below(19)) - 9;
        return K.from_int(v);
    }
    auto size = K.enum_size();
    u64 span = size ? std::min<u64>(*size, 1u << 16) : 1u << 16;
    return K.enumerate(rng.below(span));
}

Instance genus0_instance(const SearchConfig& cfg, const BaseField& K, Xorshift64Star& rng) {
    ModelPtr model = CurveModel::rational(K);
    const int k = cfg.k_min + static_cast<int>(rng.below(static_cast<u64>(cfg.k_max - cfg.k_min + 1)));
    const int c = cfg.codim_min + static_cast<int>(rng.below(static_cast<u64>(cfg.codim_max - cfg.codim_min + 1)));
    const long n = k - 1 + c;
    const bool monomial_shape = rng.coin();

    for (int attempt = 0; attempt < 64; ++attempt) {
        std::vector<FFElem> gens;
        if (monomial_shape) {
            // A = {0, ..., n} minus c interior holes, gcd 1 by construction scan
            std::vector<long> exps;
            for (long e = 0; e <= n; ++e) exps.push_back(e);
            for (int h = 0; h < c; ++h) {
                if (exps.size() <= 2) break;
                size_t at = 1 + static_cast<size_t>(rng.below(exps.size() - 2));
                exps.erase(exps.begin() + static_cast<long>(at));
            }
            long g = 0;
            for (long e : exps) g = std::gcd(g, e);
            if (g != 1 && n > 0) continue;
            for (long e : exps)
                gens.push_back(FFElem::from_ratfunc(model, RatFunc::from_poly(
                    Poly::monomial(K.one(), e))));
        } else {
            gens.push_back(FFElem::one(model));
            for (int i = 1; i < k; ++i) {
                std::vector<Scalar> cs;
                for (long d = 0; d <= n; ++d) cs.push_back(random_scalar(K, rng));
                gens.push_back(FFElem::from_ratfunc(model, RatFunc::from_poly(Poly(K, cs))));
            }
        }
        KSubspace S = k_span(model, gens);
        if (!monomial_shape && S.dim() != k) continue;
        if (!generates_field(S)) continue;
        return Instance{model, S.basis(), true, true};
    }
    throw search_exhausted("could not generate a genus-0 instance (seed corner)");
}

Instance hyper_instance(const SearchConfig& cfg, const BaseField& K, Xorshift64Star& rng) {
    const int g = cfg.genus;
    const long fdeg = 2 * g + 1;
    for (int attempt = 0; attempt < 256; ++attempt) {
        std::vector<Scalar> fc;
        for (long i = 0; i < fdeg; ++i) fc.push_back(random_scalar(K, rng));
        fc.push_back(K.one());
        Poly f(K, fc);
        if (f.degree() != fdeg || !is_squarefree(f)) continue;
        ModelPtr model = CurveModel::hyperelliptic(K, f);
        const long n = 2 * g + 1 + static_cast<long>(rng.below(5));  // n in [2g+1, 2g+5]
        Divisor D;
        D.add(PlaceId::infinity_hyp(), n);
        RRBasis rb = rr_basis(model, D);
        // S = {1, x, y} plus a random subset of the remaining basis functions
        std::vector<FFElem> gens{FFElem::one(model), FFElem::coordinate(model),
                                 FFElem::generator(model)};
        for (const auto& b : rb.basis) {
            if (rng.coin()) gens.push_back(b);
        }
        KSubspace S = k_span(model, gens);
        if (S.dim() < 3) continue;
        return Instance{model, S.basis(), true, true};
    }
    throw search_exhausted("could not generate a hyperelliptic instance (seed corner)");
}

}  // namespace

Instance generate_instance(const SearchConfig& cfg, u64 trial_seed) {
    Xorshift64Star rng(trial_seed);
    BaseField K = cfg.characteristic == 0 ? BaseField::rationals()
                                          : BaseField::finite(cfg.characteristic, cfg.ext);
    if (cfg.genus == 0) return genus0_instance(cfg, K, rng);
    return hyper_instance(cfg, K, rng);
}

SearchResult run_search(const SearchConfig& cfg, std::ostream& out) {
    cfg.validate();
    SearchResult res;
    for (long t = 0; t < cfg.trials; ++t) {
        const u64 trial_seed = cfg.seed + static_cast<u64>(t);
        Instance inst = generate_instance(cfg, trial_seed);
        Json line{{"trial", t}, {"seed", trial_seed}};
        try {
            KSubspace S = k_span(inst.model, inst.subspace);
            TheoremReport rep = verify_theorem(S);
            theorem_assert(rep);
            line["report"] = report_json(rep);
            line["status"] = "ok";
        } catch (const invariant_error& e) {
            line["status"] = "assertion_failure";
            line["error"] = e.what();
            line["instance"] = to_json(inst);
            out << line.dump() << "\n";
            ++res.trials_run;
            ++res.failures;
            return res;
        }
        out << line.dump() << "\n";
        ++res.trials_run;
    }
    return res;
}

}  // namespace fflab
