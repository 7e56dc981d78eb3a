// fflab: exact computation with subspaces of function fields, Riemann-Roch
// spaces, Kneser stabilizers, and the 3k-4 machinery on integer sets.
//
// Exit codes: 0 run completed, 2 input/schema/model error, 3 assertion
// failure (theorem-backed invariant violated; a reproducer is printed).

#include <CLI11.hpp>

#include <iostream>

#include "fflab/json_io.hpp"
#include "fflab/search.hpp"

using namespace fflab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitAssert = 3;

int guard(const std::function<int()>& body) {
    try {
        return body();
    } catch (const input_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const invariant_error& e) {
        std::cerr << "assertion failure: " << e.what() << "\n";
        return kExitAssert;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "json error: " << e.what() << "\n";
        return kExitInput;
    }
}

BaseField field_from_flags(u64 characteristic, unsigned ext) {
    return characteristic == 0 ? BaseField::rationals() : BaseField::finite(characteristic, ext);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fflab: function-field subspace laboratory"};
    app.require_subcommand(1);

    // --- verify ---
    std::string verify_path;
    bool verify_no_assert = false;
    auto* cmd_verify = app.add_subcommand("verify", "verify the function-field 3k-4 theorem on an instance file");
    cmd_verify->add_option("instance,--instance", verify_path, "instance JSON path")->required();
    cmd_verify->add_flag("--no-assert", verify_no_assert, "report only, never exit 3 on verdicts");

    // --- bridge ---
    std::string bridge_set;
    u64 bridge_char = 0;
    unsigned bridge_ext = 1;
    auto* cmd_bridge = app.add_subcommand("bridge", "monomial bridge for an integer set");
    cmd_bridge->add_option("--set", bridge_set, "comma-separated integer set")->required();
    cmd_bridge->add_option("--char", bridge_char, "characteristic (0 = rationals)");
    cmd_bridge->add_option("--ext", bridge_ext, "extension degree");

    // --- search ---
    SearchConfig scfg;
    auto* cmd_search = app.add_subcommand("search", "seeded random verification search (JSON lines)");
    cmd_search->add_option("--seed", scfg.seed, "64-bit seed");
    cmd_search->add_option("--trials", scfg.trials, "number of trials");
    cmd_search->add_option("--char", scfg.characteristic, "characteristic (0 = rationals)");
    cmd_search->add_option("--ext", scfg.ext, "extension degree");
    cmd_search->add_option("--genus", scfg.genus, "genus 0, 1 or 2");
    cmd_search->add_option("--kmin", scfg.k_min, "minimum dim S");
    cmd_search->add_option("--kmax", scfg.k_max, "maximum dim S");
    cmd_search->add_option("--cmin", scfg.codim_min, "minimum codimension");
    cmd_search->add_option("--cmax", scfg.codim_max, "maximum codimension");

    // --- rr ---
    int rr_genus = 0;
    long rr_n = 0;
    u64 rr_char = 101;
    unsigned rr_ext = 1;
    auto* cmd_rr = app.add_subcommand("rr", "Riemann-Roch basis of L(n * infinity)");
    cmd_rr->add_option("--genus", rr_genus, "curve genus (0, 1 or 2)")->required();
    cmd_rr->add_option("--n", rr_n, "divisor multiplicity at infinity")->required();
    cmd_rr->add_option("--char", rr_char, "characteristic (0 = rationals)");
    cmd_rr->add_option("--ext", rr_ext, "extension degree");

    // --- stabilizer ---
    std::string stab_path;
    auto* cmd_stab = app.add_subcommand("stabilizer", "stabilizer analysis of an instance");
    cmd_stab->add_option("instance,--instance", stab_path, "instance JSON path")->required();

    // --- eval-report ---
    std::string eval_path;
    auto* cmd_eval = app.add_subcommand("eval-report", "split-fibre evaluation report (S0 experiment)");
    cmd_eval->add_option("instance,--instance", eval_path, "instance JSON path")->required();

    // --- kneser-mod ---
    std::string km_set;
    long km_mod = 0;
    auto* cmd_km = app.add_subcommand("kneser-mod", "Kneser stabilizer data in Z/nZ");
    cmd_km->add_option("--set", km_set, "comma-separated integer set")->required();
    cmd_km->add_option("--mod", km_mod, "modulus n")->required();

    CLI11_PARSE(app, argc, argv);

    if (cmd_verify->parsed()) {
        return guard([&] {
            Instance inst = load_instance(verify_path);
            KSubspace S = k_span(inst.model, inst.subspace);
            if (!inst.normalize && !k_member(S, FFElem::one(inst.model)))
                throw input_error("instance declares normalize=false but 1 is not in S");
            TheoremReport rep = verify_theorem(S);
            std::cout << report_json(rep).dump(2) << "\n";
            if (inst.do_assert && !verify_no_assert) theorem_assert(rep);
            return kExitOk;
        });
    }
    if (cmd_bridge->parsed()) {
        return guard([&] {
            IntSet A = IntSet::parse(bridge_set);
            BridgeReport rep = monomial_bridge(A, field_from_flags(bridge_char, bridge_ext));
            std::cout << report_json(rep).dump(2) << "\n";
            return kExitOk;
        });
    }
    if (cmd_search->parsed()) {
        return guard([&] {
            SearchResult res = run_search(scfg, std::cout);
            return res.failures > 0 ? kExitAssert : kExitOk;
        });
    }
    if (cmd_rr->parsed()) {
        return guard([&] {
            BaseField K = field_from_flags(rr_char, rr_ext);
            ModelPtr model;
            if (rr_genus == 0) {
                model = CurveModel::rational(K);
            } else {
                // canonical odd-degree curve y^2 = x^{2g+1} + x + 1 (shifted
                // deterministically if that polynomial is not squarefree)
                for (i64 c = 1;; ++c) {
                    Poly f = Poly::monomial(K.one(), 2 * rr_genus + 1) + Poly::x(K) +
                             Poly::constant(K.from_int(c));
                    if (is_squarefree(f)) {
                        model = CurveModel::hyperelliptic(K, f);
                        break;
                    }
                }
            }
            Divisor D;
            D.add(canonical_infinity(model), rr_n);
            RRBasis rb = rr_basis(model, D);
            std::cout << report_json(rb).dump(2) << "\n";
            return kExitOk;
        });
    }
    if (cmd_stab->parsed()) {
        return guard([&] {
            Instance inst = load_instance(stab_path);
            KSubspace S = k_span(inst.model, inst.subspace);
            StabilizerAnalysis a = stabilizer_report(S);
            std::cout << report_json(a).dump(2) << "\n";
            if (inst.do_assert) stabilizer_assert(a);
            return kExitOk;
        });
    }
    if (cmd_eval->parsed()) {
        return guard([&] {
            Instance inst = load_instance(eval_path);
            KSubspace S = k_span(inst.model, inst.subspace);
            StabilizerAnalysis a = stabilizer_report(S);
            EvaluationReport rep = evaluation_report(a);
            std::cout << report_json(rep).dump(2) << "\n";
            return kExitOk;
        });
    }
    if (cmd_km->parsed()) {
        return guard([&] {
            IntSet A = IntSet::parse(km_set);
            KneserModReport rep = kneser_mod(A, km_mod);
            std::cout << report_json(rep).dump(2) << "\n";
            return kExitOk;
        });
    }
    return kExitInput;
}
