// qhpp: exact-arithmetic verification campaigns for rational Q-homology
// projective planes with cyclic quotient singularities.
//
//   qhpp <campaign-id> [--bound N] [--format jsonl|csv|table] [--params k=v,...]
//   qhpp all [--format ...]             run every campaign in id order
//   qhpp invariants "<basket-string>"   L, K^2, e_orb and the BMY verdict
//   qhpp infer "<curve>" "<basket>"     curve-detecting formula on a hypothesis
//   qhpp cascade <graph-file>           qhpp_check, classification, cascade search
//   qhpp coverage                       statement-to-campaign map
//
// Exit codes: 0 verified, 1 counterexample/mismatch, 2 usage or input error.

#include "qhpp/campaign.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace qhpp;

namespace {

int run_one(const std::string& id, const CampaignOptions& opts, const std::string& format) {
    VerdictReport rep = run_campaign(id, opts);
    std::cout << emit_report(rep, format);
    if (rep.status == "error") return 2;
    return rep.status == "verified" ? 0 : 1;
}

CampaignOptions make_options(int bound, const std::vector<std::string>& params, const std::string& data_dir) {
    CampaignOptions o;
    if (bound > 0) o.bound = bound;
    o.data_dir = data_dir;
    for (const auto& p : params) {
        auto eq = p.find('=');
        if (eq == std::string::npos) throw CLI::ValidationError("--params entries look like k=v");
        o.params[p.substr(0, eq)] = p.substr(eq + 1);
    }
    return o;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact verification toolkit for Q-homology projective planes"};
    app.require_subcommand(1);

    int bound = 0;
    std::string format = "table";
    std::string data_dir;
    std::vector<std::string> params;
    app.add_option("--bound", bound, "override the campaign's default bound")->capture_default_str();
    app.add_option("--format", format, "jsonl | csv | table")->capture_default_str();
    app.add_option("--params", params, "extra k=v parameters")->delimiter(',');
    app.add_option("--data", data_dir, "data directory holding fixtures/expected.json");

    for (const Campaign& c : campaign_registry())
        app.add_subcommand(c.id, c.statement)->fallthrough();
    auto* all = app.add_subcommand("all", "run every campaign in id order");
    all->fallthrough();

    auto* invariants = app.add_subcommand("invariants", "print L, K^2, e_orb and the BMY verdict of a basket");
    std::string basket_str;
    invariants->add_option("basket", basket_str, "e.g. \"A1 + 1/3(1,1) + 1/5(1,2) + [2,3,2,3]\"")->required();

    auto* infer = app.add_subcommand("infer", "run the curve-detecting formula on a curve hypothesis");
    std::string curve_str, infer_basket;
    std::string known_k2;
    infer->add_option("curve", curve_str, "e.g. \"E(-1): D4[1]*1, D4[9]*1\"")->required();
    infer->add_option("basket", infer_basket, "basket supplying the chains D1, D2, ...")->required();
    infer->add_option("--k2", known_k2, "check against a known K^2 instead of solving");

    auto* cascade = app.add_subcommand("cascade", "check a marked resolution and search for a cascade");
    std::string graph_file;
    int max_depth = 8;
    cascade->add_option("file", graph_file, "graph state file (curve/edge/picard lines)")->required();
    cascade->add_option("--max-depth", max_depth, "search depth limit")->capture_default_str();

    auto* scan = app.add_subcommand("scan", "emit raw scan records as JSON lines");
    std::string scan_case;
    int l_min = 1, l_max = 100;
    scan->add_option("case", scan_case, "L13_sum10 | L13_sum11 | odd_chain")->required();
    scan->add_option("--lmin", l_min, "first l (odd_chain)")->capture_default_str();
    scan->add_option("--lmax", l_max, "last l (odd_chain)")->capture_default_str();

    auto* coverage = app.add_subcommand("coverage", "print the statement-to-campaign map");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        CampaignOptions opts = make_options(bound, params, data_dir);

        if (coverage->parsed()) {
            std::cout << coverage_report();
            return 0;
        }
        if (scan->parsed()) {
            ScanBounds b;
            b.l_min = l_min;
            b.l_max = l_max;
            auto recs = scan_corollary(parse_scan_case(scan_case), b);
            for (const auto& r : recs) std::cout << scan_record_json(r) << "\n";
            return nonexistence_confirmed(recs) ? 0 : 1;
        }
        if (invariants->parsed()) {
            Basket b = Basket::parse(basket_str);
            std::cout << "basket: " << b.str() << "\n";
            std::cout << "L = " << b.L() << "\n";
            std::cout << "K^2 = " << to_string(k_squared(b)) << "\n";
            std::cout << "e_orb = " << to_string(orbifold_euler(b)) << "\n";
            std::cout << "3*e_orb = " << to_string(Rat(3 * orbifold_euler(b))) << "\n";
            std::cout << "bmy = " << to_string(bmy_gate(b)) << "\n";
            return 0;
        }
        if (infer->parsed()) {
            CurveHypothesis c = CurveHypothesis::parse(curve_str);
            Basket b = Basket::parse(infer_basket);
            std::vector<Chain> chains;
            for (const auto& s : b.singularities()) chains.push_back(s.chain);
            std::optional<Rat> k2;
            if (!known_k2.empty()) k2 = parse_rational(known_k2);
            InferenceResult r = infer_from_curve(c, chains, k2);
            std::cout << r.str() << "\n";
            if (r.infeasible_for_log_general_type) std::cout << "infeasible for log general type\n";
            return 0;
        }
        if (cascade->parsed()) {
            std::ifstream in(graph_file);
            if (!in) {
                std::cerr << "cannot open " << graph_file << "\n";
                return 2;
            }
            std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
            MarkedResolution s = MarkedResolution::parse(text);
            QhppVerdict v = qhpp_check(s);
            std::cout << "qhpp_check: " << v.str() << " (chains = " << v.chain_count << ", L = " << v.L
                      << ", picard = " << s.picard_rank << ")\n";
            std::cout << "classification: " << to_string(classify_state(s)) << "\n";
            auto steps = admissible_steps(s);
            std::cout << "admissible contractions:";
            for (const auto& l : steps) std::cout << " " << l;
            std::cout << (steps.empty() ? " none" : "") << "\n";
            if (!v.valid) return 1;
            if (auto path = cascade_search(s, max_depth)) {
                std::cout << "cascade:";
                for (const auto& l : path->steps) std::cout << " " << l;
                std::cout << (path->steps.empty() ? " (already terminal)" : "") << "\n";
                std::cout << "terminal class: " << to_string(path->terminal_class) << "\n";
            } else {
                std::cout << "cascade: none within depth " << max_depth << "\n";
            }
            return 0;
        }
        if (all->parsed()) {
            int worst = 0;
            for (const auto& id : campaign_ids()) {
                int r = run_one(id, opts, format);
                worst = std::max(worst, r);
            }
            return worst;
        }
        for (const Campaign& c : campaign_registry())
            if (app.get_subcommand(c.id)->parsed()) return run_one(c.id, opts, format);
        std::cerr << "no command\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
