#include "vnm/cli.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <iomanip>
#include <memory>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "vnm/json_io.hpp"
#include "vnm/sampling.hpp"
#include "vnm/subprocess_oracle.hpp"

namespace vnm::cli {

namespace {

using json::Json;

struct Options {
    std::string command;
    std::string mode = "rational";
    std::uint64_t seed = 0;
    double tol = kDefaultTolerance;
    std::size_t sample = 1000;
    double margin = kDefaultFitMargin;
    int max_iter = kDefaultMaxIterations;
    int max_epochs = kDefaultMaxEpochs;
    std::string oracle_utility;
    std::string oracle_cmd;
    std::vector<std::string> space;
    std::string u_path;
    std::string v_path;
    std::string input;
    bool plot = false;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

void emit(std::ostream& out, const Json& report) { out << report.dump(2) << '\n'; }

template <Scalar S>
std::unique_ptr<PreferenceOracle<S>> make_oracle(const Options& opt) {
    if (!opt.oracle_utility.empty() && !opt.oracle_cmd.empty()) {
        throw UsageError("use either --oracle-utility or --oracle-cmd, not both");
    }
    if (!opt.oracle_utility.empty()) {
        return std::make_unique<UtilityOracle<S>>(json::utility_from_json<S>(json::load_file(opt.oracle_utility)));
    }
    if (!opt.oracle_cmd.empty()) {
        if (opt.space.empty()) throw UsageError("--oracle-cmd needs --space x1,x2,...");
        return std::make_unique<SubprocessOracle<S>>(OutcomeSpace(opt.space), opt.oracle_cmd);
    }
    throw UsageError("an oracle is required: --oracle-utility FILE or --oracle-cmd CMD");
}

template <Scalar S>
const UtilityFunction<S>* known_utility(const PreferenceOracle<S>& o) {
    if (const auto* uo = dynamic_cast<const UtilityOracle<S>*>(&o)) {
        if (uo->indiff_epsilon() == 0) return &uo->utility();
    }
    return nullptr;
}

std::string plot_utility(const std::vector<std::string>& labels, const std::vector<double>& values) {
    constexpr int width = 40;
    std::size_t label_width = 0;
    for (const auto& l : labels) label_width = std::max(label_width, l.size());
    std::ostringstream s;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const int bars = static_cast<int>(std::lround(std::clamp(values[i], 0.0, 1.0) * width));
        s << std::left << std::setw(static_cast<int>(label_width)) << labels[i] << "  " << std::fixed
          << std::setprecision(6) << values[i] << "  " << std::string(static_cast<std::size_t>(bars), '#') << '\n';
    }
    return s.str();
}

template <Scalar S>
Json header(const Options& opt) {
    return Json{{"command", opt.command}, {"mode", ScalarTraits<S>::name}, {"seed", opt.seed}};
}

template <Scalar S>
int cmd_elicit(const Options& opt, std::ostream& out, std::ostream& err) {
    auto oracle = make_oracle<S>(opt);
    const auto result = elicit_utility(*oracle, oracle->space(), opt.tol, opt.max_iter);
    Json report = header<S>(opt);
    report["tol"] = opt.tol;
    report["result"] = json::elicitation_to_json(result);
    emit(out, report);
    if (opt.plot) {
        std::vector<double> values;
        for (const auto& v : result.utility.values()) values.push_back(ScalarTraits<S>::to_double(v));
        err << plot_utility(result.utility.space().labels(), values);
    }
    return kSuccess;
}

// Sorts three lotteries best-first by the oracle; nullopt unless the best is
// strictly better than the worst.
template <Scalar S>
std::optional<LotteryTriple<S>> ordered_triple(PreferenceOracle<S>& o, LotteryTriple<S> t) {
    std::array<Lottery<S>, 3> l{t.p, t.q, t.r};
    auto better = [&](const Lottery<S>& a, const Lottery<S>& b) { return compare(o, a, b) == Comparison::prefer_first; };
    if (better(l[1], l[0])) std::swap(l[0], l[1]);
    if (better(l[2], l[1])) std::swap(l[1], l[2]);
    if (better(l[1], l[0])) std::swap(l[0], l[1]);
    if (!better(l[0], l[2])) return std::nullopt;
    return LotteryTriple<S>{l[0], l[1], l[2]};
}

template <Scalar S>
int cmd_check_axioms(const Options& opt, std::ostream& out, std::ostream&) {
    auto oracle = make_oracle<S>(opt);
    const auto& space = oracle->space();
    Sampler<S> sampler(opt.seed);
    const auto triples = sampler.triples(space, opt.sample);
    const auto tuples = sampler.mixture_tuples(space, opt.sample);

    Json reports = Json::array();
    bool ok = true;
    for (const auto& r : {check_order_axioms(*oracle, triples), check_independence(*oracle, tuples),
                          check_classical_independence(*oracle, tuples)}) {
        ok = ok && r.passed();
        reports.push_back(json::axiom_report_to_json(r));
    }

    // Continuity: witness search on the first strictly ordered sampled triple
    // whose middle lottery is strictly between.
    Json continuity{{"axiom", "continuity"}, {"kind", "witness search"}};
    bool probed = false;
    for (std::size_t attempt = 0; attempt < 100 && !probed; ++attempt) {
        auto t = ordered_triple(*oracle, sampler.triple(space));
        if (!t || compare(*oracle, t->p, t->q) != Comparison::prefer_first ||
            compare(*oracle, t->q, t->r) != Comparison::prefer_first) {
            continue;
        }
        probed = true;
        try {
            auto w = probe_continuity(*oracle, t->p, t->q, t->r);
            continuity = json::continuity_to_json(w);
            continuity["verdict"] = "pass";
            continuity["lotteries"] = Json::array({json::lottery_to_json(t->p), json::lottery_to_json(t->q),
                                                   json::lottery_to_json(t->r)});
        } catch (const Error& e) {
            if (e.code() != ErrorCode::search_exhausted) throw;
            ok = false;
            continuity["verdict"] = "fail";
            continuity["lotteries"] = Json::array({json::lottery_to_json(t->p), json::lottery_to_json(t->q),
                                                   json::lottery_to_json(t->r)});
            continuity["reason"] = e.what();
        }
    }
    if (!probed) {
        continuity["verdict"] = "skipped";
        continuity["reason"] = "no strictly ordered triple found in 100 draws";
    }
    reports.push_back(continuity);

    Json report = header<S>(opt);
    report["sample"] = opt.sample;
    report["verdict"] = ok ? "pass" : "fail";
    report["reports"] = std::move(reports);
    emit(out, report);
    return ok ? kSuccess : kFail;
}

template <Scalar S>
int cmd_check_claims(const Options& opt, std::ostream& out, std::ostream&) {
    auto oracle = make_oracle<S>(opt);
    const auto& space = oracle->space();
    Sampler<S> sampler(opt.seed);
    const UtilityFunction<S>* u = known_utility(*oracle);

    std::vector<ClaimTrial<S>> trials;
    trials.reserve(opt.sample);
    for (std::size_t i = 0; i < opt.sample; ++i) {
        auto p = sampler.lottery(space);
        // With a known utility, every other trial gets an indifferent partner
        // so Claims III and IV are exercised.
        auto q = (u && i % 2 == 1) ? sampler.indifferent_partner(*u, p) : sampler.lottery(space);
        auto r = sampler.lottery(space);
        const S alpha = sampler.open_alpha();
        const S beta = alpha + (S(1) - alpha) * sampler.alpha();
        trials.push_back({std::move(p), std::move(q), std::move(r), alpha, beta});
    }
    auto reports = verify_claims_i_to_iv(*oracle, trials);

    ClaimReport<S> claim_v;
    claim_v.claim = Claim::V;
    const std::size_t claim_v_trials = std::max<std::size_t>(1, opt.sample / 10);
    const auto start = oracle->query_count();
    for (std::size_t i = 0; i < claim_v_trials; ++i) {
        auto t = ordered_triple(*oracle, sampler.triple(space));
        if (!t) {
            ++claim_v.skipped;
            continue;
        }
        const auto r = verify_claim_v(*oracle, t->p, t->q, t->r, opt.tol, opt.max_iter);
        ++claim_v.trials;
        if (!r.passed() && claim_v.passed()) {
            claim_v.verdict = Verdict::fail;
            claim_v.witness = r.witness;
            claim_v.alpha_hat = r.alpha_hat;
            claim_v.analytic_alpha = r.analytic_alpha;
        }
    }
    claim_v.queries_used = oracle->query_count() - start;
    reports.push_back(claim_v);

    Json out_reports = Json::array();
    bool ok = true;
    for (const auto& r : reports) {
        ok = ok && r.passed();
        out_reports.push_back(json::claim_report_to_json(r));
    }
    Json report = header<S>(opt);
    report["sample"] = opt.sample;
    report["tol"] = opt.tol;
    report["verdict"] = ok ? "pass" : "fail";
    report["reports"] = std::move(out_reports);
    emit(out, report);
    return ok ? kSuccess : kFail;
}

template <Scalar S>
int cmd_verify_representation(const Options& opt, std::ostream& out, std::ostream&) {
    if (opt.u_path.empty()) throw UsageError("verify-representation needs --u FILE");
    auto oracle = make_oracle<S>(opt);
    const auto u = json::utility_from_json<S>(json::load_file(opt.u_path));
    Sampler<S> sampler(opt.seed);
    const auto pairs = sampler.pairs(oracle->space(), opt.sample);
    const auto r = verify_representation(*oracle, u, pairs, opt.tol);
    Json report = header<S>(opt);
    report["sample"] = opt.sample;
    report["tol"] = opt.tol;
    report["verdict"] = to_string(r.verdict);
    report["report"] = json::axiom_report_to_json(r);
    emit(out, report);
    return r.passed() ? kSuccess : kFail;
}

template <Scalar S>
int cmd_recover_affine(const Options& opt, std::ostream& out, std::ostream&, bool tol_given) {
    if (opt.u_path.empty() || opt.v_path.empty()) throw UsageError("recover-affine needs --u FILE and --v FILE");
    const auto u = json::utility_from_json<S>(json::load_file(opt.u_path));
    const auto v = json::utility_from_json<S>(json::load_file(opt.v_path));
    const S tol = tol_given ? ScalarTraits<S>::from_double(opt.tol) : default_affine_tolerance<S>();
    Json report = header<S>(opt);
    try {
        const auto r = recover_affine(u, v, tol);
        Json body = json::affine_to_json(r);
        report.update(body);
        report["verdict"] = "pass";
        emit(out, report);
        return kSuccess;
    } catch (const RankMismatch& e) {
        report["verdict"] = "fail";
        report["error"] = to_string(e.code());
        report["message"] = e.what();
        report["witness"] = Json::array({u.space().label(e.first()), u.space().label(e.second())});
    } catch (const NotAffine& e) {
        report["verdict"] = "fail";
        report["error"] = to_string(e.code());
        report["message"] = e.what();
        report["witness"] = u.space().label(e.index());
        report["residual"] = e.residual();
    }
    emit(out, report);
    return kFail;
}

template <Scalar S>
int cmd_validate_dataset(const Options& opt, std::ostream& out, std::ostream&) {
    if (opt.input.empty()) throw UsageError("validate-dataset needs a dataset file");
    const auto d = json::dataset_from_json<S>(json::load_file(opt.input));
    const auto r = validate_dataset(d);
    Json report = header<S>(opt);
    report.update(json::validation_to_json(r));
    emit(out, report);
    return r.consistent ? kSuccess : kFail;
}

template <Scalar S>
int cmd_fit_model(const Options& opt, std::ostream& out, std::ostream&) {
    if (opt.input.empty()) throw UsageError("fit-model needs a dataset file");
    const auto d = json::dataset_from_json<S>(json::load_file(opt.input));
    Json report = header<S>(opt);
    report["margin"] = opt.margin;
    try {
        const auto model = fit_reward_model(d, opt.margin, opt.max_epochs);
        const auto check = model_fits_data(model, d, ScalarTraits<S>::from_double(opt.margin));
        report["verdict"] = check.passed ? "pass" : "fail";
        report["model"] = json::utility_to_json(model.utility);
        report["fit"] = json::fit_check_to_json(check);
        emit(out, report);
        return check.passed ? kSuccess : kFail;
    } catch (const InfeasibleFit& e) {
        report["verdict"] = "fail";
        report["error"] = to_string(e.code());
        report["message"] = e.what();
        report["most_violated"] = e.most_violated();
    }
    emit(out, report);
    return kFail;
}

// The worked numbers: mixtures, expected utility, a continuity sandwich,
// the affine pair, and the Paris/Rome/village elicitation.
template <Scalar S>
int cmd_demo(const Options& opt, std::ostream& out, std::ostream& err) {
    auto s = [](const char* text) { return parse_scalar<S>(text); };
    auto lot = [&](const OutcomeSpace& space, std::initializer_list<const char*> probs) {
        std::vector<S> v;
        for (const char* p : probs) v.push_back(s(p));
        return Lottery<S>(space, std::move(v));
    };
    auto near = [](const Lottery<S>& a, const Lottery<S>& b) {
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (abs_value<S>(a[i] - b[i]) > ScalarTraits<S>::sum_tolerance()) return false;
        }
        return true;
    };

    Json checks = Json::array();
    bool ok = true;
    auto record = [&](const std::string& name, Json expected, Json actual, bool pass) {
        ok = ok && pass;
        checks.push_back(Json{{"name", name}, {"expected", std::move(expected)}, {"actual", std::move(actual)},
                              {"pass", pass}});
    };

    const OutcomeSpace x3({"x1", "x2", "x3"});
    {
        const auto p = lot(x3, {"0.7", "0.3", "0"});
        const auto q = lot(x3, {"0.2", "0.3", "0.5"});
        const auto m = mix(p, q, s("0.6"));
        const auto expected = lot(x3, {"0.5", "0.3", "0.2"});
        record("mix((0.7,0.3,0),(0.2,0.3,0.5),0.6)", json::lottery_to_json(expected), json::lottery_to_json(m),
               near(m, expected));
    }
    {
        const auto r = lot(x3, {"0.1", "0.1", "0.8"});
        const auto mp = mix(lot(x3, {"0.7", "0.3", "0"}), r, s("0.6"));
        const auto mq = mix(lot(x3, {"0.5", "0.2", "0.3"}), r, s("0.6"));
        const auto ep = lot(x3, {"0.46", "0.22", "0.32"});
        const auto eq = lot(x3, {"0.34", "0.16", "0.50"});
        record("mix((0.7,0.3,0),(0.1,0.1,0.8),0.6)", json::lottery_to_json(ep), json::lottery_to_json(mp), near(mp, ep));
        record("mix((0.5,0.2,0.3),(0.1,0.1,0.8),0.6)", json::lottery_to_json(eq), json::lottery_to_json(mq), near(mq, eq));
    }
    {
        const UtilityFunction<S> u(x3, {s("10"), s("5"), s("0")});
        const S eu = expected_utility(lot(x3, {"0.5", "0.3", "0.2"}), u);
        record("EU((0.5,0.3,0.2),(10,5,0))", json::scalar_to_json(s("6.5")), json::scalar_to_json(eu),
               abs_value<S>(eu - s("6.5")) <= ScalarTraits<S>::sum_tolerance());
    }
    {
        const OutcomeSpace x2({"x1", "x2"});
        UtilityOracle<S> o(UtilityFunction<S>(x2, {s("1"), s("0")}));
        const auto p = lot(x2, {"1", "0"});
        const auto q = lot(x2, {"0.6", "0.4"});
        const auto r = lot(x2, {"0", "1"});
        const bool upper = compare(o, mix(p, r, s("0.7")), q) == Comparison::prefer_first;
        const bool lower = compare(o, q, mix(p, r, s("0.5"))) == Comparison::prefer_first;
        record("continuity sandwich alpha=0.7, beta=0.5", Json{{"upper", true}, {"lower", true}},
               Json{{"upper", upper}, {"lower", lower}}, upper && lower);
        const auto w = probe_continuity(o, p, q, r);
        record("continuity witness search", "verified witnesses", json::continuity_to_json(w), true);
    }
    const OutcomeSpace cities({"Paris", "Rome", "village"});
    const UtilityFunction<S> u(cities, {s("1"), s("0.7"), s("0")});
    {
        const UtilityFunction<S> v(cities, {s("3"), s("2.1"), s("0")});
        const auto r = recover_affine(u, v);
        const bool pass = abs_value<S>(r.transform.alpha - s("3")) <= s("1e-9") && abs_value<S>(r.transform.beta) <= s("1e-9");
        record("recover_affine((1,0.7,0),(3,2.1,0))", Json{{"alpha", json::scalar_to_json(s("3"))}, {"beta", json::scalar_to_json(s("0"))}},
               json::affine_to_json(r), pass);
    }
    {
        UtilityOracle<S> o(u);
        const auto e = elicit_utility(o, cities, opt.tol, opt.max_iter);
        bool pass = true;
        for (std::size_t i = 0; i < 3; ++i) {
            pass = pass && ScalarTraits<S>::to_double(abs_value<S>(e.utility[i] - u[i])) <= opt.tol;
        }
        record("elicit Paris/Rome/village", json::utility_to_json(u).at("utility"), json::elicitation_to_json(e), pass);
        if (opt.plot) {
            std::vector<double> values;
            for (const auto& x : e.utility.values()) values.push_back(ScalarTraits<S>::to_double(x));
            err << plot_utility(cities.labels(), values);
        }
    }

    Json report = header<S>(opt);
    report["verdict"] = ok ? "pass" : "fail";
    report["checks"] = std::move(checks);
    emit(out, report);
    return ok ? kSuccess : kFail;
}

template <Scalar S>
int dispatch(const Options& opt, std::ostream& out, std::ostream& err, bool tol_given) {
    const std::string& c = opt.command;
    if (c == "elicit") return cmd_elicit<S>(opt, out, err);
    if (c == "check-axioms") return cmd_check_axioms<S>(opt, out, err);
    if (c == "check-claims") return cmd_check_claims<S>(opt, out, err);
    if (c == "verify-representation") return cmd_verify_representation<S>(opt, out, err);
    if (c == "recover-affine") return cmd_recover_affine<S>(opt, out, err, tol_given);
    if (c == "validate-dataset") return cmd_validate_dataset<S>(opt, out, err);
    if (c == "fit-model") return cmd_fit_model<S>(opt, out, err);
    if (c == "demo") return cmd_demo<S>(opt, out, err);
    throw UsageError("unknown command '" + c + "'");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Options opt;
    CLI::App app{"Expected-utility toolkit: lotteries, axiom checks, elicitation, affine recovery, datasets",
                 "vnm"};
    app.require_subcommand(1);
    app.fallthrough();

    app.add_option("--mode", opt.mode, "Arithmetic mode")->check(CLI::IsMember({"rational", "float"}));
    app.add_option("--seed", opt.seed, "Seed for every random draw");
    auto* tol_opt = app.add_option("--tol", opt.tol, "Bisection / comparison tolerance")->check(CLI::PositiveNumber);
    app.add_option("--sample", opt.sample, "Sample size")->check(CLI::PositiveNumber);
    app.add_option("--margin", opt.margin, "Fit margin")->check(CLI::PositiveNumber);
    app.add_option("--max-iter", opt.max_iter, "Bisection iteration cap")->check(CLI::PositiveNumber);
    app.add_option("--max-epochs", opt.max_epochs, "Fitting epoch cap")->check(CLI::PositiveNumber);
    app.add_option("--oracle-utility", opt.oracle_utility, "Utility JSON defining an in-process oracle");
    app.add_option("--oracle-cmd", opt.oracle_cmd, "External comparator command (JSON line protocol)");
    app.add_option("--space", opt.space, "Outcome labels for --oracle-cmd")->delimiter(',');
    app.add_flag("--plot", opt.plot, "Print a text plot of utilities to stderr");

    app.add_subcommand("elicit", "Elicit a normalized utility from an oracle");
    app.add_subcommand("check-axioms", "Check order, independence and continuity on random samples");
    app.add_subcommand("check-claims", "Check the mixture claims I-V on random samples");
    auto* vr = app.add_subcommand("verify-representation", "Check that a utility represents an oracle");
    vr->add_option("--u", opt.u_path, "Utility JSON");
    auto* ra = app.add_subcommand("recover-affine", "Recover v = alpha u + beta");
    ra->add_option("--u", opt.u_path, "Utility JSON")->required();
    ra->add_option("--v", opt.v_path, "Utility JSON")->required();
    auto* vd = app.add_subcommand("validate-dataset", "Check a preference dataset for contradictions and cycles");
    vd->add_option("dataset", opt.input, "Dataset JSON")->required();
    auto* fm = app.add_subcommand("fit-model", "Fit a reward model to a preference dataset");
    fm->add_option("dataset", opt.input, "Dataset JSON")->required();
    app.add_subcommand("demo", "Reproduce and check the worked examples");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kUsage;
    }
    opt.command = app.get_subcommands().front()->get_name();
    const bool tol_given = tol_opt->count() > 0;

    try {
        if (opt.mode == "float") return dispatch<double>(opt, out, err, tol_given);
        return dispatch<Rational>(opt, out, err, tol_given);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const Error& e) {
        if (e.code() == ErrorCode::parse_error || e.code() == ErrorCode::length_mismatch ||
            e.code() == ErrorCode::negative_probability || e.code() == ErrorCode::sum_not_one ||
            e.code() == ErrorCode::unknown_outcome || e.code() == ErrorCode::space_mismatch) {
            err << "input error: " << e.what() << '\n';
            return kUsage;
        }
        Json report{{"command", opt.command}, {"mode", opt.mode}, {"seed", opt.seed}, {"verdict", "fail"},
                    {"error", to_string(e.code())}, {"message", e.what()}};
        emit(out, report);
        return kFail;
    }
}

}  // namespace vnm::cli
