#include "cli.hpp"

#include "qacause/abduction.hpp"
#include "qacause/causality.hpp"
#include "qacause/constraints.hpp"
#include "qacause/delete_propagation.hpp"
#include "qacause/error.hpp"
#include "qacause/golden.hpp"
#include "qacause/vc_causality.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

namespace qacause::cli {

namespace {

using Json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string program, database, constraints, answer, tau, v, mode, format = "text";
    std::string extensional, hypotheses, observation;
    bool strict_vc = false, endogenous_only = false, all = false, reduction = false;
};

// Names the input file when an error escapes while reading it.
std::string reading;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw UsageError("cannot open " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

template <class F>
auto load(const std::string& path, F parse) {
    reading = path;
    auto out = parse(read_file(path));
    reading.clear();
    return out;
}

Program load_program(const Options& o) {
    if (o.program.empty())
        throw UsageError("missing -p program file");
    return load(o.program, [](const std::string& t) { return parse_program(t); });
}

Instance load_instance(const std::string& path) {
    if (path.empty())
        throw UsageError("missing -d database file");
    return load(path, [](const std::string& t) { return parse_instance(t); });
}

ConstraintSet load_constraints(const std::string& path) {
    if (path.empty())
        throw UsageError("missing -c constraints file");
    return load(path, [](const std::string& t) { return parse_constraints(t); });
}

bool json_output(const Options& o) { return o.format == "json"; }

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

Json tuple_json(const Tuple& t) {
    Json j = Json::array();
    for (const auto& c : t)
        j.push_back(c);
    return j;
}

Json ids_json(const TupleIdSet& ids) {
    Json j = Json::array();
    for (const auto& id : ids)
        j.push_back(id.str());
    return j;
}

Json family_json(const std::vector<TupleIdSet>& family) {
    Json j = Json::array();
    for (const auto& s : family)
        j.push_back(ids_json(s));
    return j;
}

std::string family_text(const std::vector<TupleIdSet>& family) {
    if (family.empty())
        return "-";
    std::string out;
    for (std::size_t i = 0; i < family.size(); ++i)
        out += (i ? " " : "") + format_ids(family[i]);
    return out;
}

std::string facts_text(const Instance& d, const TupleIdSet& ids) {
    std::string out;
    for (const auto& id : ids)
        out += (out.empty() ? "" : ", ") + d.fact(id).to_string();
    return out;
}

// Left-aligned columns separated by two spaces.
void print_table(std::ostream& out, const std::vector<std::vector<std::string>>& rows, std::string_view indent) {
    std::vector<std::size_t> width;
    for (const auto& r : rows)
        for (std::size_t i = 0; i < r.size(); ++i) {
            width.resize(std::max(width.size(), r.size()));
            width[i] = std::max(width[i], r[i].size());
        }
    for (const auto& r : rows) {
        std::string line(indent);
        for (std::size_t i = 0; i < r.size(); ++i) {
            line += r[i];
            if (i + 1 < r.size())
                line += std::string(width[i] - r[i].size() + 2, ' ');
        }
        out << line << '\n';
    }
}

// Answers to report on: the -a answer, the single Boolean answer, or all answers.
std::vector<Tuple> target_answers(const Program& p, const Instance& d, const Options& o) {
    if (!o.answer.empty() || p.is_boolean())
        return {parse_tuple(o.answer)};
    if (!o.tau.empty())
        throw UsageError("--tau needs an answer (-a) for a non-Boolean query");
    const AnswerSet all = evaluate(p, d);
    return {all.begin(), all.end()};
}

struct CauseRow {
    TupleId id;
    bool counterfactual;
    std::vector<TupleIdSet> contingencies;
    Responsibility responsibility;
};

Json cause_json(const Instance& d, const CauseRow& r) {
    Json j;
    j["id"] = r.id.str();
    j["fact"] = d.fact(r.id).to_string();
    j["counterfactual"] = r.counterfactual;
    j["min_contingency_size"] = r.responsibility.min_contingency_size();
    j["responsibility"] = r.responsibility.to_string();
    j["contingencies"] = family_json(r.contingencies);
    return j;
}

void print_cause_rows(std::ostream& out, const Instance& d, const std::vector<CauseRow>& rows) {
    std::vector<std::vector<std::string>> table{
        {"id", "fact", "counterfactual", "min|G|", "responsibility", "contingencies"}};
    for (const auto& r : rows)
        table.push_back({r.id.str(), d.fact(r.id).to_string(), r.counterfactual ? "yes" : "no",
                         std::to_string(r.responsibility.min_contingency_size()), r.responsibility.to_string(),
                         family_text(r.contingencies)});
    print_table(out, table, "  ");
}

std::vector<CauseRow> rows_of(const CausalityReport& rep) {
    std::vector<CauseRow> rows;
    for (const auto& [id, e] : rep.entries)
        rows.push_back({id, e.counterfactual, e.contingencies.sets, e.responsibility});
    return rows;
}

std::vector<CauseRow> rows_of(const VcReport& rep) {
    std::vector<CauseRow> rows;
    for (const auto& [id, e] : rep.entries)
        rows.push_back({id, e.counterfactual, e.contingencies, e.responsibility});
    return rows;
}

// Tuple id membership, responsibility and the optional threshold test for one tuple.
struct TauVerdict {
    bool cause;
    bool counterfactual;
    Responsibility rho;
};

int print_tau(std::ostream& out, const Options& o, const Tuple& answer, const TupleId& tau, const TauVerdict& v,
              std::string_view kind) {
    std::optional<Rational> threshold;
    if (!o.v.empty())
        threshold = parse_rational(o.v);
    if (json_output(o)) {
        Json j;
        j["answer"] = tuple_json(answer);
        j["tau"] = tau.str();
        j[std::string(kind)] = v.cause;
        j["counterfactual"] = v.counterfactual;
        j["responsibility"] = v.rho.to_string();
        if (threshold) {
            j["v"] = format_rational(*threshold);
            j["responsibility_exceeds_v"] = v.rho.value() > *threshold;
        }
        emit(out, j);
        return 0;
    }
    out << "answer " << format_tuple(answer) << ", tuple " << tau.str() << '\n';
    out << "  " << kind << ": " << (v.cause ? "yes" : "no") << '\n';
    out << "  counterfactual: " << (v.counterfactual ? "yes" : "no") << '\n';
    out << "  responsibility: " << v.rho.to_string() << '\n';
    if (threshold)
        out << "  responsibility > " << format_rational(*threshold) << ": "
            << (v.rho.value() > *threshold ? "yes" : "no") << '\n';
    return 0;
}

// ---------------------------------------------------------------------------

int cmd_eval(const Options& o, std::ostream& out) {
    const Program p = load_program(o);
    const Instance d = load_instance(o.database);
    if (!o.answer.empty()) {
        const bool h = holds(p, d, parse_tuple(o.answer));
        if (json_output(o))
            emit(out, Json{{"answer", tuple_json(parse_tuple(o.answer))}, {"holds", h}});
        else
            out << (h ? "true" : "false") << '\n';
        return 0;
    }
    const AnswerSet answers = evaluate(p, d);
    if (json_output(o)) {
        Json j = Json::array();
        for (const auto& t : answers)
            j.push_back(tuple_json(t));
        emit(out, Json{{"answers", j}});
    } else if (p.is_boolean()) {
        out << (answers.empty() ? "false" : "true") << '\n';
    } else {
        for (const auto& t : answers)
            out << format_tuple(t) << '\n';
    }
    return 0;
}

int cmd_causes(const Options& o, std::ostream& out) {
    const Program p = load_program(o);
    const Instance d = load_instance(o.database);
    const auto answers = target_answers(p, d, o);

    if (!o.tau.empty()) {
        const CauseAnalysis a(p, d, answers.front());
        const TupleId tau(o.tau);
        const Responsibility rho = d.fact(tau).endogenous ? a.responsibility(tau) : Responsibility::none();
        return print_tau(out, o, answers.front(), tau, {!rho.is_zero(), rho.is_counterfactual(), rho}, "cause");
    }

    Json reports = Json::array();
    for (std::size_t i = 0; i < answers.size(); ++i) {
        const CausalityReport rep = CauseAnalysis(p, d, answers[i]).report();
        const auto rows = rows_of(rep);
        if (json_output(o)) {
            Json causes = Json::array();
            for (const auto& r : rows)
                causes.push_back(cause_json(d, r));
            reports.push_back(Json{{"answer", tuple_json(rep.answer)}, {"causes", causes}});
            continue;
        }
        if (i)
            out << '\n';
        out << "answer " << format_tuple(rep.answer) << ": " << rows.size() << (rows.size() == 1 ? " cause" : " causes")
            << '\n';
        if (!rows.empty())
            print_cause_rows(out, d, rows);
    }
    if (json_output(o))
        emit(out, Json{{"reports", reports}});
    return 0;
}

int cmd_vc_causes(const Options& o, std::ostream& out) {
    const Program p = load_program(o);
    const Instance d = load_instance(o.database);
    const VcMode mode = o.strict_vc ? VcMode::Strict : VcMode::Loose;
    const auto answers = target_answers(p, d, o);

    if (o.reduction) {
        if (answers.size() != 1)
            throw UsageError("--reduction needs an answer (-a)");
        const VcReduction r = vc_reduction(p, d, answers.front());
        if (json_output(o))
            emit(out, Json{{"view_predicate", r.view_predicate},
                           {"instance", format_instance(r.instance)},
                           {"constraints", format_constraints(r.sigma)}});
        else
            out << "# view predicate " << r.view_predicate << '\n'
                << format_instance(r.instance) << "# constraints\n"
                << format_constraints(r.sigma);
        return 0;
    }

    if (!o.tau.empty()) {
        const VcAnalysis a(p, d, answers.front(), mode);
        const TupleId tau(o.tau);
        const Responsibility rho = d.fact(tau).endogenous ? a.responsibility(tau) : Responsibility::none();
        return print_tau(out, o, answers.front(), tau, {!rho.is_zero(), rho.is_counterfactual(), rho}, "vc-cause");
    }

    const char* mode_name = mode == VcMode::Strict ? "strict" : "loose";
    Json reports = Json::array();
    for (std::size_t i = 0; i < answers.size(); ++i) {
        const VcReport rep = VcAnalysis(p, d, answers[i], mode).report();
        const auto rows = rows_of(rep);
        if (json_output(o)) {
            Json view = Json::array();
            for (const auto& t : rep.view.fixed_answers)
                view.push_back(tuple_json(t));
            Json causes = Json::array();
            for (const auto& r : rows)
                causes.push_back(cause_json(d, r));
            reports.push_back(Json{{"answer", tuple_json(rep.answer)},
                                   {"view_condition", view},
                                   {"mode", mode_name},
                                   {"vc_cause_exists", !rows.empty()},
                                   {"causes", causes}});
            continue;
        }
        if (i)
            out << '\n';
        std::string view;
        for (const auto& t : rep.view.fixed_answers)
            view += (view.empty() ? "" : ",") + format_tuple(t);
        out << "answer " << format_tuple(rep.answer) << ": " << rows.size()
            << (rows.size() == 1 ? " vc-cause" : " vc-causes") << " (" << mode_name << ")\n";
        out << "  view_condition: {" << view << "}\n";
        if (!rows.empty())
            print_cause_rows(out, d, rows);
    }
    if (json_output(o))
        emit(out, Json{{"reports", reports}});
    return 0;
}

int cmd_abduce(const Options& o, std::ostream& out) {
    const Program p = load_program(o);
    std::vector<Fact> e, hyp;
    std::optional<Instance> hyp_source;
    if (!o.database.empty()) {
        if (!o.extensional.empty() || !o.hypotheses.empty())
            throw UsageError("use either -d or -e/--hyp");
        const Instance d = load_instance(o.database);
        for (const auto& f : d.facts())
            (f.endogenous ? hyp : e).push_back(f);
        hyp_source = d;
    } else {
        if (o.hypotheses.empty())
            throw UsageError("abduce needs -d, or --hyp with an optional -e");
        if (!o.extensional.empty())
            e = load_instance(o.extensional).facts();
        hyp_source = load_instance(o.hypotheses);
        hyp = hyp_source->facts();
    }
    std::vector<GroundAtom> obs;
    if (!o.observation.empty())
        obs = parse_ground_atoms(o.observation);
    else if (p.is_boolean())
        obs = {GroundAtom{p.answer_predicate(), {}}};
    else
        throw UsageError("missing --obs for a non-Boolean program");

    const AbductionProblem ap = make_abduction_problem(p, e, hyp, obs);
    const auto sol = solve(ap);
    TupleIdSet rel;
    for (const auto& f : relevant(ap))
        rel.insert(f.id);
    std::optional<TupleIdSet> ness;
    if (!sol.empty()) {
        ness.emplace();
        for (const auto& f : necessary(ap))
            ness->insert(f.id);
    }
    std::string obs_text;
    for (const auto& g : obs)
        obs_text += (obs_text.empty() ? "" : ", ") + g.to_string();

    if (json_output(o)) {
        Json diagnoses = Json::array();
        for (const auto& dg : sol) {
            Json facts = Json::array();
            for (const auto& f : dg.delta)
                facts.push_back(f.to_string());
            diagnoses.push_back(Json{{"ids", ids_json(dg.ids())}, {"facts", facts}});
        }
        emit(out, Json{{"observation", obs_text},
                       {"diagnoses", diagnoses},
                       {"relevant", ids_json(rel)},
                       {"necessary", ness ? ids_json(*ness) : Json(nullptr)}});
        return 0;
    }
    out << "observation: " << obs_text << '\n';
    out << "diagnoses: " << sol.size() << '\n';
    std::vector<std::vector<std::string>> table;
    for (const auto& dg : sol)
        table.push_back({format_ids(dg.ids()), facts_text(*hyp_source, dg.ids())});
    print_table(out, table, "  ");
    out << "relevant: " << format_ids(rel) << '\n';
    out << "necessary: " << (ness ? format_ids(*ness) : "undefined (no diagnosis)") << '\n';
    return 0;
}

int cmd_ic_causes(const Options& o, std::ostream& out) {
    const Program p = load_program(o);
    const Instance d = load_instance(o.database);
    const ConstraintSet sigma = load_constraints(o.constraints);
    const auto answers = target_answers(p, d, o);

    if (!o.tau.empty()) {
        const IcCauseAnalysis a(p, d, answers.front(), sigma);
        const TupleId tau(o.tau);
        const Responsibility rho = d.fact(tau).endogenous ? a.responsibility(tau) : Responsibility::none();
        return print_tau(out, o, answers.front(), tau, {!rho.is_zero(), rho.is_counterfactual(), rho}, "cause");
    }

    Json reports = Json::array();
    for (std::size_t i = 0; i < answers.size(); ++i) {
        const CausalityReport rep = IcCauseAnalysis(p, d, answers[i], sigma).report();
        const auto rows = rows_of(rep);
        if (json_output(o)) {
            Json causes = Json::array();
            for (const auto& r : rows)
                causes.push_back(cause_json(d, r));
            reports.push_back(Json{{"answer", tuple_json(rep.answer)},
                                   {"responsibility_is_extension", true},
                                   {"causes", causes}});
            continue;
        }
        if (i)
            out << '\n';
        out << "answer " << format_tuple(rep.answer) << ": " << rows.size()
            << (rows.size() == 1 ? " cause" : " causes") << " under constraints\n";
        if (!rows.empty())
            print_cause_rows(out, d, rows);
    }
    if (json_output(o))
        emit(out, Json{{"reports", reports}});
    else
        out << "note: responsibility under constraints extends the unconstrained definition\n";
    return 0;
}

int cmd_delprop(const Options& o, std::ostream& out) {
    const Program p = load_program(o);
    const Instance d = load_instance(o.database);
    if (o.answer.empty() && !p.is_boolean())
        throw UsageError("delprop needs an answer (-a)");
    const Tuple answer = parse_tuple(o.answer);
    const DeletionScope scope = o.endogenous_only ? DeletionScope::EndogenousOnly : DeletionScope::AllFacts;
    const std::string mode = o.mode.empty() ? "min-source" : o.mode;

    auto print_family = [&](const std::vector<TupleIdSet>& family, std::string_view key) {
        if (json_output(o)) {
            emit(out, Json{{"answer", tuple_json(answer)}, {"mode", mode}, {std::string(key), family_json(family)}});
            return;
        }
        out << "answer " << format_tuple(answer) << ": " << family.size() << " " << key << '\n';
        std::vector<std::vector<std::string>> table;
        for (const auto& s : family)
            table.push_back({format_ids(s), facts_text(d, s)});
        print_table(out, table, "  ");
    };

    if (mode == "min-source") {
        print_family(min_source_side_effect(p, d, answer, scope), "deletions");
    } else if (mode == "side-effect-free" && o.all) {
        print_family(all_view_side_effect_free(p, d, answer, scope), "deletions");
    } else if (mode == "side-effect-free") {
        const auto best = view_side_effect_free(p, d, answer, scope);
        if (json_output(o)) {
            Json j{{"answer", tuple_json(answer)}, {"mode", mode}};
            j["deletion"] = best ? ids_json(best->deleted) : Json(nullptr);
            j["cardinality"] = best ? Json(best->cardinality) : Json(nullptr);
            emit(out, j);
        } else if (best) {
            out << "answer " << format_tuple(answer) << ": delete " << format_ids(best->deleted) << " (size "
                << best->cardinality << ")\n  " << facts_text(d, best->deleted) << '\n';
        } else {
            out << "answer " << format_tuple(answer) << ": no side-effect-free deletion\n";
        }
    } else if (mode == "decide") {
        const bool yes = decide_vsefp(p, d, answer, scope);
        if (json_output(o))
            emit(out, Json{{"answer", tuple_json(answer)}, {"mode", mode}, {"side_effect_free_exists", yes}});
        else
            out << (yes ? "true" : "false") << '\n';
    } else {
        throw UsageError("unknown --mode '" + mode + "' (min-source, side-effect-free, decide)");
    }
    return 0;
}

int cmd_check(const Options& o, std::ostream& out) {
    if (o.program.empty() && o.database.empty() && o.constraints.empty())
        throw UsageError("check needs at least one of -p, -d, -c");
    Json j;
    bool consistent = true;
    std::optional<Program> p;
    std::optional<Instance> d;
    if (!o.program.empty()) {
        p = load_program(o);
        j["program"] = Json{{"rules", p->rules().size()},
                            {"answer_predicate", p->answer_predicate()},
                            {"answer_arity", p->answer_arity()},
                            {"conjunctive", p->is_conjunctive()}};
    }
    if (!o.database.empty()) {
        d = load_instance(o.database);
        const auto endo = endogenous_ids(*d).size();
        j["instance"] = Json{{"facts", d->size()}, {"endogenous", endo}, {"exogenous", d->size() - endo}};
        if (p)
            j["answers"] = evaluate(*p, *d).size();
    }
    if (!o.constraints.empty()) {
        const ConstraintSet sigma = load_constraints(o.constraints);
        Json c{{"inds", sigma.inds.size()},
               {"fds", sigma.fds.size()},
               {"dcs", sigma.dcs.size()},
               {"views", sigma.views.size()}};
        if (d) {
            const auto v = violations(*d, sigma);
            consistent = v.empty();
            c["consistent"] = consistent;
            c["violations"] = v;
        }
        if (p && p->is_conjunctive() && !sigma.fds.empty()) {
            try {
                c["key_preserving"] = is_key_preserving(*p, sigma.fds);
            } catch (const Error&) {
                c["key_preserving"] = nullptr;
            }
        }
        j["constraints"] = c;
    }

    if (json_output(o)) {
        emit(out, j);
        return consistent ? 0 : 1;
    }
    if (j.contains("program")) {
        const auto& jp = j["program"];
        out << "program: " << jp["rules"].get<std::size_t>() << " rules, answer "
            << jp["answer_predicate"].get<std::string>() << "/" << jp["answer_arity"].get<std::size_t>()
            << (jp["conjunctive"].get<bool>() ? ", conjunctive" : "") << '\n';
    }
    if (j.contains("instance")) {
        const auto& ji = j["instance"];
        out << "instance: " << ji["facts"].get<std::size_t>() << " facts (" << ji["endogenous"].get<std::size_t>()
            << " endogenous, " << ji["exogenous"].get<std::size_t>() << " exogenous)\n";
    }
    if (j.contains("answers"))
        out << "answers: " << j["answers"].get<std::size_t>() << '\n';
    if (j.contains("constraints")) {
        const auto& jc = j["constraints"];
        out << "constraints: " << jc["inds"].get<std::size_t>() << " IND, " << jc["fds"].get<std::size_t>()
            << " FD/KEY, " << jc["dcs"].get<std::size_t>() << " DC, " << jc["views"].get<std::size_t>()
            << " VIEW\n";
        if (jc.contains("consistent")) {
            out << "consistent: " << (consistent ? "yes" : "no") << '\n';
            for (const auto& v : jc["violations"])
                out << "  violation: " << v.get<std::string>() << '\n';
        }
        if (jc.contains("key_preserving"))
            out << "key-preserving: "
                << (jc["key_preserving"].is_null() ? "n/a" : jc["key_preserving"].get<bool>() ? "yes" : "no")
                << '\n';
    }
    return consistent ? 0 : 1;
}

int cmd_examples(const Options& o, std::ostream& out) {
    const auto checks = golden::replay();
    const bool ok = std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
    if (json_output(o)) {
        Json j = Json::array();
        for (const auto& c : checks)
            j.push_back(Json{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
        emit(out, Json{{"checks", j}, {"passed", ok}});
    } else {
        for (const auto& c : checks)
            out << (c.passed ? "[PASS] " : "[FAIL] ") << c.name << ": " << c.detail << '\n';
    }
    return ok ? 0 : 1;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Causes, responsibility, abduction and delete propagation for monotone queries", "qacause"};
    app.require_subcommand(1);
    Options o;

    auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    };
    auto add_pd = [&](CLI::App* sub) {
        sub->add_option("-p,--program", o.program, "Datalog program file");
        sub->add_option("-d,--database", o.database, "Instance file");
    };
    auto add_answer = [&](CLI::App* sub) {
        sub->add_option("-a,--answer", o.answer, "Answer tuple, e.g. \"c,e\"");
    };
    auto add_tau = [&](CLI::App* sub) {
        sub->add_option("--tau", o.tau, "Tuple id for the decision problems");
        sub->add_option("--v", o.v, "Responsibility threshold, e.g. 1/3");
    };

    auto* eval = app.add_subcommand("eval", "Evaluate a query");
    add_pd(eval);
    add_answer(eval);
    add_format(eval);

    auto* causes = app.add_subcommand("causes", "Actual causes, contingencies and responsibility");
    add_pd(causes);
    add_answer(causes);
    add_tau(causes);
    add_format(causes);

    auto* vc = app.add_subcommand("vc-causes", "View-conditioned causes");
    add_pd(vc);
    add_answer(vc);
    add_tau(vc);
    vc->add_flag("--strict-vc", o.strict_vc, "Also keep the view fixed after the contingency deletion");
    vc->add_flag("--reduction", o.reduction, "Print the equivalent instance and constraints instead");
    add_format(vc);

    auto* abduce = app.add_subcommand("abduce", "Minimal abductive diagnoses");
    add_pd(abduce);
    abduce->add_option("-e,--extensional", o.extensional, "Extensional facts file");
    abduce->add_option("--hyp", o.hypotheses, "Hypotheses file");
    abduce->add_option("--obs", o.observation, "Observation, e.g. \"ans\" or \"P(c,e), S(a1)\"");
    add_format(abduce);

    auto* ic = app.add_subcommand("ic-causes", "Actual causes under integrity constraints");
    add_pd(ic);
    ic->add_option("-c,--constraints", o.constraints, "Constraint file");
    add_answer(ic);
    add_tau(ic);
    add_format(ic);

    auto* delprop = app.add_subcommand("delprop", "Delete propagation for one answer");
    add_pd(delprop);
    add_answer(delprop);
    delprop->add_option("--mode", o.mode, "min-source | side-effect-free | decide");
    delprop->add_flag("--endogenous-only", o.endogenous_only, "Only endogenous facts may be deleted");
    delprop->add_flag("--all", o.all, "List every minimal side-effect-free deletion");
    add_format(delprop);

    auto* check = app.add_subcommand("check", "Validate inputs and check constraint satisfaction");
    add_pd(check);
    check->add_option("-c,--constraints", o.constraints, "Constraint file");
    add_format(check);

    auto* examples = app.add_subcommand("examples", "Replay the built-in worked examples");
    add_format(examples);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (eval->parsed())
            return cmd_eval(o, out);
        if (causes->parsed())
            return cmd_causes(o, out);
        if (vc->parsed())
            return cmd_vc_causes(o, out);
        if (abduce->parsed())
            return cmd_abduce(o, out);
        if (ic->parsed())
            return cmd_ic_causes(o, out);
        if (delprop->parsed())
            return cmd_delprop(o, out);
        if (check->parsed())
            return cmd_check(o, out);
        return cmd_examples(o, out);
    } catch (const UsageError& e) {
        err << "qacause: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        err << "qacause: " << (reading.empty() ? "" : reading + ":") << e.what() << '\n';
        reading.clear();
        return is_parse_error(e.code()) ? 2 : 1;
    }
}

} // namespace qacause::cli
