#pragma once

#include <algorithm>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "errors.hpp"
#include "finite_group.hpp"
#include "free_norm_bounds.hpp"
#include "free_words.hpp"
#include "io.hpp"
#include "norms.hpp"
#include "probe.hpp"
#include "rational.hpp"
#include "report.hpp"
#include "witness.hpp"

namespace wordnorm {

struct CliOptions {
    std::size_t cap_order = kDefaultOrderCap;
    std::size_t cap_ball = 1000000;
    SearchBudget budget;
    std::string format = "text";
    unsigned long long seed = 0;
};

namespace clidetail {

inline Perm full_cycle_perm(int n) {
    Perm p = perm_identity(n);
    for (int x = 0; x < n; ++x) p.img[static_cast<std::size_t>(x)] = (x + 1) % n;
    return p;
}

// Exit protocol: 0 carries a pass or a separation, 1 a mathematical failure
// or containment, 2 an inconclusive or exhausted run, 3 an input error.
inline int exit_code(Verdict v) {
    switch (v) {
    case Verdict::pass: return 0;
    case Verdict::fail: return 1;
    default: return 2;
    }
}

inline int exit_code(SepVerdict v) {
    switch (v) {
    case SepVerdict::separated: return 0;
    case SepVerdict::contained: return 1;
    default: return 2;
    }
}

inline void print_report(std::ostream& out, const WitnessReport& rep, bool records) {
    if (records) {
        out << "verdict=" << verdict_str(rep.verdict) << "\n";
        for (const auto& [k, v] : rep.params) out << "param." << k << "=" << v << "\n";
        for (std::size_t i = 0; i < rep.violations.size(); ++i) {
            const Violation& v = rep.violations[i];
            out << "violation." << i << "=" << v.condition << "|" << v.subject << "|"
                << v.measured << "|" << (v.soft ? "soft" : "hard") << "\n";
        }
        for (std::size_t i = 0; i < rep.notes.size(); ++i)
            out << "note." << i << "=" << rep.notes[i] << "\n";
        return;
    }
    out << "verdict: " << verdict_str(rep.verdict) << "\n";
    for (const auto& [k, v] : rep.params) out << "  " << k << " = " << v << "\n";
    for (const Violation& v : rep.violations)
        out << "violation: " << v.condition << " at " << v.subject << " (" << v.measured << ")"
            << (v.soft ? " [soft]" : "") << "\n";
    for (const std::string& n : rep.notes) out << "note: " << n << "\n";
}

inline void print_table(std::ostream& out, const NormTable& t, bool records,
                        const std::string& label = "table") {
    std::string values;
    for (const Rat& v : t.values) values += (values.empty() ? "" : " ") + rat_str(v);
    if (records) {
        out << label << ".order=" << t.group->order() << "\n";
        out << label << ".domain=" << t.domain.str() << "\n";
        out << label << ".values=" << values << "\n";
        return;
    }
    out << label << " over group of order " << t.group->order() << " (" << t.domain.str()
        << ")\n";
    out << "values: " << values << "\n";
}

inline std::vector<Rat> parse_rat_list(const std::string& text) {
    std::vector<Rat> out;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) out.push_back(rat_parse(tok));
    return out;
}

// Map rows are written "word => image-id : norm" with "?" for a missing norm.
inline void parse_map_entry(const std::string& text, int line, int rank, PartialMap& m) {
    const std::size_t arrow = text.find("=>");
    if (arrow == std::string::npos)
        throw MalformedInputError("line " + std::to_string(line) +
                                  ": expected 'entry = word => image-id : norm'");
    const std::size_t colon = text.find(':', arrow + 2);
    if (colon == std::string::npos)
        throw MalformedInputError("line " + std::to_string(line) +
                                  ": expected 'entry = word => image-id : norm'");
    m.word_domain.push_back(load_word(ioutil::trim(text.substr(0, arrow)), rank, line));
    m.images.push_back(static_cast<int>(
        ioutil::parse_int(ioutil::trim(text.substr(arrow + 2, colon - arrow - 2)), line)));
    const std::string norm = ioutil::trim(text.substr(colon + 1));
    if (norm == "?") m.source_norms.push_back(std::nullopt);
    else m.source_norms.push_back(ioutil::parse_rat(norm, line));
}

inline void print_map(std::ostream& out, const PartialMap& m, bool records) {
    for (std::size_t i = 0; i < m.size(); ++i) {
        const std::string norm =
            m.source_norms.empty() || !m.source_norms[i] ? "?" : rat_str(*m.source_norms[i]);
        if (records)
            out << "map." << i << "=" << word_str(m.word_domain[i]) << " => " << m.images[i]
                << " : " << norm << "\n";
        else
            out << "entry = " << word_str(m.word_domain[i]) << " => " << m.images[i] << " : "
                << norm << "\n";
    }
}

inline NormTable group_word_norm(const QuotientSpec& spec, bool invariant, bool pad) {
    return word_norm(spec.image, make_set(spec.image, spec.image->generator_ids()), invariant,
                     pad);
}

inline int do_norm(const std::vector<ConfigSection>& sections, const CliOptions& opt,
                   bool invariant, bool pad, const std::string& weights, std::ostream& out) {
    QuotientSpec spec = load_spec(require_section(sections, "group"), opt.cap_order);
    NormTable t;
    if (weights.empty()) {
        t = group_word_norm(spec, invariant, pad);
    } else {
        const std::vector<Rat> w = parse_rat_list(weights);
        const std::vector<int> gen_ids = spec.image->generator_ids();
        if (w.size() != gen_ids.size())
            throw MalformedInputError("got " + std::to_string(w.size()) + " weights for " +
                                      std::to_string(gen_ids.size()) + " generators");
        WeightedGenSet gens{spec.image, {}};
        for (std::size_t i = 0; i < w.size(); ++i) gens.entries.push_back({gen_ids[i], w[i]});
        t = weighted_word_norm(spec.image, gens, invariant, pad);
    }
    const bool records = opt.format == "records";
    print_table(out, t, records, "norm");
    WitnessReport rep = validate_norm(t, true, invariant);
    print_report(out, rep, records);
    return exit_code(rep.verdict);
}

inline int do_quotient_norm(const std::vector<ConfigSection>& sections, const CliOptions& opt,
                            std::ostream& out) {
    QuotientSpec spec = load_spec(require_section(sections, "group"), opt.cap_order);
    NormTable t = group_word_norm(spec, true, false);
    std::vector<int> seeds;
    for (const ReducedWord& w :
         load_words(require_section(sections, "kernel"), "word", spec.rank))
        seeds.push_back(apply_word(spec, w));
    QuotientNorm q = quotient_norm(t, normal_closure(spec.image, seeds));
    const bool records = opt.format == "records";
    if (records) out << "kernel.order=" << q.cosets.kernel.count << "\n";
    else out << "kernel order: " << q.cosets.kernel.count << "\n";
    print_table(out, q.table, records, "quotient-norm");
    WitnessReport rep = validate_norm(q.table, true, true);
    print_report(out, rep, records);
    return exit_code(rep.verdict);
}

inline int do_round(const std::vector<ConfigSection>& sections, const CliOptions& opt,
                    std::ostream& out) {
    QuotientSpec spec = load_spec(require_section(sections, "group"), opt.cap_order);
    const ConfigSection& sec = require_section(sections, "table");
    NormTable t{spec.image, parse_rat_list(sec.get("values")), ValueDomain::rationals()};
    NormTable rounded = round_norm(t);
    const bool records = opt.format == "records";
    print_table(out, rounded, records, "rounded");
    return 0;
}

inline int do_chain(const std::vector<ConfigSection>& sections, const CliOptions& opt,
                    std::ostream& out) {
    const ConfigSection& sec = require_section(sections, "chain");
    std::vector<QuotientSpec> chain;
    {
        std::istringstream in(sec.get("orders"));
        std::string tok;
        while (in >> tok) {
            const long long n = ioutil::parse_int(tok, sec.line);
            if (n < 1 || static_cast<std::size_t>(n) > opt.cap_order)
                throw MalformedInputError("chain order " + tok + " out of range");
            chain.push_back(make_spec({full_cycle_perm(static_cast<int>(n))}, opt.cap_order));
        }
    }
    const long long p = ioutil::parse_int(sec.get("p"), sec.line);
    const ReducedWord w = load_word(sec.get("word"), 1, sec.line);
    ChainNormResult r = chain_norm(chain, p, w);
    const bool records = opt.format == "records";
    if (records) {
        out << "chain.value=" << rat_str(r.value) << "\n";
        out << "chain.first-violated-level=" << r.first_violated_level << "\n";
    } else {
        out << "value: " << rat_str(r.value) << "\n";
        out << "first violated level: " << r.first_violated_level << "\n";
    }
    if (r.value == Rat(0) && !w.is_identity())
        out << (records ? "note.0=" : "note: ")
            << "value 0 at finite depth certifies only membership in every listed kernel, "
               "not identity\n";
    return 0;
}

inline int do_ball(const std::vector<ConfigSection>& sections, const CliOptions& opt,
                   const std::string& radius, int center, bool strict, std::ostream& out) {
    QuotientSpec spec = load_spec(require_section(sections, "group"), opt.cap_order);
    NormTable t;
    if (const ConfigSection* table = find_section(sections, "table"))
        t = NormTable{spec.image, parse_rat_list(table->get("values")),
                      ValueDomain::rationals()};
    else t = group_word_norm(spec, true, false);
    if (center < 0 || center >= spec.image->order())
        throw MalformedInputError("center id " + std::to_string(center) +
                                  " is outside the group");
    ElementSet b = ball(t, rat_parse(radius), center, strict);
    if (static_cast<std::size_t>(b.count) > opt.cap_ball)
        throw ResourceLimitError("ball holds " + std::to_string(b.count) +
                                 " elements, over the cap of " + std::to_string(opt.cap_ball));
    const bool records = opt.format == "records";
    std::string ids;
    for (int id : b.ids()) ids += (ids.empty() ? "" : " ") + std::to_string(id);
    if (records) {
        out << "ball.count=" << b.count << "\n";
        out << "ball.ids=" << ids << "\n";
    } else {
        out << "count: " << b.count << "\n";
        out << "ids: " << ids << "\n";
    }
    return 0;
}

inline int do_estimate(const std::vector<ConfigSection>& sections, const CliOptions& opt,
                       std::ostream& out) {
    const ConfigSection& head = require_section(sections, "free");
    const int rank = static_cast<int>(ioutil::parse_int(head.get("rank"), head.line));
    SymmetricWordSet s = load_generating_set(require_section(sections, "set"), rank);
    std::vector<ReducedWord> relators;
    if (const ConfigSection* rel = find_section(sections, "relators"))
        relators = load_words(*rel, "word", rank);
    std::vector<QuotientSpec> probes;
    for (const ConfigSection& sec : sections)
        if (sec.name == "probe") probes.push_back(load_spec(sec, opt.cap_order));
    const ConfigSection& query = require_section(sections, "query");
    const ReducedWord w = load_word(query.get("word"), rank, query.line);

    NormBound b = estimate_norm(w, s, opt.budget, probes, relators);
    const bool records = opt.format == "records";
    const std::string upper = b.upper ? std::to_string(*b.upper) : "unknown";
    if (records) {
        out << "bound.lower=" << b.lower << "\n";
        out << "bound.lower-witness=" << b.certificate_low << "\n";
        out << "bound.upper=" << upper << "\n";
        out << "bound.exact=" << ioutil::flag_str(b.exact()) << "\n";
    } else {
        out << "lower: " << b.lower << " (" << b.certificate_low << ")\n";
        out << "upper: " << upper << "\n";
        out << "exact: " << ioutil::flag_str(b.exact()) << "\n";
    }
    for (std::size_t i = 0; i < b.certificate_up.size(); ++i)
        out << (records ? "factor." + std::to_string(i) + "=" : "factor: ")
            << word_str(b.certificate_up[i].first) << " ^ "
            << word_str(b.certificate_up[i].second) << "\n";
    for (std::size_t i = 0; i < b.kernel_certificate.size(); ++i)
        out << (records ? "kernel-factor." + std::to_string(i) + "=" : "kernel factor: ")
            << word_str(b.kernel_certificate[i].first) << " ^ "
            << word_str(b.kernel_certificate[i].second) << "\n";
    if (b.representative)
        out << (records ? "representative=" : "representative: ") << word_str(*b.representative)
            << "\n";
    return b.exact() ? 0 : 2;
}

inline int do_check_witness(const std::vector<ConfigSection>& sections, const CliOptions& opt,
                            std::ostream& out) {
    QuotientSpec spec = load_spec(require_section(sections, "target"), opt.cap_order);
    bool invariant = true;
    bool pad = false;
    if (const ConfigSection* norm = find_section(sections, "norm")) {
        invariant = ioutil::parse_flag(norm->get_or("invariant", "yes"), norm->line);
        pad = ioutil::parse_flag(norm->get_or("pad", "no"), norm->line);
    }
    NormTable lc = group_word_norm(spec, invariant, pad);

    const ConfigSection& map_sec = require_section(sections, "map");
    const int rank = static_cast<int>(ioutil::parse_int(map_sec.get("rank"), map_sec.line));
    PartialMap m;
    m.target = spec.image;
    for (const ConfigEntry* e : map_sec.all("entry"))
        parse_map_entry(e->value, e->line, rank, m);

    const ConfigSection& check = require_section(sections, "check");
    const std::string kind = check.get("kind");
    WitnessReport rep;
    if (kind == "mws") {
        const Rat eps = ioutil::parse_rat(check.get("epsilon"), check.line);
        const std::string mode = check.get_or("mode", "metric");
        if (mode == "metric") {
            rep = check_mws_witness(m, eps, lc, ApproxMode::metric);
        } else if (mode == "gr") {
            rep = check_mws_witness(m, eps, lc, ApproxMode::gr,
                                    ioutil::parse_rat(check.get("r"), check.line));
        } else {
            throw MalformedInputError("line " + std::to_string(check.line) +
                                      ": unknown mode '" + mode + "'");
        }
    } else if (kind == "almost") {
        rep = check_almost_hom(m, load_thresholds(check), lc);
    } else if (kind == "lef") {
        const bool hom = ioutil::parse_flag(check.get_or("hom-required", "no"), check.line);
        const bool weak = ioutil::parse_flag(check.get_or("weak-inequality", "no"), check.line);
        std::vector<ReducedWord> relators;
        if (const ConfigSection* rel = find_section(sections, "relators"))
            relators = load_words(*rel, "word", rank);
        rep = check_lef_witness(m, load_thresholds(check), lc, hom, weak,
                                hom ? std::optional<QuotientSpec>(spec) : std::nullopt,
                                relators);
    } else {
        throw MalformedInputError("line " + std::to_string(check.line) +
                                  ": unknown witness kind '" + kind + "'");
    }
    print_report(out, rep, opt.format == "records");
    return exit_code(rep.verdict);
}

inline int do_build_lef(const std::vector<ConfigSection>& sections, const CliOptions& opt,
                        std::ostream& out) {
    const ConfigSection& head = require_section(sections, "free");
    const int rank = static_cast<int>(ioutil::parse_int(head.get("rank"), head.line));
    SymmetricWordSet s = load_generating_set(require_section(sections, "set"), rank);
    std::vector<ReducedWord> relators;
    if (const ConfigSection* rel = find_section(sections, "relators"))
        relators = load_words(*rel, "word", rank);
    const std::vector<ReducedWord> d = load_window(sections, rank);
    const ThresholdSet q = load_thresholds(require_section(sections, "check"));
    QuotientSpec spec = load_spec(require_section(sections, "target"), opt.cap_order);

    LefWitness lw = build_lef_witness(relators, s, d, q, spec, opt.budget);
    const bool records = opt.format == "records";
    print_table(out, lw.norm, records, "target-norm");
    print_map(out, lw.map, records);
    print_report(out, lw.report, records);
    return exit_code(lw.report.verdict);
}

inline int do_probe(const std::vector<ConfigSection>& sections, const CliOptions& opt,
                    ProbeKind kind, std::ostream& out) {
    CertificateFile file;
    file.problem = load_problem(sections);
    file.window = load_window(sections, file.problem.rank);
    QuotientSpec spec = load_spec(require_section(sections, "spec"), opt.cap_order);
    switch (kind) {
    case ProbeKind::rf_separation:
        file.certificate = separation_check_rf(file.problem, spec);
        break;
    case ProbeKind::closure_product:
        file.certificate = closure_product_check(file.problem, spec);
        break;
    case ProbeKind::lef_separation:
        file.certificate = lef_separation_check(file.problem, file.window, spec);
        break;
    }
    write_certificate_file(out, file);
    return exit_code(file.certificate.verdict);
}

inline int do_search(const std::vector<ConfigSection>& sections, const CliOptions& opt,
                     std::ostream& out) {
    ProbeProblem problem = load_problem(sections);
    const std::vector<ReducedWord> window = load_window(sections, problem.rank);
    const ConfigSection& search = require_section(sections, "search");
    const std::string goal_name = search.get("goal");
    ProbeGoal goal;
    if (goal_name == "rf-separation") goal = ProbeGoal::rf_separation;
    else if (goal_name == "lef-separation") goal = ProbeGoal::lef_separation;
    else if (goal_name == "product-membership-no") goal = ProbeGoal::product_membership_no;
    else if (goal_name == "lef-witness") goal = ProbeGoal::lef_witness;
    else
        throw MalformedInputError("line " + std::to_string(search.line) + ": unknown goal '" +
                                  goal_name + "'");
    ThresholdSet q{{Rat(0)}};
    if (search.find("thresholds")) q = load_thresholds(search);

    std::vector<QuotientSpec> catalog;
    if (const ConfigSection* cat = find_section(sections, "catalog")) {
        const auto range = [&](const std::string& key, auto build) {
            const ConfigEntry* e = cat->find(key);
            if (!e) return;
            std::istringstream in(e->value);
            long long lo = 0, hi = 0;
            if (!(in >> lo >> hi) || lo < 1 || hi < lo)
                throw MalformedInputError("line " + std::to_string(e->line) +
                                          ": expected '" + key + " = lo hi'");
            for (long long n = lo; n <= hi; ++n) catalog.push_back(build(static_cast<int>(n)));
        };
        range("cyclic-range", [&](int n) {
            return make_spec(std::vector<Perm>(static_cast<std::size_t>(problem.rank),
                                               full_cycle_perm(n)),
                             opt.cap_order);
        });
        range("cyclic-power-range", [&](int n) {
            std::vector<Perm> images;
            for (int i = 0; i < problem.rank; ++i) {
                Perm block = perm_identity(n * problem.rank);
                for (int x = 0; x < n; ++x)
                    block.img[static_cast<std::size_t>(i * n + x)] = i * n + (x + 1) % n;
                images.push_back(std::move(block));
            }
            return make_spec(images, opt.cap_order);
        });
    }
    for (const ConfigSection& sec : sections)
        if (sec.name == "spec") catalog.push_back(load_spec(sec, opt.cap_order));

    SearchOutcome run = quotient_search(problem, catalog, goal, window, q, opt.budget);
    const bool records = opt.format == "records";
    for (std::size_t i = 0; i < run.attempts.size(); ++i)
        out << (records ? "attempt." + std::to_string(i) + "=" : "attempt: ")
            << run.attempts[i] << "\n";
    if (!run.succeeded()) {
        out << (records ? "caveat=" : "caveat: ") << run.caveat << "\n";
        return 2;
    }
    out << (records ? "success-index=" : "success index: ") << run.success_index << "\n";
    if (run.witness) {
        print_table(out, run.witness->norm, records, "target-norm");
        print_map(out, run.witness->map, records);
        print_report(out, run.witness->report, records);
    } else {
        write_certificate_file(out, {problem, window, *run.certificate});
    }
    return 0;
}

inline int do_verify(const std::string& text, const CliOptions& opt, std::ostream& out) {
    CertificateFile file = read_certificate_file(text, opt.cap_order);
    const bool ok = verify_certificate(file.problem, file.certificate, file.window);
    out << (opt.format == "records" ? "replay=" : "replay: ")
        << (ok ? "consistent" : "mismatch") << "\n";
    return ok ? 0 : 1;
}

} // namespace clidetail

// Full command surface; returns the exit code and writes only to the given
// streams so callers can capture output byte for byte.
inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"conjugacy-invariant group norms, witnesses, and finite-quotient probes"};
    app.require_subcommand(1);

    CliOptions opt;
    app.add_option("--cap-order", opt.cap_order, "largest group order to enumerate")
        ->check(CLI::PositiveNumber);
    app.add_option("--cap-ball", opt.cap_ball, "largest ball cardinality to print")
        ->check(CLI::PositiveNumber);
    app.add_option("--budget-factors", opt.budget.max_factors, "factor-count search budget")
        ->check(CLI::PositiveNumber);
    app.add_option("--budget-conj", opt.budget.max_conj_len, "conjugator-length search budget")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"text", "records"}));
    app.add_option("--seed", opt.seed,
                   "accepted for interface stability; every subcommand is deterministic");

    std::string file;
    bool no_invariant = false, pad = false, strict = false;
    std::string weights, radius = "1";
    int center = 0;

    const auto add = [&](const char* name, const char* desc) {
        CLI::App* c = app.add_subcommand(name, desc);
        // Global options stay usable after the subcommand name.
        c->fallthrough();
        c->add_option("file", file, "input file")->required();
        return c;
    };
    CLI::App* norm_cmd = add("norm", "word norm of a finite group from its generators");
    norm_cmd->add_flag("--no-invariant", no_invariant, "plain generator word norm");
    norm_cmd->add_flag("--pad", pad, "pad elements outside the generated subgroup");
    norm_cmd->add_option("--weights", weights, "one positive rational per generator");
    CLI::App* quot_cmd = add("quotient-norm", "norm induced on a quotient by coset minima");
    CLI::App* round_cmd = add("round", "round a rational invariant norm to integers");
    CLI::App* chain_cmd = add("chain", "chain norm from a descending list of cyclic quotients");
    CLI::App* ball_cmd = add("ball", "elements within a norm radius");
    ball_cmd->add_option("--radius", radius, "ball radius (rational)");
    ball_cmd->add_option("--center", center, "center element id");
    ball_cmd->add_flag("--strict", strict, "strict inequality");
    CLI::App* est_cmd = add("estimate-free-norm", "certified bounds on a free-group word norm");
    CLI::App* wit_cmd = add("check-witness", "check an approximation witness");
    CLI::App* lef_cmd = add("build-lef", "build an embedding witness from a quotient");
    CLI::App* rf_cmd = add("probe-rf", "separation probe against a ball image");
    CLI::App* prod_cmd = add("probe-product", "class-product membership probe");
    CLI::App* plef_cmd = add("probe-lef", "separation probe with a partial-isomorphism window");
    CLI::App* search_cmd = add("search", "scan a quotient catalog for a goal");
    CLI::App* verify_cmd = add("verify", "replay a serialized certificate");

    std::reverse(args.begin(), args.end());
    try {
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 3;
    }

    try {
        const auto sections = [&] { return parse_config(read_file(file)); };
        if (norm_cmd->parsed())
            return clidetail::do_norm(sections(), opt, !no_invariant, pad, weights, out);
        if (quot_cmd->parsed()) return clidetail::do_quotient_norm(sections(), opt, out);
        if (round_cmd->parsed()) return clidetail::do_round(sections(), opt, out);
        if (chain_cmd->parsed()) return clidetail::do_chain(sections(), opt, out);
        if (ball_cmd->parsed())
            return clidetail::do_ball(sections(), opt, radius, center, strict, out);
        if (est_cmd->parsed()) return clidetail::do_estimate(sections(), opt, out);
        if (wit_cmd->parsed()) return clidetail::do_check_witness(sections(), opt, out);
        if (lef_cmd->parsed()) return clidetail::do_build_lef(sections(), opt, out);
        if (rf_cmd->parsed())
            return clidetail::do_probe(sections(), opt, ProbeKind::rf_separation, out);
        if (prod_cmd->parsed())
            return clidetail::do_probe(sections(), opt, ProbeKind::closure_product, out);
        if (plef_cmd->parsed())
            return clidetail::do_probe(sections(), opt, ProbeKind::lef_separation, out);
        if (search_cmd->parsed()) return clidetail::do_search(sections(), opt, out);
        if (verify_cmd->parsed()) return clidetail::do_verify(read_file(file), opt, out);
        err << "error: no command selected\n";
        return 3;
    } catch (const MalformedInputError& e) {
        err << "input error: " << e.what() << "\n";
        return 3;
    } catch (const ContractError& e) {
        err << "contract error: " << e.what() << "\n";
        return 3;
    } catch (const ResourceLimitError& e) {
        err << "resource limit: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    }
}

} // namespace wordnorm
