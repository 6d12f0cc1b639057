#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "finite_group.hpp"
#include "free_words.hpp"
#include "norms.hpp"
#include "probe.hpp"
#include "rational.hpp"
#include "witness.hpp"

namespace wordnorm {

// Input files are line based: '#' starts a comment, [name] opens a section,
// and "key = value" adds an entry to the open section.  Keys may repeat;
// entry order is meaningful (generator order, window order, factor order).

struct ConfigEntry {
    std::string key;
    std::string value;
    int line = 0;
};

struct ConfigSection {
    std::string name;
    int line = 0;
    std::vector<ConfigEntry> entries;

    const ConfigEntry* find(const std::string& key) const {
        for (const ConfigEntry& e : entries)
            if (e.key == key) return &e;
        return nullptr;
    }
    std::vector<const ConfigEntry*> all(const std::string& key) const {
        std::vector<const ConfigEntry*> out;
        for (const ConfigEntry& e : entries)
            if (e.key == key) out.push_back(&e);
        return out;
    }
    std::string get(const std::string& key) const {
        const ConfigEntry* e = find(key);
        if (!e)
            throw MalformedInputError("section [" + name + "] (line " + std::to_string(line) +
                                      ") is missing key '" + key + "'");
        return e->value;
    }
    std::string get_or(const std::string& key, const std::string& fallback) const {
        const ConfigEntry* e = find(key);
        return e ? e->value : fallback;
    }
};

namespace ioutil {

inline std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline long long parse_int(const std::string& text, int line) {
    std::size_t pos = 0;
    long long v = 0;
    try {
        v = std::stoll(text, &pos);
    } catch (const std::exception&) {
        pos = std::string::npos;
    }
    if (pos != text.size())
        throw MalformedInputError("line " + std::to_string(line) + ": '" + text +
                                  "' is not an integer");
    return v;
}

inline Rat parse_rat(const std::string& text, int line) {
    try {
        return rat_parse(text);
    } catch (const MalformedInputError& e) {
        throw MalformedInputError("line " + std::to_string(line) + ": " + e.what());
    }
}

inline bool parse_flag(const std::string& text, int line) {
    if (text == "yes" || text == "true") return true;
    if (text == "no" || text == "false") return false;
    throw MalformedInputError("line " + std::to_string(line) + ": '" + text +
                              "' is not yes/no");
}

inline std::string flag_str(bool b) { return b ? "yes" : "no"; }

} // namespace ioutil

inline std::vector<ConfigSection> parse_config(const std::string& text) {
    std::vector<ConfigSection> sections;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string s = raw;
        if (std::size_t hash = s.find('#'); hash != std::string::npos) s.resize(hash);
        s = ioutil::trim(s);
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']' || s.size() < 3)
                throw MalformedInputError("line " + std::to_string(line) +
                                          ": malformed section header '" + s + "'");
            sections.push_back({ioutil::trim(s.substr(1, s.size() - 2)), line, {}});
            continue;
        }
        std::size_t eq = s.find('=');
        if (eq == std::string::npos)
            throw MalformedInputError("line " + std::to_string(line) +
                                      ": expected 'key = value', got '" + s + "'");
        if (sections.empty())
            throw MalformedInputError("line " + std::to_string(line) +
                                      ": entry appears before any [section]");
        sections.back().entries.push_back(
            {ioutil::trim(s.substr(0, eq)), ioutil::trim(s.substr(eq + 1)), line});
    }
    return sections;
}

inline const ConfigSection* find_section(const std::vector<ConfigSection>& sections,
                                         const std::string& name) {
    for (const ConfigSection& s : sections)
        if (s.name == name) return &s;
    return nullptr;
}

inline const ConfigSection& require_section(const std::vector<ConfigSection>& sections,
                                            const std::string& name) {
    const ConfigSection* s = find_section(sections, name);
    if (!s) throw MalformedInputError("missing required section [" + name + "]");
    return *s;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw MalformedInputError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// A group or quotient spec: a degree and one 'gen = (cycles)' line per free
// generator, in generator order.
inline QuotientSpec load_spec(const ConfigSection& sec, std::size_t cap = kDefaultOrderCap) {
    const int degree = static_cast<int>(ioutil::parse_int(sec.get("degree"), sec.line));
    if (degree < 1)
        throw MalformedInputError("section [" + sec.name + "]: degree must be positive");
    std::vector<Perm> images;
    for (const ConfigEntry* e : sec.all("gen")) {
        try {
            images.push_back(parse_perm(e->value, degree));
        } catch (const MalformedInputError& ex) {
            throw MalformedInputError("line " + std::to_string(e->line) + ": " + ex.what());
        }
    }
    if (images.empty())
        throw MalformedInputError("section [" + sec.name + "] lists no generators");
    return make_spec(images, cap);
}

inline ReducedWord load_word(const std::string& text, int rank, int line) {
    try {
        return parse_word(text, rank);
    } catch (const MalformedInputError& e) {
        throw MalformedInputError("line " + std::to_string(line) + ": " + e.what());
    }
}

inline std::vector<ReducedWord> load_words(const ConfigSection& sec, const std::string& key,
                                           int rank) {
    std::vector<ReducedWord> out;
    for (const ConfigEntry* e : sec.all(key)) out.push_back(load_word(e->value, rank, e->line));
    return out;
}

// Either 'gen-word' base entries (closed under inverses and sorting here) or
// a verbatim 'closure-word' list whose order fixes certificate indices.
inline SymmetricWordSet load_generating_set(const ConfigSection& sec, int rank) {
    std::vector<ReducedWord> base = load_words(sec, "gen-word", rank);
    std::vector<ReducedWord> closed = load_words(sec, "closure-word", rank);
    if (!base.empty() && !closed.empty())
        throw MalformedInputError("section [" + sec.name +
                                  "] mixes gen-word and closure-word entries");
    if (!base.empty()) return symmetric_closure(base, rank);
    if (closed.empty())
        throw MalformedInputError("section [" + sec.name + "] lists no generating words");
    return SymmetricWordSet{rank, std::move(closed)};
}

inline ThresholdSet load_thresholds(const ConfigSection& sec) {
    const ConfigEntry* e = sec.find("thresholds");
    if (!e)
        throw MalformedInputError("section [" + sec.name + "] is missing key 'thresholds'");
    std::vector<Rat> values;
    std::istringstream in(e->value);
    std::string tok;
    while (in >> tok) values.push_back(ioutil::parse_rat(tok, e->line));
    return make_thresholds(std::move(values));
}

namespace ioutil {

inline KernelFactor load_factor(const std::string& text, int rank, int line) {
    std::istringstream in(text);
    std::string idx, sign;
    if (!(in >> idx >> sign) || (sign != "+" && sign != "-"))
        throw MalformedInputError("line " + std::to_string(line) +
                                  ": expected 'factor = <relator-index> <+|-> <conjugator>'");
    std::string rest;
    std::getline(in, rest);
    KernelFactor f;
    f.relator_index = static_cast<std::size_t>(parse_int(idx, line));
    f.inverted = sign == "-";
    f.conjugator = load_word(trim(rest).empty() ? "e" : trim(rest), rank, line);
    return f;
}

inline CertifiedKernelWord load_kernel_word(const ConfigSection& sec, int rank) {
    CertifiedKernelWord k;
    k.word = load_word(sec.get("word"), rank, sec.line);
    for (const ConfigEntry* e : sec.all("factor"))
        k.factors.push_back(load_factor(e->value, rank, e->line));
    return k;
}

} // namespace ioutil

// Probe problem: [problem] scalars, [set] generators, plus any number of
// [kernel-word] and [class-word] certificate sections.  Certificates are
// verified on load; a problem that does not check is a parse-level failure.
inline ProbeProblem load_problem(const std::vector<ConfigSection>& sections) {
    const ConfigSection& head = require_section(sections, "problem");
    ProbeProblem p;
    p.rank = static_cast<int>(ioutil::parse_int(head.get("rank"), head.line));
    if (p.rank < 1) throw MalformedInputError("problem rank must be positive");
    p.m = static_cast<int>(ioutil::parse_int(head.get_or("m", "0"), head.line));
    if (p.m < 0) throw MalformedInputError("problem m must be nonnegative");
    p.w = load_word(head.get_or("w", "e"), p.rank, head.line);
    p.s = load_generating_set(require_section(sections, "set"), p.rank);
    if (const ConfigSection* rel = find_section(sections, "relators"))
        p.relators = load_words(*rel, "word", p.rank);
    for (const ConfigSection& sec : sections) {
        if (sec.name == "kernel-word") {
            p.kernel_words.push_back(ioutil::load_kernel_word(sec, p.rank));
        } else if (sec.name == "class-word") {
            CertifiedClassWord c;
            c.word = load_word(sec.get("word"), p.rank, sec.line);
            c.s_index = static_cast<std::size_t>(
                ioutil::parse_int(sec.get("s-index"), sec.line));
            c.conjugator = load_word(sec.get_or("conjugator", "e"), p.rank, sec.line);
            c.tail.word = load_word(sec.get_or("tail-word", "e"), p.rank, sec.line);
            for (const ConfigEntry* e : sec.all("tail-factor"))
                c.tail.factors.push_back(ioutil::load_factor(e->value, p.rank, e->line));
            p.class_words.push_back(std::move(c));
        }
    }
    check_problem(p);
    return p;
}

inline std::vector<ReducedWord> load_window(const std::vector<ConfigSection>& sections,
                                            int rank) {
    const ConfigSection* sec = find_section(sections, "window");
    return sec ? load_words(*sec, "word", rank) : std::vector<ReducedWord>{};
}

// --- writers; every writer emits the exact format the loaders accept ---

inline void write_spec(std::ostream& out, const QuotientSpec& spec,
                       const std::string& section = "spec") {
    out << "[" << section << "]\n";
    out << "degree = " << (spec.images.empty() ? 0 : spec.images.front().degree()) << "\n";
    for (const Perm& g : spec.images) out << "gen = " << perm_str(g) << "\n";
}

inline void write_problem(std::ostream& out, const ProbeProblem& p) {
    out << "[problem]\n";
    out << "rank = " << p.rank << "\n";
    out << "m = " << p.m << "\n";
    out << "w = " << word_str(p.w) << "\n";
    out << "[set]\n";
    for (const ReducedWord& g : p.s.words) out << "closure-word = " << word_str(g) << "\n";
    if (!p.relators.empty()) {
        out << "[relators]\n";
        for (const ReducedWord& r : p.relators) out << "word = " << word_str(r) << "\n";
    }
    for (const CertifiedKernelWord& k : p.kernel_words) {
        out << "[kernel-word]\n";
        out << "word = " << word_str(k.word) << "\n";
        for (const KernelFactor& f : k.factors)
            out << "factor = " << f.relator_index << " " << (f.inverted ? "-" : "+") << " "
                << word_str(f.conjugator) << "\n";
    }
    for (const CertifiedClassWord& c : p.class_words) {
        out << "[class-word]\n";
        out << "word = " << word_str(c.word) << "\n";
        out << "s-index = " << c.s_index << "\n";
        out << "conjugator = " << word_str(c.conjugator) << "\n";
        out << "tail-word = " << word_str(c.tail.word) << "\n";
        for (const KernelFactor& f : c.tail.factors)
            out << "tail-factor = " << f.relator_index << " " << (f.inverted ? "-" : "+") << " "
                << word_str(f.conjugator) << "\n";
    }
}

inline void write_window(std::ostream& out, const std::vector<ReducedWord>& window) {
    if (window.empty()) return;
    out << "[window]\n";
    for (const ReducedWord& w : window) out << "word = " << word_str(w) << "\n";
}

// Everything a replay needs in one stream: problem, window, spec, and the
// observed outcome.
struct CertificateFile {
    ProbeProblem problem;
    std::vector<ReducedWord> window;
    SeparationCertificate certificate;
};

inline void write_certificate_file(std::ostream& out, const CertificateFile& file) {
    write_problem(out, file.problem);
    write_window(out, file.window);
    write_spec(out, file.certificate.spec);
    const SeparationCertificate& c = file.certificate;
    out << "[certificate]\n";
    out << "kind = " << probe_kind_str(c.kind) << "\n";
    out << "checked-set = " << c.checked_set << "\n";
    out << "verdict = " << verdict_str(c.verdict) << "\n";
    if (!c.reason.empty()) out << "reason = " << c.reason << "\n";
    out << "w-image = " << c.w_image << "\n";
    out << "set-ids =";
    for (int id : c.set_ids) out << " " << id;
    out << "\n";
    const auto put_opt = [&](const char* key, const std::optional<bool>& v) {
        if (v) out << key << " = " << ioutil::flag_str(*v) << "\n";
    };
    put_opt("dagger-excluded", c.dagger_excluded);
    put_opt("containment-consistent", c.containment_consistent);
    put_opt("partial-iso", c.partial_iso);
    put_opt("ball-separated", c.ball_separated);
}

inline CertificateFile read_certificate_file(const std::string& text,
                                             std::size_t cap = kDefaultOrderCap) {
    const std::vector<ConfigSection> sections = parse_config(text);
    CertificateFile file;
    file.problem = load_problem(sections);
    file.window = load_window(sections, file.problem.rank);
    const ConfigSection& cert = require_section(sections, "certificate");
    SeparationCertificate& c = file.certificate;
    c.spec = load_spec(require_section(sections, "spec"), cap);

    const std::string kind = cert.get("kind");
    if (kind == "rf-separation") c.kind = ProbeKind::rf_separation;
    else if (kind == "closure-product") c.kind = ProbeKind::closure_product;
    else if (kind == "lef-separation") c.kind = ProbeKind::lef_separation;
    else
        throw MalformedInputError("line " + std::to_string(cert.line) +
                                  ": unknown certificate kind '" + kind + "'");
    const std::string verdict = cert.get("verdict");
    if (verdict == "separated") c.verdict = SepVerdict::separated;
    else if (verdict == "contained") c.verdict = SepVerdict::contained;
    else if (verdict == "inconclusive") c.verdict = SepVerdict::inconclusive;
    else
        throw MalformedInputError("line " + std::to_string(cert.line) +
                                  ": unknown verdict '" + verdict + "'");

    c.checked_set = cert.get("checked-set");
    c.reason = cert.get_or("reason", "");
    c.w_image = static_cast<int>(ioutil::parse_int(cert.get("w-image"), cert.line));
    {
        const ConfigEntry* ids = cert.find("set-ids");
        if (!ids)
            throw MalformedInputError("section [certificate] is missing key 'set-ids'");
        std::istringstream in(ids->value);
        std::string tok;
        while (in >> tok)
            c.set_ids.push_back(static_cast<int>(ioutil::parse_int(tok, ids->line)));
    }
    const auto get_opt = [&](const char* key) -> std::optional<bool> {
        const ConfigEntry* e = cert.find(key);
        if (!e) return std::nullopt;
        return ioutil::parse_flag(e->value, e->line);
    };
    c.dagger_excluded = get_opt("dagger-excluded");
    c.containment_consistent = get_opt("containment-consistent");
    c.partial_iso = get_opt("partial-iso");
    c.ball_separated = get_opt("ball-separated");
    return file;
}

} // namespace wordnorm
