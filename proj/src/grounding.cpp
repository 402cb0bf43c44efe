#include "ifol/grounding.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "ifol/error.hpp"

namespace ifol::grounding {

using syntax::Formula;
using syntax::FormulaKind;
using syntax::Predicate;
using syntax::Tense;
using syntax::Term;

std::string_view kind_name(ProcessKind k) {
    switch (k) {
        case ProcessKind::PR: return "PR";
        case ProcessKind::SDC: return "SDC";
        case ProcessKind::ML: return "ML";
    }
    return "?";
}

ProcessKind parse_kind(std::string_view s) {
    if (s == "PR") return ProcessKind::PR;
    if (s == "SDC") return ProcessKind::SDC;
    if (s == "ML") return ProcessKind::ML;
    throw ConstructionError("unknown process kind " + std::string(s));
}

Registry Registry::register_process(Process p) const {
    if (p.name.empty()) throw ConstructionError("process needs a name");
    if (processes_.count(p.name)) throw ConstructionError("process " + p.name + " is already registered");
    Registry out = *this;
    out.processes_.emplace(p.name, std::move(p));
    return out;
}

Registry Registry::bind_concept(const prp::Domain& d, prp::Concept u, const std::string& name) const {
    const auto& node = d.node(u);
    if (node.op != prp::ConceptOp::Atom) throw ConstructionError("only atomic concepts can be grounded");
    if (node.pred == worlds::kKnowPredicate || node.pred == syntax::kIdentityPredicate)
        throw ConstructionError(node.pred.str() + " cannot be grounded");
    if (!has_process(name)) throw ConstructionError("unknown process " + name);
    if (binding(u)) throw ConstructionError("concept is already grounded in " + *binding(u));
    Registry out = *this;
    out.bindings_.emplace_back(u, name);
    return out;
}

const Process& Registry::process(const std::string& name) const {
    auto it = processes_.find(name);
    if (it == processes_.end()) throw ConstructionError("unknown process " + name);
    return it->second;
}

std::optional<std::string> Registry::binding(prp::Concept u) const {
    for (const auto& [c, name] : bindings_)
        if (c == u) return name;
    return std::nullopt;
}

relalg::Relation run_grounding(prp::Domain& d, const Registry& reg, worlds::World& w, prp::Concept u) {
    auto name = reg.binding(u);
    if (!name) throw ConstructionError("concept " + d.name_of(u) + " is not grounded");
    relalg::Relation r = reg.process(*name).procedure(d, w, u);
    if (r.arity() != d.arity(u))
        throw ConstructionError("process " + *name + " produced arity " + std::to_string(r.arity()) +
                                " for a concept of arity " + std::to_string(d.arity(u)));
    w = worlds::set_base_extension(d, w, u, r);
    return r;
}

worlds::World materialize(prp::Domain& d, const Registry& reg, const worlds::World& w) {
    worlds::World out = w;
    for (const auto& [u, name] : reg.bindings()) run_grounding(d, reg, out, u);
    return out;
}

std::size_t Corpus::positives() const {
    return static_cast<std::size_t>(std::count_if(clips.begin(), clips.end(), [](const Clip& c) { return c.satisfies; }));
}

Corpus parse_corpus(std::string_view text) {
    Corpus out;
    std::set<std::string> seen;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        std::istringstream ls(line);
        std::string kw, id, label, extra;
        if (!(ls >> kw)) continue;
        if (kw != "clip") throw SyntaxError("expected 'clip'", lineno, 1);
        if (!(ls >> id >> label) || (ls >> extra)) throw SyntaxError("expected 'clip <id> satisfies=<bool>'", lineno, 1);
        if (label != "satisfies=true" && label != "satisfies=false")
            throw SyntaxError("bad label '" + label + "'", lineno, static_cast<int>(line.find(label)) + 1);
        if (!seen.insert(id).second) throw SyntaxError("duplicate clip " + id, lineno, 1);
        out.clips.push_back({id, label == "satisfies=true"});
    }
    return out;
}

Corpus load_corpus(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot read corpus " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_corpus(ss.str());
}

namespace {

relalg::Relation unary_clips(prp::Domain& d, prp::Concept u, const Corpus& corpus, bool only_positive) {
    if (d.arity(u) != 1) throw ConstructionError("corpus processes ground unary concepts only");
    relalg::Relation r(1);
    for (const auto& c : corpus.clips)
        if (!only_positive || c.satisfies) r.insert({d.particular(c.id)});
    return r;
}

}  // namespace

Registry builtin_registry(const Corpus& corpus) {
    Registry reg;
    reg = reg.register_process({"corpus.clips", ProcessKind::ML,
                                [corpus](prp::Domain& d, const worlds::World&, prp::Concept u) {
                                    return unary_clips(d, u, corpus, false);
                                }});
    reg = reg.register_process({"corpus.matches", ProcessKind::ML,
                                [corpus](prp::Domain& d, const worlds::World&, prp::Concept u) {
                                    return unary_clips(d, u, corpus, true);
                                }});
    reg = reg.register_process({"sdc.accept", ProcessKind::SDC,
                                [](prp::Domain& d, const worlds::World&, prp::Concept u) {
                                    if (d.arity(u) != 0) throw ConstructionError("sdc.accept grounds propositions");
                                    return relalg::Relation::truth(true);
                                }});
    reg = reg.register_process({"pr.none", ProcessKind::PR,
                                [](prp::Domain& d, const worlds::World&, prp::Concept u) {
                                    return relalg::Relation(d.arity(u));
                                }});
    return reg;
}

// ---------------------------------------------------------------------------

namespace {

std::string lower(std::string s) {
    for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

std::string trim(std::string s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    std::size_t i = 0;
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    return s.substr(i);
}

Predicate parse_pred(const std::string& s, int line) {
    auto slash = s.rfind('/');
    if (slash == std::string::npos || slash == 0) throw SyntaxError("expected <name>/<arity>, got " + s, line, 1);
    try {
        return {s.substr(0, slash), std::stoi(s.substr(slash + 1))};
    } catch (const std::exception&) {
        throw SyntaxError("bad arity in " + s, line, 1);
    }
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::string join(const std::vector<std::string>& words, std::size_t from, std::size_t to, const std::string& sep) {
    std::string out;
    for (std::size_t i = from; i < to; ++i) {
        if (i > from) out += sep;
        out += words[i];
    }
    return out;
}

bool is_determiner(const std::string& w) { return w == "the" || w == "a" || w == "an"; }
bool is_keyword(const std::string& w) { return w == "from" || w == "through" || w == "to"; }

}  // namespace

void Lexicon::load_sdc(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        std::istringstream ls(line);
        std::string kind, head;
        if (!(ls >> kind)) continue;
        if (!(ls >> head)) throw SyntaxError("missing word after " + kind, lineno, 1);
        std::map<std::string, std::string> kv;
        for (std::string tok; ls >> tok;) {
            auto eq = tok.find('=');
            if (eq == std::string::npos) throw SyntaxError("expected key=value, got " + tok, lineno, 1);
            kv[tok.substr(0, eq)] = tok.substr(eq + 1);
        }
        if (!kv.count("pred")) throw SyntaxError("missing pred=", lineno, 1);
        if (kind == "verb") {
            VerbTemplate v;
            v.lemma = head;
            v.pred = parse_pred(kv["pred"], lineno);
            for (Tense t : {Tense::Past, Tense::Present, Tense::Future}) {
                static const std::map<Tense, std::string> keys{
                    {Tense::Past, "past"}, {Tense::Present, "present"}, {Tense::Future, "future"}};
                if (kv.count(keys.at(t))) v.forms[t] = lower(kv[keys.at(t)]);
            }
            if (v.forms.empty()) throw SyntaxError("verb " + head + " has no forms", lineno, 1);
            if (kv.count("slots")) v.slots = split(kv["slots"], ',');
            if (static_cast<int>(v.slots.size()) != v.pred.arity)
                throw SyntaxError("slots do not match " + v.pred.str(), lineno, 1);
            v.imperative = kv.count("mode") && kv["mode"] == "imperative";
            v.agent = kv.count("agent") ? kv["agent"] : "";
            v.noun = kv.count("noun") ? kv["noun"] : "";
            verbs_.push_back(std::move(v));
        } else if (kind == "noun") {
            NounTemplate n{head, kv.count("plural") ? kv["plural"] : head + "s", parse_pred(kv["pred"], lineno)};
            nouns_.push_back(std::move(n));
        } else {
            throw SyntaxError("expected 'verb' or 'noun'", lineno, 1);
        }
    }
}

void Lexicon::load_nl(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty() || trim(line)[0] == '#') continue;
        auto eq = line.find(" =");
        if (eq == std::string::npos) throw SyntaxError("expected ' = '", lineno, 1);
        std::istringstream head(line.substr(0, eq));
        std::string pred, tense, mode, extra;
        if (!(head >> pred >> tense >> mode) || (head >> extra))
            throw SyntaxError("expected <name>/<arity> <tense|*> <open|ground>", lineno, 1);
        NLTemplate t;
        t.pred = parse_pred(pred, lineno);
        if (tense != "*") {
            auto parsed = syntax::parse_tense(tense);
            if (!parsed) throw SyntaxError("unknown tense " + tense, lineno, 1);
            t.tense = *parsed;
        }
        if (mode != "open" && mode != "ground") throw SyntaxError("mode must be open or ground", lineno, 1);
        t.open = mode == "open";
        t.text = trim(line.substr(eq + 2));
        nl_.push_back(std::move(t));
    }
}

void Lexicon::set_label(const syntax::AbstractedTerm& t, std::string text) {
    const std::string key = syntax::serialize(t);
    for (auto& [k, v] : labels_)
        if (k == key) {
            v = std::move(text);
            return;
        }
    labels_.emplace_back(key, std::move(text));
}

std::optional<std::string> Lexicon::label_of(const syntax::AbstractedTerm& t) const {
    const std::string key = syntax::serialize(t);
    for (const auto& [k, v] : labels_)
        if (k == key) return v;
    return std::nullopt;
}

std::optional<std::string> Lexicon::labelled(const std::string& text) const {
    for (const auto& [k, v] : labels_)
        if (v == text) return k;
    return std::nullopt;
}

const NLTemplate* Lexicon::find_nl(const Predicate& p, std::optional<Tense> tense, bool open) const {
    const NLTemplate* fallback = nullptr;
    for (const auto& t : nl_) {
        if (!(t.pred == p) || t.open != open) continue;
        if (t.tense && tense && *t.tense == *tense) return &t;
        if (!t.tense && !fallback) fallback = &t;
    }
    return fallback;
}

std::vector<std::string> words_of(std::string_view sentence) {
    std::vector<std::string> out;
    std::istringstream in{std::string(sentence)};
    for (std::string w; in >> w;) out.push_back(w);
    if (!out.empty() && out.back().size() > 1 && out.back().back() == '.') out.back().pop_back();
    else if (!out.empty() && out.back() == ".") out.pop_back();
    return out;
}

namespace {

struct VerbHit {
    const VerbTemplate* verb;
    Tense tense;
    std::size_t index;
};

std::optional<VerbHit> find_verb(const Lexicon& lex, const std::vector<std::string>& words, bool imperative) {
    for (std::size_t i = 0; i < words.size(); ++i)
        for (const auto& v : lex.verbs())
            if (v.imperative == imperative)
                for (const auto& [t, form] : v.forms)
                    if (lower(words[i]) == form) return VerbHit{&v, t, i};
    return std::nullopt;
}

}  // namespace

std::vector<SDC> chunk(const Lexicon& lex, const std::vector<std::string>& words) {
    auto hit = find_verb(lex, words, false);
    if (!hit) throw NotParseable("no known verb in '" + join(words, 0, words.size(), " ") + "'");
    std::size_t start = 0;
    while (start < hit->index && is_determiner(lower(words[start]))) ++start;
    std::vector<SDC> out;
    SDC first;
    if (start < hit->index) first.figure = lower(join(words, start, hit->index, "_"));
    first.verb = lower(words[hit->index]);
    std::size_t i = hit->index + 1;
    if (i < words.size() && !is_keyword(lower(words[i])))
        throw NotParseable("expected from/through/to after '" + words[hit->index] + "'");
    bool first_filled = false;
    while (i < words.size()) {
        std::size_t j = i + 1;
        while (j < words.size() && !is_keyword(lower(words[j]))) ++j;
        if (j == i + 1) throw NotParseable("spatial relation '" + words[i] + "' without a landmark");
        SDC* target = first_filled ? &out.emplace_back() : &first;
        target->spatial_relation = lower(words[i]);
        target->landmark = lower(join(words, i + 1, j, "_"));
        if (!first_filled) first_filled = true;
        i = j;
    }
    out.insert(out.begin(), first);
    return out;
}

namespace {

Formula pars_declarative(const Lexicon& lex, const std::vector<std::string>& words) {
    auto hit = find_verb(lex, words, false);
    if (!hit) throw NotParseable("no known verb in '" + join(words, 0, words.size(), " ") + "'");
    const auto sdcs = chunk(lex, words);
    std::map<std::string, std::string> relations;
    for (const auto& s : sdcs) {
        if (!s.spatial_relation) continue;
        if (!relations.emplace(*s.spatial_relation, *s.spatial_relation + "_" + *s.landmark).second)
            throw NotParseable("spatial relation '" + *s.spatial_relation + "' given twice");
    }
    std::vector<Term> args;
    std::set<std::string> used;
    for (const auto& slot : hit->verb->slots) {
        if (slot == "tense") {
            args.emplace_back(hit->tense);
        } else if (slot == "figure") {
            if (!sdcs.front().figure) throw NotParseable("sentence has no figure");
            args.push_back(Term::constant(*sdcs.front().figure));
        } else if (slot == "agent") {
            args.push_back(Term::constant(hit->verb->agent));
        } else if (is_keyword(slot)) {
            auto it = relations.find(slot);
            args.push_back(Term::constant(it == relations.end() ? "NULL" : it->second));
            used.insert(slot);
        } else {
            throw NotParseable("slot '" + slot + "' cannot be filled from a declarative sentence");
        }
    }
    for (const auto& [rel, _] : relations)
        if (!used.count(rel)) throw NotParseable("'" + hit->verb->lemma + "' takes no '" + rel + "' clause");
    return Formula::atom(hit->verb->pred, std::move(args));
}

Formula pars_imperative(const Lexicon& lex, const std::vector<std::string>& words, const VerbHit& hit) {
    const VerbTemplate& v = *hit.verb;
    const NounTemplate* noun = nullptr;
    for (const auto& n : lex.nouns())
        if (n.singular == v.noun) noun = &n;
    if (!noun) throw NotParseable("no noun template for '" + v.noun + "'");
    const std::vector<std::string> tail{"in", "the", "given", "set", "of", noun->plural};
    const std::size_t n = words.size();
    auto is = [&](std::size_t i, const std::string& w) { return i < n && lower(words[i]) == w; };
    if (n < 4 + tail.size() + 1 || !is(1, noun->singular) || !is(2, "such") || !is(3, "that"))
        throw NotParseable("expected '" + words[0] + " " + noun->singular + " such that ... in the given set of " +
                           noun->plural + "'");
    for (std::size_t k = 0; k < tail.size(); ++k)
        if (!is(n - tail.size() + k, tail[k]))
            throw NotParseable("expected 'in the given set of " + noun->plural + "' at the end");
    const std::vector<std::string> middle(words.begin() + 4, words.end() - static_cast<long>(tail.size()));
    syntax::AbstractionPtr requirement;
    if (auto key = lex.labelled(join(middle, 0, middle.size(), " "))) {
        requirement = syntax::parse_abstraction(*key);
    } else {
        requirement = syntax::abstract_all(pars(lex, middle));
    }
    std::vector<Term> args;
    for (const auto& slot : v.slots) {
        if (slot == "tense") args.emplace_back(hit.tense);
        else if (slot == "agent") args.push_back(Term::constant(v.agent));
        else if (slot == "object") args.push_back(Term::var("y"));
        else if (slot == "requirement") args.emplace_back(requirement);
        else throw NotParseable("slot '" + slot + "' cannot be filled from an imperative sentence");
    }
    Formula act = Formula::atom(v.pred, std::move(args));
    const auto& free = act.free_vars();
    auto pos = std::find(free.begin(), free.end(), syntax::Variable{"y"});
    if (pos == free.end()) throw NotParseable("template for '" + v.lemma + "' has no object slot");
    const int k = static_cast<int>(pos - free.begin()) + 1;
    return Formula::conj(act, Formula::atom(noun->pred, {Term::var("y")}), {{k, 1}});
}

}  // namespace

Formula pars(const Lexicon& lex, const std::vector<std::string>& words) {
    if (words.empty()) throw NotParseable("empty sentence");
    for (const auto& v : lex.verbs())
        if (v.imperative)
            for (const auto& [t, form] : v.forms)
                if (lower(words[0]) == form) return pars_imperative(lex, words, VerbHit{&v, t, 0});
    return pars_declarative(lex, words);
}

Formula pars(const Lexicon& lex, std::string_view sentence) { return pars(lex, words_of(sentence)); }

namespace {

std::string squeeze(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == ' ' && (out.empty() || out.back() == ' ')) continue;
        out += c;
    }
    while (!out.empty() && out.back() == ' ') out.pop_back();
    return out;
}

std::string spaced(std::string s) {
    std::replace(s.begin(), s.end(), '_', ' ');
    return s;
}

std::string render(const Lexicon& lex, const Formula& f);

std::string render_term(const Lexicon& lex, const Term& t) {
    if (t.is_variable()) return "?" + t.variable().name;
    if (t.is_constant()) return t.constant().name == "NULL" ? "" : spaced(t.constant().name);
    if (t.is_tense()) return spaced(std::string(syntax::tense_name(t.tense())));
    if (auto label = lex.label_of(t.abstraction())) return *label;
    return render(lex, t.abstraction().body());
}

bool open_atom(const Formula& f) {
    if (f.predicate() == worlds::kKnowPredicate) {
        const Term& content = f.args()[2];
        return !content.is_abstraction() || !content.abstraction().alpha().empty() || !content.is_ground();
    }
    return !f.is_sentence();
}

std::string render_atom(const Lexicon& lex, const Formula& f) {
    std::optional<Tense> tense;
    for (const auto& a : f.args())
        if (a.is_tense()) {
            tense = a.tense();
            break;
        }
    const bool open = open_atom(f);
    const NLTemplate* t = lex.find_nl(f.predicate(), tense, open);
    if (!t)
        throw MissingTemplate("no NL template for " + f.predicate().str() + " " +
                              (tense ? std::string(syntax::tense_name(*tense)) : std::string("*")) +
                              (open ? " open" : " ground"));
    std::string out;
    const std::string& s = t->text;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '{') {
            auto close = s.find('}', i);
            if (close == std::string::npos) throw MissingTemplate("unterminated slot in template for " + f.predicate().str());
            const int k = std::stoi(s.substr(i + 1, close - i - 1));
            if (k < 1 || k > static_cast<int>(f.args().size()))
                throw MissingTemplate("slot {" + std::to_string(k) + "} out of range for " + f.predicate().str());
            out += render_term(lex, f.args()[k - 1]);
            i = close;
        } else {
            out += s[i];
        }
    }
    return squeeze(out);
}

std::string render(const Lexicon& lex, const Formula& f) {
    switch (f.kind()) {
        case FormulaKind::Top: return "true";
        case FormulaKind::Atom: return render_atom(lex, f);
        case FormulaKind::Identity: return render_term(lex, f.args()[0]) + " is " + render_term(lex, f.args()[1]);
        case FormulaKind::Neg: return "it is not the case that " + render(lex, f.body());
        case FormulaKind::Conj: {
            std::string l = render(lex, f.lhs()), r = render(lex, f.rhs());
            if (l.empty()) return r;
            if (r.empty()) return l;
            return l + " and " + r;
        }
        case FormulaKind::Exists: throw MissingTemplate("no NL form for existential quantification");
    }
    return {};
}

}  // namespace

std::string render_nl(const Lexicon& lex, const Formula& f) {
    std::string s = render(lex, f);
    bool open = !f.is_sentence();
    if (f.kind() == FormulaKind::Atom) open = open_atom(f);
    if (!open && !s.empty()) s += ".";
    return s;
}

std::string render_nl(const Lexicon& lex, const prp::Domain& d, const epistemic::KnowAtom& a) {
    return render_nl(lex, epistemic::know_formula(d, a));
}

EmotionMap EmotionMap::set(const std::string& kind, prp::Concept u, double v) const {
    if (!(v >= 0.0 && v <= 1.0)) throw ConstructionError("emotion value must lie in [0,1]");
    EmotionMap out = *this;
    out.maps_[kind][u] = v;
    return out;
}

std::optional<double> EmotionMap::get(const std::string& kind, prp::Concept u) const {
    auto it = maps_.find(kind);
    if (it == maps_.end()) return std::nullopt;
    auto jt = it->second.find(u);
    if (jt == it->second.end()) return std::nullopt;
    return jt->second;
}

}  // namespace ifol::grounding
