#include "ifol/session.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "ifol/error.hpp"

#ifndef IFOL_DATA_DIR
#define IFOL_DATA_DIR "data"
#endif

namespace ifol::session {

using epistemic::KnowAtom;
using syntax::Formula;
using syntax::FormulaKind;
using syntax::Term;

std::string default_data_dir() { return IFOL_DATA_DIR; }

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

namespace {

std::string trim(std::string_view s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return std::string(s.substr(a, b - a));
}

std::string strip_position(const std::string& msg) {
    auto at = msg.rfind(" at ");
    return at == std::string::npos ? msg : msg.substr(0, at);
}

/// Re-raises the active exception with a KB location, keeping its type.
[[noreturn]] void relocate(const std::string& origin, int line, int column) {
    try {
        throw;
    } catch (const SyntaxError& e) {
        throw SyntaxError(origin + ": " + strip_position(e.what()), line, column + e.column() - 1);
    } catch (const SignatureError& e) {
        throw SignatureError(origin + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + e.what());
    } catch (const ConstructionError& e) {
        throw ConstructionError(origin + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + e.what());
    } catch (const MissingExtension& e) {
        throw MissingExtension(origin + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + e.what());
    } catch (const Error& e) {
        throw Error(origin + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + e.what());
    }
}

/// Length of the abstracted term at the start of s, including its
/// subscript and superscript.
std::size_t abstraction_extent(std::string_view s) {
    if (s.substr(0, 2) != "<<") throw SyntaxError("expected an abstracted term", 1, 1);
    int depth = 0;
    std::size_t i = 0;
    while (i < s.size()) {
        if (s.substr(i, 2) == "<<") {
            ++depth;
            i += 2;
        } else if (s.substr(i, 2) == ">>") {
            i += 2;
            if (--depth == 0) break;
        } else {
            ++i;
        }
    }
    if (depth != 0) throw SyntaxError("unterminated abstracted term", 1, static_cast<int>(s.size()) + 1);
    for (std::string_view mark : {"_{", "^{"})
        if (s.substr(i, 2) == mark) {
            auto close = s.find('}', i);
            if (close == std::string_view::npos) throw SyntaxError("unterminated variable list", 1, static_cast<int>(i) + 1);
            i = close + 1;
        }
    return i;
}

std::pair<std::string, std::string> split_first(std::string_view line) {
    const std::string t = trim(line);
    auto sp = t.find_first_of(" \t");
    if (sp == std::string::npos) return {t, ""};
    return {t.substr(0, sp), trim(std::string_view(t).substr(sp))};
}

}  // namespace

Session::Session(Options opts) : opts_(std::move(opts)), domain_(std::make_unique<prp::Domain>()) {
    if (opts_.data_dir.empty()) opts_.data_dir = default_data_dir();
    if (opts_.corpus.empty()) opts_.corpus = opts_.data_dir + "/corpus.txt";
    domain_->declare(worlds::kKnowPredicate);
    lexicon_.load_sdc(read_file(opts_.data_dir + "/sdc.txt"));
    lexicon_.load_nl(read_file(opts_.data_dir + "/nl.txt"));
    corpus_ = grounding::load_corpus(opts_.corpus);
    registry_ = grounding::builtin_registry(corpus_);
}

Formula Session::parse(std::string_view text) const { return syntax::parse_formula(text, &domain_->signature()); }

void Session::load_kb(const std::string& path) { load_kb_text(read_file(path), path); }

void Session::load_kb_text(std::string_view text, const std::string& origin) {
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        if (trim(line).empty()) continue;
        const auto lead = line.find_first_not_of(" \t");
        const auto sp = line.find_first_of(" \t", lead);
        const auto rest = sp == std::string::npos ? line.size() : line.find_first_not_of(" \t", sp);
        try {
            directive(line);
        } catch (const Error&) {
            relocate(origin, lineno, static_cast<int>(rest == std::string::npos ? line.size() : rest) + 1);
        }
    }
}

void Session::sync_knowledge() { world_ = world_.with_knowledge(memory_.know_relation()); }

void Session::record(const epistemic::TraceStep& step) {
    trace_.push_back(epistemic::trace_record(step, trace_.size() + 1));
}

relalg::Tuple Session::tuple_of(const Formula& atom) {
    relalg::Tuple t;
    for (const auto& a : atom.args()) t.push_back(domain_->extend_assignment({}, a));
    return t;
}

void Session::assert_facts(const Formula& f) {
    if (!f.is_sentence()) throw ConstructionError("only sentences can be asserted");
    for (const auto& c : epistemic::conjuncts_of(f)) {
        if (c.kind() != FormulaKind::Atom || c.predicate() == worlds::kKnowPredicate)
            throw ConstructionError("only ground atoms and their conjunctions can be asserted: " + syntax::serialize(c));
        world_ = world_.with_fact(c.predicate(), tuple_of(c));
    }
}

void Session::directive(std::string_view line) {
    auto [kw, rest] = split_first(line);
    auto& d = *domain_;
    if (kw == "predicate") {
        auto slash = rest.rfind('/');
        if (slash == std::string::npos || rest.find(' ') != std::string::npos)
            throw SyntaxError("expected predicate <name>/<arity>", 1, 1);
        int arity = -1;
        try {
            arity = std::stoi(rest.substr(slash + 1));
        } catch (const std::exception&) {
        }
        if (arity < 0) throw SyntaxError("bad arity", 1, static_cast<int>(slash) + 2);
        d.declare({rest.substr(0, slash), arity});
    } else if (kw == "particular") {
        if (rest.empty() || rest.find(' ') != std::string::npos) throw SyntaxError("expected particular <name>", 1, 1);
        Term t = syntax::parse_term(rest);
        if (!t.is_constant() && !t.is_tense()) throw SyntaxError("particular names are constants", 1, 1);
        world_ = world_.with_particular(d.extend_assignment({}, t));
        if (std::find(particulars_.begin(), particulars_.end(), rest) == particulars_.end()) particulars_.push_back(rest);
    } else if (kw == "label") {
        const auto n = abstraction_extent(rest);
        auto term = syntax::parse_abstraction(rest.substr(0, n), &d.signature());
        const std::string text = trim(std::string_view(rest).substr(n));
        if (text.empty()) throw SyntaxError("label needs a text", 1, static_cast<int>(n) + 1);
        lexicon_.set_label(*term, text);
    } else if (kw == "ground") {
        auto sp = rest.find_last_of(" \t");
        if (sp == std::string::npos) throw SyntaxError("expected ground <atom> <process>", 1, 1);
        Formula atom = parse(trim(rest.substr(0, sp)));
        if (atom.kind() != FormulaKind::Atom) throw ConstructionError("only atomic concepts can be grounded");
        const prp::Concept u = d.interpret(atom);
        registry_ = registry_.bind_concept(d, u, trim(rest.substr(sp)));
        grounding::run_grounding(d, registry_, world_, u);
        sync_knowledge();
    } else if (kw == "rule") {
        auto [a, b] = syntax::parse_rule(rest, &d.signature());
        memory_.add_rule({-1, d.tense(syntax::Tense::Present), d.particular("me"), d.interpret(a), d.interpret(b)});
    } else if (kw == "assert") {
        assert_facts(parse(rest));
    } else if (kw == "know") {
        if (rest.rfind("<<", 0) == 0) {
            const auto n = abstraction_extent(rest);
            if (!trim(std::string_view(rest).substr(n)).empty()) throw SyntaxError("unexpected text after term", 1, static_cast<int>(n) + 1);
            experience(*syntax::parse_abstraction(rest, &d.signature()));
            return;
        }
        std::istringstream ls(rest);
        std::string time, subject;
        ls >> time >> subject;
        const auto at = rest.find("<<");
        if (subject.empty() || at == std::string::npos) throw SyntaxError("expected know [<time> <subject>] <term>", 1, 1);
        const auto n = abstraction_extent(std::string_view(rest).substr(at));
        const std::string tail = trim(std::string_view(rest).substr(at + n));
        if (!tail.empty() && tail != "permanent") throw SyntaxError("expected 'permanent' or end of line", 1, static_cast<int>(at + n) + 1);
        KnowAtom a;
        a.time = d.extend_assignment({}, syntax::parse_term(time));
        a.subject = d.extend_assignment({}, syntax::parse_term(subject));
        auto term = syntax::parse_abstraction(rest.substr(at, n), &d.signature());
        if (!term->is_ground()) throw ConstructionError("stored knowledge must be ground");
        a.content = d.extend_assignment({}, Term(term));
        a.rule = epistemic::Rule::Loaded;
        if (tail == "permanent") {
            a.consolidated = true;
            memory_.add_permanent(a);
        } else {
            memory_.add_temporary(a);
        }
        sync_knowledge();
    } else if (kw == "time") {
        try {
            world_ = world_.at_time(std::stoll(rest));
        } catch (const std::logic_error&) {
            throw SyntaxError("expected time <integer>", 1, 1);
        }
    } else if (kw == "emotion") {
        std::istringstream ls(rest);
        std::string kind, value;
        ls >> kind >> value;
        const auto at = rest.find(value) + value.size();
        double v = 0;
        try {
            v = std::stod(value);
        } catch (const std::logic_error&) {
            throw SyntaxError("expected emotion <kind> <value> <term>", 1, 1);
        }
        Term t = syntax::parse_term(trim(std::string_view(rest).substr(at)), &d.signature());
        emotions_ = emotions_.set(kind, d.extend_assignment({}, t), v);
    } else {
        throw SyntaxError("unknown directive '" + kw + "'", 1, 1);
    }
}

KnowAtom Session::experience(const syntax::AbstractedTerm& t) {
    if (!t.is_ground())
        throw ConstructionError("experience term has unbound variables: ?" + t.beta().front().name);
    auto [mem, atom] = epistemic::assert_experience(*domain_, memory_, t, {});
    const bool added = !memory_.find(atom.id);
    memory_ = std::move(mem);
    if (added) record({epistemic::Rule::Experience, {}, atom.id, syntax::serialize(epistemic::know_formula(*domain_, atom))});
    sync_knowledge();
    return atom;
}

epistemic::ChainResult Session::chain(int budget) {
    auto res = epistemic::forward_chain(*domain_, memory_, world_, budget);
    memory_ = res.memory;
    for (const auto& step : res.trace) record(step);
    sync_knowledge();
    return res;
}

void Session::consolidate(std::int64_t tau) {
    if (tau < world_.timestamp())
        throw ConstructionError("timestamp " + std::to_string(tau) + " precedes the current world time " +
                                std::to_string(world_.timestamp()));
    std::set<int> fresh;
    for (const auto& a : memory_.temporary()) fresh.insert(a.id);
    memory_ = epistemic::consolidate(*domain_, memory_, tau);
    world_ = world_.at_time(tau);
    for (const auto& a : memory_.permanent()) {
        if (!fresh.count(a.id) || domain_->arity(a.content) != 0) continue;
        for (const auto& f : epistemic::ground_facts_of(domain_->recover(a.content)))
            world_ = world_.with_fact(f.predicate(), tuple_of(f));
    }
    sync_knowledge();
}

epistemic::Answer Session::answer(const Formula& q) { return epistemic::answer(*domain_, memory_, world_, q); }

bool Session::eval(const Formula& sentence) { return worlds::eval_sentence(*domain_, world_, sentence); }

std::string Session::render(int atom_id) const {
    const KnowAtom* a = memory_.find(atom_id);
    if (!a) throw Error("no atom with id " + std::to_string(atom_id));
    return grounding::render_nl(lexicon_, *domain_, *a);
}

std::string Session::element(prp::Concept c) const { return syntax::serialize(domain_->term_of(c)); }

namespace {

std::string atom_line(const prp::Domain& d, const KnowAtom& a) {
    std::string s = "[" + std::to_string(a.id) + "] " + syntax::serialize(epistemic::know_formula(d, a)) + "  " +
                    std::string(epistemic::rule_name(a.rule));
    if (!a.parents.empty()) {
        s += "(";
        for (std::size_t i = 0; i < a.parents.size(); ++i) s += (i ? "," : "") + std::to_string(a.parents[i]);
        s += ")";
    }
    if (a.depth) s += " depth=" + std::to_string(a.depth);
    if (a.consolidated && a.tau) s += " tau=" + std::to_string(a.tau);
    return s;
}

}  // namespace

std::string Session::dump(std::string_view what) const {
    const auto& d = *domain_;
    std::ostringstream out;
    if (what == "concepts") {
        for (std::size_t i = 0; i < d.size(); ++i) {
            const prp::Concept c{static_cast<std::uint32_t>(i)};
            const auto& n = d.node(c);
            out << "#" << i << " ";
            if (n.op == prp::ConceptOp::Particular) {
                out << "particular " << n.name << "\n";
                continue;
            }
            out << "D" << n.arity << " ";
            try {
                out << syntax::serialize(d.recover(c)) << "\n";
            } catch (const Error&) {
                out << "conj #" << n.a.value << " #" << n.b.value << " (product)\n";
            }
        }
    } else if (what == "world") {
        out << "time " << world_.timestamp() << "\n";
        for (const auto& [p, r] : world_.facts()) {
            out << p.str() << ":";
            for (const auto& t : r.tuples()) {
                out << " (";
                for (std::size_t i = 0; i < t.size(); ++i) out << (i ? ", " : "") << element(t[i]);
                out << ")";
            }
            out << "\n";
        }
    } else if (what == "memory") {
        out << "temporary:\n";
        for (const auto& a : memory_.temporary()) out << "  " << atom_line(d, a) << "\n";
        out << "permanent:\n";
        for (const auto& a : memory_.permanent()) out << "  " << atom_line(d, a) << "\n";
        out << "rules:\n";
        for (const auto& r : memory_.rules())
            out << "  [" << r.id << "] " << syntax::serialize(d.recover(r.antecedent)) << " => "
                << syntax::serialize(d.recover(r.consequent)) << "\n";
    } else if (what == "kb") {
        if (world_.timestamp()) out << "time " << world_.timestamp() << "\n";
        for (const auto& p : d.signature().predicates())
            if (!(p == syntax::kIdentityPredicate)) out << "predicate " << p.str() << "\n";
        for (const auto& p : particulars_) out << "particular " << p << "\n";
        for (const auto& [key, text] : lexicon_.labels()) out << "label " << key << " " << text << "\n";
        for (const auto& [u, name] : registry_.bindings())
            out << "ground " << syntax::serialize(d.recover(u)) << " " << name << "\n";
        for (const auto& r : memory_.rules())
            out << "rule " << syntax::serialize(d.recover(r.antecedent)) << " => "
                << syntax::serialize(d.recover(r.consequent)) << "\n";
        for (const auto& [p, r] : world_.facts())
            for (const auto& t : r.tuples()) {
                std::vector<Term> args;
                for (auto c : t) args.push_back(d.term_of(c));
                out << "assert " << syntax::serialize(Formula::atom(p, std::move(args))) << "\n";
            }
        auto know_line = [&](const KnowAtom& a, bool permanent) {
            out << "know " << element(a.time) << " " << element(a.subject) << " " << element(a.content)
                << (permanent ? " permanent" : "") << "\n";
        };
        for (const auto& a : memory_.temporary()) know_line(a, false);
        for (const auto& a : memory_.permanent()) know_line(a, true);
        for (const auto& [kind, m] : emotions_.entries())
            for (const auto& [c, v] : m) {
                std::ostringstream num;
                num << v;
                out << "emotion " << kind << " " << num.str() << " " << element(c) << "\n";
            }
    } else {
        throw Error("dump expects concepts, world, memory or kb");
    }
    return out.str();
}

namespace {

const char* kHelp =
    "commands:\n"
    "  assert <formula>            add ground facts to the current world\n"
    "  know <abstracted-term>      record an experience\n"
    "  eval <formula>              truth value or satisfying tuples\n"
    "  chain [--budget N]          forward-chain the epistemic rules\n"
    "  consolidate --tau T         move temporary knowledge to permanent memory\n"
    "  answer <formula>            yes / no / unknown\n"
    "  render <atom-id>            natural-language rendering of a Know atom\n"
    "  pars <sentence>             natural language to formula\n"
    "  dump concepts|world|memory|kb\n"
    "  predicate, particular, label, ground, rule, time, emotion: KB directives\n";

}  // namespace

std::string Session::command(std::string_view line) {
    auto [cmd, rest] = split_first(line);
    auto& d = *domain_;
    std::ostringstream out;
    if (cmd.empty()) return "";
    if (cmd == "help") return kHelp;
    if (cmd == "know" && rest.rfind("<<", 0) == 0) {
        auto atom = experience(*syntax::parse_abstraction(rest, &d.signature()));
        out << atom_line(d, atom) << "\n";
    } else if (cmd == "predicate" || cmd == "particular" || cmd == "label" || cmd == "ground" || cmd == "rule" ||
               cmd == "assert" || cmd == "know" || cmd == "time" || cmd == "emotion") {
        directive(line);
        out << "ok\n";
    } else if (cmd == "eval") {
        Formula f = parse(rest);
        if (f.is_sentence()) {
            out << (eval(f) ? "t" : "f") << "\n";
        } else {
            const auto rel = worlds::extension(d, world_, d.interpret(f));
            out << "(";
            const auto& free = f.free_vars();
            for (std::size_t i = 0; i < free.size(); ++i) out << (i ? ", " : "") << "?" << free[i].name;
            out << "):";
            for (const auto& t : rel.tuples()) {
                out << " (";
                for (std::size_t i = 0; i < t.size(); ++i) out << (i ? ", " : "") << element(t[i]);
                out << ")";
            }
            out << "\n";
        }
    } else if (cmd == "chain") {
        int budget = opts_.budget;
        if (!rest.empty()) {
            std::istringstream ls(rest);
            std::string flag;
            ls >> flag;
            if (flag != "--budget" || !(ls >> budget)) throw Error("usage: chain [--budget N]");
        }
        auto res = chain(budget);
        out << res.derived.size() << " new atom" << (res.derived.size() == 1 ? "" : "s") << "\n";
        for (int id : res.derived) out << "  " << atom_line(d, *memory_.find(id)) << "\n";
    } else if (cmd == "consolidate") {
        std::istringstream ls(rest);
        std::string flag;
        std::int64_t tau = 0;
        if (!(ls >> flag >> tau) || flag != "--tau") throw Error("usage: consolidate --tau T");
        const auto before = memory_.temporary().size();
        consolidate(tau);
        out << "consolidated " << before << " atom" << (before == 1 ? "" : "s") << " at " << tau << "\n";
    } else if (cmd == "answer") {
        out << epistemic::answer_name(answer(parse(rest))) << "\n";
    } else if (cmd == "render") {
        int id = 0;
        try {
            id = std::stoi(rest);
        } catch (const std::exception&) {
            throw Error("usage: render <atom-id>");
        }
        out << render(id) << "\n";
    } else if (cmd == "pars") {
        out << syntax::serialize(grounding::pars(lexicon_, rest)) << "\n";
    } else if (cmd == "dump") {
        out << dump(rest);
    } else {
        throw Error("unknown command '" + cmd + "' (try help)");
    }
    return out.str();
}

// ---------------------------------------------------------------------------

bool DemoReport::ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.ok; });
}

namespace {

Formula found_form(const std::string& clip) {
    return syntax::parse_formula("Find(in_present, me, " + clip + ", <<phi>>) /\\ videoclips(" + clip + ")");
}

Formula consolidated_form(const std::string& clip, std::int64_t tau) {
    const std::string t = std::to_string(tau);
    return syntax::parse_formula("Find(" + t + ", in_past, me, " + clip + ", <<phi>>) /\\ videoclips(" + t + ", " +
                                 clip + ")");
}

}  // namespace

DemoReport run_demo(const DemoOptions& opts) {
    DemoReport rep;
    rep.session = std::make_unique<Session>(opts.session);
    Session& s = *rep.session;
    auto& d = s.domain();
    auto say = [&](std::string line) { rep.lines.push_back(std::move(line)); };
    auto check = [&](std::string name, bool ok, std::string detail = {}) {
        rep.checks.push_back({std::move(name), ok, std::move(detail)});
    };

    s.load_kb(opts.kb.empty() ? s.options().data_dir + "/demo.kb" : opts.kb);
    std::vector<std::string> positives;
    for (const auto& c : s.corpus().clips)
        if (c.satisfies) positives.push_back(c.id);
    say("corpus: " + std::to_string(s.corpus().clips.size()) + " clips, " + std::to_string(positives.size()) +
        " satisfying the requirement");

    say("command: " + opts.command);
    const Formula psi = grounding::pars(s.lexicon(), opts.command);
    say("pars: " + syntax::serialize(psi));
    const Formula expected_psi = s.parse("Find(in_present, me, ?y, <<phi>>) /\\{(1,1)} videoclips(?y)");
    check("command parses to the find-such-that formula", psi == expected_psi, syntax::serialize(psi));

    const auto exp = s.experience(*syntax::abstract_all(psi));
    say("experience: " + syntax::serialize(epistemic::know_formula(d, exp)));
    const std::string exp_text = grounding::render_nl(s.lexicon(), d, exp);
    say("  " + exp_text);
    check("experience renders as the finding sentence",
          exp_text == "I (me) know that I am (me) finding videoclip such that φ", exp_text);
    check("experience content is a property", d.arity(exp.content) == 1);

    const int budget = s.options().budget;
    const auto res = s.chain(budget);
    say("chain (budget " + std::to_string(budget) + "): " + std::to_string(res.derived.size()) + " new atoms");
    bool any_tb = false;
    int max_depth = 0, ax4 = 0;
    for (int id : res.derived) {
        const KnowAtom& a = *s.memory().find(id);
        say("  [" + std::to_string(id) + "] " + std::string(epistemic::rule_name(a.rule)) + " " +
            syntax::serialize(epistemic::know_formula(d, a)));
        any_tb = any_tb || a.rule == epistemic::Rule::T_b;
        if (a.rule == epistemic::Rule::Ax4) ++ax4;
        max_depth = std::max(max_depth, a.depth);
        if (a.rule != epistemic::Rule::T_a) continue;
        for (const auto& clip : positives)
            if (a.content == d.interpret(found_form(clip))) {
                rep.found_atoms.push_back(id);
                rep.found_clips.push_back(clip);
            }
    }
    if (!any_tb) say("no T_b derivation: the requirement is satisfied by no clip");
    check("one found-clip atom per satisfying clip", rep.found_atoms.size() == positives.size(),
          std::to_string(rep.found_atoms.size()) + " of " + std::to_string(positives.size()));
    {
        auto sorted = rep.found_clips;
        std::sort(sorted.begin(), sorted.end());
        auto want = positives;
        std::sort(want.begin(), want.end());
        check("found clips are exactly the satisfying ones", sorted == want);
    }
    check("T_b fires iff some clip satisfies the requirement", any_tb == !positives.empty());
    check("introspection respects the budget", max_depth <= budget && (budget > 0 || ax4 == 0),
          "max depth " + std::to_string(max_depth));

    bool sound = true;
    std::string unsound;
    for (const auto& a : s.memory().temporary()) {
        if (d.arity(a.content) != 0) continue;
        const Formula f = d.recover(a.content);
        if (!s.eval(f)) {
            sound = false;
            unsound = syntax::serialize(f);
        }
    }
    check("every known sentence holds in the current world", sound, unsound);

    s.consolidate(opts.tau);
    say("consolidate at " + std::to_string(opts.tau) + ": " + std::to_string(s.memory().permanent().size()) +
        " permanent atoms");
    check("temporary memory is empty after consolidation", s.memory().temporary().empty());
    std::size_t stamped = 0;
    for (std::size_t i = 0; i < rep.found_atoms.size(); ++i) {
        const KnowAtom* a = s.memory().find(rep.found_atoms[i]);
        const std::string& clip = rep.found_clips[i];
        if (a && a->content == d.interpret(consolidated_form(clip, opts.tau))) ++stamped;
        const std::string text = grounding::render_nl(s.lexicon(), d, *a);
        rep.rendered.push_back(text);
        say("  " + syntax::serialize(epistemic::know_formula(d, *a)));
        say("  " + text);
        const std::string want = "I know that I have found at " + std::to_string(opts.tau) + " the videoclip " + clip +
                                 " which satisfied user requirement φ.";
        check("rendering of " + clip, text == want, text);
        const auto sentence = epistemic::apply_T_ground(d, *a);
        const std::string ans = sentence ? grounding::render_nl(s.lexicon(), *sentence) : "";
        rep.answers.push_back(ans);
        say("  " + ans);
        check("T extraction of " + clip + " is answered yes",
              sentence && s.answer(*sentence) == epistemic::Answer::Yes);
        check("T extraction of " + clip + " renders as the answer sentence",
              ans == "I have found at " + std::to_string(opts.tau) + " the videoclip " + clip +
                         " which satisfied user requirement φ.",
              ans);
    }
    check("consolidated atoms carry the timestamp and past tense", stamped == rep.found_atoms.size(),
          std::to_string(stamped) + " of " + std::to_string(rep.found_atoms.size()));
    return rep;
}

}  // namespace ifol::session
