#include "ifol/epistemic.hpp"

#include <json.hpp>
#include <set>

#include "ifol/error.hpp"

namespace ifol::epistemic {

using syntax::Formula;
using syntax::FormulaKind;
using syntax::Term;

std::string_view rule_name(Rule r) {
    switch (r) {
        case Rule::Experience: return "experience";
        case Rule::T_a: return "T_a";
        case Rule::T_b: return "T_b";
        case Rule::Ax4: return "Ax4";
        case Rule::AxK: return "AxK";
        case Rule::Loaded: return "loaded";
    }
    return "?";
}

std::string_view answer_name(Answer a) {
    switch (a) {
        case Answer::Yes: return "yes";
        case Answer::No: return "no";
        case Answer::Unknown: return "unknown";
    }
    return "?";
}

bool Memory::contains(const KnowAtom& a) const {
    for (const auto& t : temporary_)
        if (t.same_fact(a)) return true;
    for (const auto& p : permanent_)
        if (p.same_fact(a)) return true;
    return false;
}

const KnowAtom* Memory::find(int id) const {
    for (const auto& t : temporary_)
        if (t.id == id) return &t;
    for (const auto& p : permanent_)
        if (p.id == id) return &p;
    return nullptr;
}

std::optional<KnowAtom> Memory::add_temporary(KnowAtom a) {
    if (contains(a)) return std::nullopt;
    a.id = next_id_++;
    temporary_.push_back(a);
    return a;
}

std::optional<KnowAtom> Memory::add_permanent(KnowAtom a) {
    if (contains(a)) return std::nullopt;
    a.id = next_id_++;
    permanent_.push_back(a);
    return a;
}

Implication Memory::add_rule(Implication r) {
    r.id = next_id_++;
    rules_.push_back(r);
    return r;
}

relalg::Relation Memory::know_relation() const {
    relalg::Relation r(3);
    for (const auto& a : temporary_) r.insert({a.time, a.subject, a.content});
    for (const auto& a : permanent_) r.insert({a.time, a.subject, a.content});
    return r;
}

bool operator==(const Memory& a, const Memory& b) {
    auto same = [](const std::vector<KnowAtom>& x, const std::vector<KnowAtom>& y) {
        if (x.size() != y.size()) return false;
        for (std::size_t i = 0; i < x.size(); ++i)
            if (!x[i].same_fact(y[i])) return false;
        return true;
    };
    if (!same(a.temporary_, b.temporary_) || !same(a.permanent_, b.permanent_)) return false;
    if (a.rules_.size() != b.rules_.size()) return false;
    for (std::size_t i = 0; i < a.rules_.size(); ++i) {
        const auto &x = a.rules_[i], &y = b.rules_[i];
        if (x.time != y.time || x.subject != y.subject || x.antecedent != y.antecedent ||
            x.consequent != y.consequent)
            return false;
    }
    return true;
}

Formula know_formula(const prp::Domain& d, const KnowAtom& a) {
    return Formula::atom(worlds::kKnowPredicate, {d.term_of(a.time), d.term_of(a.subject), d.term_of(a.content)});
}

std::pair<Memory, KnowAtom> assert_experience(prp::Domain& d, Memory mem, const syntax::AbstractedTerm& t,
                                              const prp::Assignment& g) {
    KnowAtom a;
    a.time = d.tense(syntax::Tense::Present);
    a.subject = d.particular("me");
    a.content = d.extend_assignment(g, Term(std::make_shared<const syntax::AbstractedTerm>(t)));
    a.rule = Rule::Experience;
    if (auto added = mem.add_temporary(a)) return {std::move(mem), *added};
    for (const auto& held : mem.temporary())
        if (held.same_fact(a)) return {std::move(mem), held};
    for (const auto& held : mem.permanent())
        if (held.same_fact(a)) return {std::move(mem), held};
    return {std::move(mem), a};
}

std::optional<Formula> apply_T_ground(const prp::Domain& d, const KnowAtom& a) {
    if (d.arity(a.content) != 0) return std::nullopt;
    return d.recover(a.content);
}

std::optional<KnowAtom> apply_T_open(prp::Domain& d, const KnowAtom& a, const worlds::World& w) {
    if (d.arity(a.content) < 1) return std::nullopt;
    relalg::Relation ext;
    try {
        ext = worlds::extension(d, w, a.content);
    } catch (const MissingExtension&) {
        return std::nullopt;
    }
    if (ext.empty()) return std::nullopt;
    const Formula body = d.recover(a.content);
    const auto& free = body.free_vars();
    KnowAtom out;
    out.time = a.time;
    out.subject = a.subject;
    out.rule = Rule::T_b;
    out.parents = {a.id};
    std::optional<Formula> conjunction;
    for (const auto& row : ext.tuples()) {
        syntax::Bindings b;
        for (std::size_t i = 0; i < free.size(); ++i) b.emplace(free[i].name, d.term_of(row[i]));
        Formula instance = syntax::substitute(body, b);
        out.conjuncts.push_back(d.interpret(instance));
        conjunction = conjunction ? Formula::conj(*conjunction, instance, {}) : instance;
    }
    out.content = d.interpret(*conjunction);
    return out;
}

KnowAtom apply_4(prp::Domain& d, const KnowAtom& a) {
    KnowAtom out;
    out.time = a.time;
    out.subject = a.subject;
    out.content = d.intern_atom(worlds::kKnowPredicate,
                                {prp::AtomArg{prp::AtomArg::Kind::Element, {}, a.time, {}, {}, {}},
                                 prp::AtomArg{prp::AtomArg::Kind::Element, {}, a.subject, {}, {}, {}},
                                 prp::AtomArg{prp::AtomArg::Kind::Element, {}, a.content, {}, {}, {}}});
    out.rule = Rule::Ax4;
    out.parents = {a.id};
    out.depth = a.depth + 1;
    return out;
}

std::optional<KnowAtom> apply_K(const KnowAtom& a, const Implication& impl) {
    if (a.content != impl.antecedent || a.time != impl.time || a.subject != impl.subject) return std::nullopt;
    KnowAtom out;
    out.time = a.time;
    out.subject = a.subject;
    out.content = impl.consequent;
    out.rule = Rule::AxK;
    out.parents = {a.id, impl.id};
    return out;
}

ChainResult forward_chain(prp::Domain& d, const Memory& mem, const worlds::World& w, int budget) {
    if (budget < 0) throw ConstructionError("introspection budget must be nonnegative");
    ChainResult res{mem, {}, {}};
    Memory& m = res.memory;
    std::vector<int> work;
    for (const auto& a : m.permanent()) work.push_back(a.id);
    for (const auto& a : m.temporary()) work.push_back(a.id);

    auto add = [&](KnowAtom cand) {
        if (auto added = m.add_temporary(std::move(cand))) {
            work.push_back(added->id);
            res.derived.push_back(added->id);
            res.trace.push_back({added->rule, added->parents, added->id, syntax::serialize(know_formula(d, *added))});
        }
    };

    for (std::size_t i = 0; i < work.size(); ++i) {
        const KnowAtom atom = *m.find(work[i]);
        if (auto t = apply_T_open(d, atom, w)) add(std::move(*t));
        if (d.arity(atom.content) == 0) {
            for (Concept c : atom.conjuncts) {
                KnowAtom k;
                k.time = atom.time;
                k.subject = atom.subject;
                k.content = c;
                k.rule = Rule::T_a;
                k.parents = {atom.id};
                add(std::move(k));
            }
        }
        for (const auto& impl : m.rules())
            if (auto k = apply_K(atom, impl)) add(std::move(*k));
        if (atom.depth < budget) add(apply_4(d, atom));
    }
    return res;
}

namespace {

Formula stamp_formula(prp::Domain& d, const Formula& f, std::int64_t tau);

Term stamp_content_term(prp::Domain& d, const Term& t, std::int64_t tau) {
    if (!t.is_abstraction()) return t;
    const auto& a = t.abstraction();
    return Term(syntax::build_abstraction(stamp_formula(d, a.body(), tau), a.alpha(), a.beta()));
}

Formula stamp_formula(prp::Domain& d, const Formula& f, std::int64_t tau) {
    switch (f.kind()) {
        case FormulaKind::Top:
        case FormulaKind::Identity: return f;
        case FormulaKind::Atom: {
            if (f.predicate() == worlds::kKnowPredicate) {
                auto args = f.args();
                args[2] = stamp_content_term(d, args[2], tau);
                return Formula::atom(f.predicate(), std::move(args));
            }
            std::vector<Term> args{Term::constant(std::to_string(tau))};
            for (const auto& t : f.args())
                args.push_back(t.is_tense() && t.tense() == syntax::Tense::Present ? Term(syntax::Tense::Past) : t);
            syntax::Predicate timed{f.predicate().name, f.predicate().arity + 1};
            d.declare(timed);
            return Formula::atom(std::move(timed), std::move(args));
        }
        case FormulaKind::Neg: return Formula::neg(stamp_formula(d, f.body(), tau));
        case FormulaKind::Exists: return Formula::exists(f.index(), stamp_formula(d, f.body(), tau));
        case FormulaKind::Conj:
            return Formula::conj(stamp_formula(d, f.lhs(), tau), stamp_formula(d, f.rhs(), tau), f.pairs());
    }
    return f;
}

Formula unstamp_formula(prp::Domain& d, const Formula& f, std::int64_t tau) {
    switch (f.kind()) {
        case FormulaKind::Top:
        case FormulaKind::Identity: return f;
        case FormulaKind::Atom: {
            auto args = f.args();
            if (f.predicate() == worlds::kKnowPredicate) {
                if (args[2].is_abstraction()) {
                    const auto& a = args[2].abstraction();
                    args[2] = Term(syntax::build_abstraction(unstamp_formula(d, a.body(), tau), a.alpha(), a.beta()));
                }
                return Formula::atom(f.predicate(), std::move(args));
            }
            const syntax::Predicate base{f.predicate().name, f.predicate().arity - 1};
            if (args.empty() || !(args[0] == Term::constant(std::to_string(tau))) || !d.declared(base)) return f;
            std::vector<Term> rest;
            for (std::size_t i = 1; i < args.size(); ++i)
                rest.push_back(args[i].is_tense() && args[i].tense() == syntax::Tense::Past
                                   ? Term(syntax::Tense::Present)
                                   : args[i]);
            return Formula::atom(base, std::move(rest));
        }
        case FormulaKind::Neg: return Formula::neg(unstamp_formula(d, f.body(), tau));
        case FormulaKind::Exists: return Formula::exists(f.index(), unstamp_formula(d, f.body(), tau));
        case FormulaKind::Conj:
            return Formula::conj(unstamp_formula(d, f.lhs(), tau), unstamp_formula(d, f.rhs(), tau), f.pairs());
    }
    return f;
}

}  // namespace

Concept stamp(prp::Domain& d, Concept content, std::int64_t tau) {
    return d.interpret(stamp_formula(d, d.recover(content), tau));
}

Concept unstamp(prp::Domain& d, Concept content, std::int64_t tau) {
    return d.interpret(unstamp_formula(d, d.recover(content), tau));
}

Memory consolidate(prp::Domain& d, const Memory& mem, std::int64_t tau) {
    Memory out = mem;
    out.drain_temporary([&](KnowAtom a) {
        a.content = stamp(d, a.content, tau);
        for (auto& c : a.conjuncts) c = stamp(d, c, tau);
        a.consolidated = true;
        a.tau = tau;
        return a;
    });
    return out;
}

std::vector<Formula> conjuncts_of(const Formula& sentence) {
    if (sentence.kind() == FormulaKind::Conj && sentence.pairs().empty() && sentence.lhs().is_sentence() &&
        sentence.rhs().is_sentence()) {
        auto out = conjuncts_of(sentence.lhs());
        auto rhs = conjuncts_of(sentence.rhs());
        out.insert(out.end(), rhs.begin(), rhs.end());
        return out;
    }
    return {sentence};
}

std::vector<Formula> ground_facts_of(const Formula& sentence) {
    std::vector<Formula> out;
    for (const auto& c : conjuncts_of(sentence))
        if (c.kind() == FormulaKind::Atom && c.is_sentence() && c.predicate() != worlds::kKnowPredicate)
            out.push_back(c);
    return out;
}

Answer answer(prp::Domain& d, const Memory& mem, const worlds::World& w, const Formula& q) {
    if (!q.is_sentence()) throw ConstructionError("answer needs a sentence; free: ?" + q.free_vars().front().name);
    std::set<Concept> known;
    auto learn = [&](const KnowAtom& a) {
        if (d.arity(a.content) != 0) return;
        known.insert(a.content);
        for (const auto& c : conjuncts_of(d.recover(a.content))) known.insert(d.interpret(c));
    };
    for (const auto& a : mem.temporary()) learn(a);
    for (const auto& a : mem.permanent()) learn(a);

    const Concept qc = d.interpret(q);
    if (known.count(qc)) return Answer::Yes;
    const auto parts = conjuncts_of(q);
    if (parts.size() > 1) {
        bool all = true;
        for (const auto& p : parts) all = all && known.count(d.interpret(p));
        if (all) return Answer::Yes;
    }
    if (known.count(d.neg(qc))) return Answer::No;
    if (q.kind() == FormulaKind::Neg && known.count(d.interpret(q.body()))) return Answer::No;
    try {
        return worlds::eval_sentence(d, w, q) ? Answer::Yes : Answer::No;
    } catch (const MissingExtension&) {
        return Answer::Unknown;
    }
}

std::string trace_record(const TraceStep& step, std::size_t index) {
    nlohmann::ordered_json j;
    j["step"] = index;
    j["rule"] = std::string(rule_name(step.rule));
    j["inputs"] = step.inputs;
    j["output"] = step.output;
    j["sentence"] = step.sentence;
    return j.dump();
}

}  // namespace ifol::epistemic
