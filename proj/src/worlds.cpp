#include "ifol/worlds.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <set>
#include <unordered_map>

#include "ifol/error.hpp"

namespace ifol::worlds {

using prp::AtomArg;
using prp::Concept;
using prp::ConceptOp;
using relalg::Relation;
using relalg::Tuple;

struct World::State {
    std::int64_t timestamp = 0;
    std::map<syntax::Predicate, Relation> facts;
    std::vector<Concept> particulars;
    Relation knowledge{3};
    relalg::ActiveDomain ad;

    mutable std::mutex memo_mutex;
    mutable std::unordered_map<Concept, Relation> memo;

    void rebuild_domain() {
        ad.clear();
        ad.insert(particulars.begin(), particulars.end());
        for (const auto& [p, r] : facts)
            for (const auto& t : r.tuples()) ad.insert(t.begin(), t.end());
        for (const auto& t : knowledge.tuples()) ad.insert(t.begin(), t.end());
    }
};

World::World(std::int64_t timestamp) : state_(std::make_shared<State>()) { state_->timestamp = timestamp; }
World::World(std::shared_ptr<State> s) : state_(std::move(s)) {}

std::shared_ptr<World::State> World::clone() const {
    auto s = std::make_shared<State>();
    s->timestamp = state_->timestamp;
    s->facts = state_->facts;
    s->particulars = state_->particulars;
    s->knowledge = state_->knowledge;
    s->ad = state_->ad;
    return s;
}

std::int64_t World::timestamp() const { return state_->timestamp; }

World World::at_time(std::int64_t timestamp) const {
    auto s = clone();
    s->timestamp = timestamp;
    return World(std::move(s));
}

const std::map<syntax::Predicate, Relation>& World::facts() const { return state_->facts; }

const Relation* World::facts_for(const syntax::Predicate& p) const {
    auto it = state_->facts.find(p);
    return it == state_->facts.end() ? nullptr : &it->second;
}

bool World::has_extension(const syntax::Predicate& p) const {
    return p == kKnowPredicate || p == syntax::kIdentityPredicate || facts_for(p) != nullptr;
}

World World::with_facts(const syntax::Predicate& p, Relation r) const {
    if (p == kKnowPredicate || p == syntax::kIdentityPredicate)
        throw ConstructionError(p.str() + " has no fact table");
    if (r.arity() != p.arity) throw ConstructionError("relation arity does not match " + p.str());
    auto s = clone();
    s->facts[p] = std::move(r);
    s->rebuild_domain();
    return World(std::move(s));
}

World World::with_fact(const syntax::Predicate& p, Tuple t) const {
    const Relation* cur = facts_for(p);
    Relation r = cur ? *cur : Relation(p.arity);
    r.insert(std::move(t));
    return with_facts(p, std::move(r));
}

World World::with_particular(Concept particular) const {
    if (std::find(state_->particulars.begin(), state_->particulars.end(), particular) != state_->particulars.end())
        return *this;
    auto s = clone();
    s->particulars.push_back(particular);
    s->ad.insert(particular);
    return World(std::move(s));
}

World World::with_knowledge(Relation know) const {
    if (know.arity() != 3) throw ConstructionError("knowledge table must have arity 3");
    auto s = clone();
    s->knowledge = std::move(know);
    s->rebuild_domain();
    return World(std::move(s));
}

const std::vector<Concept>& World::declared_particulars() const { return state_->particulars; }
const Relation& World::knowledge() const { return state_->knowledge; }
const relalg::ActiveDomain& World::active_domain() const { return state_->ad; }

std::optional<Relation> World::cached(Concept c) const {
    std::lock_guard lock(state_->memo_mutex);
    auto it = state_->memo.find(c);
    if (it == state_->memo.end()) return std::nullopt;
    return it->second;
}

void World::remember(Concept c, const Relation& r) const {
    std::lock_guard lock(state_->memo_mutex);
    state_->memo.emplace(c, r);
}

namespace {

syntax::Term abstraction_term(const prp::Domain& d, const AtomArg& a) {
    std::vector<syntax::Variable> alpha, beta;
    for (const auto& v : a.alpha) alpha.push_back({v});
    for (const auto& v : a.beta) beta.push_back({v});
    return syntax::Term(syntax::build_abstraction(d.recover(a.body), std::move(alpha), std::move(beta)));
}

/// Calls on_match with every assignment of the atom's variables under which
/// the atom instantiates to `fact`.
void match_fact(prp::Domain& d, const World& w, const prp::ConceptNode& atom, const Tuple& fact,
                const std::function<void(const prp::Assignment&)>& on_match) {
    prp::Assignment env;
    std::vector<std::size_t> deferred;
    for (std::size_t i = 0; i < atom.args.size(); ++i) {
        const auto& a = atom.args[i];
        switch (a.kind) {
            case AtomArg::Kind::Var: {
                auto [it, fresh] = env.emplace(a.var, fact[i]);
                if (!fresh && it->second != fact[i]) return;
                break;
            }
            case AtomArg::Kind::Element:
                if (a.element != fact[i]) return;
                break;
            case AtomArg::Kind::OpenAbstraction: deferred.push_back(i); break;
        }
    }
    if (deferred.empty()) {
        on_match(env);
        return;
    }
    std::vector<std::string> open;
    for (auto i : deferred)
        for (const auto& v : atom.args[i].beta)
            if (!env.count(v) && std::find(open.begin(), open.end(), v) == open.end()) open.push_back(v);
    const std::vector<Concept> ad(w.active_domain().begin(), w.active_domain().end());
    std::function<void(std::size_t)> enumerate = [&](std::size_t k) {
        if (k == open.size()) {
            for (auto i : deferred)
                if (d.extend_assignment(env, abstraction_term(d, atom.args[i])) != fact[i]) return;
            on_match(env);
            return;
        }
        for (Concept c : ad) {
            env[open[k]] = c;
            enumerate(k + 1);
        }
        env.erase(open[k]);
    };
    enumerate(0);
}

Relation identity_table(const World& w) {
    Relation r(2);
    for (Concept c : w.active_domain()) r.insert({c, c});
    return r;
}

Relation atom_extension(prp::Domain& d, const World& w, const prp::ConceptNode& atom) {
    if (atom.pred == syntax::kIdentityPredicate && atom.args[0].kind == AtomArg::Kind::Element &&
        atom.args[1].kind == AtomArg::Kind::Element)
        return Relation::truth(atom.args[0].element == atom.args[1].element);
    Relation table(atom.pred.arity);
    const Relation* source = nullptr;
    if (atom.pred == kKnowPredicate) {
        source = &w.knowledge();
    } else if (atom.pred == syntax::kIdentityPredicate) {
        table = identity_table(w);
        source = &table;
    } else {
        source = w.facts_for(atom.pred);
        if (!source) throw MissingExtension("no extension for predicate " + atom.pred.str());
    }
    Relation out(atom.arity);
    for (const auto& fact : source->tuples()) {
        match_fact(d, w, atom, fact, [&](const prp::Assignment& env) {
            Tuple t;
            for (const auto& v : atom.vars) t.push_back(env.at(v));
            out.insert(std::move(t));
        });
    }
    return out;
}

}  // namespace

Relation extension(prp::Domain& d, const World& w, Concept u, bool memoize) {
    if (memoize)
        if (auto hit = w.cached(u)) return *hit;
    const prp::ConceptNode node = d.node(u);
    Relation out;
    switch (node.op) {
        case ConceptOp::Particular:
            throw ConstructionError("particular " + node.name + " has no relational extension");
        case ConceptOp::Truth: out = Relation::truth(true); break;
        case ConceptOp::Atom: out = atom_extension(d, w, node); break;
        case ConceptOp::Conj: {
            Relation l = extension(d, w, node.a, memoize);
            Relation r = extension(d, w, node.b, memoize);
            out = node.pairs_valid ? relalg::natural_join(l, r, node.pairs) : relalg::cartesian_product(l, r);
            break;
        }
        case ConceptOp::Neg: out = relalg::complement(extension(d, w, node.a, memoize), w.active_domain()); break;
        case ConceptOp::Exists: out = relalg::project_out(extension(d, w, node.a, memoize), node.n); break;
    }
    if (memoize) w.remember(u, out);
    return out;
}

bool matches_atom(prp::Domain& d, const World& w, Concept atom, const Tuple& fact) {
    const prp::ConceptNode node = d.node(atom);
    if (node.op != ConceptOp::Atom) throw ConstructionError("not an atomic concept");
    bool found = false;
    match_fact(d, w, node, fact, [&](const prp::Assignment&) { found = true; });
    return found;
}

World set_base_extension(prp::Domain& d, const World& w, Concept u, const Relation& r) {
    const prp::ConceptNode node = d.node(u);
    if (node.op != ConceptOp::Atom) throw ConstructionError("base extensions are set on atomic concepts only");
    if (node.pred == kKnowPredicate || node.pred == syntax::kIdentityPredicate)
        throw ConstructionError(node.pred.str() + " cannot be given a base extension");
    if (r.arity() != node.arity)
        throw ConstructionError("relation of arity " + std::to_string(r.arity()) + " for a concept of arity " +
                                std::to_string(node.arity));
    Relation table(node.pred.arity);
    if (const Relation* cur = w.facts_for(node.pred))
        for (const auto& t : cur->tuples())
            if (!matches_atom(d, w, u, t)) table.insert(t);
    for (const auto& row : r.tuples()) {
        prp::Assignment env;
        for (std::size_t i = 0; i < node.vars.size(); ++i) env[node.vars[i]] = row[i];
        Tuple fact;
        for (const auto& a : node.args) {
            switch (a.kind) {
                case AtomArg::Kind::Var: fact.push_back(env.at(a.var)); break;
                case AtomArg::Kind::Element: fact.push_back(a.element); break;
                case AtomArg::Kind::OpenAbstraction:
                    fact.push_back(d.extend_assignment(env, abstraction_term(d, a)));
                    break;
            }
        }
        table.insert(std::move(fact));
    }
    return w.with_facts(node.pred, std::move(table));
}

bool eval_sentence(prp::Domain& d, const World& w, const syntax::Formula& f) {
    if (!f.is_sentence()) throw ConstructionError("eval needs a sentence; free: ?" + f.free_vars().front().name);
    return relalg::truth_collapse(extension(d, w, d.interpret(f))).is_true();
}

std::vector<prp::Assignment> satisfying_assignments(prp::Domain& d, const World& w, const syntax::Formula& f,
                                                    const std::vector<syntax::Variable>& alpha) {
    const auto& free = f.free_vars();
    if (std::set<syntax::Variable>(alpha.begin(), alpha.end()) != std::set<syntax::Variable>(free.begin(), free.end()) ||
        alpha.size() != free.size())
        throw ConstructionError("alpha must list exactly the free variables of the formula");
    std::vector<prp::Assignment> out;
    const Relation ext = extension(d, w, d.interpret(f));
    for (const auto& row : ext.tuples()) {
        prp::Assignment g;
        for (std::size_t i = 0; i < free.size(); ++i) g[free[i].name] = row[i];
        out.push_back(std::move(g));
    }
    return out;
}

}  // namespace ifol::worlds
