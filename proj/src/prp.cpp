#include "ifol/prp.hpp"

#include <algorithm>
#include <set>

#include "ifol/error.hpp"

namespace ifol::prp {

using syntax::Formula;
using syntax::FormulaKind;
using syntax::Term;
using syntax::Variable;

namespace {

std::string key_of(const ConceptNode& n) {
    std::string k = std::to_string(static_cast<int>(n.op)) + "|";
    switch (n.op) {
        case ConceptOp::Particular: k += n.name; break;
        case ConceptOp::Truth: break;
        case ConceptOp::Atom:
            k += n.pred.str() + "(";
            for (const auto& a : n.args) {
                switch (a.kind) {
                    case AtomArg::Kind::Var: k += "v:" + a.var; break;
                    case AtomArg::Kind::Element: k += "e:" + std::to_string(a.element.value); break;
                    case AtomArg::Kind::OpenAbstraction:
                        k += "o:" + std::to_string(a.body.value) + "_";
                        for (const auto& v : a.alpha) k += v + " ";
                        k += "^";
                        for (const auto& v : a.beta) k += v + " ";
                        break;
                }
                k += ",";
            }
            k += ")";
            break;
        case ConceptOp::Conj:
            k += std::to_string(n.a.value) + "," + std::to_string(n.b.value) + syntax::serialize_pairs(n.pairs);
            break;
        case ConceptOp::Neg: k += std::to_string(n.a.value); break;
        case ConceptOp::Exists: k += std::to_string(n.n) + "," + std::to_string(n.a.value); break;
    }
    return k;
}

bool pairs_in_bounds(const syntax::JoinPairs& pairs, int k, int j) {
    std::set<int> l, r;
    for (const auto& [a, b] : pairs) {
        if (a < 1 || a > k || b < 1 || b > j) return false;
        if (!l.insert(a).second || !r.insert(b).second) return false;
    }
    return true;
}

}  // namespace

Domain::Domain() {
    empty_tuple_ = particular("<>");
    ConceptNode t;
    t.op = ConceptOp::Truth;
    truth_ = intern(std::move(t));
    identity_ = intern_atom(syntax::kIdentityPredicate,
                            {AtomArg{AtomArg::Kind::Var, "x", {}, {}, {}, {}},
                             AtomArg{AtomArg::Kind::Var, "y", {}, {}, {}, {}}});
}

Concept Domain::intern(ConceptNode node) {
    std::string key = key_of(node);
    auto it = keys_.find(key);
    if (it != keys_.end()) return it->second;
    Concept c{static_cast<std::uint32_t>(nodes_.size())};
    nodes_.push_back(std::move(node));
    keys_.emplace(std::move(key), c);
    return c;
}

Concept Domain::particular(const std::string& name) {
    if (name.empty()) throw ConstructionError("particular names are nonempty");
    auto it = particulars_.find(name);
    if (it != particulars_.end()) return it->second;
    ConceptNode n;
    n.op = ConceptOp::Particular;
    n.arity = -1;
    n.name = name;
    Concept c = intern(std::move(n));
    particulars_.emplace(name, c);
    return c;
}

std::optional<Concept> Domain::find_particular(const std::string& name) const {
    auto it = particulars_.find(name);
    if (it == particulars_.end()) return std::nullopt;
    return it->second;
}

Concept Domain::intern_atom(const syntax::Predicate& pred, const std::vector<AtomArg>& args) {
    if (static_cast<std::size_t>(pred.arity) != args.size())
        throw SignatureError("atom " + pred.str() + " built with " + std::to_string(args.size()) + " arguments");
    ConceptNode n;
    n.op = ConceptOp::Atom;
    n.pred = pred;
    n.args = args;
    auto add = [&](const std::string& v) {
        if (std::find(n.vars.begin(), n.vars.end(), v) == n.vars.end()) n.vars.push_back(v);
    };
    for (const auto& a : args) {
        if (a.kind == AtomArg::Kind::Var) add(a.var);
        if (a.kind == AtomArg::Kind::OpenAbstraction)
            for (const auto& v : a.beta) add(v);
    }
    n.arity = static_cast<int>(n.vars.size());
    return intern(std::move(n));
}

Concept Domain::conj(Concept u, Concept v, syntax::JoinPairs pairs) {
    const int k = arity(u), j = arity(v);
    if (k < 0 || j < 0) throw ConstructionError("conj is defined on concepts, not particulars");
    std::sort(pairs.begin(), pairs.end());
    ConceptNode n;
    n.op = ConceptOp::Conj;
    n.pairs_valid = pairs_in_bounds(pairs, k, j);
    n.arity = n.pairs_valid ? k + j - static_cast<int>(pairs.size()) : k + j;
    n.pairs = std::move(pairs);
    n.a = u;
    n.b = v;
    return intern(std::move(n));
}

Concept Domain::neg(Concept u) {
    if (arity(u) < 0) throw ConstructionError("neg is defined on concepts, not particulars");
    ConceptNode n;
    n.op = ConceptOp::Neg;
    n.arity = arity(u);
    n.a = u;
    return intern(std::move(n));
}

Concept Domain::exists(int index, Concept u) {
    const int k = arity(u);
    if (k < 0) throw ConstructionError("exists is defined on concepts, not particulars");
    if (index < 1 || index > k) return u;
    ConceptNode n;
    n.op = ConceptOp::Exists;
    n.arity = k - 1;
    n.n = index;
    n.a = u;
    return intern(std::move(n));
}

Concept Domain::union_of(const std::vector<Concept>& members) {
    if (members.empty()) throw ConstructionError("union of an empty set");
    const int i = arity(members.front());
    for (Concept m : members)
        if (arity(m) != i) throw ConstructionError("union members must share one arity");
    if (i < 0) throw ConstructionError("union is defined on concepts, not particulars");
    if (members.size() == 1) return members.front();
    syntax::JoinPairs diagonal;
    for (int l = 1; l <= i; ++l) diagonal.emplace_back(l, l);
    Concept acc = neg(members.back());
    for (auto it = members.rbegin() + 1; it != members.rend(); ++it) acc = conj(neg(*it), acc, diagonal);
    return neg(acc);
}

AtomArg Domain::arg_of(const Term& t) {
    AtomArg a;
    if (t.is_variable()) {
        a.kind = AtomArg::Kind::Var;
        a.var = t.variable().name;
    } else if (t.is_abstraction() && !t.abstraction().is_ground()) {
        const auto& abs = t.abstraction();
        a.kind = AtomArg::Kind::OpenAbstraction;
        a.body = interpret(abs.body());
        for (const auto& v : abs.alpha()) a.alpha.push_back(v.name);
        for (const auto& v : abs.beta()) a.beta.push_back(v.name);
    } else {
        a.kind = AtomArg::Kind::Element;
        a.element = extend_assignment({}, t);
    }
    return a;
}

Concept Domain::interpret(const Formula& f) {
    switch (f.kind()) {
        case FormulaKind::Top: return truth_;
        case FormulaKind::Atom:
        case FormulaKind::Identity: {
            if (f.kind() == FormulaKind::Atom && !signature_.declared(f.predicate()))
                throw SignatureError("undeclared predicate " + f.predicate().str());
            std::vector<AtomArg> args;
            for (const auto& t : f.args()) args.push_back(arg_of(t));
            return intern_atom(f.predicate(), args);
        }
        case FormulaKind::Conj: return conj(interpret(f.lhs()), interpret(f.rhs()), f.pairs());
        case FormulaKind::Neg: return neg(interpret(f.body()));
        case FormulaKind::Exists: return exists(f.index(), interpret(f.body()));
    }
    return truth_;
}

Concept Domain::extend_assignment(const Assignment& g, const Term& t) {
    if (t.is_variable()) {
        auto it = g.find(t.variable().name);
        if (it == g.end()) throw ConstructionError("assignment does not bind ?" + t.variable().name);
        return it->second;
    }
    if (t.is_constant()) return particular(t.constant().name);
    if (t.is_tense()) return tense(t.tense());
    const auto& abs = t.abstraction();
    if (abs.is_ground()) return interpret(abs.body());
    syntax::Bindings b;
    for (const auto& v : abs.beta()) {
        auto it = g.find(v.name);
        if (it == g.end()) throw ConstructionError("assignment does not bind beta variable ?" + v.name);
        b.emplace(v.name, term_of(it->second));
    }
    return interpret(syntax::substitute(abs.body(), b));
}

Term Domain::term_of(Concept c) const {
    const auto& n = node(c);
    if (n.op == ConceptOp::Particular) {
        if (auto t = syntax::parse_tense(n.name)) return Term(*t);
        return Term::constant(n.name);
    }
    return Term(syntax::abstract_all(recover(c)));
}

Formula Domain::recover(Concept c) const {
    const auto& n = node(c);
    switch (n.op) {
        case ConceptOp::Particular:
            throw ConstructionError("particular " + n.name + " is not the meaning of a formula");
        case ConceptOp::Truth: return Formula::top();
        case ConceptOp::Atom: {
            std::vector<Term> args;
            for (const auto& a : n.args) {
                switch (a.kind) {
                    case AtomArg::Kind::Var: args.push_back(Term::var(a.var)); break;
                    case AtomArg::Kind::Element: args.push_back(term_of(a.element)); break;
                    case AtomArg::Kind::OpenAbstraction: {
                        std::vector<Variable> alpha, beta;
                        for (const auto& v : a.alpha) alpha.push_back({v});
                        for (const auto& v : a.beta) beta.push_back({v});
                        args.push_back(Term(syntax::build_abstraction(recover(a.body), alpha, beta)));
                        break;
                    }
                }
            }
            if (n.pred == syntax::kIdentityPredicate) return Formula::identity(args[0], args[1]);
            return Formula::atom(n.pred, std::move(args));
        }
        case ConceptOp::Conj:
            if (!n.pairs_valid) throw ConstructionError("concept built with out-of-range join pairs has no formula");
            return Formula::conj(recover(n.a), recover(n.b), n.pairs);
        case ConceptOp::Neg: return Formula::neg(recover(n.a));
        case ConceptOp::Exists: return Formula::exists(n.n, recover(n.a));
    }
    return Formula::top();
}

std::string Domain::name_of(Concept c) const {
    const auto& n = node(c);
    if (n.op == ConceptOp::Particular) return n.name;
    return "#" + std::to_string(c.value);
}

}  // namespace ifol::prp
