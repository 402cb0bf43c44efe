#include "ifol/syntax.hpp"

#include <algorithm>

#include "ifol/error.hpp"

namespace ifol::syntax {

struct FormulaNode {
    FormulaKind kind = FormulaKind::Top;
    Predicate pred;
    std::vector<Term> args;
    std::optional<Formula> a;
    std::optional<Formula> b;
    JoinPairs pairs;
    int n = 0;
    std::vector<Variable> free;
};

namespace {

void append_unique(std::vector<Variable>& out, const Variable& v) {
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
}

std::vector<Variable> args_free_vars(const std::vector<Term>& args) {
    std::vector<Variable> out;
    for (const auto& t : args)
        for (const auto& v : t.free_vars()) append_unique(out, v);
    return out;
}

int position_of(const std::vector<Variable>& tuple, const Variable& v) {
    auto it = std::find(tuple.begin(), tuple.end(), v);
    return it == tuple.end() ? 0 : static_cast<int>(it - tuple.begin()) + 1;
}

std::string pair_text(const std::pair<int, int>& p) {
    return "(" + std::to_string(p.first) + "," + std::to_string(p.second) + ")";
}

}  // namespace

std::string_view tense_name(Tense t) {
    switch (t) {
        case Tense::Past: return "in_past";
        case Tense::Present: return "in_present";
        case Tense::Future: return "in_future";
    }
    return "in_present";
}

std::optional<Tense> parse_tense(std::string_view text) {
    if (text == "in_past") return Tense::Past;
    if (text == "in_present") return Tense::Present;
    if (text == "in_future") return Tense::Future;
    return std::nullopt;
}

Term::Term(AbstractionPtr a) : value_(std::move(a)) {
    if (!std::get<AbstractionPtr>(value_)) throw ConstructionError("null abstraction term");
}

std::vector<Variable> Term::free_vars() const {
    if (is_variable()) return {variable()};
    if (is_abstraction()) return abstraction().beta();
    return {};
}

bool operator==(const Term& a, const Term& b) {
    if (a.value_.index() != b.value_.index()) return false;
    if (a.is_abstraction()) return a.abstraction() == b.abstraction();
    if (a.is_variable()) return a.variable() == b.variable();
    if (a.is_constant()) return a.constant() == b.constant();
    return a.tense() == b.tense();
}

Formula Formula::top() {
    static const Formula t(std::make_shared<const FormulaNode>());
    return t;
}

Formula Formula::atom(Predicate pred, std::vector<Term> args) {
    if (pred.arity < 0 || static_cast<std::size_t>(pred.arity) != args.size())
        throw SignatureError("predicate " + pred.str() + " applied to " + std::to_string(args.size()) +
                             " arguments");
    auto node = std::make_shared<FormulaNode>();
    node->kind = FormulaKind::Atom;
    node->free = args_free_vars(args);
    node->pred = std::move(pred);
    node->args = std::move(args);
    return Formula(std::move(node));
}

Formula Formula::identity(Term left, Term right) {
    auto node = std::make_shared<FormulaNode>();
    node->kind = FormulaKind::Identity;
    node->pred = kIdentityPredicate;
    node->args = {std::move(left), std::move(right)};
    node->free = args_free_vars(node->args);
    return Formula(std::move(node));
}

Formula Formula::neg(Formula body) {
    auto node = std::make_shared<FormulaNode>();
    node->kind = FormulaKind::Neg;
    node->free = body.free_vars();
    node->a = std::move(body);
    return Formula(std::move(node));
}

Formula Formula::exists(int n, Formula body) {
    const int k = static_cast<int>(body.free_arity());
    if (n < 1 || n > k)
        throw ConstructionError("E{" + std::to_string(n) + "} out of range for free arity " + std::to_string(k));
    auto node = std::make_shared<FormulaNode>();
    node->kind = FormulaKind::Exists;
    node->n = n;
    node->free = body.free_vars();
    node->free.erase(node->free.begin() + (n - 1));
    node->a = std::move(body);
    return Formula(std::move(node));
}

Formula Formula::conj(Formula lhs, Formula rhs, JoinPairs pairs) {
    const auto& left = lhs.free_vars();
    const auto& right = rhs.free_vars();
    const int k = static_cast<int>(left.size());
    const int j = static_cast<int>(right.size());
    std::sort(pairs.begin(), pairs.end());
    std::set<int> seen_left, seen_right;
    for (const auto& p : pairs) {
        if (p.first < 1 || p.first > k || p.second < 1 || p.second > j)
            throw ConstructionError("join pair " + pair_text(p) + " out of range for free arities " +
                                    std::to_string(k) + " and " + std::to_string(j));
        if (!seen_left.insert(p.first).second || !seen_right.insert(p.second).second)
            throw ConstructionError("join pair " + pair_text(p) + " reuses a column");
        const auto& lv = left[p.first - 1];
        const auto& rv = right[p.second - 1];
        if (lv != rv)
            throw ConstructionError("join pair " + pair_text(p) + " pairs distinct variables ?" + lv.name +
                                    " and ?" + rv.name);
    }
    for (int i = 0; i < j; ++i) {
        const int pos = position_of(left, right[i]);
        if (pos != 0 && !seen_right.count(i + 1))
            throw ConstructionError("variable ?" + right[i].name + " is shared by both conjuncts but not joined");
    }
    auto node = std::make_shared<FormulaNode>();
    node->kind = FormulaKind::Conj;
    node->free = left;
    for (int i = 0; i < j; ++i)
        if (!seen_right.count(i + 1)) node->free.push_back(right[i]);
    node->pairs = std::move(pairs);
    node->a = std::move(lhs);
    node->b = std::move(rhs);
    return Formula(std::move(node));
}

FormulaKind Formula::kind() const { return node_->kind; }
const Predicate& Formula::predicate() const { return node_->pred; }
const std::vector<Term>& Formula::args() const { return node_->args; }
const Formula& Formula::lhs() const { return *node_->a; }
const Formula& Formula::rhs() const { return *node_->b; }
const Formula& Formula::body() const { return *node_->a; }
const JoinPairs& Formula::pairs() const { return node_->pairs; }
int Formula::index() const { return node_->n; }
const std::vector<Variable>& Formula::free_vars() const { return node_->free; }

bool operator==(const Formula& a, const Formula& b) {
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
        case FormulaKind::Top: return true;
        case FormulaKind::Atom:
        case FormulaKind::Identity: return a.predicate() == b.predicate() && a.args() == b.args();
        case FormulaKind::Neg: return a.body() == b.body();
        case FormulaKind::Exists: return a.index() == b.index() && a.body() == b.body();
        case FormulaKind::Conj: return a.pairs() == b.pairs() && a.lhs() == b.lhs() && a.rhs() == b.rhs();
    }
    return false;
}

std::vector<Variable> free_var_tuple(const Formula& f) { return f.free_vars(); }

Formula build_conj(Formula lhs, Formula rhs, JoinPairs pairs) {
    return Formula::conj(std::move(lhs), std::move(rhs), std::move(pairs));
}

AbstractionPtr build_abstraction(Formula body, std::vector<Variable> alpha, std::vector<Variable> beta) {
    const auto& free = body.free_vars();
    std::set<Variable> seen;
    for (const auto& v : alpha)
        if (!seen.insert(v).second) throw ConstructionError("variable ?" + v.name + " repeated in abstraction");
    for (const auto& v : beta)
        if (!seen.insert(v).second) throw ConstructionError("variable ?" + v.name + " repeated in abstraction");
    if (seen != std::set<Variable>(free.begin(), free.end()))
        throw ConstructionError("abstraction variables must partition the free variables of the body");
    if (!free.empty() && alpha.empty())
        throw ConstructionError("abstraction of an open formula needs a nonempty alpha");
    return std::make_shared<const AbstractedTerm>(std::move(body), std::move(alpha), std::move(beta));
}

AbstractionPtr abstract_all(Formula body) {
    auto alpha = body.free_vars();
    return build_abstraction(std::move(body), std::move(alpha), {});
}

namespace {

Bindings restrict_to(const Bindings& b, const std::vector<Variable>& vars) {
    Bindings out;
    for (const auto& v : vars) {
        auto it = b.find(v.name);
        if (it != b.end()) out.emplace(it->first, it->second);
    }
    return out;
}

Formula subst(const Formula& f, const Bindings& b);

Term subst_term(const Term& t, const Bindings& b) {
    if (t.is_variable()) {
        auto it = b.find(t.variable().name);
        return it == b.end() ? t : it->second;
    }
    if (!t.is_abstraction()) return t;
    const auto& a = t.abstraction();
    const Bindings inner = restrict_to(b, a.beta());
    if (inner.empty()) return t;
    std::vector<Variable> beta;
    for (const auto& v : a.beta())
        if (!inner.count(v.name)) beta.push_back(v);
    return Term(std::make_shared<const AbstractedTerm>(subst(a.body(), inner), a.alpha(), std::move(beta)));
}

Formula subst(const Formula& f, const Bindings& b) {
    if (b.empty()) return f;
    switch (f.kind()) {
        case FormulaKind::Top: return f;
        case FormulaKind::Atom:
        case FormulaKind::Identity: {
            std::vector<Term> args;
            args.reserve(f.args().size());
            for (const auto& t : f.args()) args.push_back(subst_term(t, b));
            if (f.kind() == FormulaKind::Identity) return Formula::identity(args[0], args[1]);
            return Formula::atom(f.predicate(), std::move(args));
        }
        case FormulaKind::Neg: return Formula::neg(subst(f.body(), b));
        case FormulaKind::Exists: {
            const Variable bound = f.body().free_vars()[f.index() - 1];
            Formula body = subst(f.body(), restrict_to(b, f.free_vars()));
            const int n = position_of(body.free_vars(), bound);
            return Formula::exists(n, std::move(body));
        }
        case FormulaKind::Conj: {
            const auto& left = f.lhs().free_vars();
            Formula lhs = subst(f.lhs(), restrict_to(b, left));
            Formula rhs = subst(f.rhs(), restrict_to(b, f.rhs().free_vars()));
            JoinPairs pairs;
            for (const auto& p : f.pairs()) {
                const Variable& v = left[p.first - 1];
                if (b.count(v.name)) continue;
                pairs.emplace_back(position_of(lhs.free_vars(), v), position_of(rhs.free_vars(), v));
            }
            return Formula::conj(std::move(lhs), std::move(rhs), std::move(pairs));
        }
    }
    return f;
}

void check_bindings(const Bindings& b, const std::vector<Variable>& free) {
    for (const auto& [name, term] : b) {
        if (position_of(free, Variable{name}) == 0)
            throw ConstructionError("cannot bind ?" + name + ": not a free variable");
        if (!term.is_ground()) throw ConstructionError("binding for ?" + name + " is not a ground term");
    }
}

}  // namespace

Formula substitute(const Formula& f, const Bindings& bindings) {
    check_bindings(bindings, f.free_vars());
    return subst(f, bindings);
}

Term substitute(const Term& t, const Bindings& bindings) {
    check_bindings(bindings, t.free_vars());
    return subst_term(t, bindings);
}

bool Signature::declared(const Predicate& p) const {
    auto it = arities_.find(p.name);
    return it != arities_.end() && it->second.count(p.arity) != 0;
}

std::vector<Predicate> Signature::predicates() const {
    std::vector<Predicate> out;
    for (const auto& [name, arities] : arities_)
        for (int a : arities) out.push_back({name, a});
    return out;
}

}  // namespace ifol::syntax
