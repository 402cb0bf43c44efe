#pragma once

// Abstract syntax of first-order logic with positional join conjunction,
// positional existential quantification and abstracted (reified) terms.

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace ifol::syntax {

struct Variable {
    std::string name;

    friend auto operator<=>(const Variable&, const Variable&) = default;
};

enum class Tense { Past, Present, Future };

std::string_view tense_name(Tense t);
std::optional<Tense> parse_tense(std::string_view text);

struct Constant {
    std::string name;

    friend auto operator<=>(const Constant&, const Constant&) = default;
};

class AbstractedTerm;
using AbstractionPtr = std::shared_ptr<const AbstractedTerm>;

/// Argument of an atom or identity: a variable or a ground term.
class Term {
public:
    Term(Variable v) : value_(std::move(v)) {}
    Term(Constant c) : value_(std::move(c)) {}
    Term(Tense t) : value_(t) {}
    Term(AbstractionPtr a);

    static Term var(std::string name) { return Term(Variable{std::move(name)}); }
    static Term constant(std::string name) { return Term(Constant{std::move(name)}); }

    bool is_variable() const { return std::holds_alternative<Variable>(value_); }
    bool is_constant() const { return std::holds_alternative<Constant>(value_); }
    bool is_tense() const { return std::holds_alternative<Tense>(value_); }
    bool is_abstraction() const { return std::holds_alternative<AbstractionPtr>(value_); }

    const Variable& variable() const { return std::get<Variable>(value_); }
    const Constant& constant() const { return std::get<Constant>(value_); }
    Tense tense() const { return std::get<Tense>(value_); }
    const AbstractedTerm& abstraction() const { return *std::get<AbstractionPtr>(value_); }
    const AbstractionPtr& abstraction_ptr() const { return std::get<AbstractionPtr>(value_); }

    /// Variables that can be bound from outside: the variable itself, or an
    /// abstraction's beta list.
    std::vector<Variable> free_vars() const;
    bool is_ground() const { return free_vars().empty(); }

    friend bool operator==(const Term& a, const Term& b);

private:
    std::variant<Variable, Constant, Tense, AbstractionPtr> value_;
};

struct Predicate {
    std::string name;
    int arity = 0;

    std::string str() const { return name + "/" + std::to_string(arity); }
    friend auto operator<=>(const Predicate&, const Predicate&) = default;
};

/// Reserved predicate used for identity atoms.
inline const Predicate kIdentityPredicate{"=", 2};

/// 1-based (left column, right column) pairs, kept sorted.
using JoinPairs = std::vector<std::pair<int, int>>;

enum class FormulaKind { Atom, Identity, Conj, Neg, Exists, Top };

struct FormulaNode;

/// Immutable, structurally compared formula value.
class Formula {
public:
    static Formula top();
    static Formula atom(Predicate pred, std::vector<Term> args);
    static Formula identity(Term left, Term right);
    static Formula neg(Formula body);
    /// Eliminates the n-th (1-based) free variable of body.
    static Formula exists(int n, Formula body);
    static Formula conj(Formula lhs, Formula rhs, JoinPairs pairs);

    FormulaKind kind() const;
    const Predicate& predicate() const;
    const std::vector<Term>& args() const;
    const Formula& lhs() const;
    const Formula& rhs() const;
    const Formula& body() const;
    const JoinPairs& pairs() const;
    int index() const;

    /// Canonical tuple: each free variable once, by first appearance.
    const std::vector<Variable>& free_vars() const;
    std::size_t free_arity() const { return free_vars().size(); }
    bool is_sentence() const { return free_vars().empty(); }

    friend bool operator==(const Formula& a, const Formula& b);

private:
    explicit Formula(std::shared_ptr<const FormulaNode> node) : node_(std::move(node)) {}
    std::shared_ptr<const FormulaNode> node_;
};

/// `<<body>>_alpha^beta`. Alpha variables are bound by the term; beta ones
/// remain free and can be substituted from outside.
class AbstractedTerm {
public:
    AbstractedTerm(Formula body, std::vector<Variable> alpha, std::vector<Variable> beta)
        : body_(std::move(body)), alpha_(std::move(alpha)), beta_(std::move(beta)) {}

    const Formula& body() const { return body_; }
    const std::vector<Variable>& alpha() const { return alpha_; }
    const std::vector<Variable>& beta() const { return beta_; }
    bool is_ground() const { return beta_.empty(); }

    friend bool operator==(const AbstractedTerm& a, const AbstractedTerm& b) {
        return a.body_ == b.body_ && a.alpha_ == b.alpha_ && a.beta_ == b.beta_;
    }

private:
    Formula body_;
    std::vector<Variable> alpha_;
    std::vector<Variable> beta_;
};

std::vector<Variable> free_var_tuple(const Formula& f);

Formula build_conj(Formula lhs, Formula rhs, JoinPairs pairs);

AbstractionPtr build_abstraction(Formula body, std::vector<Variable> alpha, std::vector<Variable> beta);

/// Abstraction over every free variable of body, in canonical order.
AbstractionPtr abstract_all(Formula body);

/// Variable name -> ground replacement.
using Bindings = std::map<std::string, Term>;

/// Replaces free occurrences of the bound variables. Join pairs and
/// quantifier indices are renumbered against the shrunken free tuples.
/// Alpha variables of nested abstractions are never touched.
Formula substitute(const Formula& f, const Bindings& bindings);
Term substitute(const Term& t, const Bindings& bindings);

/// Declared predicates, used by the parser for arity checks.
class Signature {
public:
    void declare(const Predicate& p) { arities_[p.name].insert(p.arity); }
    bool declared(const Predicate& p) const;
    bool knows_name(const std::string& name) const { return arities_.count(name) != 0; }
    std::vector<Predicate> predicates() const;

private:
    std::map<std::string, std::set<int>> arities_;
};

/// Parses the text grammar documented in docs/formats.md. When sig is given,
/// every predicate must be declared there with a matching arity.
Formula parse_formula(std::string_view text, const Signature* sig = nullptr);
Term parse_term(std::string_view text, const Signature* sig = nullptr);
AbstractionPtr parse_abstraction(std::string_view text, const Signature* sig = nullptr);
/// `A => B`
std::pair<Formula, Formula> parse_rule(std::string_view text, const Signature* sig = nullptr);

std::string serialize(const Formula& f);
std::string serialize(const Term& t);
std::string serialize(const AbstractedTerm& t);
std::string serialize_pairs(const JoinPairs& pairs);

}  // namespace ifol::syntax
