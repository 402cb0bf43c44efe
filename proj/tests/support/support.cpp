#include "support.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "ifol/error.hpp"

namespace ifol::testing {

using prp::Concept;
using syntax::Formula;
using syntax::FormulaKind;
using syntax::Predicate;
using syntax::Term;

Relation oracle_join(const Relation& r1, const Relation& r2, const syntax::JoinPairs& pairs) {
    const int k = r1.arity(), j = r2.arity();
    bool valid = true;
    std::set<int> left, right;
    for (const auto& [a, b] : pairs) {
        valid = valid && a >= 1 && a <= k && b >= 1 && b <= j;
        valid = valid && left.insert(a).second && right.insert(b).second;
    }
    if (!valid) right.clear();
    const auto& used = valid ? pairs : syntax::JoinPairs{};
    Relation out(k + j - static_cast<int>(used.size()));
    for (const auto& x : r1.tuples())
        for (const auto& y : r2.tuples()) {
            bool match = true;
            for (const auto& [a, b] : used) match = match && x[a - 1] == y[b - 1];
            if (!match) continue;
            relalg::Tuple t = x;
            for (int c = 1; c <= j; ++c)
                if (!right.count(c)) t.push_back(y[c - 1]);
            out.insert(t);
        }
    return out;
}

Relation oracle_complement(const Relation& r, const relalg::ActiveDomain& ad) {
    Relation out(r.arity());
    relalg::Tuple cur;
    std::function<void()> rec = [&] {
        if (static_cast<int>(cur.size()) == r.arity()) {
            if (!r.contains(cur)) out.insert(cur);
            return;
        }
        for (auto e : ad) {
            cur.push_back(e);
            rec();
            cur.pop_back();
        }
    };
    rec();
    return out;
}

Relation oracle_project(const Relation& r, int n) {
    const int k = r.arity();
    if (n < 1 || n > k) return r;
    Relation out(k - 1);
    for (const auto& t : r.tuples()) {
        relalg::Tuple s;
        for (int c = 1; c <= k; ++c)
            if (c != n) s.push_back(t[c - 1]);
        out.insert(s);
    }
    return out;
}

Relation oracle_union(const std::vector<Relation>& rs) {
    Relation out(rs.front().arity());
    for (const auto& r : rs)
        for (const auto& t : r.tuples()) out.insert(t);
    return out;
}

namespace {

using Env = std::map<std::string, Concept>;

Formula ground(const Formula& f, const prp::Domain& d, const Env& env) {
    syntax::Bindings b;
    for (const auto& v : f.free_vars()) b.emplace(v.name, d.term_of(env.at(v.name)));
    return b.empty() ? f : syntax::substitute(f, b);
}

bool tarski(prp::Domain& d, const worlds::World& w, const Formula& f, Env env) {
    switch (f.kind()) {
        case FormulaKind::Top: return true;
        case FormulaKind::Identity: {
            const Formula g = ground(f, d, env);
            return d.extend_assignment({}, g.args()[0]) == d.extend_assignment({}, g.args()[1]);
        }
        case FormulaKind::Atom: {
            const Formula g = ground(f, d, env);
            relalg::Tuple t;
            for (const auto& a : g.args()) t.push_back(d.extend_assignment({}, a));
            const Relation* facts = g.predicate() == worlds::kKnowPredicate ? &w.knowledge() : w.facts_for(g.predicate());
            if (!facts) throw MissingExtension(g.predicate().str());
            return facts->contains(t);
        }
        case FormulaKind::Neg: return !tarski(d, w, f.body(), env);
        case FormulaKind::Conj: return tarski(d, w, f.lhs(), env) && tarski(d, w, f.rhs(), env);
        case FormulaKind::Exists: {
            const std::string v = f.body().free_vars()[f.index() - 1].name;
            for (Concept e : w.active_domain()) {
                env[v] = e;
                if (tarski(d, w, f.body(), env)) return true;
            }
            return false;
        }
    }
    return false;
}

}  // namespace

bool oracle_eval(prp::Domain& d, const worlds::World& w, const Formula& sentence) {
    return tarski(d, w, sentence, {});
}

// ---------------------------------------------------------------------------

Universe Generator::universe(prp::Domain& d, int max_elems, int max_tuples) {
    Universe u;
    u.preds = {{"P", 1}, {"Q", 2}, {"R", 3}, {"S", 2}, {"B", 0}};
    for (const auto& p : u.preds) d.declare(p);
    const int n = uniform(1, max_elems);
    for (int i = 0; i < n; ++i) {
        u.names.push_back("e" + std::to_string(i));
        u.elems.push_back(d.particular(u.names.back()));
        u.world = u.world.with_particular(u.elems.back());
    }
    for (const auto& p : u.preds) {
        Relation r(p.arity);
        const int count = uniform(0, max_tuples);
        for (int i = 0; i < count; ++i) {
            relalg::Tuple t;
            for (int c = 0; c < p.arity; ++c) t.push_back(u.elems[uniform(0, n - 1)]);
            r.insert(t);
        }
        u.world = u.world.with_facts(p, r);
    }
    return u;
}

Concept Generator::concept_tree(prp::Domain& d, const Universe& u, int depth, int max_arity) {
    static const std::vector<std::string> vars{"x", "y", "z"};
    for (;;) {
        Concept c;
        const int op = depth == 0 ? 0 : uniform(0, 3);
        if (op == 0) {
            const int pick = uniform(0, static_cast<int>(u.preds.size()) + 1);
            if (pick == static_cast<int>(u.preds.size())) {
                c = d.truth();
            } else if (pick == static_cast<int>(u.preds.size()) + 1) {
                c = d.identity();
            } else {
                const Predicate& p = u.preds[pick];
                std::vector<prp::AtomArg> args;
                for (int i = 0; i < p.arity; ++i) {
                    prp::AtomArg a;
                    if (coin(0.75)) {
                        a.kind = prp::AtomArg::Kind::Var;
                        a.var = vars[uniform(0, 2)];
                    } else {
                        a.kind = prp::AtomArg::Kind::Element;
                        a.element = u.elems[uniform(0, static_cast<int>(u.elems.size()) - 1)];
                    }
                    args.push_back(a);
                }
                c = d.intern_atom(p, args);
            }
        } else if (op == 1) {
            c = d.neg(concept_tree(d, u, depth - 1, max_arity));
        } else if (op == 2) {
            Concept a = concept_tree(d, u, depth - 1, max_arity);
            c = d.exists(uniform(0, d.arity(a) + 1), a);
        } else {
            Concept a = concept_tree(d, u, depth - 1, max_arity);
            Concept b = concept_tree(d, u, depth - 1, max_arity);
            syntax::JoinPairs pairs;
            const int m = uniform(0, 2);
            for (int i = 0; i < m; ++i) {
                // Occasionally out of range to exercise the product fallback.
                const int x = uniform(1, std::max(1, d.arity(a)) + (coin(0.1) ? 1 : 0));
                const int y = uniform(1, std::max(1, d.arity(b)) + (coin(0.1) ? 1 : 0));
                pairs.emplace_back(x, y);
            }
            c = d.conj(a, b, pairs);
        }
        if (d.arity(c) <= max_arity) return c;
    }
}

Formula join_shared(const Formula& l, const Formula& r) {
    syntax::JoinPairs pairs;
    const auto& lv = l.free_vars();
    const auto& rv = r.free_vars();
    for (std::size_t i = 0; i < lv.size(); ++i)
        for (std::size_t j = 0; j < rv.size(); ++j)
            if (lv[i] == rv[j]) pairs.emplace_back(static_cast<int>(i) + 1, static_cast<int>(j) + 1);
    return Formula::conj(l, r, pairs);
}

Formula Generator::atom(const Universe& u) {
    static const std::vector<std::string> vars{"x", "y", "z"};
    auto term = [&]() -> Term {
        if (coin(0.6)) return Term::var(vars[uniform(0, 2)]);
        return Term::constant(u.names[uniform(0, static_cast<int>(u.names.size()) - 1)]);
    };
    if (coin(0.1)) return Formula::identity(term(), term());
    if (coin(0.03)) return Formula::top();
    const Predicate& p = u.preds[uniform(0, static_cast<int>(u.preds.size()) - 1)];
    std::vector<Term> args;
    for (int i = 0; i < p.arity; ++i) args.push_back(term());
    return Formula::atom(p, args);
}

Formula Generator::open_formula(const Universe& u, int connectives) {
    if (connectives == 0) return atom(u);
    const int op = uniform(0, 2);
    if (op == 0) return atom(u);
    if (op == 1) {
        Formula body = open_formula(u, connectives - 1);
        if (!body.free_vars().empty() && coin(0.4))
            body = Formula::exists(uniform(1, static_cast<int>(body.free_vars().size())), body);
        return Formula::neg(body);
    }
    const int left = uniform(0, connectives - 1);
    return join_shared(open_formula(u, left), open_formula(u, connectives - 1 - left));
}

Formula Generator::formula(const Universe& u, int connectives, bool sentence) {
    Formula f = open_formula(u, connectives);
    while (sentence && !f.is_sentence()) f = Formula::exists(uniform(1, static_cast<int>(f.free_vars().size())), f);
    return f;
}

// ---------------------------------------------------------------------------

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

/// Checks every node of the tree under u against the oracle built from its
/// children's extensions.
void check_laws(prp::Domain& d, const worlds::World& w, Concept u, SuiteResult& res, std::set<Concept>& seen) {
    if (!seen.insert(u).second) return;
    const auto node = d.node(u);
    const Relation h = worlds::extension(d, w, u);
    bool ok = h.arity() == node.arity;
    std::string law;
    switch (node.op) {
        case prp::ConceptOp::Truth:
            law = "truth";
            ok = ok && h == Relation::truth(true);
            break;
        case prp::ConceptOp::Conj:
            check_laws(d, w, node.a, res, seen);
            check_laws(d, w, node.b, res, seen);
            law = "conj";
            ok = ok && h == oracle_join(worlds::extension(d, w, node.a), worlds::extension(d, w, node.b), node.pairs);
            break;
        case prp::ConceptOp::Neg:
            check_laws(d, w, node.a, res, seen);
            law = "neg";
            ok = ok && h == oracle_complement(worlds::extension(d, w, node.a), w.active_domain());
            break;
        case prp::ConceptOp::Exists: {
            check_laws(d, w, node.a, res, seen);
            law = "exists";
            const Relation inner = worlds::extension(d, w, node.a);
            Relation want = oracle_project(inner, node.n);
            if (inner.arity() == 1) want = Relation::truth(!inner.empty());
            ok = ok && h == want;
            break;
        }
        default: return;
    }
    if (!ok) {
        ++res.failures;
        if (res.first_failure.empty()) res.first_failure = law + " law fails at concept #" + std::to_string(u.value);
    }
}

}  // namespace

SuiteResult homomorphism_suite(int trees, std::uint64_t seed) {
    SuiteResult res;
    const auto t0 = Clock::now();
    Generator gen(seed);
    std::unique_ptr<prp::Domain> d;
    Universe u;
    for (int i = 0; i < trees; ++i) {
        if (i % 20 == 0) {
            d = std::make_unique<prp::Domain>();
            u = gen.universe(*d);
        }
        Concept c = gen.concept_tree(*d, u, gen.uniform(0, 4));
        std::set<Concept> seen;
        check_laws(*d, u.world, c, res, seen);
        ++res.cases;
    }
    res.seconds = since(t0);
    return res;
}

SuiteResult tarski_suite(int sentences, std::uint64_t seed) {
    SuiteResult res;
    const auto t0 = Clock::now();
    Generator gen(seed);
    std::unique_ptr<prp::Domain> d;
    Universe u;
    for (int i = 0; i < sentences; ++i) {
        if (i % 20 == 0) {
            d = std::make_unique<prp::Domain>();
            u = gen.universe(*d);
        }
        const Formula f = gen.formula(u, gen.uniform(0, 3), true);
        const bool got = worlds::eval_sentence(*d, u.world, f);
        const bool want = oracle_eval(*d, u.world, f);
        ++res.cases;
        if (got != want) {
            ++res.failures;
            if (res.first_failure.empty()) res.first_failure = syntax::serialize(f);
        }
    }
    res.seconds = since(t0);
    return res;
}

SuiteResult union_suite(int rounds, std::uint64_t seed) {
    SuiteResult res;
    const auto t0 = Clock::now();
    Generator gen(seed);
    for (int r = 0; r < rounds; ++r) {
        prp::Domain d;
        Universe u = gen.universe(d);
        for (int arity = 0; arity <= 3; ++arity)
            for (std::size_t size = 1; size <= 3; ++size) {
                std::vector<Concept> members;
                while (members.size() < size) {
                    Concept c = gen.concept_tree(d, u, gen.uniform(0, 2));
                    if (d.arity(c) == arity) members.push_back(c);
                }
                std::vector<Relation> hs;
                for (Concept c : members) hs.push_back(worlds::extension(d, u.world, c));
                const Relation got = worlds::extension(d, u.world, d.union_of(members));
                ++res.cases;
                if (!(got == oracle_union(hs))) {
                    ++res.failures;
                    if (res.first_failure.empty())
                        res.first_failure = "arity " + std::to_string(arity) + ", " + std::to_string(size) + " members";
                }
            }
    }
    res.seconds = since(t0);
    return res;
}

}  // namespace ifol::testing
