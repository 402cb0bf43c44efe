#include "ifol/relalg.hpp"

#include <map>

#include "ifol/error.hpp"

namespace ifol::relalg {

Relation::Relation(int arity, std::set<Tuple> tuples) : arity_(arity) {
    for (auto& t : tuples) insert(t);
}

Relation Relation::truth(bool value) {
    Relation r(0);
    if (value) r.insert({});
    return r;
}

void Relation::insert(Tuple t) {
    if (static_cast<int>(t.size()) != arity_)
        throw ConstructionError("tuple of length " + std::to_string(t.size()) + " in a relation of arity " +
                                std::to_string(arity_));
    tuples_.insert(std::move(t));
}

Relation cartesian_product(const Relation& r1, const Relation& r2) {
    Relation out(r1.arity() + r2.arity());
    for (const auto& a : r1.tuples())
        for (const auto& b : r2.tuples()) {
            Tuple t = a;
            t.insert(t.end(), b.begin(), b.end());
            out.insert(std::move(t));
        }
    return out;
}

Relation natural_join(const Relation& r1, const Relation& r2, const syntax::JoinPairs& pairs) {
    if (pairs.empty()) return cartesian_product(r1, r2);
    const int k = r1.arity(), j = r2.arity();
    std::vector<bool> joined(j, false);
    std::vector<bool> used_left(k, false);
    for (const auto& [a, b] : pairs) {
        if (a < 1 || a > k || b < 1 || b > j)
            throw ConstructionError("join pair (" + std::to_string(a) + "," + std::to_string(b) +
                                    ") out of range for arities " + std::to_string(k) + " and " + std::to_string(j));
        if (used_left[a - 1] || joined[b - 1]) throw ConstructionError("join pairs reuse a column");
        used_left[a - 1] = true;
        joined[b - 1] = true;
    }
    // Hash r2 on its joined columns.
    std::map<Tuple, std::vector<const Tuple*>> index;
    for (const auto& t : r2.tuples()) {
        Tuple key;
        for (const auto& p : pairs) key.push_back(t[p.second - 1]);
        index[key].push_back(&t);
    }
    Relation out(k + j - static_cast<int>(pairs.size()));
    for (const auto& a : r1.tuples()) {
        Tuple key;
        for (const auto& p : pairs) key.push_back(a[p.first - 1]);
        auto it = index.find(key);
        if (it == index.end()) continue;
        for (const Tuple* b : it->second) {
            Tuple t = a;
            for (int c = 0; c < j; ++c)
                if (!joined[c]) t.push_back((*b)[c]);
            out.insert(std::move(t));
        }
    }
    return out;
}

Relation full(int arity, const ActiveDomain& ad) {
    Relation out(arity);
    if (arity == 0) {
        out.insert({});
        return out;
    }
    const std::vector<Handle> elems(ad.begin(), ad.end());
    if (elems.empty()) return out;
    std::vector<std::size_t> idx(arity, 0);
    for (;;) {
        Tuple t;
        for (auto i : idx) t.push_back(elems[i]);
        out.insert(std::move(t));
        int pos = arity - 1;
        while (pos >= 0 && ++idx[pos] == elems.size()) idx[pos--] = 0;
        if (pos < 0) break;
    }
    return out;
}

Relation complement(const Relation& r, const ActiveDomain& ad) {
    if (r.arity() == 0) return Relation::truth(!r.is_true());
    for (const auto& t : r.tuples())
        for (Handle h : t)
            if (!ad.count(h))
                throw ConstructionError("complement: element #" + std::to_string(h.value) +
                                        " lies outside the active domain");
    Relation out(r.arity());
    const Relation all = full(r.arity(), ad);
    for (const auto& t : all.tuples())
        if (!r.contains(t)) out.insert(t);
    return out;
}

Relation truth_collapse(const Relation& r) { return Relation::truth(!r.empty()); }

Relation project_out(const Relation& r, int n) {
    const int k = r.arity();
    if (k >= 2 && n >= 1 && n <= k) {
        Relation out(k - 1);
        for (const auto& t : r.tuples()) {
            Tuple s = t;
            s.erase(s.begin() + (n - 1));
            out.insert(std::move(s));
        }
        return out;
    }
    if (k == 1 && n == 1) return truth_collapse(r);
    return r;
}

Relation set_union(const Relation& a, const Relation& b) {
    if (a.arity() != b.arity()) throw ConstructionError("union of relations with different arities");
    Relation out = a;
    for (const auto& t : b.tuples()) out.insert(t);
    return out;
}

}  // namespace ifol::relalg
