#pragma once

// Grounding of atomic concepts in (mock) perceptual processes, template-based
// NL -> formula parsing via spatial description clauses, NL rendering of
// formulas and Know atoms, and fuzzy emotion maps over concepts.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ifol/epistemic.hpp"
#include "ifol/prp.hpp"
#include "ifol/worlds.hpp"

namespace ifol::grounding {

enum class ProcessKind { PR, SDC, ML };

std::string_view kind_name(ProcessKind k);
ProcessKind parse_kind(std::string_view s);

/// Deterministic, table-driven procedure producing the extension of the
/// concept it is bound to.
struct Process {
    std::string name;
    ProcessKind kind = ProcessKind::ML;
    std::function<relalg::Relation(prp::Domain&, const worlds::World&, prp::Concept)> procedure;
};

class Registry {
public:
    Registry register_process(Process p) const;
    Registry bind_concept(const prp::Domain& d, prp::Concept u, const std::string& name) const;

    bool has_process(const std::string& name) const { return processes_.count(name) != 0; }
    const Process& process(const std::string& name) const;
    std::optional<std::string> binding(prp::Concept u) const;
    /// In binding order.
    const std::vector<std::pair<prp::Concept, std::string>>& bindings() const { return bindings_; }

private:
    std::map<std::string, Process> processes_;
    std::vector<std::pair<prp::Concept, std::string>> bindings_;
};

/// Runs the process bound to u and writes its output into w's base facts.
relalg::Relation run_grounding(prp::Domain& d, const Registry& reg, worlds::World& w, prp::Concept u);

/// Applies every binding in order.
worlds::World materialize(prp::Domain& d, const Registry& reg, const worlds::World& w);

// ---------------------------------------------------------------------------
// Corpus

struct Clip {
    std::string id;
    bool satisfies = false;
};

struct Corpus {
    std::vector<Clip> clips;
    std::size_t positives() const;
};

/// `clip <id> satisfies=<true|false>` lines; `#` comments.
Corpus parse_corpus(std::string_view text);
Corpus load_corpus(const std::string& path);

/// corpus.clips (every clip), corpus.matches (satisfying clips) and
/// sdc.accept (the true proposition).
Registry builtin_registry(const Corpus& corpus);

// ---------------------------------------------------------------------------
// Language

struct SDC {
    std::optional<std::string> figure;
    std::optional<std::string> verb;
    std::optional<std::string> spatial_relation;
    std::optional<std::string> landmark;
};

struct VerbTemplate {
    std::string lemma;
    std::map<syntax::Tense, std::string> forms;
    syntax::Predicate pred;
    std::vector<std::string> slots;
    bool imperative = false;
    std::string agent;  // imperative: filled into the agent slot
    std::string noun;   // imperative: object noun, singular
};

struct NounTemplate {
    std::string singular;
    std::string plural;
    syntax::Predicate pred;
};

/// One NL rendering rule; tense is nullopt for "*".
struct NLTemplate {
    syntax::Predicate pred;
    std::optional<syntax::Tense> tense;
    bool open = false;
    std::string text;
};

class Lexicon {
public:
    /// `verb ...` and `noun ...` lines.
    void load_sdc(std::string_view text);
    /// `<name>/<arity> <tense|*> <open|ground> = <text>` lines.
    void load_nl(std::string_view text);
    void set_label(const syntax::AbstractedTerm& t, std::string text);

    const std::vector<VerbTemplate>& verbs() const { return verbs_; }
    const std::vector<NounTemplate>& nouns() const { return nouns_; }
    const std::vector<NLTemplate>& nl() const { return nl_; }
    /// serialized term -> display text, in insertion order.
    const std::vector<std::pair<std::string, std::string>>& labels() const { return labels_; }

    std::optional<std::string> label_of(const syntax::AbstractedTerm& t) const;
    std::optional<std::string> labelled(const std::string& text) const;
    const NLTemplate* find_nl(const syntax::Predicate& p, std::optional<syntax::Tense> tense, bool open) const;

private:
    std::vector<VerbTemplate> verbs_;
    std::vector<NounTemplate> nouns_;
    std::vector<NLTemplate> nl_;
    std::vector<std::pair<std::string, std::string>> labels_;
};

/// Keyword chunking of a declarative spatial sentence.
std::vector<SDC> chunk(const Lexicon& lex, const std::vector<std::string>& words);

std::vector<std::string> words_of(std::string_view sentence);

/// Partial NL -> formula mapping. Throws NotParseable for input that does
/// not fit a registered template.
syntax::Formula pars(const Lexicon& lex, const std::vector<std::string>& words);
syntax::Formula pars(const Lexicon& lex, std::string_view sentence);

/// Template rendering. Sentences end with a period, open formulas do not.
std::string render_nl(const Lexicon& lex, const syntax::Formula& f);
std::string render_nl(const Lexicon& lex, const prp::Domain& d, const epistemic::KnowAtom& a);

// ---------------------------------------------------------------------------

class EmotionMap {
public:
    /// Throws ConstructionError unless 0 <= v <= 1.
    EmotionMap set(const std::string& kind, prp::Concept u, double v) const;
    std::optional<double> get(const std::string& kind, prp::Concept u) const;
    const std::map<std::string, std::map<prp::Concept, double>>& entries() const { return maps_; }

private:
    std::map<std::string, std::map<prp::Concept, double>> maps_;
};

}  // namespace ifol::grounding
