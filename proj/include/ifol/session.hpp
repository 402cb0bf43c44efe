#pragma once

// A session bundles the domain, the current world, epistemic memory, the
// grounding registry, the lexicon and the emotion map, and exposes every
// operation as a textual command. KB files are sequences of such directives.

#include <cstdint>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "ifol/epistemic.hpp"
#include "ifol/grounding.hpp"

namespace ifol::session {

struct Options {
    /// Directory holding sdc.txt, nl.txt, corpus.txt and demo.kb.
    std::string data_dir;
    /// Empty selects <data_dir>/corpus.txt.
    std::string corpus;
    int budget = 3;
};

/// Compiled-in location of the bundled data files.
std::string default_data_dir();

std::string read_file(const std::string& path);

class Session {
public:
    explicit Session(Options opts = {});

    /// Executes KB directives in order. Errors carry origin:line:column.
    void load_kb_text(std::string_view text, const std::string& origin = "<kb>");
    void load_kb(const std::string& path);
    void directive(std::string_view line);

    /// One REPL command; returns its printed output.
    std::string command(std::string_view line);

    /// concepts | world | memory | kb
    std::string dump(std::string_view what) const;

    epistemic::KnowAtom experience(const syntax::AbstractedTerm& t);
    epistemic::ChainResult chain(int budget);
    void consolidate(std::int64_t tau);
    epistemic::Answer answer(const syntax::Formula& q);
    bool eval(const syntax::Formula& sentence);
    std::string render(int atom_id) const;
    syntax::Formula parse(std::string_view text) const;

    prp::Domain& domain() { return *domain_; }
    const prp::Domain& domain() const { return *domain_; }
    const worlds::World& world() const { return world_; }
    const epistemic::Memory& memory() const { return memory_; }
    const grounding::Registry& registry() const { return registry_; }
    const grounding::Lexicon& lexicon() const { return lexicon_; }
    const grounding::Corpus& corpus() const { return corpus_; }
    const grounding::EmotionMap& emotions() const { return emotions_; }
    const Options& options() const { return opts_; }
    /// Line-delimited JSON derivation records, in order.
    const std::vector<std::string>& trace() const { return trace_; }

private:
    void sync_knowledge();
    void record(const epistemic::TraceStep& step);
    void assert_facts(const syntax::Formula& f);
    relalg::Tuple tuple_of(const syntax::Formula& atom);
    std::string element(prp::Concept c) const;

    Options opts_;
    std::unique_ptr<prp::Domain> domain_;
    worlds::World world_;
    epistemic::Memory memory_;
    grounding::Registry registry_;
    grounding::Lexicon lexicon_;
    grounding::Corpus corpus_;
    grounding::EmotionMap emotions_;
    std::vector<std::string> particulars_;
    std::vector<std::string> trace_;
};

struct DemoOptions {
    Options session;
    std::string kb;  // empty: <data_dir>/demo.kb
    std::int64_t tau = 1700000000;
    std::string command = "Find videoclip such that φ in the given set of videoclips";
};

struct Check {
    std::string name;
    bool ok;
    std::string detail;
};

struct DemoReport {
    std::unique_ptr<Session> session;
    std::vector<std::string> lines;
    std::vector<Check> checks;
    std::vector<int> found_atoms;          // T_a atoms of the found-clip form
    std::vector<std::string> found_clips;  // in derivation order
    std::vector<std::string> rendered;     // "I know that I have found ..." lines
    std::vector<std::string> answers;      // "I have found ..." lines
    bool ok() const;
};

/// End-to-end video retrieval example: parse the user command, assert the
/// experience, chain, consolidate and render.
DemoReport run_demo(const DemoOptions& opts);

}  // namespace ifol::session
