#include <doctest.h>

#include "ifol/error.hpp"
#include "ifol/grounding.hpp"
#include "ifol/session.hpp"

using namespace ifol;
using namespace ifol::grounding;
using syntax::parse_formula;

namespace {

const char* kWalk = "The person walked from the couches in the room to the dining room table.";
const char* kWalkFormula = "Walk(in_past, person, from_the_couches_in_the_room, NULL, to_the_dining_room_table)";

Lexicon lexicon() {
    Lexicon lex;
    lex.load_sdc(session::read_file(std::string(IFOL_TEST_DATA) + "/sdc.txt"));
    lex.load_nl(session::read_file(std::string(IFOL_TEST_DATA) + "/nl.txt"));
    lex.set_label(*syntax::parse_abstraction("<<phi>>"), "φ");
    return lex;
}

Corpus three_of_five() {
    return parse_corpus("clip a satisfies=true\nclip b satisfies=false  # comment\nclip c satisfies=true\n"
                        "clip d satisfies=false\nclip e satisfies=true\n");
}

}  // namespace

TEST_CASE("registry") {
    prp::Domain d;
    d.declare({"videoclips", 1});
    d.declare({"P", 1});
    const auto reg = builtin_registry({});
    CHECK(reg.has_process("corpus.clips"));
    CHECK(reg.process("sdc.accept").kind == ProcessKind::SDC);
    CHECK_THROWS_AS(reg.register_process({"pr.none", ProcessKind::PR, {}}), ConstructionError);
    CHECK_THROWS_AS(reg.process("nope"), ConstructionError);

    const auto u = d.interpret(parse_formula("videoclips(?y)"));
    const auto bound = reg.bind_concept(d, u, "corpus.clips");
    CHECK(bound.binding(u) == "corpus.clips");
    CHECK(reg.binding(u) == std::nullopt);
    CHECK_THROWS_AS(bound.bind_concept(d, u, "pr.none"), ConstructionError);
    CHECK_THROWS_AS(reg.bind_concept(d, u, "missing"), ConstructionError);
    CHECK_THROWS_AS(reg.bind_concept(d, d.neg(u), "pr.none"), ConstructionError);
    CHECK_THROWS_AS(reg.bind_concept(d, d.identity(), "pr.none"), ConstructionError);

    worlds::World w;
    CHECK_THROWS_AS(run_grounding(d, reg, w, u), ConstructionError);
    // Arity is checked against the bound concept.
    const auto p = d.interpret(parse_formula("P(a)"));
    CHECK_THROWS_AS(run_grounding(d, bound.bind_concept(d, p, "corpus.clips"), w, p), ConstructionError);

    CHECK(parse_kind("ML") == ProcessKind::ML);
    CHECK(kind_name(ProcessKind::PR) == "PR");
    CHECK_THROWS_AS(parse_kind("XX"), Error);
}

TEST_CASE("corpus files") {
    const auto c = three_of_five();
    CHECK(c.clips.size() == 5);
    CHECK(c.positives() == 3);
    CHECK_THROWS_AS(parse_corpus("clip a satisfies=maybe"), SyntaxError);
    CHECK_THROWS_AS(parse_corpus("clip a satisfies=true\nclip a satisfies=true"), SyntaxError);
    try {
        parse_corpus("\nvideo a satisfies=true");
        FAIL("expected a syntax error");
    } catch (const SyntaxError& e) {
        CHECK(e.line() == 2);
    }
    const auto bundled = load_corpus(std::string(IFOL_TEST_DATA) + "/corpus.txt");
    CHECK(bundled.clips.size() == 10);
    CHECK(bundled.positives() == 3);
}

TEST_CASE("grounding extensions") {
    prp::Domain d;
    d.declare({"videoclips", 1});
    d.declare({"Find", 4});
    d.declare({"phi", 0});
    const auto corpus = three_of_five();
    const auto clips = d.interpret(parse_formula("videoclips(?y)"));
    const auto find = d.interpret(parse_formula("Find(in_present, me, ?y, <<phi>>)"));
    const auto reg = builtin_registry(corpus).bind_concept(d, clips, "corpus.clips").bind_concept(d, find, "corpus.matches");
    const worlds::World w = materialize(d, reg, worlds::World{});
    const auto all = worlds::extension(d, w, clips);
    const auto hits = worlds::extension(d, w, find);
    CHECK(all.size() == 5);
    CHECK(hits.size() == 3);
    for (const auto& t : hits.tuples()) CHECK(all.contains(t));
    // Rerunning the processes reproduces the same world.
    const worlds::World again = materialize(d, reg, w);
    CHECK(again.facts() == w.facts());
}

TEST_CASE("parsing declarative sentences") {
    const auto lex = lexicon();
    CHECK(syntax::serialize(pars(lex, kWalk)) == kWalkFormula);
    CHECK(syntax::serialize(pars(lex, "A dog walks to the park")) == "Walk(in_present, dog, NULL, NULL, to_the_park)");
    const auto sdcs = chunk(lex, words_of(kWalk));
    REQUIRE(sdcs.size() == 2);
    CHECK(sdcs[0].figure == "person");
    CHECK(sdcs[0].verb == "walked");
    CHECK(sdcs[0].spatial_relation == "from");
    CHECK(sdcs[0].landmark == "the_couches_in_the_room");
    CHECK(sdcs[1].landmark == "the_dining_room_table");
    CHECK_THROWS_AS(pars(lex, "colorless green ideas sleep"), NotParseable);
    CHECK_THROWS_AS(pars(lex, "The person walked to the door to the hall"), NotParseable);
    CHECK_THROWS_AS(pars(lex, ""), NotParseable);
}

TEST_CASE("parsing the retrieval command") {
    const auto lex = lexicon();
    const auto f = pars(lex, "Find videoclip such that φ in the given set of videoclips");
    CHECK(syntax::serialize(f) == "Find(in_present, me, ?y, <<phi>>) /\\{(1,1)} videoclips(?y)");
    const auto nested = pars(lex, "find videoclip such that the person walked to the door in the given set of videoclips");
    CHECK(syntax::serialize(nested) ==
          "Find(in_present, me, ?y, <<Walk(in_past, person, NULL, NULL, to_the_door)>>) /\\{(1,1)} videoclips(?y)");
    CHECK_THROWS_AS(pars(lex, "Find videoclip such that φ"), NotParseable);
}

TEST_CASE("rendering") {
    const auto lex = lexicon();
    CHECK(render_nl(lex, parse_formula(kWalkFormula)) ==
          "The person walked from the couches in the room to the dining room table.");
    CHECK(pars(lex, render_nl(lex, parse_formula(kWalkFormula))) == parse_formula(kWalkFormula));
    CHECK(render_nl(lex, parse_formula("Find(in_present, me, clip3, <<phi>>) /\\ videoclips(clip3)")) ==
          "I am (me) finding the videoclip clip3 which satisfies user requirement φ.");
    CHECK(render_nl(lex, parse_formula("Know(in_present, me, <<Find(in_present, me, ?y, <<phi>>) /\\{(1,1)} "
                                       "videoclips(?y)>>_{y})")) ==
          "I (me) know that I am (me) finding videoclip such that φ");
    CHECK(render_nl(lex, parse_formula("~ Find(in_past, me, clip1, <<phi>>)")) ==
          "it is not the case that I have found the videoclip clip1 which satisfied user requirement φ.");
    CHECK(render_nl(lex, parse_formula("clip1 = clip2")) == "clip1 is clip2.");
    CHECK_THROWS_AS(render_nl(lex, parse_formula("Walk(in_future, a, b, c, d)")), MissingTemplate);
    CHECK_THROWS_AS(render_nl(lex, parse_formula("E{1} videoclips(?y)")), MissingTemplate);
}

TEST_CASE("emotion maps") {
    prp::Domain d;
    d.declare({"P", 1});
    const auto u = d.interpret(parse_formula("P(?x)"));
    const EmotionMap empty;
    const auto m = empty.set("joy", u, 0.8);
    CHECK(m.get("joy", u) == 0.8);
    CHECK(empty.get("joy", u) == std::nullopt);
    CHECK(m.get("fear", u) == std::nullopt);
    CHECK(m.set("joy", u, 0.0).get("joy", u) == 0.0);
    CHECK_THROWS_AS(m.set("joy", u, 1.3), ConstructionError);
    CHECK_THROWS_AS(m.set("joy", u, -0.1), ConstructionError);
}
