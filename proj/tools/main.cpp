#include <unistd.h>

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "ifol/error.hpp"
#include "ifol/session.hpp"
#include "support.hpp"

namespace {

void write_trace(const std::string& path, const std::vector<std::string>& lines) {
    if (path.empty()) return;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ifol::Error("cannot write " + path);
    for (const auto& l : lines) out << l << "\n";
}

int run_demo(const ifol::session::DemoOptions& opts, const std::string& trace_out) {
    auto rep = ifol::session::run_demo(opts);
    for (const auto& l : rep.lines) std::cout << l << "\n";
    std::cout << "checks:\n";
    for (const auto& c : rep.checks) {
        std::cout << "  " << (c.ok ? "PASS " : "FAIL ") << c.name;
        if (!c.ok && !c.detail.empty()) std::cout << "  [got: " << c.detail << "]";
        std::cout << "\n";
    }
    write_trace(trace_out, rep.session->trace());
    return rep.ok() ? 0 : 1;
}

int run_repl(const ifol::session::Options& opts, const std::string& kb, const std::string& trace_out) {
    ifol::session::Session s(opts);
    if (!kb.empty()) s.load_kb(kb);
    const bool tty = isatty(STDIN_FILENO);
    std::string line;
    int errors = 0;
    for (;;) {
        if (tty) std::cout << "ifol> " << std::flush;
        if (!std::getline(std::cin, line)) break;
        if (line == "quit" || line == "exit") break;
        if (auto h = line.find('#'); h == 0) continue;
        try {
            std::cout << s.command(line);
        } catch (const ifol::Error& e) {
            ++errors;
            std::cout << "error: " << e.what() << "\n";
        }
    }
    write_trace(trace_out, s.trace());
    return tty || errors == 0 ? 0 : 1;
}

int run_check(int count, std::uint64_t seed) {
    using ifol::testing::SuiteResult;
    auto report = [](const char* name, const SuiteResult& r) {
        std::cout << (r.ok() ? "PASS " : "FAIL ") << name << ": " << r.cases << " cases, " << r.failures
                  << " failures, " << r.seconds << " s";
        if (!r.first_failure.empty()) std::cout << " (first: " << r.first_failure << ")";
        std::cout << "\n";
        return r.ok();
    };
    bool ok = report("homomorphism laws", ifol::testing::homomorphism_suite(count, seed));
    ok = report("tarski oracle", ifol::testing::tarski_suite(count, seed + 1)) && ok;
    ok = report("union law", ifol::testing::union_suite(std::max(1, count / 100), seed + 2)) && ok;
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Intensional FOL reasoner with autoepistemic memory"};
    app.require_subcommand(1);
    app.fallthrough();

    ifol::session::Options opts;
    std::string kb, trace_out;
    std::int64_t tau = 1700000000;
    app.add_option("--kb", kb, "Knowledge base file");
    app.add_option("--budget", opts.budget, "Introspection depth budget")->check(CLI::NonNegativeNumber);
    app.add_option("--trace-out", trace_out, "Write derivation records (JSON lines) here");
    app.add_option("--corpus", opts.corpus, "Clip corpus file");
    app.add_option("--data-dir", opts.data_dir, "Directory with templates and bundled fixtures");
    app.add_option("--tau", tau, "Consolidation timestamp used by the demo");

    auto* demo = app.add_subcommand("demo", "Run the video retrieval example end to end");
    auto* repl = app.add_subcommand("repl", "Read commands from standard input");
    auto* check = app.add_subcommand("check", "Run the homomorphism and oracle suites");
    int count = 1000;
    std::uint64_t seed = 7;
    check->add_option("--count", count, "Cases per suite")->check(CLI::PositiveNumber);
    check->add_option("--seed", seed, "Generator seed");

    CLI11_PARSE(app, argc, argv);
    try {
        if (*demo) {
            ifol::session::DemoOptions d;
            d.session = opts;
            d.kb = kb;
            d.tau = tau;
            return run_demo(d, trace_out);
        }
        if (*repl) return run_repl(opts, kb, trace_out);
        if (*check) return run_check(count, seed);
    } catch (const ifol::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
