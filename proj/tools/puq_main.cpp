// puq: command-line front end for the evolving-definitions interpreter.
//
// Exit codes: 0 success, 1 usage, 2 parse error, 3 evaluation error,
// 4 budget exceeded.

#include <pthread.h>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "puq/eval.hpp"
#include "puq/locations.hpp"
#include "puq/parse.hpp"
#include "puq/print.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitParse = 2;
constexpr int kExitEval = 3;
constexpr int kExitBudget = 4;

struct Options {
    std::string file;
    std::string expr;
    std::uint64_t max_steps = 10'000'000;
    std::uint64_t max_depth = 100'000;
    std::string output = "human";
    std::string force_mode;  // "", "bq", "puq"
    bool show_evolved = false;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Rewrites the quantifier kind of every quantified definition, so one source
// file serves both the BQ and the PUQ reading.
void force_mode(puq::SourceProgram& sp, const std::string& mode) {
    if (mode.empty()) return;
    puq::Quantifier q = mode == "bq" ? puq::Quantifier::BQ : puq::Quantifier::PUQ;
    auto rewrite = [q](puq::Definition& d) {
        if (d.quant != puq::Quantifier::Ground) d.quant = q;
    };
    for (auto& d : sp.program.defs) rewrite(d);
    for (auto& e : sp.store.class_entries)
        if (e.quant != puq::Quantifier::Ground) e.quant = q;
    std::function<void(puq::ObjectNode&)> walk = [&](puq::ObjectNode& node) {
        for (auto& d : node.defs.defs) rewrite(d);
        for (auto& [k, child] : node.children) walk(*child);
    };
    for (auto& [k, node] : sp.store.roots) walk(*node);
}

puq::SourceProgram load(const Options& opt) {
    puq::SourceProgram sp = puq::parse_program(read_file(opt.file));
    force_mode(sp, opt.force_mode);
    return sp;
}

puq::Budget budget_of(const Options& opt) { return puq::Budget::limits(opt.max_steps, opt.max_depth); }

void print_evolved(const puq::Program& program, const puq::ObjectStore& store) {
    std::cout << puq::pretty_print(program);
    if (!store.empty()) std::cout << puq::dump_store(store);
}

void print_counters(const puq::Counters& c, const std::string& prefix) {
    std::cout << prefix << "steps=" << c.steps << " body_evals_bq=" << c.body_evals_bq
              << " body_evals_puq=" << c.body_evals_puq
              << " body_evals_ground=" << c.body_evals_ground << " memo_adds=" << c.memo_adds
              << " memo_hits=" << c.memo_hits << " instantiations=" << c.instantiations
              << "\n";
}

int cmd_run(const Options& opt, bool traced) {
    puq::SourceProgram sp = load(opt);
    puq::TraceSink sink;
    if (traced) sink = [](const puq::TraceEvent& e) { std::cout << e.line << "\n"; };
    puq::EvalOutcome out =
        puq::eval(sp.program, sp.store, puq::parse_expr(opt.expr), budget_of(opt), sink);
    if (traced) print_counters(out.stats, "event=summary ");
    if (opt.output == "machine")
        std::cout << "value=" << puq::print_constant(out.value) << "\n";
    else
        std::cout << puq::print_constant(out.value) << "\n";
    if (opt.show_evolved) print_evolved(out.evolved, out.store);
    return kExitOk;
}

int cmd_bench(const Options& opt) {
    std::vector<std::string> modes;
    if (!opt.force_mode.empty())
        modes.push_back(opt.force_mode);
    else
        modes = {"bq", "puq"};
    for (const std::string& mode : modes) {
        Options o = opt;
        o.force_mode = mode;
        puq::SourceProgram sp = load(o);
        auto start = std::chrono::steady_clock::now();
        puq::EvalOutcome out =
            puq::eval(sp.program, sp.store, puq::parse_expr(opt.expr), budget_of(opt));
        auto end = std::chrono::steady_clock::now();
        double ms = std::chrono::duration<double, std::milli>(end - start).count();
        std::cout << "mode=" << mode << " value=" << puq::print_constant(out.value)
                  << " clause_evals=" << out.stats.clause_evals();
        print_counters(out.stats, " ");
        std::cout << "mode=" << mode << " wall_ms=" << ms << "\n";
    }
    return kExitOk;
}

int cmd_dump(const Options& opt) {
    puq::SourceProgram sp = load(opt);
    print_evolved(sp.program, sp.store);
    return kExitOk;
}

int cmd_repl(const Options& opt) {
    puq::Program program;
    puq::ObjectStore store;
    auto reset = [&] {
        if (!opt.file.empty()) {
            puq::SourceProgram sp = load(opt);
            program = sp.program;
            store = sp.store;
        } else {
            program = puq::Program{};
            store = puq::ObjectStore{};
        }
    };
    try {
        reset();
    } catch (const puq::ParseError& e) {
        std::cerr << opt.file << ":" << e.what() << "\n";
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    std::string line;
    std::cout << "puq> " << std::flush;
    while (std::getline(std::cin, line)) {
        if (line == ":quit") break;
        if (line == ":program") {
            std::cout << puq::pretty_print(program);
        } else if (line == ":store") {
            std::cout << puq::dump_store(store);
        } else if (line == ":reset") {
            reset();
        } else if (!line.empty() && line[0] == ':') {
            std::cout << "unknown command " << line
                      << " (:program :store :reset :quit)\n";
        } else if (!line.empty()) {
            try {
                puq::EvalOutcome out =
                    puq::eval(program, store, puq::parse_expr(line), budget_of(opt));
                std::cout << puq::print_constant(out.value) << "\n";
                program = std::move(out.evolved);
                store = std::move(out.store);
            } catch (const puq::ParseError& e) {
                std::cout << "parse error: " << e.what() << "\n";
            } catch (const puq::EvalError& e) {
                std::cout << "error: " << e.what() << "\n";
            }
        }
        std::cout << "puq> " << std::flush;
    }
    std::cout << "\n";
    return kExitOk;
}

// Deep BQ recursion is bounded by max_depth, not the host stack: commands run
// on a thread with a stack large enough for the default depth budget.
int run_on_big_stack(const std::function<int()>& body) {
    struct Ctx {
        const std::function<int()>* body;
        int result;
    } ctx{&body, kExitUsage};
    pthread_attr_t attr;
    pthread_attr_init(&attr);
    pthread_attr_setstacksize(&attr, 1ull << 30);  // 1 GiB
    pthread_t tid;
    auto trampoline = [](void* p) -> void* {
        auto* c = static_cast<Ctx*>(p);
        c->result = (*c->body)();
        return nullptr;
    };
    if (pthread_create(&tid, &attr, trampoline, &ctx) != 0) {
        pthread_attr_destroy(&attr);
        return body();  // fall back to the main stack
    }
    pthread_join(tid, nullptr);
    pthread_attr_destroy(&attr);
    return ctx.result;
}

int guarded(const Options& opt, const std::function<int()>& body) {
    return run_on_big_stack([&]() -> int {
        try {
            return body();
        } catch (const puq::ParseError& e) {
            std::cerr << opt.file << ":" << e.what() << "\n";
            return kExitParse;
        } catch (const puq::EvalError& e) {
            std::cerr << "error: " << e.what() << "\n";
            return e.kind() == puq::EvalError::Kind::BudgetExceeded ? kExitBudget : kExitEval;
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return kExitUsage;
        }
    });
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"puq - an interpreter for evolving recursive definitions"};
    app.require_subcommand(1);

    Options opt;
    if (const char* env = std::getenv("PUQ_MAX_STEPS")) opt.max_steps = std::strtoull(env, nullptr, 10);

    auto add_common = [&](CLI::App* sub, bool needs_expr) {
        sub->add_option("file", opt.file, "program file (.puq)")->required();
        auto* e = sub->add_option("--expr", opt.expr, "expression to evaluate");
        if (needs_expr) e->required();
        sub->add_option("--max-steps", opt.max_steps, "step budget");
        sub->add_option("--max-depth", opt.max_depth, "recursion depth budget");
        sub->add_option("--output", opt.output, "human|machine")
            ->check(CLI::IsMember({"human", "machine"}));
        sub->add_option("--force-mode", opt.force_mode,
                        "rewrite all quantified definitions to this kind")
            ->check(CLI::IsMember({"bq", "puq"}));
    };

    CLI::App* run = app.add_subcommand("run", "evaluate an expression against a program");
    add_common(run, true);
    run->add_flag("--show-evolved", opt.show_evolved, "print the evolved program/store");

    CLI::App* trace = app.add_subcommand("trace", "run while streaming trace events");
    add_common(trace, true);

    CLI::App* bench = app.add_subcommand("bench", "report counters and wall time per mode");
    add_common(bench, true);

    CLI::App* dump = app.add_subcommand("dump", "pretty-print a parsed program without evaluating");
    add_common(dump, false);

    CLI::App* repl = app.add_subcommand("repl", "interactive session");
    repl->add_option("file", opt.file, "program file to preload");
    repl->add_option("--max-steps", opt.max_steps, "step budget");
    repl->add_option("--max-depth", opt.max_depth, "recursion depth budget");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    if (run->parsed()) return guarded(opt, [&] { return cmd_run(opt, false); });
    if (trace->parsed()) return guarded(opt, [&] { return cmd_run(opt, true); });
    if (bench->parsed()) return guarded(opt, [&] { return cmd_bench(opt); });
    if (dump->parsed()) return guarded(opt, [&] { return cmd_dump(opt); });
    if (repl->parsed()) return run_on_big_stack([&] { return cmd_repl(opt); });
    return kExitUsage;
}
