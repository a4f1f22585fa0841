// csr: validate, inspect, translate, compare and fuzz stable configuration
// structures from the command line.
//
// Exit codes: 0 success/equivalent, 1 negative verdict, 2 input error,
// 3 capacity guard.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "csr/corpus.hpp"
#include "csr/equivalence.hpp"
#include "csr/exchange.hpp"
#include "csr/laws.hpp"
#include "csr/moves.hpp"
#include "csr/semantics.hpp"
#include "csr/term.hpp"
#include "csr/validate.hpp"

namespace {

using namespace csr;

constexpr int exit_ok = 0;
constexpr int exit_negative = 1;
constexpr int exit_input = 2;
constexpr int exit_capacity = 3;

Limits limits_from_env() {
    Limits limits;
    if (const char* raw = std::getenv("CSR_MAX_EVENTS")) {
        int value = 0;
        try {
            value = std::stoi(raw);
        } catch (...) {
            throw InputError("CSR_MAX_EVENTS must be an integer");
        }
        if (value < 0 || value > max_event_bits) {
            throw InputError("CSR_MAX_EVENTS must be between 0 and 64");
        }
        limits.max_events = value;
        if (value <= 20) {
            limits.max_configs = std::max(limits.max_configs, 1 << value);
        } else {
            limits.max_configs = 1 << 20;
        }
    }
    return limits;
}

ConfigStructure resolve_input(const std::string& positional, const std::string& term_flag,
                              const Limits& limits) {
    if (!term_flag.empty()) return translate(term_flag, limits);
    if (positional.empty()) throw InputError("missing input (file path or --term)");
    if (positional.rfind("term:", 0) == 0) return translate(positional.substr(5), limits);
    return load_structure(positional);
}

std::string join_labels(const std::vector<std::string>& labels) {
    std::string out;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (i) out += ',';
        out += labels[i];
    }
    return out;
}

int cmd_validate(const std::string& input, const std::string& term, const Limits& limits) {
    ConfigStructure s = resolve_input(input, term, limits);
    ValidationReport report = validate(s, limits);
    std::cout << report.to_text();
    return report.stable() ? exit_ok : exit_negative;
}

void print_config_details(const ConfigStructure& s, const Configuration& x) {
    std::cout << "config " << render_configuration(x) << ":\n";
    CausalContext ctx = causality(s, x);
    std::cout << "  order:";
    if (ctx.strictly.empty()) std::cout << " (none)";
    for (const auto& [d, e] : ctx.strictly) std::cout << ' ' << d << '<' << e;
    std::cout << '\n';
    std::cout << "  concurrent:";
    if (ctx.concurrent.empty()) std::cout << " (none)";
    for (const auto& [d, e] : ctx.concurrent) std::cout << ' ' << d << "co" << e;
    std::cout << '\n';
    DepthMap dm = depths(s, x);
    std::cout << "  depths:";
    if (dm.depth.empty()) std::cout << " (none)";
    for (const auto& [id, k] : dm.depth) std::cout << ' ' << id << ':' << k;
    std::cout << '\n';
    std::cout << "  minimal: " << render_configuration(minimal_events(s, x)) << '\n';
    std::cout << "  moves:\n";
    for (Direction dir : {Direction::Forward, Direction::Reverse}) {
        for (const Move& mv : singles(s, x, dir)) std::cout << "    " << render_move(mv) << '\n';
        for (const Move& mv : steps(s, x, dir)) std::cout << "    " << render_move(mv) << '\n';
        for (const Move& mv : depth_singles(s, x, dir)) {
            std::cout << "    " << render_move(mv) << '\n';
        }
        for (const Move& mv : special_steps(s, x, dir, StepConstraint::Homogeneous)) {
            std::cout << "    " << render_move(mv) << '\n';
        }
        for (const Move& mv : special_steps(s, x, dir, StepConstraint::EquidepthHomogeneous)) {
            std::cout << "    " << render_move(mv) << '\n';
        }
    }
}

int cmd_info(const std::string& input, const std::string& term, const std::string& config,
             const Limits& limits) {
    ConfigStructure s = resolve_input(input, term, limits);
    ValidationReport report = validate(s, limits);
    if (!report.stable()) {
        std::cout << report.to_text();
        std::cout << "structure is not stable\n";
        return exit_negative;
    }

    std::cout << "events (" << s.event_count() << "):";
    for (const Event& e : s.events()) std::cout << ' ' << e.id << ':' << e.label;
    std::cout << '\n';
    std::cout << "configurations (" << s.config_count() << "):";
    for (Mask m : s.configs()) std::cout << ' ' << s.render(m);
    std::cout << '\n';

    AutoConcurrencyReport ac = auto_concurrency(s, limits);
    std::cout << "auto-concurrency: " << (ac.has_auto_concurrency ? "yes" : "no");
    if (ac.auto_witness) {
        std::cout << " [X=" << render_configuration(ac.auto_witness->configuration) << " d="
                  << ac.auto_witness->first_event << " e=" << ac.auto_witness->second_event << "]";
    }
    std::cout << '\n';
    std::cout << "equidepth auto-concurrency: "
              << (ac.has_equidepth_auto_concurrency ? "yes" : "no");
    if (ac.equidepth_witness) {
        std::cout << " [X=" << render_configuration(ac.equidepth_witness->configuration) << " d="
                  << ac.equidepth_witness->first_event
                  << " e=" << ac.equidepth_witness->second_event << "]";
    }
    std::cout << '\n';

    if (config.empty()) return exit_ok;
    if (config == "all") {
        for (Mask m : s.configs()) print_config_details(s, s.ids_of(m));
        return exit_ok;
    }
    Configuration ids;
    if (config != "-") {
        std::stringstream ss(config);
        std::string id;
        while (std::getline(ss, id, ',')) {
            if (!id.empty()) ids.push_back(id);
        }
    }
    std::sort(ids.begin(), ids.end());
    if (!s.config_index(ids)) {
        throw InputError(render_configuration(ids) + " is not a configuration of the structure");
    }
    print_config_details(s, ids);
    return exit_ok;
}

int cmd_check(const std::string& eq, const std::string& left_in, const std::string& right_in,
              const std::string& term, const std::string& term2, bool witness, bool json,
              const Limits& limits) {
    ConfigStructure left = resolve_input(left_in, term, limits);
    ConfigStructure right = resolve_input(right_in, term2, limits);
    CheckOptions options;
    options.want_witness = witness;
    options.limits = limits;

    std::vector<Verdict> verdicts;
    if (eq == "all") {
        verdicts = check_all(left, right, options);
    } else {
        auto kind = kind_from_name(eq);
        if (!kind) throw InputError("unknown equivalence '" + eq + "'");
        verdicts.push_back(check(*kind, left, right, options));
    }

    if (json) {
        if (verdicts.size() == 1) {
            std::cout << render_verdict_json(verdicts.front());
        } else {
            std::cout << render_verdicts_json(verdicts);
        }
    } else {
        for (const Verdict& v : verdicts) {
            std::cout << render_verdict_text(v) << '\n';
            if (v.witness) {
                std::cout << "witness:\n" << render_witness_text(*v.witness, 1);
            }
        }
    }
    bool all_equivalent = true;
    for (const Verdict& v : verdicts) all_equivalent = all_equivalent && v.equivalent;
    return all_equivalent ? exit_ok : exit_negative;
}

int cmd_corpus(const Limits& limits) {
    bool all_match = true;
    std::cout << "entry                     ";
    for (EquivalenceKind k : all_equivalence_kinds) {
        std::cout << ' ' << kind_name(k);
    }
    std::cout << '\n';
    for (const CorpusEntry& entry : builtin_corpus()) {
        ConfigStructure left = translate(entry.left_term, limits);
        ConfigStructure right = translate(entry.right_term, limits);
        CheckOptions options;
        options.limits = limits;
        std::vector<Verdict> verdicts = check_all(left, right, options);
        std::ostringstream row;
        row << entry.name;
        std::string name = entry.name;
        name.resize(26, ' ');
        std::cout << name;
        bool row_ok = true;
        for (const Verdict& v : verdicts) {
            bool expected = entry.expected.at(v.kind);
            std::string cell = v.equivalent ? "+" : "-";
            if (v.equivalent != expected) {
                cell += "!";
                row_ok = false;
            }
            std::string col(kind_name(v.kind));
            cell.resize(std::max(cell.size(), col.size() + 1), ' ');
            std::cout << cell;
        }
        std::cout << (row_ok ? " ok" : " MISMATCH") << '\n';
        all_match = all_match && row_ok;
    }
    std::cout << (all_match ? "corpus: all expectations met" : "corpus: expectation mismatch")
              << '\n';
    return all_match ? exit_ok : exit_negative;
}

int cmd_translate(const std::string& term, const std::string& output, const Limits& limits) {
    ConfigStructure s = translate(term, limits);
    if (output.empty()) {
        std::cout << structure_to_json(s);
    } else {
        save_structure(s, output);
    }
    return exit_ok;
}

int cmd_fuzz(const std::string& laws_arg, int count, std::uint64_t seed, int max_events,
             int alphabet, const std::string& out_dir, bool no_corpus, const Limits& limits) {
    LawParams params;
    if (!laws_arg.empty() && laws_arg != "all") {
        std::stringstream ss(laws_arg);
        std::string law;
        while (std::getline(ss, law, ',')) {
            if (!law.empty()) params.laws.push_back(law);
        }
    }
    params.count = count;
    params.seed = seed;
    params.max_events = max_events;
    params.label_alphabet = alphabet;
    params.include_corpus = !no_corpus;

    std::vector<LawReport> reports = run_laws(params, limits);
    std::size_t total_violations = 0;
    for (const LawReport& report : reports) {
        std::cout << "LAW " << report.law << ": " << report.instances << " instances, "
                  << report.violations.size() << " violations, "
                  << static_cast<long long>(report.elapsed_ms) << " ms";
        if (report.capacity_skips) std::cout << " (" << report.capacity_skips << " capacity skips)";
        std::cout << '\n';
        for (const std::string& finding : report.findings) {
            std::cout << "FINDING " << report.law << ": " << finding << '\n';
        }
        for (const LawViolation& v : report.violations) {
            total_violations += 1;
            std::cout << "VIOLATION " << report.law << " instance " << v.instance << ": "
                      << v.detail << '\n';
            std::filesystem::path dir(out_dir.empty() ? "." : out_dir);
            std::filesystem::create_directories(dir);
            std::string stem = report.law + "-" + std::to_string(v.instance);
            for (char& c : stem) {
                if (c == '=' || c == '/') c = '_';
            }
            std::ofstream((dir / (stem + "-left.cs"))) << v.left_json;
            std::ofstream((dir / (stem + "-right.cs"))) << v.right_json;
            std::cout << "  counterexample written to " << (dir / (stem + "-*.cs")).string()
                      << '\n';
        }
    }
    return total_violations == 0 ? exit_ok : exit_negative;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"stable configuration structures: validation, semantics, equivalences"};
    app.require_subcommand(1);

    std::string input, input2, term, term2, config, eq = "all", output, laws = "all", out_dir;
    bool witness = false, json = false, no_corpus = false;
    int count = 100, max_events = 8, alphabet = 3;
    std::uint64_t seed = 1;

    CLI::App* validate_cmd = app.add_subcommand("validate", "check the stability axioms");
    validate_cmd->add_option("input", input, "structure file (or term:...)");
    validate_cmd->add_option("--term", term, "inline term instead of a file");

    CLI::App* info_cmd = app.add_subcommand("info", "events, configurations, causality, moves");
    info_cmd->add_option("input", input, "structure file (or term:...)");
    info_cmd->add_option("--term", term, "inline term instead of a file");
    info_cmd->add_option("--config", config, "comma-separated event ids, '-' for the root, or 'all'");

    CLI::App* check_cmd = app.add_subcommand("check", "decide behavioural equivalences");
    check_cmd->add_option("--eq", eq, "ib|sb|db|rb|rsb|rhsb|rhesb|rdb|hh|all");
    check_cmd->add_option("input", input, "left structure file (or term:...)");
    check_cmd->add_option("input2", input2, "right structure file (or term:...)");
    check_cmd->add_option("--term", term, "left inline term");
    check_cmd->add_option("--term2", term2, "right inline term");
    check_cmd->add_flag("--witness", witness, "emit a distinguishing strategy when inequivalent");
    check_cmd->add_flag("--json", json, "machine-readable verdicts");

    CLI::App* corpus_cmd = app.add_subcommand("corpus", "run the built-in example corpus");

    CLI::App* translate_cmd = app.add_subcommand("translate", "term to structure file");
    translate_cmd->add_option("--term", term, "term to translate")->required();
    translate_cmd->add_option("-o,--output", output, "output file (stdout when omitted)");

    CLI::App* fuzz_cmd = app.add_subcommand("fuzz", "generate structures and test the laws");
    fuzz_cmd->add_option("--laws", laws, "comma-separated law ids or 'all'");
    fuzz_cmd->add_option("--count", count, "generated instances per law");
    fuzz_cmd->add_option("--seed", seed, "master seed");
    fuzz_cmd->add_option("--max-events", max_events, "generated structure size bound");
    fuzz_cmd->add_option("--alphabet", alphabet, "label alphabet size");
    fuzz_cmd->add_option("--out", out_dir, "directory for counterexample files");
    fuzz_cmd->add_flag("--no-corpus", no_corpus, "skip the built-in corpus pairs");

    CLI11_PARSE(app, argc, argv);

    try {
        Limits limits = limits_from_env();
        if (validate_cmd->parsed()) return cmd_validate(input, term, limits);
        if (info_cmd->parsed()) return cmd_info(input, term, config, limits);
        if (check_cmd->parsed()) {
            return cmd_check(eq, input, input2, term, term2, witness, json, limits);
        }
        if (corpus_cmd->parsed()) return cmd_corpus(limits);
        if (translate_cmd->parsed()) return cmd_translate(term, output, limits);
        if (fuzz_cmd->parsed()) {
            return cmd_fuzz(laws, count, seed, max_events, alphabet, out_dir, no_corpus, limits);
        }
    } catch (const csr::CapacityError& e) {
        std::cerr << "capacity error: " << e.what() << '\n';
        return exit_capacity;
    } catch (const csr::InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_input;
    }
    return exit_input;
}
