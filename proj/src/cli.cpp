#include "scharlau/cli.hpp"

#include "scharlau/error.hpp"
#include "scharlau/group_spec.hpp"
#include "scharlau/invariant.hpp"
#include "scharlau/modp.hpp"
#include "scharlau/sl2.hpp"
#include "scharlau/verify.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <sstream>

namespace scharlau::cli {

namespace {

struct VerifyOptions {
    std::uint64_t p = 0;
    std::string mode = "both";
    std::string certificate;
    std::size_t max_order = sl2::kDefaultEnumerationCap;
};

struct InvariantCmdOptions {
    std::string group;
    std::size_t max_order = 1000;
    bool all_subgroups = false;
    bool progress = false;
    std::string method = "auto";
};

struct LemmaOptions {
    std::uint64_t p = 0;
    std::string lemma = "all";
    std::size_t max_order = sl2::kDefaultEnumerationCap;
};

struct ScanOptions {
    std::uint64_t max = 0;
};

modp::Prime require_prime(std::uint64_t p) {
    if (!modp::is_prime(p)) throw InputError(std::to_string(p) + " is not prime");
    return modp::Prime(p);
}

int cmd_verify_identity(const VerifyOptions& o, std::ostream& out, std::ostream& err) {
    const modp::Prime p = require_prime(o.p);
    if (!p.is_17_mod_60()) throw InputError("p = " + std::to_string(o.p) + " is not 17 mod 60");
    const bool direct = o.mode == "direct" || o.mode == "both";
    const bool symbolic = o.mode == "symbolic" || o.mode == "both";
    if (!o.certificate.empty() && !direct) throw InputError("--certificate needs --mode direct or both");

    std::ostringstream report;
    bool ok = true;
    std::optional<verify::IdentityReport> symbolic_report;
    if (symbolic) {
        symbolic_report = verify::verify_symbolic(p);
        report << verify::render_report(*symbolic_report);
        ok = ok && symbolic_report->passed && symbolic_report->quarter_passed;
    }
    if (direct) {
        const sl2::Sl2Group group = sl2::enumerate(p, o.max_order);
        const auto result = verify::verify_direct(group);
        if (symbolic) report << '\n';
        report << verify::render_report(result.report);
        ok = ok && result.report.passed && result.report.quarter_passed && result.report.lemma_tables_match;
        const std::string rendered = verify::render_certificate(result.certificate, group);
        std::istringstream reread(rendered);
        const auto check = verify::check_certificate(verify::parse_certificate(reread, group), group);
        report << "certificate: " << result.certificate.lines.size() << " coset terms, re-evaluation "
               << (check.passed ? "PASS" : "FAIL") << '\n';
        for (const auto& problem : check.problems) report << "  " << problem << '\n';
        ok = ok && check.passed;
        if (symbolic_report) {
            const bool agree = symbolic_report->rhs_class_decomposition == result.report.rhs_class_decomposition &&
                               symbolic_report->c_V == result.report.c_V &&
                               symbolic_report->c_WV == result.report.c_WV &&
                               symbolic_report->c_DeltaT == result.report.c_DeltaT;
            report << "direct and symbolic agree: " << (agree ? "yes" : "no") << '\n';
            ok = ok && agree;
        }
        if (!o.certificate.empty()) {
            std::ofstream file(o.certificate, std::ios::binary);
            if (!file || !(file << rendered)) throw InputError("cannot write certificate to '" + o.certificate + "'");
            report << "certificate written to " << o.certificate << '\n';
        }
    }
    report << "RESULT: " << (ok ? "VERIFIED" : "FAILED") << '\n';
    out << report.str();
    if (!ok) err << "verification failed\n";
    return ok ? kOk : kCheckFailed;
}

// auto switches to the modular method above this order.
constexpr std::size_t kExactOrderLimit = 1000;

struct CertifiedMultiple {
    std::uint64_t value = 0;
    std::string source;
};

// A positive D with D*e in the ideal, backed by an explicit combination of
// coset sums that has just been checked.
std::optional<CertifiedMultiple> find_certified_multiple(const BuiltGroup& built) {
    const sl2::Sl2Group* sl2_group = built.sl2();
    if (sl2_group != nullptr && sl2_group->p().is_17_mod_60() &&
        built.group().order() <= sl2::kDefaultEnumerationCap) {
        const auto direct = verify::verify_direct(*sl2_group);
        const auto check = verify::check_certificate(direct.certificate, *sl2_group);
        if (direct.report.passed && check.passed) {
            return CertifiedMultiple{static_cast<std::uint64_t>(direct.certificate.lhs),
                                     "identity certificate, " + std::to_string(direct.certificate.lines.size()) +
                                         " coset sums re-evaluated"};
        }
    }
    if (auto partition = groups::find_partition(built.group())) {
        const auto witness = ideal::partition_witness(built.group(), *partition);
        if (witness.integer > 0) {
            return CertifiedMultiple{static_cast<std::uint64_t>(witness.integer),
                                     "partition witness with " + std::to_string(partition->blocks.size()) + " blocks"};
        }
    }
    return std::nullopt;
}

int cmd_invariant(const InvariantCmdOptions& o, std::ostream& out, std::ostream& err) {
    const GroupSpec spec = parse_group_spec(o.group);
    const BuiltGroup built = build_group(spec, o.max_order);
    if (built.group().order() > o.max_order) {
        throw OrderCap("group order " + std::to_string(built.group().order()) + " exceeds the cap " +
                       std::to_string(o.max_order) + " (raise it with --max-order)");
    }
    ideal::InvariantOptions options;
    options.max_order = o.max_order;
    options.all_subgroups = o.all_subgroups;
    if (o.progress) {
        options.progress = [&err](std::size_t done, std::size_t total) {
            err << "inserted " << done << " / " << total << " generators\n" << std::flush;
        };
    }
    std::optional<CertifiedMultiple> multiple;
    if (o.method == "modular" || (o.method == "auto" && built.group().order() > kExactOrderLimit)) {
        multiple = find_certified_multiple(built);
        if (!multiple && o.method == "modular") {
            throw InputError("no certified multiple of the invariant is available for " + spec.to_string());
        }
    }
    out << "group: " << spec.to_string() << '\n' << "order: " << built.group().order() << '\n';
    if (multiple) {
        options.progress_every = 20000;
        const auto stats = ideal::compute_invariant_modulo(built.group(), multiple->value, options);
        out << "certified multiple: " << multiple->value << " (" << multiple->source << ")\n"
            << ideal::format_stats(stats);
    } else {
        out << ideal::format_stats(ideal::compute_invariant(built.group(), options).stats);
    }
    return kOk;
}

int run_lemma(int lemma, const modp::Prime& p, const sl2::Sl2Group* group, std::ostream& out) {
    verify::LemmaCheck check;
    switch (lemma) {
        case 1: check = verify::check_lemma1(*group); break;
        case 2: check = verify::check_lemma2(*group); break;
        case 3: check = verify::check_lemma3(group->group()); break;
        case 4: check = verify::check_lemma4(*group, verify::default_lemma4_diagonal(p)); break;
        case 5: check = verify::check_lemma5(*group); break;
        case 6: check = verify::check_lemma6(p, group); break;
        case 7: check = verify::check_lemma7(*group); break;
        default: throw InputError("no such lemma");
    }
    out << "Lemma " << lemma << ": " << (check.passed ? "PASS" : "FAIL") << '\n';
    for (const auto& line : check.details) out << "  " << line << '\n';
    return check.passed ? kOk : kCheckFailed;
}

int cmd_lemmas(const LemmaOptions& o, std::ostream& out, std::ostream&) {
    const modp::Prime p = require_prime(o.p);
    if (p.value() == 2) throw InputError("p must be odd");
    std::vector<int> requested;
    const bool all = o.lemma == "all";
    if (all) {
        requested = {1, 2, 3, 4, 5, 6, 7};
    } else {
        int n = 0;
        try {
            n = std::stoi(o.lemma);
        } catch (const std::exception&) {
            n = 0;
        }
        if (n < 1 || n > 7 || std::to_string(n) != o.lemma) throw InputError("--lemma must be 1..7 or all");
        requested = {n};
    }
    // Decide applicability first so a bad combination fails before any work.
    std::vector<int> runnable;
    std::ostringstream report;
    report << "lemma checks at p = " << p.value() << '\n';
    for (int lemma : requested) {
        if (auto reason = verify::lemma_inapplicable(lemma, p, o.max_order)) {
            if (!all) throw InputError("Lemma " + std::to_string(lemma) + " at p = " + std::to_string(p.value()) +
                                       ": " + *reason);
            report << "Lemma " << lemma << ": SKIPPED (" << *reason << ")\n";
            continue;
        }
        runnable.push_back(lemma);
    }
    std::optional<sl2::Sl2Group> group;
    const bool needs_group = std::any_of(runnable.begin(), runnable.end(), [](int l) { return l != 6; });
    if (needs_group || sl2::sl2_order(p) <= o.max_order) group.emplace(sl2::enumerate(p, o.max_order));
    int code = kOk;
    std::ostringstream body;
    for (int lemma : runnable) {
        if (run_lemma(lemma, p, group ? &*group : nullptr, body) != kOk) code = kCheckFailed;
    }
    out << report.str() << body.str();
    out << "RESULT: " << (code == kOk ? "ALL PASS" : "FAILED") << '\n';
    return code;
}

int cmd_scan(const ScanOptions& o, std::ostream& out, std::ostream&) {
    if (o.max > 1'000'000) throw InputError("--max must be at most 1000000");
    std::ostringstream report;
    std::size_t passed = 0, failed = 0;
    const auto primes = modp::primes_17_mod_60(o.max);
    for (std::uint64_t value : primes) {
        const modp::Prime p(value);
        bool ok = true;
        std::ostringstream line;
        line << "p = " << value;
        try {
            const auto s = modp::solve_u(p);
            if (!s) throw NoSolution("no u");
            line << "  u = " << s->u << "  u^-1 = " << s->u_inv << "  half = " << s->half;
            const auto chain = modp::verify_reciprocity_chain(p);
            line << "  (-1/p)(3/p)(5/p) = (" << chain.minus_one << ")(" << chain.three << ")(" << chain.five
                 << ")";
            const auto r = verify::verify_symbolic(p);
            ok = r.passed && r.quarter_passed;
            line << "  symbolic " << (ok ? "PASS" : "FAIL");
        } catch (const Error& e) {
            ok = false;
            line << "  FAIL: " << e.what();
        }
        (ok ? passed : failed) += 1;
        report << line.str() << '\n';
    }
    report << "scanned " << primes.size() << " primes p = 17 mod 60 up to " << o.max << ": " << passed
           << " pass, " << failed << " fail\n";
    out << report.str();
    return failed == 0 ? kOk : kCheckFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Scharlau invariant toolkit"};
    app.require_subcommand(1);

    VerifyOptions verify_opts;
    auto* verify_cmd = app.add_subcommand("verify-identity", "Check (p-1)p(p+1) e as a combination of c(.) terms");
    verify_cmd->add_option("--p", verify_opts.p, "prime p = 17 mod 60")->required();
    verify_cmd->add_option("--mode", verify_opts.mode, "direct | symbolic | both")
        ->check(CLI::IsMember({"direct", "symbolic", "both"}));
    verify_cmd->add_option("--certificate", verify_opts.certificate, "write the coset certificate here");
    verify_cmd->add_option("--max-order", verify_opts.max_order, "enumeration cap for direct mode");

    InvariantCmdOptions invariant_opts;
    auto* invariant_cmd = app.add_subcommand("invariant", "Compute the Scharlau invariant by lattice reduction");
    invariant_cmd->add_option("--group", invariant_opts.group, "cyclic:N | quaternion8 | gpq:P:Q | sl2:P | table:PATH")
        ->required();
    invariant_cmd->add_option("--max-order", invariant_opts.max_order, "group order cap (default 1000)");
    invariant_cmd->add_flag("--all-subgroups", invariant_opts.all_subgroups,
                            "use cosets of every nontrivial subgroup (|G| <= 120)");
    invariant_cmd->add_flag("--progress", invariant_opts.progress, "report insertion progress on stderr");
    invariant_cmd->add_option("--method", invariant_opts.method,
                              "exact | modular | auto (modular above 1000 elements when a certified multiple exists)")
        ->check(CLI::IsMember({"exact", "modular", "auto"}));

    LemmaOptions lemma_opts;
    auto* lemmas_cmd = app.add_subcommand("lemmas", "Check the structural lemmas on SL2(Z_p)");
    lemmas_cmd->add_option("--p", lemma_opts.p, "odd prime")->required();
    lemmas_cmd->add_option("--lemma", lemma_opts.lemma, "1..7 or all");
    lemmas_cmd->add_option("--max-order", lemma_opts.max_order, "enumeration cap");

    ScanOptions scan_opts;
    auto* scan_cmd = app.add_subcommand("scan", "Symbolic checks for every prime p = 17 mod 60 up to N");
    scan_cmd->add_option("--max", scan_opts.max, "upper bound N <= 10^6")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kBadInput;
    }

    try {
        if (*verify_cmd) return cmd_verify_identity(verify_opts, out, err);
        if (*invariant_cmd) return cmd_invariant(invariant_opts, out, err);
        if (*lemmas_cmd) return cmd_lemmas(lemma_opts, out, err);
        if (*scan_cmd) return cmd_scan(scan_opts, out, err);
    } catch (const CheckFailure& e) {
        err << "error: " << e.what() << '\n';
        return kCheckFailed;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kBadInput;
    }
    return kBadInput;
}

}  // namespace scharlau::cli
