#include "ringlab/cli.hpp"

#include <chrono>
#include <ostream>

#include <CLI11.hpp>

#include "ringlab/acceptance.hpp"
#include "ringlab/error.hpp"
#include "ringlab/report.hpp"

namespace ringlab::cli {

namespace {

using report::Json;

constexpr int kOk = 0, kFailed = 1, kUsage = 2;

struct Args {
    std::string ring, ring_file, element, format = "json", report_path;
    int theorem = 4;
    std::size_t levels = 0;
    unsigned jobs = 1;
    std::vector<int> only;
};

bool usage_error(ErrorCode c) {
    switch (c) {
        case ErrorCode::ParseError:
        case ErrorCode::UnknownPreset:
        case ErrorCode::OutOfRange:
        case ErrorCode::DimensionMismatch:
        case ErrorCode::AlgebraMismatch:
        case ErrorCode::NonPrimeModulus:
        case ErrorCode::AssociativityViolation:
        case ErrorCode::UnitViolation:
        case ErrorCode::CapExceeded: return true;
        default: return false;
    }
}

void print_text(std::ostream& out, const Json& rep) {
    out << "command: " << rep.value("command", "") << "\n";
    if (rep.contains("ring")) out << "ring: " << rep["ring"]["name"].get<std::string>() << " (p=" << rep["ring"]["p"]
                                  << ", dim=" << rep["ring"]["dim"] << ", " << rep["ring"]["hash"].get<std::string>() << ")\n";
    if (rep.contains("element")) out << "element: " << rep["element"]["text"].get<std::string>() << "\n";
    if (rep.contains("error"))
        out << "error: " << rep["error"]["code"].get<std::string>() << ": " << rep["error"]["message"].get<std::string>() << "\n";
    if (rep.contains("result")) {
        for (const auto& [k, v] : rep["result"].items()) {
            if (v.is_primitive()) out << k << ": " << v.dump() << "\n";
            else if (k == "counts" || k == "dims") out << k << ": " << v.dump() << "\n";
            else if (k == "unit_witness" && !v.is_null()) out << "unit witness: " << v["text"].get<std::string>() << "\n";
        }
    }
    if (rep.contains("criteria"))
        for (const auto& c : rep["criteria"]) out << c["line"].get<std::string>() << "\n";
    if (rep.contains("verification")) {
        const auto& ver = rep["verification"];
        std::size_t failed = 0;
        for (const auto& c : ver["checks"])
            if (!c["passed"].get<bool>()) {
                out << "FAILED " << c["name"].get<std::string>() << "\n";
                ++failed;
            }
        out << "verification: " << (ver["passed"].get<bool>() ? "passed" : "FAILED") << " (" << ver["checks"].size()
            << " checks, " << failed << " failed)\n";
    }
}

int emit(std::ostream& out, Json rep, const Args& args, double seconds) {
    rep["timing"] = Json{{"seconds", seconds}};
    if (args.format == "text")
        print_text(out, rep);
    else
        out << rep.dump(2) << "\n";
    return report::passed(rep) ? kOk : kFailed;
}

report::Context context(const Args& args) {
    if (args.ring.empty() == args.ring_file.empty())
        throw Error(ErrorCode::ParseError, "exactly one of --ring or --ring-file is required");
    auto spec = args.ring.empty() ? io::load_ring_file(args.ring_file) : io::ring_spec_from_argument(args.ring);
    auto ctx = report::make_context(std::move(spec));
    ctx.jobs = args.jobs;
    if (!args.element.empty()) ctx.element_expr = args.element;
    return ctx;
}

Element element(const report::Context& ctx, const Args& args) {
    if (args.element.empty()) throw Error(ErrorCode::ParseError, "--element is required");
    return io::parse_element(ctx.ring, args.element);
}

Json dispatch(const std::string& command, const Args& args, std::optional<report::Context>& ctx) {
    if (command == "selftest") {
        acceptance::Options opts;
        opts.jobs = std::max(1u, args.jobs);
        opts.only = args.only;
        const auto results = acceptance::run(opts);
        Json list = Json::array(), checks = Json::array();
        bool ok = !results.empty();
        for (const auto& r : results) {
            list.push_back(Json{{"id", r.id}, {"title", r.title}, {"passed", r.passed}, {"seconds", r.seconds},
                                {"budget_seconds", r.budget_seconds}, {"detail", r.detail},
                                {"line", acceptance::format_line(r)}});
            checks.push_back(Json{{"name", "criterion." + std::to_string(r.id)}, {"passed", r.passed}});
            ok = ok && r.passed;
        }
        return Json{{"tool", "ringlab"}, {"command", "selftest"}, {"criteria", list},
                    {"verification", {{"passed", ok}, {"checks", checks}}}};
    }
    if (command == "verify") {
        if (args.report_path.empty()) throw Error(ErrorCode::ParseError, "--report is required");
        return report::verify(io::load_json_file(args.report_path));
    }
    ctx = context(args);
    if (command == "describe") {
        std::optional<Element> a;
        if (!args.element.empty()) a = element(*ctx, args);
        return report::describe(*ctx, a);
    }
    if (command == "classify") return report::classify(*ctx);
    if (command == "split") return report::split(*ctx, element(*ctx, args));
    if (command == "sr1") return report::sr1(*ctx);
    if (command == "chain") {
        const auto a = element(*ctx, args);
        std::size_t levels = args.levels;
        if (levels == 0) {
            const auto n = default_levels(a);
            if (!n) throw Error(ErrorCode::ParseError, "--levels is required for an element that is not nilpotent");
            levels = *n;
        }
        return report::chain(*ctx, a, args.theorem, levels);
    }
    throw Error(ErrorCode::ParseError, "unknown command '" + command + "'");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"ringlab: decomposition chains and unit-regularity certificates over finite algebras", "ringlab"};
    app.require_subcommand(1);
    Args args;

    auto ring_opts = [&](CLI::App* sub) {
        sub->add_option("--ring", args.ring, "preset such as M(3,2), T(2,3), FpC(2,2), prod(M(2,2),T(2,2)), or inline JSON");
        sub->add_option("--ring-file", args.ring_file, "ring-spec JSON file");
        sub->add_option("--jobs", args.jobs, "worker threads for exhaustive scans")->check(CLI::Range(1u, 256u));
        sub->add_option("--format", args.format, "output format")->check(CLI::IsMember({"json", "text"}));
    };
    auto element_opt = [&](CLI::App* sub, bool required) {
        auto* o = sub->add_option("--element", args.element, "element expression: e12+e23, 2*e12, J, 1+g, [0,1,...]");
        if (required) o->required();
    };

    auto* describe = app.add_subcommand("describe", "ring summary, optionally profiling one element");
    ring_opts(describe);
    element_opt(describe, false);
    auto* classify = app.add_subcommand("classify", "profile every element of the ring");
    ring_opts(classify);
    auto* split = app.add_subcommand("split", "split a = ea + (1-e)a along the idempotent power e = a^m");
    ring_opts(split);
    element_opt(split, true);
    auto* chain = app.add_subcommand("chain", "build, verify and certify a decomposition chain");
    ring_opts(chain);
    element_opt(chain, true);
    chain->add_option("--theorem", args.theorem, "2: exchange route, 4: regular-powers route")->check(CLI::IsMember({2, 4}));
    chain->add_option("--levels", args.levels, "level count (default: nilpotency index)")->check(CLI::Range(std::size_t{1}, std::size_t{64}));
    auto* sr1 = app.add_subcommand("sr1", "exhaustive stable-range-one check");
    ring_opts(sr1);
    auto* selftest = app.add_subcommand("selftest", "run the acceptance criteria");
    selftest->add_option("--jobs", args.jobs, "worker threads")->check(CLI::Range(1u, 256u));
    selftest->add_option("--format", args.format, "output format")->check(CLI::IsMember({"json", "text"}));
    selftest->add_option("--only", args.only, "criterion ids to run")->delimiter(',');
    auto* verify = app.add_subcommand("verify", "re-verify a saved report from its own content");
    verify->add_option("--report", args.report_path, "report JSON file")->required();
    verify->add_option("--format", args.format, "output format")->check(CLI::IsMember({"json", "text"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    const auto start = std::chrono::steady_clock::now();
    auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(); };
    std::optional<report::Context> ctx;
    try {
        return emit(out, dispatch(command, args, ctx), args, elapsed());
    } catch (const Error& e) {
        err << "ringlab: " << e.what() << "\n";
        emit(out, report::failure(command, ctx ? &*ctx : nullptr, e), args, elapsed());
        return usage_error(e.code()) ? kUsage : kFailed;
    } catch (const std::exception& e) {
        err << "ringlab: internal error: " << e.what() << "\n";
        return kFailed;
    }
}

}  // namespace ringlab::cli
