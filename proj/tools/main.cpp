#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <thread>

#include "qseries/verifier.hpp"

namespace {

using namespace qseries;

// Named integer flags shared by verify and series.
struct ParamFlags {
    std::map<std::string, std::int64_t> named;
    std::vector<std::string> extra;

    void attach(CLI::App* app) {
        for (const char* key : {"t", "m", "p", "l", "k", "i", "n", "b"}) {
            named.emplace(key, 0);
            app->add_option(std::string("--") + key, named[key], std::string("parameter ") + key);
        }
        app->add_option("--param", extra, "extra parameter as name=value")->take_all();
    }

    Params collect(const CLI::App* app) const {
        Params p;
        for (const auto& [k, v] : named)
            if (app->count("--" + k) > 0) p[k] = v;
        for (const auto& kv : extra) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos) fail(ErrorKind::InvalidArgument, "--param expects name=value, got " + kv);
            p[kv.substr(0, eq)] = std::stoll(kv.substr(eq + 1));
        }
        return p;
    }
};

std::string params_str(const Params& p) {
    std::string s;
    for (const auto& [k, v] : p) s += (s.empty() ? "" : ",") + k + "=" + std::to_string(v);
    return s;
}

void print_report(const Report& r) {
    std::cout << std::left << std::setw(6) << to_string(r.verdict) << std::setw(15) << r.instance.id << " order="
              << r.instance.order << " mode=" << to_string(r.instance.mode);
    if (r.instance.point) std::cout << " x=" << r.instance.point->str();
    if (!r.instance.params.empty()) std::cout << " [" << params_str(r.instance.params) << "]";
    std::cout << " " << std::fixed << std::setprecision(1) << r.millis << "ms\n";
    if (r.mismatch) {
        const auto& m = *r.mismatch;
        std::cout << "       " << m.label << ": first mismatch at q^" << QExp::from_scaled(m.e_num, m.scale).str()
                  << " x^" << m.x_deg << " lhs=" << m.lhs << " rhs=" << m.rhs << "\n";
    }
    if (!r.error.empty()) std::cout << "       " << r.error << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"q-series identity verifier"};
    app.require_subcommand(1);

    auto* verify = app.add_subcommand("verify", "verify one identity or the manifest");
    std::string target;
    ParamFlags verify_params;
    std::int64_t order = 0;
    std::string mode = "bivariate", x_point, perturb;
    std::string manifest = std::string(QSERIES_DATA_DIR) + "/manifest.json";
    unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
    std::string json_out;
    bool no_timings = false;
    verify->add_option("id", target, "identity id, or 'all' for the manifest")->required();
    verify_params.attach(verify);
    verify->add_option("--order", order, "truncation as a power of q (0: identity default)");
    verify->add_option("--mode", mode, "bivariate or specialized");
    verify->add_option("--x-point", x_point, "specialization x = sign*q^j as 'sign,j'");
    verify->add_option("--perturb", perturb, "debug: add q^e to the first left-hand side");
    verify->add_option("--manifest", manifest, "manifest used by 'all'");
    verify->add_option("--jobs", jobs, "worker threads");
    verify->add_option("--json", json_out, "write the JSON summary here");
    verify->add_flag("--no-timings", no_timings, "omit wall times from the JSON summary");

    auto* series = app.add_subcommand("series", "print a named series");
    std::string name, format = "text";
    ParamFlags series_params;
    std::int64_t series_order = 10;
    series->add_option("name", name, "theta_pm, f_abc, f_tm, U, H, G, theta, pochhammer, V, Y")->required();
    series_params.attach(series);
    series->add_option("--order", series_order, "truncation as a power of q");
    series->add_option("--format", format, "text or json");

    auto* golden = app.add_subcommand("golden", "golden-file regression");
    std::string action, golden_name;
    std::string golden_dir = std::string(QSERIES_DATA_DIR) + "/golden/v1";
    golden->add_option("action", action, "check or bless")->required()->check(CLI::IsMember({"check", "bless"}));
    golden->add_option("name", golden_name, "series name, file name or 'all'")->required();
    golden->add_option("--dir", golden_dir, "golden directory");

    auto* list = app.add_subcommand("list", "list catalog ids");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*list) {
            for (const auto& d : identity_catalog()) std::cout << std::left << std::setw(15) << d.id << d.title << "\n";
            return 0;
        }
        if (*verify) {
            std::vector<IdentityInstance> instances;
            if (target == "all") {
                instances = load_manifest(manifest);
            } else {
                IdentityInstance inst;
                inst.id = target;
                inst.params = verify_params.collect(verify);
                inst.order = order;
                inst.mode = parse_mode(mode);
                if (!x_point.empty()) inst.point = XPoint::parse(x_point);
                if (!perturb.empty()) inst.perturb = QExp::parse(perturb);
                instances.push_back(inst);
            }
            const Summary s = run_all(instances, jobs);
            for (const auto& r : s.reports) print_report(r);
            std::cout << s.reports.size() << " checked: " << s.passed << " passed, " << s.failed << " failed, "
                      << s.errors << " errors\n";
            if (!json_out.empty()) {
                std::ofstream out(json_out);
                if (!out) fail(ErrorKind::Io, "cannot write " + json_out);
                out << summary_json(s, !no_timings) << "\n";
            }
            return s.exit_code();
        }
        if (*series) {
            std::cout << print_series(name, series_params.collect(series), series_order, parse_series_format(format));
            return 0;
        }
        int status = 0;
        bool matched = false;
        for (const auto& e : golden_entries()) {
            if (golden_name != "all" && golden_name != e.name && golden_name != e.file_name()) continue;
            matched = true;
            if (action == "bless") {
                golden_bless(e, golden_dir);
                std::cout << "blessed " << e.file_name() << "\n";
                continue;
            }
            const GoldenResult r = golden_compare(e, golden_dir);
            std::cout << (r.ok ? "pass " : "fail ") << e.file_name() << (r.ok ? "" : "  " + r.detail) << "\n";
            if (!r.ok) status = 1;
        }
        if (!matched) fail(ErrorKind::UnknownName, "no golden entry named '" + golden_name + "'");
        return status;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
}
