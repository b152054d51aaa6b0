#include "qseries/verifier.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <numeric>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "qseries/gordon.hpp"
#include "qseries/hecke.hpp"
#include "qseries/qfunctions.hpp"

namespace qseries {

using nlohmann::json;

namespace {

constexpr int kMaxAttempts = 8;

std::string rational_str(const Rational& r) { return r.get_num().get_str() + "/" + r.get_den().get_str(); }

Params merge(const Params& defaults, const Params& overrides, const std::string& what) {
    Params out = defaults;
    for (const auto& [k, v] : overrides) {
        auto it = out.find(k);
        if (it == out.end()) fail(ErrorKind::InvalidArgument, what + " has no parameter '" + k + "'");
        it->second = v;
    }
    return out;
}

// Deficit of a check in whole q-powers against the requested order.
std::int64_t deficit(const Check& c, std::int64_t order) {
    std::int64_t worst = 0;
    for (const Series* s : {&c.lhs, &c.rhs}) {
        if (s->is_exact()) continue;
        const std::int64_t need = checked::mul(order, s->scale());
        if (s->order() < need) worst = std::max(worst, (need - s->order() + s->scale() - 1) / s->scale());
    }
    return worst;
}

std::vector<Check> build_with_margin(const IdentityDef& def, const Params& params, std::int64_t scale,
                                     std::int64_t order, const std::optional<XPoint>& point,
                                     std::optional<bool> cleared) {
    std::int64_t extra = 0;
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        const Evaluator ev(scale, QExp(order + extra), point, cleared);
        std::vector<Check> checks = def.build(params, ev);
        std::int64_t worst = 0;
        for (const auto& c : checks) worst = std::max(worst, deficit(c, order));
        if (worst == 0) return checks;
        extra += worst;
    }
    fail(ErrorKind::InsufficientPrecision,
         "could not reach q^" + std::to_string(order) + " after " + std::to_string(kMaxAttempts) + " attempts");
}

Series cut(const Series& s, std::int64_t order, bool exact) {
    return exact ? s : s.truncated(checked::mul(order, s.scale()));
}

} // namespace

std::string_view to_string(Verdict v) noexcept {
    switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    default: return "error";
    }
}

Report run_check(const IdentityInstance& instance) {
    const auto start = std::chrono::steady_clock::now();
    Report r;
    r.instance = instance;
    try {
        const IdentityDef& def = find_identity(instance.id);
        r.clearing = instance.mode == Mode::Bivariate ? def.clearing : "";
        r.instance.params = merge(def.defaults, instance.params, instance.id);
        if (r.instance.order <= 0) r.instance.order = def.default_order;
        const Params& params = r.instance.params;
        const std::int64_t order = r.instance.order;
        def.validate(params);
        if (instance.mode == Mode::Specialized) {
            if (!def.specialized) fail(ErrorKind::InvalidArgument, instance.id + " has no specialized form");
            if (!instance.point) fail(ErrorKind::InvalidArgument, "specialized mode needs an x-point");
        } else if (instance.point) {
            fail(ErrorKind::InvalidArgument, "an x-point needs specialized mode");
        }
        std::int64_t scale = def.scale(params);
        if (instance.point) scale = std::lcm(scale, instance.point->exponent.den());

        std::vector<Check> checks;
        try {
            checks = build_with_margin(def, params, scale, order, instance.point, std::nullopt);
        } catch (const Error& e) {
            // At a pole of the natural form the cleared form is still an identity of series.
            if (e.kind() != ErrorKind::SpecializationHitsZero || def.clearing.empty()) throw;
            checks = build_with_margin(def, params, scale, order, instance.point, true);
            r.clearing = def.clearing + " (natural form has a pole here)";
        }
        if (instance.perturb && !checks.empty()) {
            Series& lhs = checks.front().lhs;
            lhs.add_term(instance.perturb->on_lattice(lhs.scale()), 0, Rational(1));
        }
        r.checks = checks.size();
        for (const auto& c : checks) {
            r.lhs_terms += c.lhs.term_count();
            r.rhs_terms += c.rhs.term_count();
            const bool exact = c.lhs.is_exact() && c.rhs.is_exact();
            const DiffResult d = diff_report(cut(c.lhs, order, exact), cut(c.rhs, order, exact));
            if (!d.equal && r.verdict == Verdict::Pass) {
                r.verdict = Verdict::Fail;
                r.mismatch = Mismatch{c.label, d.scale, d.qexp, d.xdeg, rational_str(d.lhs), rational_str(d.rhs)};
            }
        }
    } catch (const Error& e) {
        r.verdict = Verdict::Error;
        r.error = e.what();
    } catch (const std::exception& e) {
        r.verdict = Verdict::Error;
        r.error = std::string("Internal: ") + e.what();
    }
    r.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return r;
}

int Summary::exit_code() const noexcept {
    if (errors > 0) return 2;
    return failed > 0 ? 1 : 0;
}

Summary run_all(const std::vector<IdentityInstance>& instances, unsigned jobs) {
    Summary s;
    s.reports.resize(instances.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < instances.size(); i = next++) s.reports[i] = run_check(instances[i]);
    };
    const unsigned n = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(instances.size())));
    {
        std::vector<std::jthread> pool;
        for (unsigned i = 1; i < n; ++i) pool.emplace_back(worker);
        worker();
    }
    for (const auto& r : s.reports) {
        if (r.verdict == Verdict::Pass) ++s.passed;
        else if (r.verdict == Verdict::Fail) ++s.failed;
        else ++s.errors;
    }
    return s;
}

// ---------------------------------------------------------------- manifest

namespace {

// Line of every top-level array element, for error messages.
std::vector<std::size_t> entry_lines(const std::string& text) {
    std::vector<std::size_t> lines;
    std::size_t line = 1;
    int depth = 0;
    bool in_string = false, escaped = false;
    for (const char ch : text) {
        if (ch == '\n') ++line;
        if (in_string) {
            if (escaped) escaped = false;
            else if (ch == '\\') escaped = true;
            else if (ch == '"') in_string = false;
            continue;
        }
        if (ch == '"') in_string = true;
        else if (ch == '[' || ch == '{') {
            if (depth == 1) lines.push_back(line);
            ++depth;
        } else if (ch == ']' || ch == '}') {
            --depth;
        }
    }
    return lines;
}

std::size_t line_of(const std::string& text, std::size_t byte) {
    const auto end = text.begin() + static_cast<std::ptrdiff_t>(std::min(byte, text.size()));
    return 1 + static_cast<std::size_t>(std::count(text.begin(), end, '\n'));
}

IdentityInstance parse_entry(const json& j) {
    if (!j.is_object()) fail(ErrorKind::Schema, "entry must be an object");
    if (!j.contains("id") || !j["id"].is_string()) fail(ErrorKind::Schema, "missing string field 'id'");
    IdentityInstance inst;
    inst.id = j["id"].get<std::string>();
    for (const auto& [key, value] : j.items()) {
        if (key == "id") continue;
        if (key == "params") {
            if (!value.is_object()) fail(ErrorKind::Schema, "'params' must be an object");
            for (const auto& [pk, pv] : value.items()) {
                if (!pv.is_number_integer()) fail(ErrorKind::Schema, "parameter '" + pk + "' must be an integer");
                inst.params[pk] = pv.get<std::int64_t>();
            }
        } else if (key == "order") {
            if (!value.is_number_integer() || value.get<std::int64_t>() < 0)
                fail(ErrorKind::Schema, "'order' must be a non-negative integer");
            inst.order = value.get<std::int64_t>();
        } else if (key == "mode") {
            if (!value.is_string()) fail(ErrorKind::Schema, "'mode' must be a string");
            inst.mode = parse_mode(value.get<std::string>());
        } else if (key == "x_point") {
            if (!value.is_string()) fail(ErrorKind::Schema, "'x_point' must be a string like \"-1,1/2\"");
            inst.point = XPoint::parse(value.get<std::string>());
        } else if (key == "perturb") {
            if (!value.is_string()) fail(ErrorKind::Schema, "'perturb' must be an exponent string");
            inst.perturb = QExp::parse(value.get<std::string>());
        } else {
            fail(ErrorKind::Schema, "unknown key '" + key + "'");
        }
    }
    const IdentityDef& def = find_identity(inst.id);
    for (const auto& [k, v] : inst.params)
        if (!def.defaults.contains(k)) fail(ErrorKind::Schema, "unknown parameter '" + k + "'");
    return inst;
}

} // namespace

std::vector<IdentityInstance> parse_manifest(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(ErrorKind::Schema, "manifest line " + std::to_string(line_of(text, e.byte > 0 ? e.byte - 1 : 0)) +
                                    ": " + e.what());
    }
    if (!doc.is_array()) fail(ErrorKind::Schema, "manifest line 1: top level must be an array");
    const auto lines = entry_lines(text);
    std::vector<IdentityInstance> out;
    for (std::size_t i = 0; i < doc.size(); ++i) {
        const std::string where = "manifest entry " + std::to_string(i) + " (line " +
                                  std::to_string(i < lines.size() ? lines[i] : 0) + ")";
        std::string id;
        if (doc[i].is_object() && doc[i].contains("id") && doc[i]["id"].is_string())
            id = " id '" + doc[i]["id"].get<std::string>() + "'";
        try {
            out.push_back(parse_entry(doc[i]));
        } catch (const Error& e) {
            fail(ErrorKind::Schema, where + id + ": " + e.what());
        }
    }
    return out;
}

std::vector<IdentityInstance> load_manifest(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::Io, "cannot read manifest " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_manifest(buf.str());
}

// ---------------------------------------------------------------- reports

namespace {

json to_json(const Report& r, bool timings) {
    json j;
    j["id"] = r.instance.id;
    j["params"] = r.instance.params;
    j["order"] = r.instance.order;
    j["mode"] = std::string(to_string(r.instance.mode));
    if (r.instance.point) j["x_point"] = r.instance.point->str();
    if (r.instance.perturb) j["perturb"] = r.instance.perturb->str();
    j["verdict"] = std::string(to_string(r.verdict));
    if (r.mismatch) {
        const Mismatch& m = *r.mismatch;
        j["mismatch"] = {{"label", m.label}, {"scale", m.scale}, {"e_num", m.e_num},
                         {"q_exp", QExp::from_scaled(m.e_num, m.scale).str()},
                         {"x_deg", m.x_deg}, {"lhs", m.lhs}, {"rhs", m.rhs}};
    }
    if (!r.error.empty()) j["error"] = r.error;
    if (!r.clearing.empty()) j["clearing"] = r.clearing;
    j["checks"] = r.checks;
    j["lhs_terms"] = r.lhs_terms;
    j["rhs_terms"] = r.rhs_terms;
    if (timings) j["millis"] = r.millis;
    return j;
}

} // namespace

std::string report_json(const Report& report, bool timings) { return to_json(report, timings).dump(2); }

std::string summary_json(const Summary& summary, bool timings) {
    json j;
    j["total"] = summary.reports.size();
    j["passed"] = summary.passed;
    j["failed"] = summary.failed;
    j["errors"] = summary.errors;
    j["reports"] = json::array();
    for (const auto& r : summary.reports) j["reports"].push_back(to_json(r, timings));
    return j.dump(2);
}

// ---------------------------------------------------------------- named series

namespace {

struct NamedSeries {
    std::string name;
    Params defaults;
    std::function<Series(const Params&, std::int64_t)> build;
};

MonomialArg arg_from(const Params& p, const std::string& prefix) {
    const std::int64_t sign = param(p, prefix + "s");
    if (sign != 1 && sign != -1) fail(ErrorKind::InvalidArgument, prefix + "s must be +1 or -1");
    return {static_cast<int>(sign), param(p, prefix + "d"), QExp(param(p, prefix + "e"))};
}

const std::vector<NamedSeries>& named() {
    static const std::vector<NamedSeries> table = {
        {"theta_pm", {{"t", 2}, {"p", 1}, {"m", 1}},
         [](const Params& p, std::int64_t n) { return theta_pm({param(p, "t"), param(p, "p"), param(p, "m")}, n); }},
        {"f_abc",
         {{"a", 1}, {"b", 2}, {"c", 1}, {"xs", 1}, {"xd", 1}, {"xe", 0}, {"ys", 1}, {"yd", 0}, {"ye", 1}, {"base", 1}},
         [](const Params& p, std::int64_t n) {
             return hecke_f_abc({param(p, "a"), param(p, "b"), param(p, "c"), arg_from(p, "x"), arg_from(p, "y"),
                                 QExp(param(p, "base"))},
                                n);
         }},
        {"f_tm", {{"t", 2}, {"m", 1}},
         [](const Params& p, std::int64_t n) { return f_tm(param(p, "t"), param(p, "m"), n); }},
        {"U", {{"t", 2}, {"m", 1}},
         [](const Params& p, std::int64_t n) { return u_series(param(p, "t"), param(p, "m"), n); }},
        {"H", {{"t", 2}, {"m", 1}, {"b", 0}, {"n", 3}},
         [](const Params& p, std::int64_t) {
             return gordon_h({param(p, "t"), param(p, "m"), static_cast<int>(param(p, "b")), param(p, "n")});
         }},
        {"G", {{"k", 1}, {"i", 1}, {"i_end", 2}, {"n", 3}},
         [](const Params& p, std::int64_t) {
             return gordon_g(param(p, "k"), param(p, "i"), param(p, "i_end"), param(p, "n"));
         }},
        {"theta", {{"xs", 1}, {"xd", 1}, {"xe", 0}, {"base", 1}},
         [](const Params& p, std::int64_t n) {
             return theta(ThetaSpec{arg_from(p, "x"), QExp(param(p, "base"))}, n);
         }},
        {"pochhammer", {{"xs", 1}, {"xd", 0}, {"xe", 1}, {"base", 1}, {"n", -1}},
         [](const Params& p, std::int64_t n) {
             const std::int64_t len = param(p, "n");
             return pochhammer(arg_from(p, "x"), QExp(param(p, "base")),
                               len < 0 ? std::nullopt : std::optional<std::int64_t>(len), n);
         }},
        {"V", {{"t", 2}}, [](const Params& p, std::int64_t n) { return v_theta(param(p, "t"), n); }},
        {"Y", {{"t", 2}}, [](const Params& p, std::int64_t n) { return y_theta(param(p, "t"), n); }},
    };
    return table;
}

const NamedSeries& find_named(const std::string& name) {
    for (const auto& n : named())
        if (n.name == name) return n;
    fail(ErrorKind::UnknownName, "unknown series name '" + name + "'");
}

} // namespace

SeriesFormat parse_series_format(std::string_view text) {
    if (text == "text") return SeriesFormat::Text;
    if (text == "json") return SeriesFormat::Json;
    fail(ErrorKind::InvalidArgument, "format must be text or json");
}

const std::vector<std::string>& series_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& n : named()) v.push_back(n.name);
        return v;
    }();
    return names;
}

const Params& series_defaults(const std::string& name) { return find_named(name).defaults; }

Series build_series(const std::string& name, const Params& params, std::int64_t order) {
    const NamedSeries& n = find_named(name);
    if (order < 0) fail(ErrorKind::InvalidArgument, "order must be non-negative");
    return n.build(merge(n.defaults, params, name), order);
}

std::string print_series(const std::string& name, const Params& params, std::int64_t order, SeriesFormat format) {
    const Series s = build_series(name, params, order);
    if (format == SeriesFormat::Text) return format_series(s);
    json j;
    j["scale"] = s.scale();
    if (s.is_exact()) j["order"] = nullptr;
    else j["order"] = s.order();
    j["terms"] = json::array();
    for (const auto& [e, p] : s.terms())
        for (const auto& [d, c] : p.terms()) j["terms"].push_back({e, d, rational_str(c)});
    return j.dump() + "\n";
}

// ---------------------------------------------------------------- golden files

std::string GoldenEntry::file_name() const {
    std::string s = name;
    for (const auto& [k, v] : params) s += "__" + k + "=" + std::to_string(v);
    return s + "__order=" + std::to_string(order) + ".txt";
}

const std::vector<GoldenEntry>& golden_entries() {
    static const std::vector<GoldenEntry> entries = {
        {"pochhammer", {{"xs", 1}, {"xd", 0}, {"xe", 1}, {"base", 1}, {"n", -1}}, 200},
        {"theta_pm", {{"t", 2}, {"p", 1}, {"m", 1}}, 100},
        {"f_tm", {{"t", 1}, {"m", 2}}, 30},
        {"f_tm", {{"t", 2}, {"m", 1}}, 20},
        {"U", {{"t", 2}, {"m", 1}}, 15},
        {"H", {{"t", 2}, {"m", 1}, {"b", 0}, {"n", 3}}, 0},
        {"G", {{"k", 2}, {"i", 2}, {"i_end", 3}, {"n", 5}}, 0},
        {"V", {{"t", 2}}, 20},
        {"Y", {{"t", 2}}, 20},
    };
    return entries;
}

GoldenResult golden_compare(const GoldenEntry& entry, const std::filesystem::path& dir) {
    GoldenResult r;
    r.file = (dir / entry.file_name()).string();
    std::ifstream in(r.file);
    if (!in) fail(ErrorKind::Io, "missing golden file " + r.file);
    std::istringstream fresh(print_series(entry.name, entry.params, entry.order));
    std::string stored_line, fresh_line;
    for (std::size_t line = 1;; ++line) {
        const bool has_stored = static_cast<bool>(std::getline(in, stored_line));
        const bool has_fresh = static_cast<bool>(std::getline(fresh, fresh_line));
        if (!has_stored && !has_fresh) break;
        if (has_stored != has_fresh || stored_line != fresh_line) {
            r.line = line;
            r.detail = "line " + std::to_string(line) + ": stored '" + (has_stored ? stored_line : "<eof>") +
                       "' regenerated '" + (has_fresh ? fresh_line : "<eof>") + "'";
            return r;
        }
    }
    r.ok = true;
    return r;
}

void golden_bless(const GoldenEntry& entry, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    const auto path = dir / entry.file_name();
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorKind::Io, "cannot write golden file " + path.string());
    out << print_series(entry.name, entry.params, entry.order);
}

} // namespace qseries
