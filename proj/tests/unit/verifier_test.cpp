#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <unistd.h>

#include "qseries/error.hpp"
#include "qseries/verifier.hpp"

using namespace qseries;

namespace {

const std::filesystem::path kData = QSERIES_DATA_DIR;

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::Io;
}

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() / ("qseries-test-" + std::to_string(::getpid()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

} // namespace

TEST_SUITE("verifier") {

TEST_CASE("identities pass at their defaults") {
    for (const char* id : {"JTP", "T1-CLOSED", "FUNC-EQ", "THETA11"}) {
        const Report r = run_check({.id = id});
        CHECK_MESSAGE(r.verdict == Verdict::Pass, id << ": " << r.error);
        CHECK(r.checks > 0);
    }
    const Report m1 = run_check({.id = "T1-CLOSED", .params = {{"m", 1}}});
    CHECK(m1.verdict == Verdict::Pass);
}

TEST_CASE("a perturbed side fails at the perturbation") {
    const Report r = run_check({.id = "MAIN", .perturb = QExp(7)});
    REQUIRE(r.verdict == Verdict::Fail);
    REQUIRE(r.mismatch);
    CHECK(QExp::from_scaled(r.mismatch->e_num, r.mismatch->scale) == QExp(7));
    CHECK(r.mismatch->x_deg == 0);
}

TEST_CASE("specialized mode at a point") {
    const Report r = run_check({.id = "APPELL-F123", .order = 20, .mode = Mode::Specialized,
                                .point = XPoint{-1, QExp(1, 2)}});
    CHECK_MESSAGE(r.verdict == Verdict::Pass, r.error);
}

TEST_CASE("library errors become an Error verdict") {
    const Report r = run_check({.id = "T1-CLOSED", .params = {{"m", 0}}});
    CHECK(r.verdict == Verdict::Error);
    CHECK_FALSE(r.error.empty());
}

TEST_CASE("empty manifest") {
    const Summary s = run_all(parse_manifest("[]"));
    CHECK(s.reports.empty());
    CHECK(s.exit_code() == 0);
}

TEST_CASE("manifest schema errors") {
    try {
        (void)parse_manifest("[\n {\"id\": \"JTP\"},\n {\"id\": \"NOPE\"}\n]");
        FAIL("expected a schema error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Schema);
        const std::string what = e.what();
        CHECK(what.find("NOPE") != std::string::npos);
        CHECK(what.find("line 3") != std::string::npos);
    }
    try {
        (void)parse_manifest("[\n {\"id\": \"JTP\",,}\n]");
        FAIL("expected a schema error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Schema);
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
    CHECK(kind_of([] { (void)parse_manifest(R"([{"id": "JTP", "colour": 1}])"); }) == ErrorKind::Schema);
    CHECK(kind_of([] { (void)parse_manifest(R"([{"id": "JTP", "params": {"bogus": 1}}])"); }) ==
          ErrorKind::Schema);
    CHECK(kind_of([] { (void)parse_manifest(R"([{"id": "JTP", "order": -1}])"); }) == ErrorKind::Schema);
}

TEST_CASE("every catalogued identity is exercised by the shipped manifest") {
    const auto instances = load_manifest(kData / "manifest.json");
    std::set<std::string> seen;
    for (const auto& inst : instances) seen.insert(inst.id);
    for (const auto& def : identity_catalog()) CHECK_MESSAGE(seen.contains(def.id), def.id);
}

TEST_CASE("reports do not depend on the number of workers") {
    const auto instances = parse_manifest(R"([
        {"id": "JTP", "order": 20},
        {"id": "T1-CLOSED", "params": {"m": 2}},
        {"id": "MAIN", "perturb": "5"},
        {"id": "V-ELLIPTIC", "params": {"t": 3}},
        {"id": "Y-EXPANSION", "params": {"t": 2}}
    ])");
    const std::string serial = summary_json(run_all(instances, 1), false);
    const std::string parallel = summary_json(run_all(instances, 4), false);
    CHECK(serial == parallel);
    CHECK(run_all(instances, 4).exit_code() == 1);
}

TEST_CASE("cleared bivariate sides have integral coefficients") {
    const auto integral = [](const Series& s) {
        for (const auto& [e, p] : s.terms())
            for (const auto& [d, c] : p.terms())
                if (c.get_den() != 1) return false;
        return true;
    };
    for (const IdentityDef& def : identity_catalog()) {
        if (!def.bivariate) continue;
        const Evaluator ev(def.scale(def.defaults), QExp(10));
        for (const Check& c : def.build(def.defaults, ev)) {
            CHECK_MESSAGE(integral(c.lhs), def.id << " " << c.label);
            CHECK_MESSAGE(integral(c.rhs), def.id << " " << c.label);
        }
    }
}

TEST_CASE("series printing") {
    CHECK(print_series("pochhammer", series_defaults("pochhammer"), 4) ==
          "scale=1 order=4\n0 0 1/1\n1 0 -1/1\n2 0 -1/1\n");
    Params h = series_defaults("H");
    h["n"] = 1;
    CHECK(print_series("H", h, 10) == "scale=1 order=inf\n0 0 1/1\n2 0 1/1\n");
    const std::string json = print_series("pochhammer", series_defaults("pochhammer"), 3, SeriesFormat::Json);
    CHECK(json.find("\"scale\"") != std::string::npos);
    CHECK(json.find("\"-1/1\"") != std::string::npos);
    CHECK(kind_of([] { (void)series_defaults("nope"); }) == ErrorKind::UnknownName);
}

TEST_CASE("golden files") {
    for (const auto& entry : golden_entries()) {
        const GoldenResult r = golden_compare(entry, kData / "golden" / "v1");
        CHECK_MESSAGE(r.ok, r.file << ": " << r.detail);
    }

    TempDir tmp;
    const GoldenEntry& entry = golden_entries().front();
    golden_bless(entry, tmp.path);
    CHECK(golden_compare(entry, tmp.path).ok);

    const auto file = tmp.path / entry.file_name();
    std::vector<std::string> lines;
    {
        std::ifstream in(file);
        for (std::string line; std::getline(in, line);) lines.push_back(line);
    }
    REQUIRE(lines.size() > 3);
    lines[3] = "999 0 1/1";
    {
        std::ofstream out(file);
        for (const auto& line : lines) out << line << '\n';
    }
    const GoldenResult bad = golden_compare(entry, tmp.path);
    CHECK_FALSE(bad.ok);
    CHECK(bad.line == 4);

    std::filesystem::remove(file);
    CHECK(kind_of([&] { (void)golden_compare(entry, tmp.path); }) == ErrorKind::Io);
}

}
