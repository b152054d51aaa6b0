#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "qseries/evaluator.hpp"
#include "qseries/identities.hpp"

namespace qseries {

struct IdentityInstance {
    std::string id;
    /// Overrides of the identity's default parameters.
    Params params;
    /// Truncation as a power of q; 0 selects the identity's default.
    std::int64_t order = 0;
    Mode mode = Mode::Bivariate;
    std::optional<XPoint> point;
    /// Debug hook: adds q^e to the first left-hand side.
    std::optional<QExp> perturb;
};

enum class Verdict { Pass, Fail, Error };
std::string_view to_string(Verdict v) noexcept;

struct Mismatch {
    std::string label;
    std::int64_t scale = 1;
    /// exponent numerator on the lattice (1/scale)Z
    std::int64_t e_num = 0;
    std::int64_t x_deg = 0;
    std::string lhs;
    std::string rhs;
};

struct Report {
    /// Instance with defaults merged in and the order resolved.
    IdentityInstance instance;
    Verdict verdict = Verdict::Pass;
    std::optional<Mismatch> mismatch;
    std::string error;
    std::string clearing;
    std::size_t checks = 0;
    std::size_t lhs_terms = 0;
    std::size_t rhs_terms = 0;
    double millis = 0;
};

/// Deterministic; library errors become verdict Error.
Report run_check(const IdentityInstance& instance);

struct Summary {
    std::vector<Report> reports;
    std::size_t passed = 0;
    std::size_t failed = 0;
    std::size_t errors = 0;

    /// 0 all pass, 1 any fail, 2 any error
    int exit_code() const noexcept;
};

/// Reports keep the input order regardless of `jobs`.
Summary run_all(const std::vector<IdentityInstance>& instances, unsigned jobs = 1);

/// Schema errors name the offending entry, its line and the identity id.
std::vector<IdentityInstance> parse_manifest(const std::string& text);
std::vector<IdentityInstance> load_manifest(const std::filesystem::path& path);

std::string report_json(const Report& report, bool timings = true);
std::string summary_json(const Summary& summary, bool timings = true);

enum class SeriesFormat { Text, Json };
SeriesFormat parse_series_format(std::string_view text);

/// Named series: theta_pm, f_abc, f_tm, U, H, G, theta, pochhammer, V, Y.
const std::vector<std::string>& series_names();
/// Default parameters of a named series; throws UnknownName.
const Params& series_defaults(const std::string& name);
/// `order` is a power of q; exact objects (H, G) ignore it.
Series build_series(const std::string& name, const Params& params, std::int64_t order);
std::string print_series(const std::string& name, const Params& params, std::int64_t order,
                         SeriesFormat format = SeriesFormat::Text);

struct GoldenEntry {
    std::string name;
    Params params;
    std::int64_t order = 0;

    /// name__k=v__...__order=N.txt
    std::string file_name() const;
};

const std::vector<GoldenEntry>& golden_entries();

struct GoldenResult {
    std::string file;
    bool ok = false;
    /// first differing line (1-based), 0 when ok or missing
    std::size_t line = 0;
    std::string detail;
};

/// Io error when the file is missing.
GoldenResult golden_compare(const GoldenEntry& entry, const std::filesystem::path& dir);
void golden_bless(const GoldenEntry& entry, const std::filesystem::path& dir);

} // namespace qseries
