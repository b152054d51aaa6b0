#include <chrono>
#include <cstdio>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "../support/oracles.hpp"
#include "qseries/verifier.hpp"

using namespace qseries;

namespace {

struct Criterion {
    int number;
    std::string name;
    std::vector<IdentityInstance> instances;
    /// wall-clock limit in seconds, if any
    std::optional<double> limit;
    /// extra check run instead of (or besides) identity instances
    std::function<std::string()> extra;
};

IdentityInstance inst(std::string id, Params params, std::int64_t order) {
    return {.id = std::move(id), .params = std::move(params), .order = order};
}

IdentityInstance at(std::string id, const std::string& point, std::int64_t order) {
    return {.id = std::move(id), .order = order, .mode = Mode::Specialized, .point = XPoint::parse(point)};
}

std::vector<Criterion> criteria() {
    std::vector<Criterion> out;

    out.push_back({1, "JTP: product = sum, 20 random arguments, q^40", {inst("JTP", {{"seed", 1}, {"count", 20}}, 40)},
                   1.0, nullptr});

    {
        Criterion c{2, "THETA-ROWSUM: row/column sums vanish, t = 2,3, q^30", {}, 5.0, nullptr};
        for (int t : {2, 3}) c.instances.push_back(inst("THETA-ROWSUM", {{"t", t}, {"fixed", 5}}, 30));
        out.push_back(std::move(c));
    }
    {
        Criterion c{3, "THETA-SHIFT-A..D: t = 2,3, p,m in [-3,6], q^30", {}, 30.0, nullptr};
        for (const char* id : {"THETA-SHIFT-A", "THETA-SHIFT-B", "THETA-SHIFT-C", "THETA-SHIFT-D"})
            for (int t : {2, 3}) c.instances.push_back(inst(id, {{"t", t}, {"lo", -3}, {"hi", 6}}, 30));
        out.push_back(std::move(c));
    }
    {
        Criterion c{4, "T1-CLOSED: f_{1,m} closed form, m = 1,2,3, q^30", {}, std::nullopt, nullptr};
        for (int m = 1; m <= 3; ++m) c.instances.push_back(inst("T1-CLOSED", {{"m", m}}, 30));
        out.push_back(std::move(c));
    }
    {
        Criterion c{5, "FUNC-EQ: t = 2,3, 1 <= m < t, q^25", {}, std::nullopt, nullptr};
        for (int t : {2, 3})
            for (int m = 1; m < t; ++m) c.instances.push_back(inst("FUNC-EQ", {{"t", t}, {"m", m}}, 25));
        out.push_back(std::move(c));
    }
    {
        Criterion c{6, "HT-U-TRIPLE / HT-U-APPELL: four (t,m), q^20", {}, std::nullopt, nullptr};
        for (auto [t, m] : {std::pair{1, 1}, {2, 1}, {2, 2}, {3, 2}})
            for (const char* id : {"HT-U-TRIPLE", "HT-U-APPELL"})
                c.instances.push_back(inst(id, {{"t", t}, {"m", m}}, 20));
        out.push_back(std::move(c));
    }
    {
        Criterion c{7, "MAIN / MAIN-ALT: t = 2,3, 1 <= m < t, q^20", {}, std::nullopt, nullptr};
        for (int t : {2, 3})
            for (int m = 1; m < t; ++m)
                for (const char* id : {"MAIN", "MAIN-ALT"}) c.instances.push_back(inst(id, {{"t", t}, {"m", m}}, 20));
        out.push_back(std::move(c));
    }
    {
        Criterion c{8, "COR-MAIN and U2M*/U3M* displays, q^15 / q^12", {}, 120.0, nullptr};
        c.instances.push_back(inst("COR-MAIN", {{"t", 2}, {"m", 1}}, 15));
        for (int m = 1; m <= 2; ++m) c.instances.push_back(inst("COR-MAIN", {{"t", 3}, {"m", m}}, 12));
        for (const char* id : {"U2M1", "U2M2"}) c.instances.push_back(inst(id, {}, 15));
        for (const char* id : {"U3M1", "U3M2", "U3M3"}) c.instances.push_back(inst(id, {}, 12));
        out.push_back(std::move(c));
    }
    {
        Criterion c{9, "THETA-TO-FABC: t = 2,3, 12-point (p,m) grid, q^30", {}, std::nullopt, nullptr};
        for (int t : {2, 3})
            c.instances.push_back(
                inst("THETA-TO-FABC", {{"t", t}, {"p_lo", -1}, {"p_hi", 2}, {"m_lo", 0}, {"m_hi", 2}}, 30));
        out.push_back(std::move(c));
    }
    {
        Criterion c{10, "INTERESTING: t = 2, m = 1, l = 0..4, q^20", {}, std::nullopt, nullptr};
        for (int l = 0; l <= 4; ++l) c.instances.push_back(inst("INTERESTING", {{"t", 2}, {"m", 1}, {"l", l}}, 20));
        out.push_back(std::move(c));
    }
    out.push_back({11, "THETA11 to q^100 / THETA11-STAR to q^30",
                   {inst("THETA11", {}, 100), inst("THETA11-STAR", {}, 30)}, std::nullopt, nullptr});
    out.push_back({12, "U-EQ-F123 and M1-417, q^30", {inst("U-EQ-F123", {}, 30), inst("M1-417", {}, 30)},
                   std::nullopt, nullptr});
    {
        Criterion c{13, "V-ELLIPTIC / Y-ELLIPTIC / Y-EXPANSION: t = 2,3, q^20", {}, std::nullopt, nullptr};
        for (const char* id : {"V-ELLIPTIC", "Y-ELLIPTIC", "Y-EXPANSION"})
            for (int t : {2, 3}) c.instances.push_back(inst(id, {{"t", t}}, 20));
        out.push_back(std::move(c));
    }
    out.push_back({14, "NEWCALC: t = 2, m = 1, theta-cleared, q^12", {inst("NEWCALC", {{"t", 2}, {"m", 1}}, 12)}, 120.0,
                   nullptr});
    {
        Criterion c{15, "Appell and mock theta forms at x = +-q, +-q^2 and half-lattice points, q^25", {},
                    std::nullopt, nullptr};
        for (const char* id :
             {"APPELL-F123", "MODTHETA-F123", "HM-24E", "SEC8-THETA", "SEC8-NOTHETA", "G-APPELL"}) {
            for (const char* point : {"1,1", "1,2", "-1,1", "-1,2", "1,1/2", "-1,1/2"})
                c.instances.push_back(at(id, point, 25));
        }
        out.push_back(std::move(c));
    }
    {
        Criterion c{16, "ANDREWS: k = 1..3, 1 <= i <= k, q^20", {}, std::nullopt, nullptr};
        for (int k = 1; k <= 3; ++k)
            for (int i = 1; i <= k; ++i) c.instances.push_back(inst("ANDREWS", {{"k", k}, {"i", i}}, 20));
        out.push_back(std::move(c));
    }
    out.push_back({17, "H-G-DUAL: t <= 3, 1 <= m <= t, b = 0,1, n <= 5",
                   {inst("H-G-DUAL", {{"t_max", 3}, {"n_max", 5}}, 0)}, std::nullopt, nullptr});
    out.push_back({18, "property suites with fixed seeds", {}, std::nullopt, [] {
                       std::string failures;
                       for (const auto& r : oracle::all_properties())
                           if (r.failures > 0 || r.checks == 0)
                               failures += r.name + " (" + std::to_string(r.failures) + "/" +
                                           std::to_string(r.checks) + "): " + r.first_failure + "; ";
                       return failures;
                   }});
    return out;
}

std::string describe(const Report& r) {
    std::string s = r.instance.id;
    for (const auto& [k, v] : r.instance.params) s += " " + k + "=" + std::to_string(v);
    if (r.instance.point) s += " x=" + r.instance.point->str();
    s += ": " + std::string(to_string(r.verdict));
    if (r.mismatch)
        s += " at q^" + QExp::from_scaled(r.mismatch->e_num, r.mismatch->scale).str() + " x^" +
             std::to_string(r.mismatch->x_deg) + " [" + r.mismatch->label + "] lhs=" + r.mismatch->lhs +
             " rhs=" + r.mismatch->rhs;
    if (!r.error.empty()) s += " " + r.error;
    return s;
}

} // namespace

int main() {
    int failed = 0;
    for (const Criterion& c : criteria()) {
        const auto start = std::chrono::steady_clock::now();
        std::string problem;
        std::size_t checks = 0;
        for (const auto& instance : c.instances) {
            const Report r = run_check(instance);
            checks += r.checks;
            if (r.verdict != Verdict::Pass && problem.empty()) problem = describe(r);
        }
        if (c.extra && problem.empty()) problem = c.extra();
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (problem.empty() && c.limit && seconds >= *c.limit)
            problem = "took " + std::to_string(seconds) + " s, limit " + std::to_string(*c.limit) + " s";
        const bool ok = problem.empty();
        if (!ok) ++failed;
        std::printf("[%s] %2d %s (%zu instances, %zu checks, %.2f s)\n", ok ? "PASS" : "FAIL", c.number,
                    c.name.c_str(), c.instances.size(), checks, seconds);
        if (!ok) std::printf("       %s\n", problem.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of 18 criteria failed\n", failed);
    return failed == 0 ? 0 : 1;
}
