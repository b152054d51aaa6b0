#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "qseries/evaluator.hpp"
#include "qseries/series.hpp"

namespace qseries {

using Params = std::map<std::string, std::int64_t>;

enum class Mode { Bivariate, Specialized };

std::string_view to_string(Mode mode) noexcept;
Mode parse_mode(std::string_view text);

/// One comparison produced by an identity builder.
struct Check {
    std::string label;
    Series lhs;
    Series rhs;
};

struct IdentityDef {
    std::string id;
    std::string title;
    /// Factor both sides were multiplied by in bivariate mode (empty if none).
    std::string clearing;
    std::int64_t default_order = 20;
    Params defaults;
    bool bivariate = true;
    bool specialized = false;
    std::function<std::int64_t(const Params&)> scale;
    std::function<void(const Params&)> validate;
    std::function<std::vector<Check>(const Params&, const Evaluator&)> build;
};

const std::vector<IdentityDef>& identity_catalog();
/// Throws UnknownName.
const IdentityDef& find_identity(std::string_view id);

/// Integer parameter lookup; throws InvalidArgument when absent.
std::int64_t param(const Params& params, const std::string& name);

} // namespace qseries
