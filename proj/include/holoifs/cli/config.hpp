#pragma once

#include <string>
#include <vector>

#include "holoifs/errors.hpp"
#include "holoifs/maps.hpp"

namespace holoifs::cli {

/// Malformed configuration; the message names the line and field.
class ConfigError : public Error {
public:
    using Error::Error;
};

struct SystemConfig {
    std::string label;
    IfsSystem system;
};

/// Line-based grammar, one record per line, `#` starts a comment:
///
///     label <free text>
///     domain center_re=<x> [center_im=<y>] radius=<r>
///     map kind=affine alpha_re=<x> [alpha_im=<y>] b_re=<x> [b_im=<y>]
///     map kind=sqrt_branch c_re=<x> [c_im=<y>] sign=<+1|-1>
///
/// Numbers are decimals or rationals p/q. Exactly one domain and at least
/// one map are required.
SystemConfig parse_config(const std::string& text, const std::string& source = "<config>");
SystemConfig load_config(const std::string& path);

/// Decimal or p/q; throws ConfigError naming `what`.
double parse_number(const std::string& token, const std::string& what);

/// "re,im" per line; blank lines and `#` comments are skipped.
std::vector<Complex> read_csv(const std::string& path);
std::string to_csv(const std::vector<Complex>& points);

}  // namespace holoifs::cli
