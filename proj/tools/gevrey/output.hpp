#pragma once

#include <json.hpp>

#include <string>
#include <vector>

namespace gevrey::cli {

using json = nlohmann::json;

/// Rounded to 15 significant digits; non-finite values become null.
json num(double v);
json nums(const std::vector<double>& v);

/// "%.15g", or "inf"/"-inf"/"nan".
std::string fmt(double v);

/// FNV-1a of the canonical config dump, as 16 hex digits.
std::string config_hash(const json& config);

/// Attaches config and its hash, then writes to `path` atomically or to
/// stdout when path is empty.
void emit_report(json report, const json& config, const std::string& path);
void emit_text(const std::string& text, const std::string& path);

}  // namespace gevrey::cli
